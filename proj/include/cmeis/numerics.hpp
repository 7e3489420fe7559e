#pragma once
#include "cmeis/apcomplex.hpp"
#include "cmeis/error.hpp"

#include <optional>
#include <string>

namespace cmeis {

// Just the two periods; the lattice module layers everything else on top.
struct LatticeBasis {
    APComplex w1, w2;
    Real covolume() const;  // Im(conj(w1) w2), positive after orientation
    Real cell_diameter() const;  // max distance from a cell center to a corner
};

struct SumSpec {
    int k = 0;
    int i = 0;
    APComplex z;
    double R = 0;        // truncation radius (absolute)
    Mag tail;            // filled in by lattice_sum
};

// sum over |z+w| <= R of (z+w)^-k conj(z+w)^-i, radius inflated by the tail
APComplex lattice_sum(SumSpec& spec, const LatticeBasis& L);
Mag lattice_tail_bound(int m, double R, double covol, double delta);

// Gamma(n, y) / Gamma(n) for integer n >= 1 and real y >= 0
APComplex gamma_q(int n, const Real& y);

struct FieldLabel {
    long d = 0;  // 0 means Q; otherwise discriminant -d
    static FieldLabel rationals() { return {}; }
    static FieldLabel quadratic(long d) { return {d}; }
    bool is_q() const { return d == 0; }
    APComplex omega(Prec p) const;
};

struct AlgebraicCandidate {
    FieldLabel field;
    mpq_class a, b;  // a + b*omega
    mpz_class height;
    Mag residual;
    std::string to_string() const;
    APComplex embed(Prec p) const;
    bool operator==(const AlgebraicCandidate& o) const { return field.d == o.field.d && a == o.a && b == o.b; }
};

std::optional<AlgebraicCandidate> detect_algebraic(const APComplex& x, FieldLabel field,
                                                   const mpz_class& height_bound, double tol);

} // namespace cmeis
