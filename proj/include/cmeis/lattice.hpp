#pragma once
// Period lattices: reduced basis, q-expansions for wp, zeta, sigma,
// quasi-periods, g2, g3 and the discriminant.
#include "cmeis/field.hpp"

#include <optional>

namespace cmeis {

struct CmTag {
    long d = 0;        // field discriminant -d
    APComplex Omega;   // L = Omega * c * O_K
    KElem c;
};

class Lattice {
public:
    Lattice(const APComplex& g1, const APComplex& g2, std::optional<CmTag> cm = std::nullopt);
    // Omega * c * O_K
    static Lattice cm(const ImagQuadField& K, const APComplex& Omega, const KElem& c);
    static Lattice cm(const ImagQuadField& K, const APComplex& Omega) { return cm(K, Omega, K.kelem(1, 0)); }

    Prec prec() const { return w1_.prec(); }
    const APComplex& gen1() const { return g1_; }  // basis as given
    const APComplex& gen2() const { return g2_; }
    const APComplex& w1() const { return w1_; }    // reduced basis, Im(w2/w1) > 0
    const APComplex& w2() const { return w2_; }
    const APComplex& tau() const { return tau_; }
    const APComplex& q() const { return q_; }
    double qabs() const { return qabs_; }
    const std::optional<CmTag>& cm_tag() const { return cm_; }
    LatticeBasis basis() const { return {w1_, w2_}; }

    const Real& area() const { return area_; }
    const Real& A() const { return A_; }          // area / pi
    const APComplex& eta1() const { return eta1_; }  // eta(w1)
    const APComplex& eta2() const { return eta2_; }  // eta(w2)
    const APComplex& s2() const { return s2_; }
    const APComplex& g2() const { return g2v_; }
    const APComplex& g3() const { return g3v_; }
    const APComplex& disc() const { return disc_; }
    Mag legendre_residual() const { return legendre_; }

    // z - (nearest lattice vector); the lattice vector is returned in *shift
    APComplex reduce(const APComplex& z, APComplex* shift = nullptr) const;
    Lattice scaled(const APComplex& c) const;  // c * L

private:
    APComplex g1_, g2_, w1_, w2_, tau_, q_;
    double qabs_ = 0;
    std::optional<CmTag> cm_;
    Real area_, A_;
    APComplex eta1_, eta2_, s2_, g2v_, g3v_, disc_;
    Mag legendre_;
};

struct TorsionPoint {
    mpq_class r1, r2;  // coordinates in the given basis (gen1, gen2), mod 1
    APComplex embed(const Lattice& L) const;
    mpz_class order() const;
};

// Taylor jet of wp about z: coefficient j is wp^(j)(z)/j!
Jet wp_jet(const APComplex& z, const Lattice& L, size_t len);
APComplex wp(const APComplex& z, const Lattice& L, int n = 0);
APComplex zeta(const APComplex& z, const Lattice& L);
APComplex sigma(const APComplex& z, const Lattice& L);
APComplex eta_quasi(const APComplex& z, const Lattice& L);  // R-linear quasi-period map
APComplex discriminant(const Lattice& L);

// bound for sum over n > N of n^k x^n / (1 - x^n), used by several q-series tails
Mag qsum_tail(int k, double x, long N);

} // namespace cmeis
