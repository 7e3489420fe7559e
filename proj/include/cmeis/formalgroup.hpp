#pragma once
// Formal groups: the Weierstrass formal group of y^2 = x^3 + a4 x + a6 over Q,
// Lubin-Tate groups over Z_p, logarithms, endomorphisms and Coleman's norm.
#include "cmeis/series.hpp"

namespace cmeis {

constexpr int kSeriesTruncation = 30;

template <class C>
struct FormalGroupLaw {
    Series2<C> F;
    Series<C> log, exp;
    int D() const { return F.D; }
};

// log from the invariant differential dT / F_Y(T, 0), exp its reversion
template <class C>
FormalGroupLaw<C> make_law(const Series2<C>& F);

// axioms to truncation; m is the p-adic precision asked for (ignored over Q)
template <class C>
bool has_unit(const Series2<C>& F, long m = 0);
template <class C>
bool commutative(const Series2<C>& F, long m = 0);
template <class C>
bool associative(const Series2<C>& F, long m = 0);
template <class C>
bool log_additive(const FormalGroupLaw<C>& L, long m = 0);

// [n](T) by repeated addition, n >= 0
template <class C>
Series<C> multiply_by(const Series2<C>& F, long n);

// Short Weierstrass model y^2 = x^3 + a4 x + a6 and the parameter T = -x/y.
// With y the model coordinate, dx/(2y) = dz on C/L, so T = -2x/P' for x = P.
struct WeierstrassFG {
    mpq_class a4, a6;
    FormalGroupLaw<mpq_class> law;
    Series<mpq_class> x2;     // T^2 x(T)
    Series<mpq_class> y3;     // T^3 y(T)
    Series<mpq_class> omega;  // (dx / 2y) / dT
    // T^6 (y^2 - x^3 - a4 x - a6), zero to truncation
    Series<mpq_class> curve_residual() const;
};
WeierstrassFG weierstrass_fg(const mpq_class& a4, const mpq_class& a6, int D = kSeriesTruncation);
// exp(a log T) over Z_p; for a = psi(p) in the embedding where it is a
// uniformizer this reduces to T^p mod p (the curve's Frobenius)
Series<Padic> cm_endomorphism(const WeierstrassFG& W, const Padic& a);
// v_p of [a](T) - T^p, coefficientwise minimum (prec if zero to precision)
long frobenius_defect(const Series<Padic>& endo);

struct LubinTate {
    Padic pi;
    long q = 0;
    Series<Padic> f;  // [pi]
    FormalGroupLaw<Padic> law;
    Series<Padic> endo(const Padic& a) const;
};
// f = pi T mod T^2, f = T^q mod pi; coefficients of f carry the working precision
LubinTate lubin_tate(const Padic& pi, const Series<Padic>& f, long q, int D = kSeriesTruncation);
// the unique theta = a T + ... with g(theta) = theta(f); f and g both lift Frobenius for pi
Series<Padic> intertwiner(const Series<Padic>& f, const Series<Padic>& g, const Padic& pi, const Padic& a);
// pi T + T^q and (1+T)^p - 1
Series<Padic> frobenius_lift(const Padic& pi, long q, int D);
Series<Padic> multiplicative_lift(long p, long prec, int D);

// (N g)([pi](T)) = prod over pi-torsion k of g(T [+] k), computed in Z_p[X]/(f(X)/X).
// g is read as a polynomial of degree <= D; f must be a monic polynomial of degree q.
Series<Padic> coleman_norm(const Series<Padic>& g, const LubinTate& G);

} // namespace cmeis
