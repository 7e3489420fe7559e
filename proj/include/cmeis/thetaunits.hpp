#pragma once
// Fundamental theta function, Theta(z, L, a), distribution relations and
// elliptic units attached to a preset.
#include "cmeis/preset.hpp"

namespace cmeis {

APComplex theta(const APComplex& z, const Lattice& L);

// nonzero points of a^-1 L / L for a CM lattice, +-u grouped: (u, multiplicity)
std::vector<std::pair<APComplex, int>> alpha_torsion(const Lattice& L, const ImagQuadField& K, const OKElem& a);
// Omega c kappa for the CM lattice Omega c O_K, kappa reduced mod O_K first
APComplex cm_point(const Lattice& L, const ImagQuadField& K, const KElem& kappa);

struct ThetaValue {
    APComplex value;
    APComplex via_sigma;  // theta(z,L)^Na / theta(z, a^-1 L)
    APComplex via_wp;     // Delta quotient times prod' Delta/(wp(z)-wp(u))^6
};

APComplex theta_alpha_sigma(const APComplex& z, const Lattice& L, const ImagQuadField& K, const OKElem& a);
APComplex theta_alpha_wp(const APComplex& z, const Lattice& L, const ImagQuadField& K, const OKElem& a);
// both paths; PathDisagreement when the balls are disjoint
ThetaValue theta_alpha(const APComplex& z, const Lattice& L, const ImagQuadField& K, const OKElem& a);

// Taylor coefficients of Theta(z0 + h) in h; z0 may be a lattice point
Jet theta_alpha_taylor(const APComplex& z0, const Lattice& L, const ImagQuadField& K, const OKElem& a, size_t len);
// Taylor coefficients of log Theta(z0 + h), z0 not in a^-1 L
Jet log_theta_alpha_taylor(const APComplex& z0, const Lattice& L, const ImagQuadField& K, const OKElem& a, size_t len);

// upper bound for |x - y| / |y|
Mag rel_residual(const APComplex& x, const APComplex& y);

// prod over v in b^-1 L / L of Theta(z+v, L, a) against Theta(z, b^-1 L, a)
Mag distribution_check(const OKElem& b, const APComplex& z, const Lattice& L, const ImagQuadField& K, const OKElem& a);

// split prime p of a preset, auxiliary a, the lattice Omega O_K
struct UnitSetup {
    UnitSetup(const Preset& P, long p, const OKElem& a, Prec prec);

    Preset preset;
    ImagQuadField K;
    HeckeCharacter psi;
    APComplex Omega;
    Lattice L;
    long p;
    OKElem prime, prime_conj;  // p = prime * prime_conj up to units
    OKElem pi, pistar;         // psi of the two primes
    OKElem a;

    APComplex point(const KElem& kappa) const { return cm_point(L, K, kappa); }
    KElem level_point(int n, int m) const;  // 1 / (f pi^n pistar^m), i.e. Omega = Omega_inf / f
    OKElem modulus(int n, int m) const;     // f p^n p*^m
};

struct EllipticUnit {
    int n = 0, m = 0;
    APComplex value;
    OKElem modulus;
};

EllipticUnit elliptic_unit(const UnitSetup& S, int n, int m);
struct NormCompat {
    Mag residual;            // product over the kernel B against e_{n2,m2}
    Mag completed_residual;  // same with the b-torsion shifts missed by B multiplied in
    size_t kernel_size = 0;
    size_t torsion_count = 0;  // N(p^(n1-n2) p*^(m1-m2))
};
// Norm from level (n1,m1) down to (n2,m2) as a product over the kernel of the ray class map
NormCompat norm_compat_check(const UnitSetup& S, int n1, int m1, int n2, int m2);

struct ColemanCheck {
    Mag residual;         // |P(z_e) - e_{n,m}| / |e_{n,m}|
    Mag remainder_bound;  // truncation estimate
    double ratio = 0;     // |z_e| / radius of convergence
    Prec work_prec = 0;   // raised to absorb cancellation in the Taylor sum
};
ColemanCheck coleman_interpolation_check(const UnitSetup& S, int n, int m, size_t terms, double tol = 1e-20);

// product of Theta(psi(c) v, L, a) over Cl(lcm(f, m)), v = Omega / m
APComplex theta_galois_norm(const Preset& P, const Lattice& L, const OKElem& a, const OKElem& m);

} // namespace cmeis
