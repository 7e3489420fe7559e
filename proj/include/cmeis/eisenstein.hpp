#pragma once
// Eisenstein-Kronecker numbers E_{i,k}(z, L) and friends.
#include "cmeis/lattice.hpp"

#include <map>
#include <vector>

namespace cmeis {

struct EisWeight {
    int i = 0;  // <= 0
    int k = 1;  // >= 1
    void check() const;
};

// E_{i,k} by theta-split (Ewald) summation; valid for every admissible weight,
// including the analytically continued k+i < 3 cases.
APComplex eis_ewald(EisWeight w, const APComplex& z, const Lattice& L);
// i = 0 via wp, zeta: E_1 = zeta - s2 z - zbar/A, E_2 = wp + s2, E_k = (-1)^k wp^(k-2)
APComplex eis_holo(int k, const APComplex& z, const Lattice& L);
// Taylor jet in z (holomorphic part only, i = 0, k >= 2)
std::vector<APComplex> eis_holo_all(int kmax, const APComplex& z, const Lattice& L);  // E_1..E_kmax

APComplex eis(EisWeight w, const APComplex& z, const Lattice& L);
APComplex eis_alpha(EisWeight w, const APComplex& z, const Lattice& L, const ImagQuadField& K, const OKElem& a);

// psi(c)^(i-k) E_{i,k}(v, c^-1 L)
APComplex galois_eis(EisWeight w, const APComplex& v, const Lattice& L, const HeckeCharacter& psi,
                     const OKElem& c, const OKElem* torsion_modulus = nullptr);

struct IsobaricPoly {
    int weight = 0;
    int degree = 0;
    std::map<std::vector<int>, mpq_class> coeffs;  // exponent vector (e_1..e_weight) -> coefficient
    APComplex eval(const std::vector<APComplex>& X) const;  // X[0] = X_1
    std::string str() const;
};

struct PhiFit {
    IsobaricPoly phi;         // normalized so that the X_1^{-i} X_k coefficient is (-2)^{-i}
    mpq_class normalization;  // E_{i,k} = normalization * Phi(E_1, ..., E_{k-i})
    bool leading_ok = false;
    double heldout_residual = 0;
};

struct PhiSample {
    APComplex z;
    Lattice L;
};

std::vector<std::vector<int>> isobaric_monomials(int weight, int degree);
PhiFit fit_phi(EisWeight w, const std::vector<PhiSample>& samples, const std::vector<PhiSample>& heldout,
               double tol = 1e-20);
// deterministic pseudo-random samples in general position
std::vector<PhiSample> phi_samples(int count, unsigned seed, Prec p);

} // namespace cmeis
