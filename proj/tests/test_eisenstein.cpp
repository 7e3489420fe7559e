#include <catch_amalgamated.hpp>

#include "cmeis/eisenstein.hpp"

using namespace cmeis;

namespace {

const Prec P = 256;

APComplex cx(double re, double im, Prec p = P) { return APComplex(Real(re, p), Real(im, p)); }

bool close(const APComplex& a, const APComplex& b, double tol = 0) {
    APComplex d = a - b;
    return d.mid_down() <= d.rad() + Mag(tol);
}

Lattice skew() { return Lattice(cx(0.9, 0.2), cx(0.35, 1.3)); }

HeckeCharacter qi_psi() {
    ImagQuadField K(4);
    return HeckeCharacter(K, K.elem(-2, 2), {{K.elem(1, 0), 0}, {K.elem(0, 1), 3}, {K.elem(-1, 0), 2}, {K.elem(0, -1), 1}});
}

} // namespace

TEST_CASE("ewald summation agrees with the wp route for i = 0") {
    Lattice L = skew();
    for (auto z : {cx(0.31, 0.22), cx(-0.7, 0.9)}) {
        auto H = eis_holo_all(5, z, L);
        for (int k = 1; k <= 5; ++k) {
            APComplex e = eis_ewald({0, k}, z, L);
            INFO("k=" << k << " ewald " << e.to_string() << " holo " << H[k - 1].to_string());
            REQUIRE(close(e, H[k - 1]));
            REQUIRE(e.rad().to_double() < 1e-60);
        }
    }
}

TEST_CASE("E_3 = -wp'") {
    Lattice L = skew();
    APComplex z = cx(0.4, 0.1);
    REQUIRE(close(eis({0, 3}, z, L), -wp(z, L, 1)));
}

TEST_CASE("ewald matches the brute lattice sum for a convergent mixed weight") {
    Lattice L = skew();
    APComplex z = cx(0.3, 0.55);
    SumSpec s{6, -1, z, 60.0, Mag()};
    APComplex brute = lattice_sum(s, L.basis()) * 120L / APComplex::from_real(L.A());
    APComplex e = eis({-1, 6}, z, L);
    REQUIRE(close(e, brute));
    REQUIRE(brute.rad().to_double() < 1e-2);
}

TEST_CASE("homogeneity and periodicity of E_{i,k}") {
    Lattice L = skew();
    APComplex c = cx(0.8, 0.6), z = cx(0.27, 0.61);
    Lattice M = L.scaled(c);
    for (EisWeight w : {EisWeight{0, 2}, EisWeight{-1, 2}, EisWeight{-1, 3}, EisWeight{-2, 3}, EisWeight{0, 1}}) {
        APComplex e = eis(w, z, L);
        REQUIRE(close(eis(w, c * z, M), e * pow(c, w.i - w.k)));
        REQUIRE(close(eis(w, z + L.gen1() - L.gen2(), L), e));
    }
    REQUIRE_THROWS_AS(eis({-2, 2}, z, L), Error);
}

TEST_CASE("eis_alpha with trivial ideal vanishes") {
    ImagQuadField K(4);
    Lattice L = Lattice::cm(K, cx(1.3, 0));
    APComplex v = eis_alpha({0, 3}, cx(0.2, 0.35), L, K, K.one());
    REQUIRE(v.abs_up().to_double() < 1e-60);
}

TEST_CASE("fit_phi weight (0,k) gives X_k") {
    auto S = phi_samples(4, 11, P), H = phi_samples(3, 12, P);
    for (int k = 2; k <= 6; ++k) {
        PhiFit f = fit_phi({0, k}, S, H);
        REQUIRE(f.phi.coeffs.size() == 1);
        std::vector<int> e(k, 0);
        e[k - 1] = 1;
        REQUIRE(f.phi.coeffs.at(e) == 1);
        REQUIRE(f.normalization == 1);
    }
}

TEST_CASE("fit_phi (-1,2)") {
    auto S = phi_samples(6, 21, P), H = phi_samples(5, 22, P);
    PhiFit f = fit_phi({-1, 2}, S, H);
    // E_{-1,2} = -E1 E2 + E3/2, i.e. 2^{-1} * (-2 X1 X2 + X3)
    REQUIRE(f.phi.coeffs.at({1, 1, 0}) == -2);
    REQUIRE(f.phi.coeffs.at({0, 0, 1}) == 1);
    REQUIRE(f.normalization == mpq_class(1, 2));
    REQUIRE(f.leading_ok);
    REQUIRE(f.heldout_residual < 1e-20);
}

TEST_CASE("isobaric monomial sets") {
    REQUIRE(isobaric_monomials(3, 2).size() == 2);
    REQUIRE(isobaric_monomials(4, 2).size() == 3);
    REQUIRE(isobaric_monomials(5, 3).size() == 5);
}

TEST_CASE("galois action by definition") {
    auto psi = qi_psi();
    auto& K = psi.field();
    Lattice L = Lattice::cm(K, cx(2.6220575542921198, 0));
    APComplex v = L.gen1() / K.embed(K.elem(6, 3), P);  // primitive (6+3i)-torsion
    EisWeight w{0, 3};
    REQUIRE(close(galois_eis(w, v, L, psi, K.one()), eis(w, v, L)));
    OKElem c = K.elem(2, -1), c2 = K.elem(3, 2);
    APComplex pc2 = K.embed(psi.eval(c2), P);
    APComplex twice = galois_eis(w, v, L.scaled(inv(pc2)), psi, c) * pow(pc2, w.i - w.k);
    REQUIRE(close(twice, galois_eis(w, v, L, psi, c * c2)));
    // equals E(psi(c) v, L)
    REQUIRE(close(galois_eis(w, v, L, psi, c), eis(w, K.embed(psi.eval(c), P) * v, L)));
    OKElem m = K.elem(6, 3);
    REQUIRE_THROWS_AS(galois_eis(w, v, L, psi, K.elem(3, 0), &m), Error);
}
