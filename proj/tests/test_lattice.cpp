#include <catch_amalgamated.hpp>

#include "cmeis/lattice.hpp"

#include <random>

using namespace cmeis;

namespace {

const Prec P = 256;

APComplex cx(double re, double im, Prec p = P) { return APComplex(Real(re, p), Real(im, p)); }

bool close(const APComplex& a, const APComplex& b, double tol = 0) {
    APComplex d = a - b;
    return d.mid_down() <= d.rad() + Mag(tol);
}

Lattice skew() { return Lattice(cx(0.9, 0.2), cx(0.35, 1.3)); }

} // namespace

TEST_CASE("basis reduction and invariants") {
    Lattice L(cx(1, 0), cx(7, 1));  // same as Z + Zi
    REQUIRE(L.qabs() < 0.005);
    REQUIRE(close(L.area() == L.area() ? APComplex::from_real(L.area()) : cx(0, 0), cx(1, 0)));
    REQUIRE(L.legendre_residual().to_double() < 1e-60);
    Lattice S = skew();
    REQUIRE(S.legendre_residual().to_double() < 1e-60);
}

TEST_CASE("wp on the square lattice normalized to g2 = 4") {
    Lattice L0(cx(1, 0), cx(0, 1));
    REQUIRE(L0.g3().abs_up().to_double() < 1e-60);
    // scale so that g2 = 4: g2(cL) = c^-4 g2(L)
    APComplex c = sqrt(sqrt(L0.g2() / APComplex(4L, P)));
    Lattice L = L0.scaled(c);
    REQUIRE(close(L.g2(), APComplex(4L, P), 1e-60));
    APComplex e = wp(L.w1() / 2L, L);
    // roots of 4x^3 - 4x are 0, 1, -1
    REQUIRE(close(e, APComplex(1L, P), 1e-60));
}

TEST_CASE("wp periodicity, parity and differential equation") {
    Lattice L = skew();
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> U(-1.5, 1.5);
    for (int t = 0; t < 50; ++t) {
        APComplex z = cx(U(rng), U(rng));
        APComplex w = wp(z, L), w1 = wp(z, L, 1);
        REQUIRE(close(wp(z + L.gen1(), L), w));
        REQUIRE(close(wp(z - L.gen2() * 3L, L), w));
        REQUIRE(close(wp(-z, L), w));
        REQUIRE(close(wp(-z, L, 1), -w1));
        APComplex ode = w1 * w1 - (w * w * w * 4L - L.g2() * w - L.g3());
        REQUIRE(ode.mid_up() <= ode.rad() * 10.0 + Mag(1e-60));
        REQUIRE(ode.rad().to_double() < 1e-55);
    }
}

TEST_CASE("wp derivatives match finite differences") {
    Lattice L = skew();
    APComplex z = cx(0.3, 0.41);
    for (int n = 1; n <= 4; ++n) {
        APComplex h = cx(1e-20, 0);
        APComplex fd = (wp(z + h, L, n - 1) - wp(z - h, L, n - 1)) / (h * 2L);
        REQUIRE(close(fd, wp(z, L, n), 1e-30));
    }
}

TEST_CASE("homogeneity of wp, sigma, Delta") {
    Lattice L = skew();
    APComplex c = cx(0.7, -1.1);
    Lattice M = L.scaled(c);
    APComplex z = cx(0.21, 0.33);
    REQUIRE(close(wp(c * z, M), wp(z, L) / (c * c)));
    REQUIRE(close(sigma(c * z, M), sigma(z, L) * c));
    REQUIRE(close(M.disc(), L.disc() / pow(c, 12)));
    REQUIRE_FALSE(L.disc().contains_zero());
}

TEST_CASE("sigma oddness and quasi-periodicity") {
    Lattice L = skew();
    for (auto z : {cx(0.2, 0.1), cx(-0.4, 0.7), cx(1.3, -0.2)}) {
        REQUIRE(close(sigma(-z, L), -sigma(z, L)));
        for (auto w : {L.gen1(), L.gen2(), L.gen1() + L.gen2()}) {
            // sigma(z+w) = -sigma(z) exp(eta(w)(z + w/2)) for w a primitive period
            APComplex rhs = -sigma(z, L) * exp(eta_quasi(w, L) * (z + w / 2L));
            REQUIRE(close(sigma(z + w, L), rhs));
        }
    }
}

TEST_CASE("zeta is the derivative of log sigma and -zeta' = wp") {
    Lattice L = skew();
    APComplex z = cx(0.37, 0.19);
    APComplex h = cx(1e-20, 0);
    APComplex fd = (log(sigma(z + h, L)) - log(sigma(z - h, L))) / (h * 2L);
    REQUIRE(close(fd, zeta(z, L), 1e-30));
    APComplex fz = (zeta(z + h, L) - zeta(z - h, L)) / (h * 2L);
    REQUIRE(close(-fz, wp(z, L), 1e-30));
    // quasi-periodicity across the reduction
    REQUIRE(close(zeta(z + L.gen2(), L), zeta(z, L) + eta_quasi(L.gen2(), L)));
}

TEST_CASE("g2, g3, Delta against lattice sums") {
    Lattice L = skew();
    // punctured sums: evaluate at a tiny shift eps and remove the eps^-k term
    APComplex eps = cx(1e-12, 0);
    SumSpec s4{4, 0, eps, 100.0, Mag()};
    SumSpec s6{6, 0, eps, 40.0, Mag()};
    APComplex G4 = lattice_sum(s4, L.basis()) - pow(eps, -4);
    APComplex G6 = lattice_sum(s6, L.basis()) - pow(eps, -6);
    G4.add_error(Mag(1e-18));
    G6.add_error(Mag(1e-18));
    REQUIRE(G4.rad().to_double() < 1e-3);
    REQUIRE(close(L.g2(), G4 * 60L));
    REQUIRE(close(L.g3(), G6 * 140L));
    APComplex D = pow(L.g2(), 3) - pow(L.g3(), 2) * 27L;
    REQUIRE(close(D, L.disc(), 1e-60));
}

TEST_CASE("lattice_sum k=4 at a half period matches wp''/6") {
    Lattice L(cx(1, 0), cx(0, 1));
    SumSpec s{4, 0, L.w1() / 2L, 120.0, Mag()};
    APComplex ls = lattice_sum(s, L.basis());
    REQUIRE(close(ls, wp(L.w1() / 2L, L, 2) / 6L));
}

TEST_CASE("pole is reported") {
    Lattice L = skew();
    REQUIRE_THROWS_AS(wp(L.gen1() * 2L, L), Error);
}

TEST_CASE("torsion point order") {
    TorsionPoint t{mpq_class(1, 4), mpq_class(5, 6)};
    REQUIRE(t.order() == 12);
}
