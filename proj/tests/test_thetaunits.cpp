#include <catch_amalgamated.hpp>

#include "cmeis/eisenstein.hpp"
#include "cmeis/thetaunits.hpp"

#include <random>

using namespace cmeis;

namespace {

const Prec P = 256;

APComplex cx(double re, double im, Prec p = P) { return APComplex(Real(re, p), Real(im, p)); }

bool close(const APComplex& a, const APComplex& b, double tol = 0) {
    APComplex d = a - b;
    return d.mid_down() <= d.rad() + Mag(tol);
}

const Preset& qi() {
    static Preset p = load_preset("qi");
    return p;
}

} // namespace

TEST_CASE("theta parity and homogeneity") {
    Lattice L = qi().lattice(P);
    APComplex z = cx(0.41, 0.27), c = cx(1, 1);
    REQUIRE(close(theta(-z, L), theta(z, L)));
    REQUIRE(close(theta(c * z, L.scaled(c)), theta(z, L)));
    REQUIRE_FALSE(theta(z, L).contains_zero());
}

TEST_CASE("Theta: trivial ideal, periodicity, path agreement") {
    const Preset& Q = qi();
    Lattice L = Q.lattice(P);
    APComplex z = cx(0.41, 0.27);
    REQUIRE(close(theta_alpha(z, L, Q.K, Q.K.one()).value, APComplex(1L, P)));
    ThetaValue t = theta_alpha(z, L, Q.K, Q.K.elem(2, 1));
    INFO(t.via_sigma.to_string() << " " << t.via_wp.to_string());
    REQUIRE(rel_residual(t.via_sigma, t.via_wp).to_double() < 1e-30);
    REQUIRE(close(theta_alpha(z + L.gen2(), L, Q.K, Q.K.elem(2, 1)).value, t.value));
}

TEST_CASE("log derivatives of Theta against Eisenstein numbers") {
    const Preset& Q = qi();
    Lattice L = Q.lattice(P);
    OKElem a = Q.K.elem(2, 1);
    APComplex z = cx(0.33, 0.71);
    Jet J = log_theta_alpha_taylor(z, L, Q.K, a, 6);
    double fact = 1;
    for (int k = 1; k <= 5; ++k) {
        fact *= k;
        APComplex d = J.c[k] * Real(fact, P);
        APComplex e = eis_alpha({0, k}, z, L, Q.K, a) * 12L;
        INFO("k=" << k << " dlog " << d.to_string(20) << " 12E " << e.to_string(20));
        CHECK(rel_residual(d, k % 2 ? e : -e).to_double() < 1e-30);
    }
}

TEST_CASE("distribution relation") {
    const Preset& Q = qi();
    Lattice L = Q.lattice(P);
    OKElem a = Q.K.elem(2, 1);
    APComplex z = cx(0.13, 0.52);
    for (auto b : {Q.K.one(), Q.K.elem(1, 1), Q.K.elem(2, 0), Q.K.elem(1, 2)}) {
        if (!Q.K.coprime(a, b)) continue;
        Mag r = distribution_check(b, z, L, Q.K, a);
        INFO(b.str() << " " << mag_string(r));
        CHECK(r.to_double() < 1e-30);
    }
}

TEST_CASE("norm compatibility of elliptic units") {
    UnitSetup S(qi(), 5, qi().K.elem(3, 2), P);
    int steps[][4] = {{2, 0, 1, 0}, {1, 1, 1, 0}, {2, 1, 2, 0}, {2, 1, 1, 1}, {1, 0, 1, 0}};
    for (auto& s : steps) {
        NormCompat r = norm_compat_check(S, s[0], s[1], s[2], s[3]);
        INFO(s[0] << "," << s[1] << " -> " << s[2] << "," << s[3] << " " << mag_string(r.residual) << " "
                  << mag_string(r.completed_residual) << " B=" << r.kernel_size);
        CHECK(r.completed_residual.to_double() < 1e-25);
        bool drops = (s[0] > 0 && s[2] == 0) || (s[1] > 0 && s[3] == 0);
        // the kernel has N(b) elements except when an exponent drops to 0
        CHECK((r.kernel_size == r.torsion_count) == !drops);
        if (drops)
            CHECK(r.residual.to_double() > 1e-3);
        else
            CHECK(r.residual.to_double() < 1e-25);
    }
}

TEST_CASE("Coleman series: trivial offset and convergence") {
    UnitSetup S(qi(), 13, qi().K.elem(2, 1), P);
    APComplex c0 = S.point(inv(KElem(S.psi.conductor() * pow(S.pistar, 2UL))));
    Jet T = theta_alpha_taylor(c0, S.L, S.K, S.a, 4);
    REQUIRE(close(T.c[0], theta_alpha(c0, S.L, S.K, S.a).value));
    ColemanCheck a = coleman_interpolation_check(S, 1, 2, 30, 1e300);
    ColemanCheck b = coleman_interpolation_check(S, 1, 2, 60, 1e300);
    INFO(mag_string(a.residual) << " " << mag_string(b.residual) << " ratio " << a.ratio);
    REQUIRE(b.residual < a.residual);
    REQUIRE(b.remainder_bound < a.remainder_bound);
    REQUIRE(a.ratio < 0.1);
    // m = 0 puts the evaluation point outside the disk of convergence
    REQUIRE_THROWS_AS(coleman_interpolation_check(S, 1, 0, 60), Error);
}

TEST_CASE("Galois norms of Theta values") {
    const Preset& Q = qi();
    Lattice L = Q.lattice(P);
    auto detect = [&](long x, long y) {
        APComplex N = theta_galois_norm(Q, L, Q.alpha, Q.K.elem(x, y));
        return detect_algebraic(N, Q.K.label(), mpz_class(100000000), 1e-40);
    };
    // composite moduli give units
    for (auto [x, y] : {std::pair{3L, 3L}, {6L, 0L}}) {
        auto c = detect(x, y);
        REQUIRE(c);
        REQUIRE(c->a * c->a + c->b * c->b == 1);
    }
    // prime powers do not
    auto c = detect(2, 2);
    REQUIRE(c);
    REQUIRE(c->a == -64);
}
