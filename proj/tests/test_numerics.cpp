#include <catch_amalgamated.hpp>

#include "cmeis/numerics.hpp"

using namespace cmeis;

namespace {

APComplex cx(double re, double im, Prec p = 256) { return APComplex(Real(re, p), Real(im, p)); }

bool inside(const APComplex& fine, const APComplex& coarse) {
    // fine midpoint must lie in the coarse ball
    APComplex d = fine.mid() - coarse.mid();
    return d.mid_up() <= coarse.rad() + fine.rad();
}

LatticeBasis square(Prec p = 256) { return {cx(1, 0, p), cx(0, 1, p)}; }

} // namespace

TEST_CASE("ball arithmetic keeps 1/3*3 around 1") {
    APComplex t = APComplex(1L, 128) / APComplex(3L, 128);
    APComplex one = t * 3L;
    REQUIRE(overlaps(one, APComplex(1L, 128)));
    REQUIRE(one.rad().to_double() < 1e-35);
}

TEST_CASE("interval soundness across precisions") {
    for (int s = 1; s <= 8; ++s) {
        mpq_class a(s * 7 + 1, 13), b(3, s + 4);
        auto f = [&](Prec p) {
            APComplex x(a, p), y(b, p);
            APComplex z = APComplex(x.re(), y.re());
            APComplex w = exp(z * z) / (z + APComplex(1L, p)) - log(z) * sqrt(z);
            return pow(w, 5) * conj(w);
        };
        APComplex lo = f(80), hi = f(300);
        REQUIRE(inside(hi, lo));
        REQUIRE(hi.rad() < lo.rad());
    }
}

TEST_CASE("inverse of a ball around zero refuses") {
    APComplex z(Real(0L, 64), Real(0L, 64), Mag(1e-3));
    REQUIRE_THROWS_AS(inv(z), Error);
}

TEST_CASE("lattice_sum divergent spec") {
    SumSpec s{2, 0, cx(0.3, 0.2), 10.0, Mag()};
    REQUIRE_THROWS_MATCHES(lattice_sum(s, square()), Error,
                           Catch::Matchers::Predicate<Error>([](const Error& e) {
                               return e.code() == ErrorCode::DivergentSpec;
                           }));
}

TEST_CASE("lattice_sum pole at lattice point") {
    SumSpec s{4, 0, cx(1, 1), 10.0, Mag()};
    REQUIRE_THROWS_AS(lattice_sum(s, square()), Error);
}

TEST_CASE("odd weight sum flips sign under z -> -z") {
    SumSpec a{3, 0, cx(0.31, 0.17), 40.0, Mag()};
    SumSpec b{3, 0, -cx(0.31, 0.17), 40.0, Mag()};
    APComplex u = lattice_sum(a, square()), v = lattice_sum(b, square());
    REQUIRE(overlaps(u, -v));
}

TEST_CASE("lattice_sum is basis independent and tail bound contains doubled R") {
    LatticeBasis L{cx(1.0, 0.1), cx(0.3, 1.2)};
    LatticeBasis M{L.w1 * 2L + L.w2, L.w1 + L.w2};  // unimodular change, det 1
    SumSpec a{5, 0, cx(0.2, 0.4), 30.0, Mag()};
    SumSpec b = a;
    SumSpec c = a;
    c.R = 60.0;
    APComplex u = lattice_sum(a, L), v = lattice_sum(b, M), w = lattice_sum(c, L);
    REQUIRE(overlaps(u, v));
    REQUIRE(overlaps(u, w));
    REQUIRE(w.rad() < u.rad());
    // mixed weight too
    SumSpec d{4, -1, cx(0.2, 0.4), 40.0, Mag()};
    SumSpec e = d;
    e.R = 80.0;
    REQUIRE(overlaps(lattice_sum(d, L), lattice_sum(e, M)));
}

TEST_CASE("gamma_q matches closed forms") {
    Real y(2.5, 200);
    APComplex g1 = gamma_q(1, y);
    REQUIRE(overlaps(g1, APComplex::from_real(exp(-y))));
    APComplex g3 = gamma_q(3, y);
    Real expect = exp(-y) * (Real(1L, 200) + y + y * y / 2);
    REQUIRE(overlaps(g3, APComplex::from_real(expect)));
}

TEST_CASE("detect_algebraic examples") {
    auto half = detect_algebraic(APComplex(mpq_class(1, 2), 256), FieldLabel::rationals(), 10, 1e-30);
    REQUIRE(half);
    REQUIRE(half->a == mpq_class(1, 2));

    APComplex x(Real(1.25, 256), Real(-0.75, 256));
    auto g = detect_algebraic(x, FieldLabel::quadratic(4), 10, 1e-30);
    REQUIRE(g);
    REQUIRE(g->a == mpq_class(5, 4));
    REQUIRE(g->b == mpq_class(-3, 4));

    auto none = detect_algebraic(APComplex::from_real(pi(256)), FieldLabel::rationals(), 1000000, 1e-30);
    REQUIRE_FALSE(none);
}

TEST_CASE("detect_algebraic round-trips embedded elements") {
    for (long d : {3L, 4L, 7L, 8L}) {
        for (int s = 0; s < 6; ++s) {
            AlgebraicCandidate c;
            c.field = FieldLabel::quadratic(d);
            c.a = mpq_class(17 * s - 40, 3 + s);
            c.b = mpq_class(5 - 9 * s, 7 + 2 * s);
            c.a.canonicalize();
            c.b.canonicalize();
            auto got = detect_algebraic(c.embed(256), c.field, 100000, 1e-40);
            REQUIRE(got);
            REQUIRE(*got == c);
        }
    }
}
