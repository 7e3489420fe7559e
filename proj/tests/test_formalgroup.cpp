#include <catch_amalgamated.hpp>

#include <functional>

#include "cmeis/formalgroup.hpp"
#include "cmeis/preset.hpp"

using namespace cmeis;

namespace {

const long kPrec = 80;  // working p-adic precision
const long kCheck = 30; // identities asserted mod p^kCheck

Padic num(long x, long p) { return Padic::of(x, p, kPrec); }

Series<Padic> poly(std::initializer_list<long> cs, long p, int D = 30) {
    Series<Padic> s(D, Padic(p, kPrec));
    int k = 0;
    for (long c : cs) s.c[k++] = num(c, p);
    return s;
}

Padic gaussian_pi() {
    ImagQuadField K(4);
    return PadicEmbedding(K, K.elem(2, 1), kPrec)(K.elem(2, 1));
}

void require_error(ErrorCode code, const std::function<void()>& f) {
    try {
        f();
        FAIL("expected " << code_name(code));
    } catch (const Error& e) {
        REQUIRE(e.code() == code);
    }
}

} // namespace

TEST_CASE("weierstrass expansions of y^2 = x^3 - x") {
    auto W = weierstrass_fg(-1, 0);
    REQUIRE(W.omega.c[0] == 1);
    REQUIRE(W.x2.c[0] == 1);
    REQUIRE(W.y3.c[0] == -1);
    for (auto& c : W.curve_residual().c) REQUIRE(c == 0);
    // known low terms: T^2 x = 1 - a4 T^4 + ..., omega = 1 + 2 a4 T^4 + ...
    REQUIRE(W.x2.c[4] == 1);
    REQUIRE(W.omega.c[4] == -2);
    // F = X + Y mod degree 2
    const auto& F = W.law.F;
    REQUIRE(F.c[1][0] == 1);
    REQUIRE(F.c[0][1] == 1);
    REQUIRE(F.c[1][1] == 0);
}

TEST_CASE("weierstrass group law axioms on every preset curve") {
    for (const char* name : {"qi", "d7", "d3"}) {
        Preset P = load_preset(name);
        auto W = weierstrass_fg(P.a4, P.a6);
        INFO(name);
        for (auto& c : W.curve_residual().c) REQUIRE(c == 0);
        REQUIRE(has_unit(W.law.F));
        REQUIRE(commutative(W.law.F));
        REQUIRE(associative(W.law.F));
        REQUIRE(log_additive(W.law));
        // the log of the group law has differential dx/2y
        REQUIRE(agree(derivative(W.law.log).truncate(29), W.omega.truncate(29)));
        REQUIRE(agree(compose(W.law.log, W.law.exp), Series<mpq_class>::var(30, 0)));
        REQUIRE(agree(compose(W.law.exp, W.law.log), Series<mpq_class>::var(30, 0)));
        // [2] by the law, against exp(2 log)
        REQUIRE(agree(multiply_by(W.law.F, 2), compose(W.law.exp, mpq_class(2) * W.law.log)));
    }
}

TEST_CASE("psi(p) acts as frobenius on the weierstrass formal group") {
    for (auto [name, p] : {std::pair{"qi", 5L}, {"qi", 13L}, {"d7", 11L}, {"d3", 7L}}) {
        Preset P = load_preset(name);
        auto W = weierstrass_fg(P.a4, P.a6);
        for (auto& pr : P.K.split_type(p).primes) {
            OKElem pi = P.psi.eval(pr);
            PadicEmbedding emb(P.K, pi, 60);
            INFO(name << " " << pr.str() << " psi " << pi.str());
            REQUIRE(frobenius_defect(cm_endomorphism(W, emb(pi))) >= 1);
            // a unit twist of psi is not frobenius
            REQUIRE(frobenius_defect(cm_endomorphism(W, emb(-pi))) == 0);
        }
    }
}

TEST_CASE("weierstrass log denominators") {
    // omega is integral, so the T^n coefficient of log has denominator dividing n
    auto W = weierstrass_fg(-1, 0);
    for (auto& c : W.omega.c) REQUIRE(c.get_den() == 1);
    for (int n = 1; n <= 30; ++n) {
        mpz_class den = W.law.log.c[n].get_den();
        INFO("n=" << n << " coefficient " << W.law.log.c[n].get_str());
        REQUIRE(mpz_divisible_ui_p(mpz_class(n).get_mpz_t(), den.get_ui()) != 0);
    }
    REQUIRE(W.law.log.c[5] == mpq_class(-2, 5));
    REQUIRE(W.law.log.c[9] == mpq_class(2, 3));
}

TEST_CASE("singular curves are refused") {
    require_error(ErrorCode::SingularCurve, [] { weierstrass_fg(0, 0); });
    require_error(ErrorCode::SingularCurve, [] { weierstrass_fg(-3, 2); });
}

TEST_CASE("multiplicative group from (1+T)^p - 1") {
    for (long p : {3L, 5L, 7L}) {
        auto G = lubin_tate(num(p, p), multiplicative_lift(p, kPrec, 30), p);
        const auto& F = G.law.F;
        INFO("p=" << p);
        for (int i = 0; i <= 30; ++i)
            for (int j = 0; i + j <= 30; ++j) {
                long want = (i + j == 1 || (i == 1 && j == 1)) ? 1 : 0;
                REQUIRE(agree_mod(F.c[i][j], num(want, p), kCheck));
            }
        // log(1+T)
        for (int n = 1; n <= 30; ++n)
            REQUIRE(agree_mod(G.law.log.c[n], Padic::of(mpq_class(n % 2 ? 1 : -1, n), p, kPrec), kCheck - 4));
        REQUIRE(agree(compose(G.law.log, G.law.exp), Series<Padic>::var(30, Padic(p, kPrec)), kCheck - 4));
    }
}

TEST_CASE("lubin-tate group for pi = 2+i at 5") {
    Padic pi = gaussian_pi();
    REQUIRE(pi.val() == 1);
    auto G = lubin_tate(pi, frobenius_lift(pi, 5, 30), 5);
    REQUIRE(has_unit(G.law.F, kCheck));
    REQUIRE(commutative(G.law.F, kCheck));
    REQUIRE(associative(G.law.F, kCheck));
    REQUIRE(log_additive(G.law, kCheck));
    // pi acts as f, and endomorphisms compose
    REQUIRE(agree(G.endo(pi), G.f, kCheck));
    std::vector<Padic> as{num(2, 5), num(3, 5), pi};
    for (auto& a : as)
        for (auto& b : as) REQUIRE(agree(compose(G.endo(a), G.endo(b)), G.endo(a * b), kCheck));
    // integer endomorphisms agree with repeated addition
    REQUIRE(agree(G.endo(num(3, 5)), multiply_by(G.law.F, 3), kCheck));
}

TEST_CASE("two frobenius lifts give isomorphic groups") {
    Padic pi = gaussian_pi();
    Series<Padic> f = frobenius_lift(pi, 5, 30), g = f;
    g.c[2] = pi;           // pi T + pi T^2 + T^5
    g.c[3] = pi * pi;      // and a cubic term divisible by pi
    auto A = lubin_tate(pi, f, 5), B = lubin_tate(pi, g, 5);
    Series<Padic> th = intertwiner(f, g, pi, num(1, 5));
    REQUIRE(agree(compose(g, th), compose(th, f), kCheck));
    REQUIRE(agree(apply(th, A.law.F), substitute(B.law.F, th, th), kCheck));
    REQUIRE_FALSE(agree(A.law.F, B.law.F, kCheck));
}

TEST_CASE("invalid frobenius lifts") {
    Padic pi = gaussian_pi();
    require_error(ErrorCode::InvalidFrobeniusLift, [&] {
        auto f = frobenius_lift(pi, 5, 30);
        f.c[4] = num(1, 5);  // T^4 is not divisible by pi
        lubin_tate(pi, f, 5);
    });
    require_error(ErrorCode::InvalidFrobeniusLift, [&] { lubin_tate(num(2, 5), frobenius_lift(num(2, 5), 5, 30), 5); });
    require_error(ErrorCode::InvalidFrobeniusLift, [&] {
        auto f = frobenius_lift(pi, 5, 30);
        f.c[1] = num(5, 5);
        lubin_tate(pi, f, 5);
    });
}

TEST_CASE("coleman norm") {
    for (long p : {3L, 5L}) {
        auto G = lubin_tate(num(p, p), multiplicative_lift(p, kPrec, 30), p);
        INFO("p=" << p);
        REQUIRE(agree(coleman_norm(poly({0, 1}, p), G), poly({0, 1}, p), kCheck));
        // constants go to their q-th power
        Padic c = num(2, p);
        Padic cq = c;
        for (long k = 1; k < p; ++k) cq = cq * c;
        REQUIRE(agree(coleman_norm(poly({2}, p), G), Series<Padic>::constant(30, cq, Padic(p, kPrec)), kCheck));
        // multiplicative on polynomials whose product stays below the truncation
        auto g = poly({1, 2, 0, 1}, p), h = poly({0, 1, 1}, p);
        REQUIRE(agree(coleman_norm(g * h, G), coleman_norm(g, G) * coleman_norm(h, G), kCheck - 10));
        require_error(ErrorCode::NonUnitInput, [&] { coleman_norm(poly({0, p}, p), G); });
        require_error(ErrorCode::NonUnitInput, [&] { coleman_norm(poly({0}, p), G); });
    }
    // on the pi = 2+i group the truncated law only pins the low coefficients
    // (the torsion points have valuation 1/4); those are checked
    Padic pi = gaussian_pi();
    auto L = lubin_tate(pi, frobenius_lift(pi, 5, 30), 5);
    auto T = poly({0, 1}, 5);
    auto NT = coleman_norm(T, L);
    REQUIRE(NT.c[1].prec() >= 6);
    REQUIRE(agree(NT.truncate(5), T.truncate(5), 2));
    auto g = poly({1, 1}, 5), h = poly({3, 0, 1}, 5);
    REQUIRE(agree((coleman_norm(g * h, L)).truncate(4), (coleman_norm(g, L) * coleman_norm(h, L)).truncate(4), 2));
    Padic c = num(7, 5), c5 = c * c * c * c * c;
    REQUIRE(agree(coleman_norm(poly({7}, 5), L).truncate(4), Series<Padic>::constant(4, c5, Padic(5, kPrec)), 2));
}
