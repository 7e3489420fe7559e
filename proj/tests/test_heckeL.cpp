#include <catch_amalgamated.hpp>

#include "cmeis/heckeL.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>

using namespace cmeis;

namespace {

const Prec P = 256;

bool agree(const APComplex& a, const APComplex& b, double tol) {
    return overlaps(a, b) && (a - b).mid_up().to_double() < tol;
}

bool rel_close(const APComplex& a, const APComplex& b, double tol) {
    return ((a - b).abs_up() / b.abs_down()).to_double() < tol;
}

// r_2-style count: elements of norm <= N divided by the unit count
long brute_ideal_count(const ImagQuadField& K, long N) {
    long c = 0;
    for (long a = -400; a <= 400; ++a)
        for (long b = -400; b <= 400; ++b) {
            mpz_class n = K.elem(a, b).norm();
            if (n > 0 && n <= N) ++c;
        }
    return c / K.w();
}

} // namespace

TEST_CASE("ideal enumeration and disk cache") {
    auto dir = std::filesystem::temp_directory_path() / "cmeis_test_cache";
    std::filesystem::remove_all(dir);
    setenv("CMEIS_CACHE_DIR", dir.c_str(), 1);
    for (long d : {4L, 7L, 3L}) {
        ImagQuadField K(d);
        auto& v = ideals_up_to(K, 997);
        REQUIRE(static_cast<long>(v.size()) == brute_ideal_count(K, 997));
        for (size_t i = 0; i < v.size(); ++i) {
            REQUIRE(K.normalize(v[i].gen) == v[i].gen);
            REQUIRE(v[i].gen.norm() == v[i].norm);
            if (i) REQUIRE(v[i - 1].norm <= v[i].norm);
        }
        std::ifstream in(dir / ("ideals_d" + std::to_string(d) + "_N997.json"));
        REQUIRE(in.good());
        auto j = nlohmann::json::parse(in);
        REQUIRE(j["schema"] == 1);
        REQUIRE(j["ideals"].size() == v.size());
    }
    unsetenv("CMEIS_CACHE_DIR");
}

TEST_CASE("partial values over all classes sum to the full value") {
    Preset Q = load_preset("qi");
    OKElem m = Q.K.elem(8, 0);
    LSpec s{4, 4, m, {}, false};
    LValue full = l_direct(Q.psi, s, 10000, P);
    auto parts = l_direct_classes(Q.psi, s, 10000, P);
    REQUIRE(parts.size() == 8);
    APComplex sum(P);
    for (auto& x : parts) sum += x.value;
    REQUIRE(agree(sum, full.value, 1e-40));
    // selecting two classes is the sum of those two
    s.classes = {1, 5};
    REQUIRE(agree(l_direct(Q.psi, s, 10000, P).value, parts[1].value + parts[5].value, 1e-40));
}

TEST_CASE("L(psibar^4, 4) on Q(i) is stable in the truncation") {
    Preset Q = load_preset("qi");
    LSpec s{4, 4, Q.psi.conductor(), {}, false};
    LValue a = l_direct(Q.psi, s, 10000, P), b = l_direct(Q.psi, s, 40000, P);
    REQUIRE(a.tail.to_double() < 1e-30);
    REQUIRE(agree(a.value, b.value, 1e-18));
}

TEST_CASE("direct and eisenstein routes agree on every coset") {
    struct Case {
        const char* preset;
        long ma, mb;
    };
    for (Case c : {Case{"qi", 8, 0}, Case{"d7", 3, 1}, Case{"d3", 6, 0}}) {
        Preset Pr = load_preset(c.preset);
        OKElem m = Pr.K.elem(c.ma, c.mb);
        RayClassGroup G(Pr.K, m);
        long N = suggest_truncation(Pr.K, m, 1e-20);
        for (auto [i, k] : std::vector<std::pair<int, int>>{{0, 3}, {0, 4}, {-1, 4}}) {
            auto D = l_direct_classes(Pr.psi, {k - i, k, m, {}, false}, N, P);
            for (size_t cl = 0; cl < G.order(); ++cl) {
                LValue E = l_via_eisenstein(Pr.psi, i, k, m, G.reps()[cl], APComplex(1L, P));
                INFO(c.preset << " (" << i << "," << k << ") class " << G.reps()[cl].str());
                REQUIRE(D[cl].route == Route::Direct);
                REQUIRE(E.route == Route::Eisenstein);
                REQUIRE(agree(D[cl].value, E.value, 1e-15));
            }
        }
    }
}

TEST_CASE("eisenstein route is independent of the Omega used") {
    Preset Q = load_preset("qi");
    OKElem f = Q.psi.conductor();
    LValue a = l_via_eisenstein(Q.psi, -1, 4, f, Q.K.one(), APComplex(1L, P));
    LValue b = l_via_eisenstein(Q.psi, -1, 4, f, Q.K.one(), Q.omega(P));
    REQUIRE(agree(a.value, b.value, 1e-50));
}

TEST_CASE("convergence refusal and the regularized flag") {
    Preset Q = load_preset("qi");
    OKElem f = Q.psi.conductor();
    try {
        l_direct(Q.psi, {6, 4, f, {}, false}, 10000, P);
        FAIL("expected ConvergenceRefused");
    } catch (const Error& e) {
        REQUIRE(e.code() == ErrorCode::ConvergenceRefused);
    }
    // boundary w = 2, s = 2 agrees with E_2 once allowed
    LValue d = l_direct(Q.psi, {2, 2, f, {}, true}, 10000, P);
    LValue e = l_via_eisenstein(Q.psi, 0, 2, f, Q.K.one(), APComplex(1L, P));
    REQUIRE(agree(d.value, e.value, 1e-30));
}

TEST_CASE("both spellings of the shifted series coincide term by term") {
    Preset Q = load_preset("d7");
    OKElem f = Q.psi.conductor();
    LValue a = l_direct(Q.psi, LSpec::shifted(1, 4, f), 10000, P);
    LValue b = l_direct(Q.psi, {5, 4, f, {}, false}, 10000, P);
    REQUIRE(a.value.re() == b.value.re());
    REQUIRE(a.value.im() == b.value.im());
}

TEST_CASE("empty class selection is flagged") {
    Preset Q = load_preset("qi");
    auto v = l_direct_classes(Q.psi, {4, 4, Q.K.elem(8, 0), {}, false}, 3, P);
    size_t empties = 0;
    for (auto& x : v)
        if (x.empty) {
            ++empties;
            REQUIRE(x.tail.to_double() > 1e-6);
        }
    REQUIRE(empties > 0);
}

TEST_CASE("partial L-values from Eisenstein sums over the kernel B") {
    Preset Q = load_preset("qi");
    OKElem a = Q.K.elem(3, 2);
    long N = suggest_truncation(Q.K, Q.psi.conductor() * Q.K.split_type(5).primes[0], 1e-20);
    for (int k : {2, 3}) {
        auto c = partial_chain(Q, 5, 1, k, a, N, P);
        INFO("k=" << k);
        REQUIRE(c.kernel_size == 1);
        REQUIRE(c.residual.to_double() < 1e-20);
    }
    // d7 has a kernel of size 3
    Preset D = load_preset("d7");
    OKElem a7 = D.K.elem(3, 0);
    long N7 = suggest_truncation(D.K, D.psi.conductor() * D.K.split_type(11).primes[0], 1e-16);
    auto c = partial_chain(D, 11, 1, 3, a7, N7, P);
    REQUIRE(c.kernel_size == 3);
    REQUIRE(c.residual.to_double() < 1e-14);
}

TEST_CASE("damerell values are rational and stable") {
    Preset Q = load_preset("qi");
    for (auto [k, j] : std::vector<std::pair<int, int>>{{3, 0}, {4, 0}, {4, 1}}) {
        auto a = damerell(Q, k, j, 10000, 256);
        auto b = damerell(Q, k, j, 20000, 512);
        INFO(k << "," << j << " -> " << a.candidate->to_string());
        REQUIRE(*a.candidate == *b.candidate);
        REQUIRE(a.candidate->a != 0);
        REQUIRE(a.sqrt_flag == (j % 2 == 1));
        // the eisenstein route over the classes mod f lands on the same number
        RayClassGroup G(Q.K, Q.psi.conductor());
        APComplex L(256);
        for (auto& c : G.reps()) L += l_via_eisenstein(Q.psi, -j, k, Q.psi.conductor(), c, APComplex(1L, 256)).value;
        REQUIRE(agree(L, a.L.value, 1e-30));
    }
    // k - j = 2 goes through the eisenstein route
    auto e = damerell(load_preset("d3"), 3, 1, 10000, 256);
    REQUIRE(e.L.route == Route::Eisenstein);
    REQUIRE_THROWS_AS(damerell(Q, 3, 2, 10000, 256), Error);
}

TEST_CASE("tamagawa right-hand side") {
    Preset Q = load_preset("qi");
    auto r = tamagawa_rhs(Q, 1, 0, 13, Q.K.elem(2, 1), 10000, P);
    REQUIRE(r.factor_integral == Q.K.elem(6, -2));
    REQUIRE(r.valuation == 0);
    REQUIRE_THROWS_AS(tamagawa_rhs(Q, 3, 0, 13, Q.K.one(), 10000, P), Error);
    REQUIRE_THROWS_AS(tamagawa_rhs(Q, 3, 0, 5, Q.K.elem(2, 1), 10000, P), Error);

    OKElem a = Q.K.elem(3, 2);
    auto t = tamagawa_rhs(Q, 3, 0, 5, a, 20000, P);
    REQUIRE(t.euler_set == "fp");
    APComplex chain = tamagawa_eisenstein_chain(Q, 3, 5, a, P);
    REQUIRE(rel_close(t.value, chain, 1e-20));

    auto t1 = tamagawa_rhs(Q, 4, 1, 5, a, 20000, P);
    REQUIRE(t1.euler_set == "fpp*");
    REQUIRE(t1.L.route == Route::Direct);
    auto t2 = tamagawa_rhs(Q, 3, 1, 5, a, 20000, P);
    REQUIRE(t2.L.route == Route::Eisenstein);
}

TEST_CASE("alpha search meets the local H^0 valuation") {
    struct Case {
        const char* preset;
        long p;
        int k, j, h0;
    };
    for (Case c : {Case{"qi", 5, 3, 0, 0}, Case{"qi", 5, 5, 3, 1}, Case{"qi", 7, 8, 0, 1}, Case{"d3", 7, 7, 1, 1},
                   Case{"d7", 5, 26, 4, 2}}) {
        auto s = alpha_search(load_preset(c.preset), c.k, c.j, c.p, 500);
        INFO(c.preset << " p=" << c.p << " k=" << c.k << " j=" << c.j);
        REQUIRE(s.h0_exponent == c.h0);
        REQUIRE(s.found);
        REQUIRE(s.valuation == c.h0);
        REQUIRE(s.alpha.norm() <= 500);
        REQUIRE(s.min_valuation <= c.h0);
    }
}
