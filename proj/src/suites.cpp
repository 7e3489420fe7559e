#include "cmeis/suites.hpp"

#include "cmeis/eisenstein.hpp"
#include "cmeis/formalgroup.hpp"
#include "cmeis/heckeL.hpp"
#include "cmeis/thetaunits.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>

namespace cmeis {

bool SuiteReport::pass() const {
    for (auto& c : checks)
        if (!c.pass) return false;
    return true;
}

nlohmann::json SuiteReport::to_json(bool with_timings) const {
    nlohmann::json j;
    j["schema"] = 1;
    j["suite"] = suite;
    j["preset"] = preset;
    j["bits"] = bits;
    j["pass"] = pass();
    auto& arr = j["checks"] = nlohmann::json::array();
    for (auto& c : checks) {
        nlohmann::json r{{"suite", c.suite},         {"label", c.label}, {"anchor", c.anchor},
                         {"residual", c.residual},   {"tolerance", c.tolerance}, {"pass", c.pass}};
        if (with_timings) r["seconds"] = c.seconds;
        arr.push_back(r);
    }
    return j;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"eisenstein-identities", "theta-distribution", "elliptic-units",
                                                "lvalue-consistency",    "damerell",           "formal-groups",
                                                "tamagawa-rhs"};
    return names;
}

SuiteParams default_params(const Preset& P) {
    SuiteParams s;
    mpz_class fn = P.psi.conductor().norm(), disc = P.disc();
    for (long p = 5;; ++p) {
        if (!is_prime(p) || fn % p == 0 || disc % p == 0) continue;
        if (P.K.split_type(p).kind == SplitKind::Split) {
            s.p = p;
            break;
        }
    }
    OKElem bad = P.psi.conductor() * (6 * s.p);
    for (auto& r : ideals_up_to(P.K, 1000))
        if (r.norm > 1 && P.K.coprime(r.gen, bad)) {
            s.aux = r.gen;
            break;
        }
    // the conductor times a small cofactor keeps the modulus norm <= 64
    s.route_modulus = P.psi.conductor();
    for (auto& r : ideals_up_to(P.K, 64)) {
        OKElem m = P.psi.conductor() * r.gen;
        if (m.norm() <= 64 && m.norm() > s.route_modulus.norm()) s.route_modulus = m;
    }
    return s;
}

namespace {

using Clock = std::chrono::steady_clock;

std::string tol_string(double t) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.0e", t);
    return buf;
}

struct Runner {
    SuiteReport& rep;
    std::string suite;

    // f returns the residual; exceptions count as failures with an infinite residual
    void check(const std::string& label, const std::string& anchor, double tol, const std::function<Mag()>& f) {
        auto t0 = Clock::now();
        CheckRecord r{suite, label, anchor, "", tol_string(tol), false, 0};
        try {
            Mag m = f();
            r.residual = mag_string(m);
            r.pass = m.is_finite() && m.to_double() <= tol;
        } catch (const Error& e) {
            r.residual = "inf";
            r.label += " [" + std::string(code_name(e.code())) + "]";
        }
        r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
        rep.checks.push_back(r);
    }
    // exact identities: residual 0 or 1
    void exact(const std::string& label, const std::string& anchor, const std::function<bool()>& f) {
        check(label, anchor, 0, [&] { return f() ? Mag(0.0) : Mag(1.0); });
    }
};

APComplex sample_point(const Lattice& L, std::mt19937& rng, Prec p) {
    auto u = [&] { return 0.05 + 0.9 * (rng() / 4294967296.0); };
    double x = u(), y = u();
    return L.gen1() * Real(x, p) + L.gen2() * Real(y, p);
}

Mag rel_diff(const APComplex& a, const APComplex& b) { return rel_residual(a, b); }

// ---- suites ----

void eisenstein_identities(Runner& R, const Preset& P, Prec bits, const SuiteParams& S) {
    Lattice L = P.lattice(bits);
    std::mt19937 rng(S.seed);
    std::vector<APComplex> zs;
    for (int i = 0; i < S.z_samples; ++i) zs.push_back(sample_point(L, rng, bits));
    std::vector<Jet> jets;
    for (auto& z : zs) jets.push_back(log_theta_alpha_taylor(z, L, P.K, P.alpha, 6));
    // d^k/dz^k log Theta(c - z) = -12 E_k(c - z, L, a)
    double fact = 1;
    for (int k = 1; k <= 5; ++k) {
        fact *= k;
        R.check("log Theta derivative k=" + std::to_string(k) + " at " + std::to_string(S.z_samples) + " points",
                "log-derivative of Theta is -12 E_k", 1e-20, [&] {
                    Mag worst(0.0);
                    for (size_t i = 0; i < zs.size(); ++i) {
                        APComplex lhs = jets[i].c[k] * Real(k % 2 ? -fact : fact, bits);
                        APComplex rhs = eis_alpha({0, k}, zs[i], L, P.K, P.alpha) * -12L;
                        worst = max(worst, rel_diff(lhs, rhs));
                    }
                    return worst;
                });
    }
    auto samples = phi_samples(12, 11, bits), held = phi_samples(5, 12, bits);
    std::vector<EisWeight> ws;
    for (int k = 2; k <= 6; ++k) ws.push_back({0, k});
    ws.push_back({-1, 2});
    ws.push_back({-1, 3});
    ws.push_back({-2, 3});
    for (auto w : ws)
        R.check("Phi polynomial (" + std::to_string(w.i) + "," + std::to_string(w.k) + ") held-out",
                "E_{i,k} is an isobaric polynomial in E_1..E_{k-i}", 1e-20, [&] {
                    PhiFit f = fit_phi(w, samples, held);
                    if (!f.leading_ok) return Mag::inf();
                    return Mag(f.heldout_residual);
                });
}

void theta_distribution(Runner& R, const Preset& P, Prec bits, const SuiteParams&) {
    Lattice L = P.lattice(bits);
    APComplex z = L.gen1() * Real(0.13, bits) + L.gen2() * Real(0.37, bits);
    R.check("Theta via sigma against Theta via wp", "Theta as a sigma quotient and as a wp product", 1e-25, [&] {
        ThetaValue t = theta_alpha(z, L, P.K, P.alpha);
        return rel_diff(t.via_sigma, t.via_wp);
    });
    for (auto& r : ideals_up_to(P.K, 8)) {
        if (!P.K.coprime(r.gen, P.alpha)) continue;
        R.check("distribution b=" + r.gen.str() + " N=" + std::to_string(r.norm),
                "product of Theta over b-division points", 1e-25,
                [&] { return distribution_check(r.gen, z, L, P.K, P.alpha); });
    }
}

void elliptic_units(Runner& R, const Preset& P, Prec bits, const SuiteParams& S) {
    UnitSetup U(P, S.p, S.aux, bits);
    int steps[][4] = {{2, 0, 1, 0}, {1, 1, 1, 0}, {2, 1, 1, 1}};
    for (auto& s : steps) {
        std::string lv = "(" + std::to_string(s[0]) + "," + std::to_string(s[1]) + ")->(" + std::to_string(s[2]) +
                         "," + std::to_string(s[3]) + ")";
        NormCompat c;
        bool have = false;
        auto get = [&]() -> NormCompat& {
            if (!have) c = norm_compat_check(U, s[0], s[1], s[2], s[3]);
            have = true;
            return c;
        };
        R.check("norm " + lv + " p=" + std::to_string(S.p), "elliptic units are norm compatible", 1e-25,
                [&] { return get().residual; });
        R.check("norm " + lv + " with missing torsion shifts", "distribution relation completes the norm", 1e-25,
                [&] { return get().completed_residual; });
    }
}

void lvalue_consistency(Runner& R, const Preset& P, Prec bits, const SuiteParams& S) {
    const OKElem& m = S.route_modulus;
    RayClassGroup G(P.K, m);
    long N = suggest_truncation(P.K, m, 1e-20);
    for (auto [i, k] : std::vector<std::pair<int, int>>{{0, 3}, {0, 4}, {-1, 4}}) {
        R.check("routes (" + std::to_string(i) + "," + std::to_string(k) + ") mod " + m.str() + " all " +
                    std::to_string(G.order()) + " cosets",
                "partial L-values from Eisenstein numbers", 1e-15, [&] {
                    auto D = l_direct_classes(P.psi, {k - i, k, m, {}, false}, N, bits);
                    Mag worst(0.0);
                    for (size_t c = 0; c < G.order(); ++c) {
                        LValue E = l_via_eisenstein(P.psi, i, k, m, G.reps()[c], APComplex(1L, bits));
                        APComplex d = D[c].value - E.value;
                        worst = max(worst, d.mid_up() + d.rad());
                    }
                    return worst;
                });
    }
    OKElem fp = P.psi.conductor() * P.K.split_type(S.p).primes[0];
    long Nc = suggest_truncation(P.K, fp, 1e-20);
    for (int k : {2, 3})
        R.check("kernel sum k=" + std::to_string(k) + " p=" + std::to_string(S.p) + " a=" + S.aux.str(),
                "Eisenstein sums over the kernel give partial L-values", 1e-12,
                [&] { return partial_chain(P, S.p, 1, k, S.aux, Nc, bits).residual; });
}

void damerell_suite(Runner& R, const Preset& P, Prec bits, const SuiteParams&) {
    for (auto [k, j] : std::vector<std::pair<int, int>>{{3, 0}, {4, 0}, {4, 1}}) {
        R.check("rational value (" + std::to_string(k) + "," + std::to_string(j) + ") stable in bits and N",
                "Damerell algebraicity", 1e-20, [&, k = k, j = j] {
                    auto a = damerell(P, k, j, kDefaultTruncation, bits);
                    auto b = damerell(P, k, j, 2 * kDefaultTruncation, 2 * bits);
                    if (!(*a.candidate == *b.candidate)) return Mag(1.0);
                    return max(Mag(a.candidate->residual), Mag(b.candidate->residual));
                });
    }
}

void formal_groups(Runner& R, const Preset& P, Prec, const SuiteParams& S) {
    const long prec = 80, m = 30;
    auto W = weierstrass_fg(P.a4, P.a6);
    R.exact("weierstrass expansions satisfy the curve", "x(T), y(T) on the curve", [&] {
        for (auto& c : W.curve_residual().c)
            if (c != 0) return false;
        return true;
    });
    R.exact("weierstrass law: unit", "formal group axioms", [&] { return has_unit(W.law.F); });
    R.exact("weierstrass law: commutative", "formal group axioms", [&] { return commutative(W.law.F); });
    R.exact("weierstrass law: associative", "formal group axioms", [&] { return associative(W.law.F); });
    R.exact("weierstrass log is additive", "logarithm of the formal group", [&] { return log_additive(W.law); });
    R.exact("omega(0) = 1 and log' = dx/2y", "invariant differential is dT at the origin", [&] {
        return W.omega.c[0] == 1 && agree(derivative(W.law.log).truncate(W.law.D() - 1),
                                          W.omega.truncate(W.law.D() - 1));
    });
    R.exact("exp(log T) = T", "logarithm of the formal group",
            [&] { return agree(compose(W.law.exp, W.law.log), Series<mpq_class>::var(W.law.D(), 0)); });
    for (auto& pr : P.K.split_type(S.p).primes) {
        OKElem psi = P.psi.eval(pr);
        R.exact("[psi(" + pr.str() + ")] = T^" + std::to_string(S.p) + " mod p", "Frobenius lifts to psi",
                [&] { return frobenius_defect(cm_endomorphism(W, PadicEmbedding(P.K, psi, 40)(psi))) >= 1; });
    }

    long p = S.p;
    auto Gm = lubin_tate(Padic::of(p, p, prec), multiplicative_lift(p, prec, 30), p);
    R.exact("multiplicative group F = X + Y + XY", "Lubin-Tate group of (1+T)^p - 1", [&] {
        Series2<Padic> want(30, Padic(p, prec));
        want.c[1][0] = want.c[0][1] = want.c[1][1] = Padic::of(1, p, prec);
        return agree(Gm.law.F, want, m);
    });
    R.exact("multiplicative group log = log(1+T)", "Lubin-Tate group of (1+T)^p - 1", [&] {
        for (int n = 1; n <= 30; ++n)
            if (!agree_mod(Gm.law.log.c[n], Padic::of(mpq_class(n % 2 ? 1 : -1, n), p, prec), m - 4)) return false;
        return true;
    });
    R.exact("coleman norm N(T) = T", "norm operator on the multiplicative group", [&] {
        Series<Padic> T = Series<Padic>::var(30, Padic(p, prec));
        return agree(coleman_norm(T, Gm), T, m);
    });

    OKElem g = P.K.split_type(p).primes[0];
    Padic pi = PadicEmbedding(P.K, g, prec)(g);
    auto LT = lubin_tate(pi, frobenius_lift(pi, p, 30), p);
    R.exact("lubin-tate law axioms mod p^30", "formal group axioms", [&] {
        return has_unit(LT.law.F, m) && commutative(LT.law.F, m) && associative(LT.law.F, m);
    });
    R.exact("lubin-tate log is additive mod p^30", "logarithm of the formal group",
            [&] { return log_additive(LT.law, m); });
    R.exact("[a][b] = [ab] for a, b in {2, 3, pi}", "endomorphisms of a Lubin-Tate group", [&] {
        std::vector<Padic> as{Padic::of(2, p, prec), Padic::of(3, p, prec), pi};
        if (!agree(LT.endo(pi), LT.f, m)) return false;
        for (auto& a : as)
            for (auto& b : as)
                if (!agree(compose(LT.endo(a), LT.endo(b)), LT.endo(a * b), m)) return false;
        return true;
    });
    R.exact("two frobenius lifts are isomorphic", "uniqueness of the Lubin-Tate group", [&] {
        Series<Padic> f2 = LT.f;
        f2.c[2] = pi;
        f2.c[3] = pi * pi;
        auto B = lubin_tate(pi, f2, p);
        Series<Padic> th = intertwiner(LT.f, f2, pi, Padic::of(1, p, prec));
        return agree(compose(f2, th), compose(th, LT.f), m) &&
               agree(apply(th, LT.law.F), substitute(B.law.F, th, th), m);
    });
}

void tamagawa_suite(Runner& R, const Preset& P, Prec bits, const SuiteParams& S) {
    OKElem fp = P.psi.conductor() * P.K.split_type(S.p).primes[0];
    long N = std::max(20000L, suggest_truncation(P.K, fp, 1e-20));
    R.check("j=0 k=3 right-hand side against the Eisenstein chain, p=" + std::to_string(S.p) + " a=" + S.aux.str(),
            "(N a - psi^k(a)) L_fp(psi^-k, 0)", 1e-12, [&] {
                auto t = tamagawa_rhs(P, 3, 0, S.p, S.aux, N, bits);
                return rel_diff(t.value, tamagawa_eisenstein_chain(P, 3, S.p, S.aux, bits));
            });
    for (auto [k, j] : std::vector<std::pair<int, int>>{{3, 0}, {5, 3}, {4, 1}}) {
        R.check("alpha search (" + std::to_string(k) + "," + std::to_string(j) + ") p=" + std::to_string(S.p) +
                    " norm <= 500",
                "valuation of the alpha factor equals the local H^0", 0, [&, k = k, j = j] {
                    auto a = alpha_search(P, k, j, S.p, 500);
                    if (!a.found) return Mag::inf();
                    return Mag(static_cast<double>(std::abs(a.valuation - a.h0_exponent)));
                });
    }
}

} // namespace

SuiteReport run_suite(const std::string& name, const Preset& P, Prec bits) {
    return run_suite(name, P, bits, default_params(P));
}

SuiteReport run_suite(const std::string& name, const Preset& P, Prec bits, const SuiteParams& params) {
    using Fn = void (*)(Runner&, const Preset&, Prec, const SuiteParams&);
    static const std::vector<std::pair<std::string, Fn>> table{
        {"eisenstein-identities", eisenstein_identities}, {"theta-distribution", theta_distribution},
        {"elliptic-units", elliptic_units},               {"lvalue-consistency", lvalue_consistency},
        {"damerell", damerell_suite},                     {"formal-groups", formal_groups},
        {"tamagawa-rhs", tamagawa_suite}};
    SuiteReport rep{name, P.name, bits, {}};
    bool any = false;
    for (auto& [n, fn] : table)
        if (name == "all" || name == n) {
            Runner R{rep, n};
            fn(R, P, bits, params);
            any = true;
        }
    if (!any) fail(ErrorCode::UnknownSuite, "unknown suite '" + name + "'");
    return rep;
}

} // namespace cmeis
