// cmeis: run verification suites, evaluate L-values, print formal groups.
// exit codes: 0 pass, 1 check failure, 2 usage error
#include <CLI11.hpp>
#include <json.hpp>

#include "cmeis/formalgroup.hpp"
#include "cmeis/heckeL.hpp"
#include "cmeis/preset.hpp"
#include "cmeis/suites.hpp"

#include <fstream>
#include <iostream>

using namespace cmeis;

namespace {

const int kPass = 0, kFail = 1, kUsage = 2;

int cmd_run(const std::string& suite, const std::string& preset, Prec bits, const std::string& out, bool timings) {
    Preset P = load_preset(preset);
    SuiteReport rep = run_suite(suite, P, bits);
    std::string text = rep.to_json(timings).dump(2) + "\n";
    if (out.empty() || out == "-") {
        std::cout << text;
    } else {
        std::ofstream f(out);
        if (!f) {
            std::cerr << "cannot write " << out << "\n";
            return kUsage;
        }
        f << text;
        size_t bad = 0;
        for (auto& c : rep.checks) {
            std::cout << (c.pass ? "pass " : "FAIL ") << c.suite << ": " << c.label << "  " << c.residual << " (tol "
                      << c.tolerance << ")\n";
            bad += !c.pass;
        }
        std::cout << rep.checks.size() - bad << "/" << rep.checks.size() << " checks pass, report in " << out << "\n";
    }
    return rep.pass() ? kPass : kFail;
}

void print_lvalue(const LValue& v) {
    std::cout << "route: " << route_name(v.route) << "\n";
    std::cout << "value: " << v.value.to_string(30) << "\n";
    std::cout << "error bound: " << mag_string(v.value.rad()) << "\n";
    if (v.route == Route::Direct) {
        std::cout << "truncation N: " << v.N << "\n";
        std::cout << "tail bound: " << mag_string(v.tail) << "\n";
    }
}

int cmd_lvalue(int k, int j, std::string route, bool detect, long N, const std::string& preset, Prec bits) {
    Preset P = load_preset(preset);
    const OKElem& f = P.psi.conductor();
    std::cout << "L(psibar^" << (j + k) << ", " << k << ") for " << P.name << ", Euler factors at " << f.str()
              << " removed\n";
    // direct needs 2k - (k+j) > 2
    if (route == "auto") route = k - j > 2 ? "direct" : "eisenstein";
    if (route != "direct" && k - j < 2) {
        std::cerr << "need k - j > 1\n";
        return kUsage;
    }
    std::vector<LValue> vals;
    if (route == "direct" || route == "both") vals.push_back(l_direct(P.psi, LSpec::shifted(j, k, f), N, bits));
    if (route == "eisenstein" || route == "both")
        vals.push_back(l_eisenstein_total(P.psi, -j, k, f, APComplex(1L, bits)));
    int rc = kPass;
    for (auto& v : vals) print_lvalue(v);
    if (vals.size() == 2) {
        APComplex d = vals[0].value - vals[1].value;
        Mag gap = d.mid_up(), allowed = vals[0].value.rad() + vals[1].value.rad();
        bool ok = gap <= allowed;
        std::cout << "difference: " << mag_string(gap) << " (bounds allow " << mag_string(allowed) << ") "
                  << (ok ? "agree" : "DISAGREE") << "\n";
        if (!ok) rc = kFail;
    }
    if (detect) {
        DamerellResult r = damerell(P, k, j, N, bits);
        std::cout << "normalized value: " << r.value.to_string(30) << "\n";
        std::cout << "rational candidate: " << r.candidate->to_string() << " (height " << r.candidate->height.get_str()
                  << ", residual " << mag_string(r.candidate->residual) << ")\n";
        std::cout << "archimedean constant: " << r.mu_infinity.to_string(30) << "\n";
        std::cout << "constant carries sqrt|d|: " << (r.sqrt_flag ? "yes" : "no") << "\n";
    }
    return rc;
}

template <class C>
void print_series(const std::string& name, const Series<C>& s) {
    std::cout << name << " = " << to_string(s) << "\n";
}

int cmd_fg(const std::string& preset, int D) {
    if (D < 2) {
        std::cerr << "--trunc must be at least 2\n";
        return kUsage;
    }
    Preset P = load_preset(preset);
    auto W = weierstrass_fg(P.a4, P.a6, D);
    std::cout << "curve y^2 = x^3 + (" << P.a4.get_str() << ")x + (" << P.a6.get_str() << "), T = -x/y, mod degree "
              << D + 1 << "\n";
    std::cout << "F(X,Y) = X + Y";
    const auto& F = W.law.F;
    for (int n = 2; n <= D; ++n)
        for (int i = 0; i <= n; ++i) {
            const mpq_class& c = F.c[i][n - i];
            if (c == 0) continue;
            std::cout << " + (" << c.get_str() << ")";
            if (i) std::cout << "*X^" << i;
            if (n - i) std::cout << "*Y^" << n - i;
        }
    std::cout << "\n";
    print_series("log(T)", W.law.log);
    print_series("exp(T)", W.law.exp);
    print_series("omega(T)", W.omega);
    print_series("T^2 x(T)", W.x2);
    print_series("T^3 y(T)", W.y3);
    bool ok = has_unit(F) && commutative(F) && associative(F) && log_additive(W.law);
    for (auto& c : W.curve_residual().c) ok = ok && c == 0;
    std::cout << "axioms and curve equation: " << (ok ? "exact" : "FAILED") << "\n";
    return ok ? kPass : kFail;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"cmeis: numerical checks for Eisenstein-Kronecker numbers, elliptic units and CM L-values"};
    app.require_subcommand(1);

    std::string suite, preset = "qi", out;
    Prec bits = 256;
    bool no_timings = false;
    auto* run = app.add_subcommand("run", "run a verification suite and write a JSON report");
    run->add_option("suite", suite,
                    "eisenstein-identities, theta-distribution, elliptic-units, lvalue-consistency, damerell, "
                    "formal-groups, tamagawa-rhs, or all")
        ->required();
    run->add_option("--preset", preset, "preset name (qi, d7, d3) or JSON file");
    run->add_option("--bits", bits, "working precision in bits")->check(CLI::Range(64, 8192));
    run->add_option("--out", out, "report path; stdout when omitted");
    run->add_flag("--no-timings", no_timings, "leave wall times out of the report");

    int k = 0, j = 0;
    std::string route = "auto";
    bool detect = false;
    long N = kDefaultTruncation;
    auto* lv = app.add_subcommand("lvalue", "evaluate L(psibar^(k+j), k)");
    lv->add_option("-k", k, "evaluation point")->required();
    lv->add_option("-j", j, "extra power of psibar")->required()->check(CLI::NonNegativeNumber);
    lv->add_option("--route", route, "direct, eisenstein, both, or auto")
        ->check(CLI::IsMember({"direct", "eisenstein", "both", "auto"}));
    lv->add_flag("--detect", detect, "recognize the normalized value as a rational");
    lv->add_option("-N", N, "largest ideal norm in the direct sum")->check(CLI::PositiveNumber);
    lv->add_option("--preset", preset, "preset name or JSON file");
    lv->add_option("--bits", bits, "working precision in bits")->check(CLI::Range(64, 8192));

    std::string curve = "qi";
    int D = kSeriesTruncation;
    auto* fg = app.add_subcommand("fg", "print the formal group of a preset curve");
    fg->add_option("--curve", curve, "preset name or JSON file");
    fg->add_option("--trunc", D, "truncation degree");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kPass : kUsage;
    }

    try {
        if (*run) return cmd_run(suite, preset, bits, out, !no_timings);
        if (*lv) return cmd_lvalue(k, j, route, detect, N, preset, bits);
        if (*fg) return cmd_fg(curve, D);
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        switch (e.code()) {
            case ErrorCode::UnknownSuite:
            case ErrorCode::PresetParseError:
            case ErrorCode::PresetInvalid:
            case ErrorCode::ConvergenceRefused:
            case ErrorCode::InvalidInput:
            case ErrorCode::SingularCurve:
                return kUsage;
            default:
                return kFail;
        }
    }
    return kUsage;
}
