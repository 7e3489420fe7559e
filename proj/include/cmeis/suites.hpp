#pragma once
// Named verification suites shared by the command line tool and the
// acceptance runner. Every check yields a residual against a tolerance.
#include "cmeis/preset.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace cmeis {

struct CheckRecord {
    std::string suite;
    std::string label;
    std::string anchor;     // which identity of the theory is exercised
    std::string residual;   // decimal string, upper bound
    std::string tolerance;  // decimal string
    bool pass = false;
    double seconds = 0;
};

struct SuiteReport {
    std::string suite;
    std::string preset;
    Prec bits = 0;
    std::vector<CheckRecord> checks;
    bool pass() const;
    // schema 1; timings are left out when with_timings is false so reports can be diffed
    nlohmann::json to_json(bool with_timings = true) const;
};

// per-preset choices that the checks depend on; defaults come from the preset
struct SuiteParams {
    long p = 0;            // split prime of good reduction, >= 5
    OKElem aux;            // auxiliary ideal prime to 6 f p
    OKElem route_modulus;  // modulus (multiple of f) for the L-route comparison
    int z_samples = 10;    // random points for the log-derivative identity
    unsigned seed = 20240601;
};
SuiteParams default_params(const Preset& P);

const std::vector<std::string>& suite_names();  // without "all"
// UnknownSuite for anything not in suite_names() or "all"
SuiteReport run_suite(const std::string& name, const Preset& P, Prec bits);
SuiteReport run_suite(const std::string& name, const Preset& P, Prec bits, const SuiteParams& params);

} // namespace cmeis
