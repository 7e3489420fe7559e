#include "cmeis/preset.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#ifndef CMEIS_PRESET_DIR
#define CMEIS_PRESET_DIR "presets"
#endif

namespace cmeis {

namespace {

using nlohmann::json;

// j(O_K) for the class number one fields
mpz_class j_of_field(long d) {
    switch (d) {
    case 3: return 0;
    case 4: return 1728;
    case 7: return -3375;
    case 8: return 8000;
    case 11: return -32768;
    case 19: return -884736;
    case 43: return -884736000;
    case 67: return mpz_class("-147197952000");
    case 163: return mpz_class("-262537412640768000");
    }
    fail(ErrorCode::PresetInvalid, "no j-invariant for d=" + std::to_string(d));
}

mpq_class rat(const json& v) {
    if (v.is_number_integer()) return mpq_class(v.get<long>());
    mpq_class r(v.get<std::string>());
    r.canonicalize();
    return r;
}

long legendre(long a, long p) {
    a %= p;
    if (a < 0) a += p;
    if (a == 0) return 0;
    mpz_class x(a), pp(p);
    return mpz_legendre(x.get_mpz_t(), pp.get_mpz_t());
}

void validate(const Preset& P) {
    if (P.a4.get_den() != 1 || P.a6.get_den() != 1) fail(ErrorCode::PresetInvalid, "integral model expected");
    mpq_class c = 4 * P.a4 * P.a4 * P.a4, den = c + 27 * P.a6 * P.a6;
    if (den == 0) fail(ErrorCode::SingularCurve, "singular model");
    mpq_class j = 1728 * c / den;
    if (j != mpq_class(j_of_field(P.K.d())))
        fail(ErrorCode::PresetInvalid, "j-invariant " + j.get_str() + " does not match O_K");
    mpz_class D = P.disc();
    for (long p = 5; p < 80; ++p) {
        if (!is_prime(p) || D % p == 0 || P.K.d() % p == 0) continue;
        if (curve_ap(P, p) != hecke_ap(P, p))
            fail(ErrorCode::PresetInvalid, "a_" + std::to_string(p) + " disagrees with the twist table");
    }
    if (!P.K.coprime(P.alpha, P.psi.conductor() * 6))
        fail(ErrorCode::PresetInvalid, "alpha must be prime to 6f");
}

} // namespace

mpz_class Preset::disc() const {
    mpq_class v = -16 * (4 * a4 * a4 * a4 + 27 * a6 * a6);
    return v.get_num();
}

APComplex Preset::omega(Prec p) const {
    Lattice L0 = Lattice::cm(K, APComplex(1L, p));
    APComplex g2c(mpq_class(-4 * a4), p), g3c(mpq_class(-4 * a6), p);
    APComplex r(p);
    long e;
    if (a4 != 0) {
        r = L0.g2() / g2c;
        e = 4;
    } else {
        r = L0.g3() / g3c;
        e = 6;
    }
    if (r.re().sign() <= 0) fail(ErrorCode::PresetInvalid, "no real period for this model");
    Real lam = exp(log(r.re()) / Real(e, p));
    APComplex W = APComplex::from_real(lam);
    W.add_error(r.rad() * Mag::of(lam));  // |d lam| <= lam |dr| / (e r) and r ~ 1
    Lattice L = Lattice::cm(K, W);
    if (!(L.g2() - g2c).contains_zero() || !(L.g3() - g3c).contains_zero())
        fail(ErrorCode::PresetInvalid, "period lattice does not reproduce g2, g3");
    if (!period_hint.empty()) {
        Real h = Real::parse(period_hint, p);
        size_t digits = period_hint.size() - period_hint.find('.') - 1;
        if (abs(h - lam).to_double() > 2 * std::pow(10.0, -static_cast<double>(digits)))
            fail(ErrorCode::PresetInvalid, "real period " + lam.to_string(25) + " disagrees with hint");
    }
    return W;
}

long curve_ap(const Preset& P, long p) {
    long a4 = mpz_class(P.a4.get_num() % p).get_si(), a6 = mpz_class(P.a6.get_num() % p).get_si();
    long s = 0;
    for (long x = 0; x < p; ++x) s += legendre((x * x % p * x + a4 * x + a6) % p, p);
    return -s;
}

long hecke_ap(const Preset& P, long p) {
    auto sp = P.K.split_type(p);
    if (sp.kind != SplitKind::Split) return 0;
    return P.psi.eval(sp.primes[0]).trace().get_si();
}

Preset parse_preset(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
        ImagQuadField K(j.at("d_K").get<long>());
        auto g = j.at("conductor_generator");
        OKElem f = K.elem(g.at(0).get<long>(), g.at(1).get<long>());
        std::vector<std::pair<OKElem, int>> table;
        for (auto& e : j.at("twist_table")) {
            auto r = e.at("residue");
            table.emplace_back(K.elem(r.at(0).get<long>(), r.at(1).get<long>()), e.at("unit_power").get<int>());
        }
        auto& c = j.at("curve");
        OKElem alpha = K.one();
        if (j.contains("alpha")) alpha = K.elem(j["alpha"].at(0).get<long>(), j["alpha"].at(1).get<long>());
        Preset P{j.at("name").get<std::string>(), K, HeckeCharacter(K, f, table), rat(c.at("a4")), rat(c.at("a6")),
                 c.value("real_period_hint", std::string()), alpha};
        validate(P);
        return P;
    } catch (const json::exception& e) {
        fail(ErrorCode::PresetParseError, e.what());
    } catch (const std::invalid_argument& e) {
        fail(ErrorCode::PresetParseError, e.what());
    }
}

std::string preset_dir() {
    if (const char* e = std::getenv("CMEIS_PRESET_DIR")) return e;
    return CMEIS_PRESET_DIR;
}

Preset load_preset(const std::string& s) {
    std::filesystem::path path(s);
    if (!std::filesystem::exists(path)) path = std::filesystem::path(preset_dir()) / (s + ".json");
    std::ifstream in(path);
    if (!in) fail(ErrorCode::PresetParseError, "cannot read preset " + s);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_preset(ss.str());
}

} // namespace cmeis
