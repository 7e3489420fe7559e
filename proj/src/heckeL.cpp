#include "cmeis/heckeL.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

namespace cmeis {

namespace {

using nlohmann::json;

// ---- ideal enumeration ----

std::vector<IdealRecord> enumerate_ideals(const ImagQuadField& K, long N) {
    std::vector<IdealRecord> out;
    long t = K.t(), n = K.n();
    // N(a + b w) >= (d/4) b^2
    long bmax = static_cast<long>(std::sqrt(4.0 * N / K.d())) + 1;
    for (long b = -bmax; b <= bmax; ++b) {
        double D = static_cast<double>(t * t * b * b) - 4.0 * (static_cast<double>(n * b * b) - N);
        if (D < 0) continue;
        long lo = static_cast<long>(std::floor((-t * b - std::sqrt(D)) / 2)) - 1;
        long hi = static_cast<long>(std::ceil((-t * b + std::sqrt(D)) / 2)) + 1;
        for (long a = lo; a <= hi; ++a) {
            long nm = a * a + t * a * b + n * b * b;
            if (nm == 0 || nm > N) continue;
            OKElem x = K.elem(a, b);
            if (K.normalize(x) != x) continue;
            out.push_back({nm, x});
        }
    }
    std::sort(out.begin(), out.end(), [](const IdealRecord& x, const IdealRecord& y) {
        return x.norm != y.norm ? x.norm < y.norm : x.gen < y.gen;
    });
    return out;
}

std::filesystem::path cache_file(long d, long N) {
    return std::filesystem::path(ideal_cache_dir()) / ("ideals_d" + std::to_string(d) + "_N" + std::to_string(N) + ".json");
}

bool read_cache(const ImagQuadField& K, long N, std::vector<IdealRecord>& out) {
    if (ideal_cache_dir().empty()) return false;
    std::ifstream in(cache_file(K.d(), N));
    if (!in) return false;
    try {
        json j = json::parse(in);
        if (j.at("schema").get<int>() != 1 || j.at("d_K").get<long>() != K.d() || j.at("N").get<long>() != N)
            return false;
        for (auto& r : j.at("ideals")) {
            OKElem x = K.elem(r.at(1).get<long>(), r.at(2).get<long>());
            if (x.norm() != r.at(0).get<long>()) return false;
            out.push_back({r.at(0).get<long>(), x});
        }
        return true;
    } catch (const json::exception&) {
        out.clear();
        return false;
    }
}

void write_cache(const ImagQuadField& K, long N, const std::vector<IdealRecord>& v) {
    if (ideal_cache_dir().empty()) return;
    std::error_code ec;
    std::filesystem::create_directories(ideal_cache_dir(), ec);
    if (ec) return;
    json arr = json::array();
    for (auto& r : v) arr.push_back({r.norm, r.gen.a.get_si(), r.gen.b.get_si()});
    json j = {{"schema", 1}, {"d_K", K.d()}, {"N", N}, {"ideals", arr}};
    auto path = cache_file(K.d(), N);
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) return;
        out << j.dump();
    }
    std::filesystem::rename(tmp, path, ec);
}

// ---- error bounds (double, log space) ----

double log_sum_exp(double a, double b) {
    if (a == -INFINITY) return b;
    if (b == -INFINITY) return a;
    double m = std::max(a, b);
    return m + std::log(std::exp(a - m) + std::exp(b - m));
}

// log Gamma(a, y), exact for integer a >= 1, else the bound y^(a-1) e^-y (a <= 1)
double log_upper_gamma(double a, double y) {
    if (a >= 1 && a == std::floor(a)) {
        double s = 0, term = 1;  // sum_{i < a} y^i / i!
        for (int i = 0; i < static_cast<int>(a); ++i) {
            if (i > 0) term *= y / i;
            s += term;
        }
        return std::lgamma(a) - y + std::log(s);
    }
    return (a - 1) * std::log(y) - y;
}

Mag mag_from_log(double l) {
    if (l == -INFINITY) return Mag();
    return Mag::pow2(static_cast<long>(std::ceil(l / std::log(2.0))) + 1);
}

struct Geometry {
    double V0 = 0;      // covolume of O_K
    double delta0 = 0;  // diameter of its fundamental cell
    double absM = 0;    // |generator of the modulus|
    double V = 0;       // covolume of M O_K
    double r0 = 0;      // shortest nonzero dual vector
    double delta = 0;   // dual cell diameter
};

Geometry geometry(const ImagQuadField& K, const OKElem& M) {
    Geometry g;
    double sd = std::sqrt(static_cast<double>(K.d()));
    g.V0 = sd / 2;
    APComplex w = K.embed(K.elem(0, 1), 64);
    double wr = w.re_d(), wi = w.im_d();
    g.delta0 = std::max(std::hypot(1 + wr, wi), std::hypot(1 - wr, wi));
    g.absM = std::sqrt(M.norm().get_d());
    g.V = M.norm().get_d() * g.V0;
    g.r0 = 2 / (sd * g.absM);
    g.delta = g.delta0 * g.r0;
    return g;
}

// (1/V) sum over nonzero dual xi of |FT of bbar^w |b|^-2s P(s, t|b|^2)|, bounded shell by shell
double log_dual_bound(int w, int s, double t, const Geometry& g) {
    const double lpi = std::log(M_PI);
    auto logF = [&](double r_pow, double r_gam) {
        return -std::lgamma(s) + (1 + w) * lpi + w * std::log(r_pow) + (s - 1 - w) * std::log(M_PI * M_PI * r_pow * r_pow) +
               log_upper_gamma(w - s + 1, M_PI * M_PI * r_gam * r_gam / t);
    };
    int a = 2 * s - 2 - w;  // net power of r outside the Gamma factor
    double h = g.r0 / 2, total = -INFINITY;
    for (int j = 0; j < 100000; ++j) {
        double lo = g.r0 + j * h, hi = lo + h;
        double count = M_PI * (hi + g.delta) * (hi + g.delta) * g.V;
        double term = std::log(count) + logF(a >= 0 ? hi : lo, lo);
        total = log_sum_exp(total, term);
        if (j > 8 && term < total - 60) break;
    }
    return total - std::log(g.V);
}

// sum over ideals of norm > N of N^(w/2 - s) Q(s, t N), dyadic shells
double log_primal_tail(int w, int s, double t, long N, const Geometry& g, int wK) {
    double total = -INFINITY;
    for (int j = 0; j < 2000; ++j) {
        double X = N * std::ldexp(1.0, j), X2 = 2 * X;
        double count = M_PI * (std::sqrt(X2) + g.delta0) * (std::sqrt(X2) + g.delta0) / (g.V0 * wK);
        double term = std::log(count) + (w / 2.0 - s) * std::log(X) + log_upper_gamma(s, t * X) - std::lgamma(s);
        total = log_sum_exp(total, term);
        if (j > 2 && term < total - 60) break;
    }
    return total;
}

struct Prepared {
    RayClassGroup G;
    std::vector<size_t> cosets;  // residues mod M per class
};

Prepared prepare(const HeckeCharacter& psi, const LSpec& spec) {
    const ImagQuadField& K = psi.field();
    if (spec.s < 1) fail(ErrorCode::InvalidInput, "evaluation point s must be >= 1");
    if (spec.w < 0) fail(ErrorCode::InvalidInput, "character power must be >= 0");
    if (!divides(psi.conductor(), spec.modulus))
        fail(ErrorCode::InvalidInput, "modulus " + spec.modulus.str() + " not divisible by the conductor");
    if (2 * spec.s - spec.w <= 2) {
        if (!spec.allow_regularized)
            fail(ErrorCode::ConvergenceRefused, "s - w/2 = " + std::to_string(spec.s - spec.w / 2.0) +
                                                    " <= 1: direct sum not absolutely convergent, use the eisenstein route");
        if (spec.w == 0) fail(ErrorCode::ConvergenceRefused, "regularized direct sum needs w > 0");
    }
    Prepared P{RayClassGroup(K, spec.modulus), {}};
    P.cosets.assign(P.G.order(), 0);
    HNF h = K.ideal_hnf(spec.modulus);
    long Nm = h.index().get_si();
    for (long i = 0; i < Nm; ++i) {
        long c = P.G.class_of(K.residue_from_index(i, h));
        if (c >= 0) ++P.cosets[c];
    }
    return P;
}

} // namespace

std::string ideal_cache_dir() {
    if (const char* e = std::getenv("CMEIS_CACHE_DIR")) return e;
    if (const char* h = std::getenv("HOME")) return std::string(h) + "/.cache/cmeis";
    return "";
}

const std::vector<IdealRecord>& ideals_up_to(const ImagQuadField& K, long N) {
    static std::map<std::pair<long, long>, std::vector<IdealRecord>> memo;
    auto key = std::make_pair(K.d(), N);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    std::vector<IdealRecord> v;
    if (!read_cache(K, N, v)) {
        v = enumerate_ideals(K, N);
        write_cache(K, N, v);
    }
    return memo.emplace(key, std::move(v)).first->second;
}

long suggest_truncation(const ImagQuadField& K, const OKElem& modulus, double tol) {
    // both error sides decay like exp(-pi r0 sqrt N); 25 covers the polynomial factors
    double r0 = geometry(K, modulus).r0;
    double x = (std::log(1 / tol) + 25) / (M_PI * r0);
    return std::max(kDefaultTruncation, static_cast<long>(std::ceil(x * x)));
}

std::vector<LValue> l_direct_classes(const HeckeCharacter& psi, const LSpec& spec, long N, Prec p) {
    const ImagQuadField& K = psi.field();
    Prepared pr = prepare(psi, spec);
    Geometry g = geometry(K, spec.modulus);
    // t balances exp(-t N) on the primal side against exp(-pi^2 r0^2 / t) on the dual side
    Real t = pi(p) * Real(g.r0, p) / sqrt(Real(N, p));
    double td = t.to_double();
    double err_dual = log_dual_bound(spec.w, spec.s, td * (1 + 1e-12), g);
    double err_tail = log_primal_tail(spec.w, spec.s, td * (1 - 1e-12), N, g, K.w());

    size_t nc = pr.G.order();
    std::vector<APComplex> acc(nc, APComplex(p));
    std::vector<size_t> hits(nc, 0);
    long cur = -1;
    APComplex weight(p);
    for (auto& r : ideals_up_to(K, std::max(N, 1L))) {
        if (r.norm > N) break;
        long c = pr.G.class_of(r.gen);
        if (c < 0) continue;
        if (r.norm != cur) {
            cur = r.norm;
            Real nr(mpz_class(cur), p);
            weight = gamma_q(spec.s, t * nr) / APComplex::from_real(pow(nr, spec.s));
        }
        OKElem v = pow(psi.eval_conj(r.gen), spec.w);
        acc[c] += K.embed(v, p) * weight;
        ++hits[c];
    }
    std::vector<LValue> out;
    for (size_t c = 0; c < nc; ++c) {
        LValue L;
        L.value = acc[c];
        L.route = Route::Direct;
        L.N = N;
        double share = static_cast<double>(pr.cosets[c]) / K.w();
        L.tail = mag_from_log(std::log(share) + err_dual) + mag_from_log(err_tail);
        if (spec.w == 0) {
            // the xi = 0 dual term, pi t^(s-1) / (V (s-1) Gamma(s)) per coset
            mpz_class fact;
            mpz_fac_ui(fact.get_mpz_t(), spec.s - 1);
            Real V = Real(spec.modulus.norm(), p) * sqrt(Real(K.d(), p)) / 2;
            Real z = pi(p) * pow(t, spec.s - 1) / (V * Real(mpz_class(fact * (spec.s - 1)), p));
            L.value += APComplex::from_real(z * Real(share, p));
        }
        L.value.add_error(L.tail);
        L.empty = hits[c] == 0;
        out.push_back(std::move(L));
    }
    return out;
}

LValue l_direct(const HeckeCharacter& psi, const LSpec& spec, long N, Prec p) {
    auto all = l_direct_classes(psi, spec, N, p);
    if (spec.classes.empty() && all.size() == 1) return all[0];
    std::vector<size_t> sel = spec.classes;
    if (sel.empty())
        for (size_t c = 0; c < all.size(); ++c) sel.push_back(c);
    LValue L;
    L.value = APComplex(p);
    L.N = N;
    L.empty = true;
    for (size_t c : sel) {
        if (c >= all.size()) fail(ErrorCode::InvalidInput, "class index out of range");
        L.value += all[c].value;
        L.tail += all[c].tail;
        L.empty = L.empty && all[c].empty;
    }
    return L;
}

LValue l_via_eisenstein(const HeckeCharacter& psi, int i, int k, const OKElem& m, const OKElem& c,
                        const APComplex& Omega) {
    const ImagQuadField& K = psi.field();
    Prec p = Omega.prec();
    if (!divides(psi.conductor(), m)) fail(ErrorCode::InvalidInput, "conductor must divide " + m.str());
    if (!K.coprime(c, m)) fail(ErrorCode::NotCoprime, c.str() + " not prime to " + m.str());
    // generators congruent to c mod m: one per ideal unless a unit is 1 mod m
    long mult = 0;
    for (auto& u : K.units())
        if (divides(m, u - K.one())) ++mult;
    Lattice L = Lattice::cm(K, Omega, KElem(m) / KElem(c));
    APComplex E = eis({i, k}, Omega, L);
    mpz_class fact;
    mpz_fac_ui(fact.get_mpz_t(), k - 1);
    Real r = sqrt(Real(K.d(), p)) / (2 * pi(p));
    APComplex den = APComplex(mpq_class(fact * mult), p) * APComplex::from_real(pow(r, i)) * pow(Omega, i - k) *
                    pow(K.embed(psi.eval(c), p), k - i);
    APComplex num = E / APComplex::from_real(pow(Real(m.norm(), p), i));
    LValue out;
    out.value = num / den;
    out.route = Route::Eisenstein;
    out.tail = out.value.rad();
    return out;
}

std::vector<size_t> classes_with_psi_residue(const HeckeCharacter& psi, const RayClassGroup& G, const OKElem& q,
                                             const OKElem& target) {
    OKElem want = psi.eval(target);
    std::vector<size_t> out;
    for (size_t c = 0; c < G.order(); ++c)
        if (divides(q, psi.eval(G.reps()[c]) - want)) out.push_back(c);
    return out;
}

namespace {

OKElem prime_above(const ImagQuadField& K, long p) {
    if (p < 3 || !is_prime(p)) fail(ErrorCode::InvalidInput, "odd prime expected, got " + std::to_string(p));
    auto sp = K.split_type(p);
    if (sp.kind == SplitKind::Ramified) fail(ErrorCode::InvalidInput, std::to_string(p) + " ramifies in K");
    return sp.kind == SplitKind::Split ? sp.primes[0] : K.elem(p, 0);
}

mpz_class factorial(int n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return f;
}

} // namespace

// sum of the Eisenstein-route partial values over all classes mod m
LValue l_eisenstein_total(const HeckeCharacter& psi, int i, int k, const OKElem& m, const APComplex& Omega) {
    RayClassGroup G(psi.field(), m);
    LValue out;
    out.value = APComplex(Omega.prec());
    out.route = Route::Eisenstein;
    for (auto& c : G.reps()) out.value += l_via_eisenstein(psi, i, k, m, c, Omega).value;
    out.tail = out.value.rad();
    return out;
}

PartialChain partial_chain(const Preset& P, long p, int n, int k, const OKElem& a, long N, Prec prec) {
    const ImagQuadField& K = P.K;
    if (k < 2) fail(ErrorCode::InvalidInput, "k >= 2 expected");
    OKElem pr = prime_above(K, p);
    OKElem q = pow(pr, n), M = P.psi.conductor() * q;
    if (!K.coprime(a, M)) fail(ErrorCode::NotCoprime, "a must be prime to f p");
    RayClassGroup G(K, M);
    PartialChain out;
    Lattice Lam = Lattice::cm(K, APComplex(1L, prec), KElem(M));
    out.eisenstein = APComplex(prec);
    for (size_t b = 0; b < G.order(); ++b) {
        if (!divides(q, P.psi.eval(G.reps()[b]) - K.one())) continue;
        ++out.kernel_size;
        out.eisenstein += eis({0, k}, K.embed(P.psi.eval(a * G.reps()[b]), prec), Lam);
    }
    LSpec spec{k, k, M, classes_with_psi_residue(P.psi, G, q, a), k == 2};
    out.lvalue = l_direct(P.psi, spec, N, prec);
    out.lvalue.value = out.lvalue.value * APComplex(mpq_class(factorial(k - 1)), prec);
    out.residual = (out.eisenstein - out.lvalue.value).abs_up() / out.lvalue.value.abs_down();
    return out;
}

DamerellResult damerell(const Preset& P, int k, int j, long N, Prec prec, const mpz_class& height_bound) {
    if (j < 0 || j >= k || k - j < 2) fail(ErrorCode::InvalidInput, "need 0 <= j < k and k - j > 1");
    const ImagQuadField& K = P.K;
    DamerellResult r;
    r.k = k;
    r.j = j;
    const OKElem& f = P.psi.conductor();
    if (k - j > 2) {
        r.L = l_direct(P.psi, LSpec::shifted(j, k, f), N, prec);
    } else {
        r.L = l_eisenstein_total(P.psi, -j, k, f, APComplex(1L, prec));
    }
    Real Om = P.omega(prec).re(), sd = sqrt(Real(K.d(), prec)), tp = 2 * pi(prec);
    r.value = r.L.value * APComplex::from_real(pow(tp / sd, j) / pow(Om, k + j));
    r.sqrt_flag = j % 2 == 1;
    Real mu = pow(tp, -j) * pow(4 * Om, k + j);
    if (r.sqrt_flag) mu = mu * sd;
    r.mu_infinity = APComplex::from_real(mu);
    double tol = std::max(1e-30, 16 * r.value.rad().to_double());
    if (r.value.im().to_double() > tol || -r.value.im().to_double() > tol)
        fail(ErrorCode::DetectionFailed, "value not real: " + r.value.to_string());
    r.candidate = detect_algebraic(r.value, FieldLabel::rationals(), height_bound, tol);
    if (!r.candidate) fail(ErrorCode::DetectionFailed, "no rational of height <= " + height_bound.get_str() + " near " + r.value.to_string(40));
    return r;
}

TamagawaRHS tamagawa_rhs(const Preset& P, int k, int j, long p, const OKElem& a, long N, Prec prec) {
    const ImagQuadField& K = P.K;
    if (k < 1 || j < 0) fail(ErrorCode::InvalidInput, "k >= 1, j >= 0 expected");
    OKElem pr = prime_above(K, p);
    const OKElem& f = P.psi.conductor();
    if (a.norm() == 1) fail(ErrorCode::InvalidInput, "alpha must be a nontrivial ideal");
    if (!K.coprime(a, f * p)) fail(ErrorCode::NotCoprime, "alpha must be prime to f p");
    TamagawaRHS r;
    r.prime = pr;
    OKElem x = P.psi.eval(a);
    mpz_class Na = a.norm();
    OKElem xk = pow(x, static_cast<unsigned long>(k + j));
    mpz_class Naj;
    mpz_pow_ui(Naj.get_mpz_t(), Na.get_mpz_t(), j);
    r.factor_integral = K.elem(Naj * Na, 0) - xk;
    r.factor = KElem(r.factor_integral) * inv(KElem(K.elem(Naj, 0)));
    if (r.factor_integral.is_zero()) fail(ErrorCode::InvalidInput, "factor N a - psi^k psibar^-j (a) vanishes");
    r.valuation = K.valuation(r.factor_integral, pr);
    bool split = K.split_type(p).kind == SplitKind::Split;
    OKElem S = f * pr;
    r.euler_set = "fp";
    if (j > 0 && split) {
        S = f * p;
        r.euler_set = "fpp*";
    }
    if (k - j > 2)
        r.L = l_direct(P.psi, LSpec::shifted(j, k, S), N, prec);
    else
        r.L = l_eisenstein_total(P.psi, -j, k, S, APComplex(1L, prec));
    Real Om = P.omega(prec).re(), r2 = sqrt(Real(K.d(), prec)) / (2 * pi(prec));
    APComplex Omega = APComplex::from_real(Om) / K.embed(f, prec);
    r.value = APComplex(-12L, prec) * pow(K.embed(x, prec), -j) * APComplex::from_real(pow(r2, j)) * pow(Omega, -j - k) *
              K.embed(r.factor, prec) * r.L.value;
    return r;
}

APComplex tamagawa_eisenstein_chain(const Preset& P, int k, long p, const OKElem& a, Prec prec) {
    const ImagQuadField& K = P.K;
    OKElem pr = prime_above(K, p);
    const OKElem& f = P.psi.conductor();
    if (!K.coprime(a, f * p * 6)) fail(ErrorCode::NotCoprime, "alpha must be prime to 6 f p");
    Real Om = P.omega(prec).re();
    Lattice L = Lattice::cm(K, APComplex::from_real(Om));
    APComplex pi_ = K.embed(P.psi.eval(pr), prec);
    APComplex v = APComplex::from_real(Om) / (K.embed(f, prec) * pi_);
    RayClassGroup G(K, f * pr);
    APComplex sum(prec);
    for (auto& c : G.reps()) sum += eis_alpha({0, k}, K.embed(P.psi.eval(c), prec) * v, L, K, a);
    return APComplex(-12L, prec) / APComplex(mpq_class(factorial(k - 1)), prec) * pow(pi_, -k) * sum;
}

namespace {

// arithmetic in O_K / q
struct ModRing {
    const ImagQuadField& K;
    HNF h;
    OKElem red(const OKElem& x) const { return K.reduce(x, h); }
    OKElem mul(const OKElem& x, const OKElem& y) const { return red(x * y); }
    OKElem pw(OKElem x, mpz_class e) const {
        OKElem r = red(K.one());
        x = red(x);
        while (e > 0) {
            if (mpz_odd_p(e.get_mpz_t())) r = mul(r, x);
            x = mul(x, x);
            e >>= 1;
        }
        return r;
    }
};

int capped_valuation(const ImagQuadField& K, const OKElem& x, const OKElem& pr, int cap) {
    if (x.is_zero()) return cap;
    return std::min(K.valuation(x, pr), cap);
}

} // namespace

AlphaSearch alpha_search(const Preset& P, int k, int j, long p, long max_norm, int cap) {
    const ImagQuadField& K = P.K;
    OKElem pr = prime_above(K, p);
    bool split = K.split_type(p).kind == SplitKind::Split;
    const OKElem& f = P.psi.conductor();
    AlphaSearch out;
    out.cap = cap;
    ModRing R{K, K.ideal_hnf(pow(pr, cap))};
    // image of G_{K_p} under chi = psi^-k psibar^j chi_cyclo: generators of the local image
    std::vector<OKElem> gens;
    if (split) {
        // O_p = Z_p: inertia acts through u^(k-1), the uniformizer p through psibar(p)^(k+j)
        long r = 2;
        for (;; ++r) {
            if (r % p == 0) continue;
            mpz_class ord = 0, x = 1;
            do {
                x = x * r % (p * p);
                ++ord;
            } while (x != 1);
            if (ord == p * (p - 1)) break;
        }
        gens.push_back(R.pw(K.elem(r, 0), k - 1));
        gens.push_back(R.pw(P.psi.eval(pr).conj(), k + j));
    } else {
        // O_p unramified of degree 2: u -> u^(k-1) conj(u)^-(j+1) on generators of O_p^*,
        // the uniformizer p through (psi((p)) / p)^-(k+j), a root of unity
        mpz_class order = mpz_class(p) * p - 1;
        for (long e = 1; e < cap; ++e) order *= mpz_class(p) * p;
        ModRing R1{K, K.ideal_hnf(K.elem(p, 0))};
        std::vector<OKElem> units;
        for (long a = 0; a < p && units.empty(); ++a)
            for (long b = 1; b < p && units.empty(); ++b) {
                OKElem g = K.elem(a, b);
                bool prim = true;
                long q1 = p * p - 1;
                for (long l = 2; l <= q1; ++l) {
                    if (q1 % l || !is_prime(l)) continue;
                    if (R1.pw(g, q1 / l) == R1.red(K.one())) prim = false;
                }
                if (prim) units.push_back(g);
            }
        units.push_back(K.elem(1 + p, 0));
        units.push_back(K.elem(1, p));
        for (auto& u : units) {
            OKElem ub = R.pw(u.conj(), order - 1);  // conj(u)^-1
            gens.push_back(R.mul(R.pw(u, k - 1), R.pw(ub, j + 1)));
        }
        OKElem eps = exact_div(P.psi.eval(K.elem(p, 0)), K.elem(p, 0));
        gens.push_back(R.pw(eps.conj(), k + j));
    }
    out.h0_exponent = cap;
    for (auto& g : gens) out.h0_exponent = std::min(out.h0_exponent, capped_valuation(K, R.red(g - K.one()), pr, cap));
    out.min_valuation = cap;
    for (auto& rec : ideals_up_to(K, max_norm)) {
        if (rec.norm == 1 || !K.coprime(rec.gen, f * p * 6)) continue;
        ++out.searched;
        OKElem x = P.psi.eval(rec.gen);
        mpz_class Na = rec.norm, Naj;
        mpz_pow_ui(Naj.get_mpz_t(), Na.get_mpz_t(), j + 1);
        OKElem fac = K.elem(Naj, 0) - pow(x, static_cast<unsigned long>(k + j));
        int v = capped_valuation(K, fac, pr, cap);
        out.min_valuation = std::min(out.min_valuation, v);
        if (!out.found && v == out.h0_exponent) {
            out.found = true;
            out.alpha = rec.gen;
            out.valuation = v;
        }
    }
    return out;
}

} // namespace cmeis
