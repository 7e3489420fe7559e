#pragma once
// Hecke L-values L(psibar^w, s) with Euler factors at a modulus removed:
// a smoothed direct ideal sum with rigorous error, the Eisenstein route,
// Damerell rationality and the local Tamagawa right-hand sides.
#include "cmeis/eisenstein.hpp"
#include "cmeis/preset.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cmeis {

// normalized generators of all integral ideals of norm <= N, sorted by (norm, a, b)
struct IdealRecord {
    long norm;
    OKElem gen;
};
const std::vector<IdealRecord>& ideals_up_to(const ImagQuadField& K, long N);
std::string ideal_cache_dir();  // CMEIS_CACHE_DIR, else $HOME/.cache/cmeis; "" disables the disk cache

// sum over integral a prime to modulus (optionally in the listed ray classes mod modulus)
// of psibar(a)^w N(a)^-s
struct LSpec {
    int w = 0;
    int s = 0;
    OKElem modulus;
    std::vector<size_t> classes;  // indices into RayClassGroup(K, modulus); empty = all
    bool allow_regularized = false;

    // L(psibar^j psi^-k, 0): the same series as w = j + k, s = k
    static LSpec shifted(int j, int k, const OKElem& modulus) { return {j + k, k, modulus, {}, false}; }
};

enum class Route { Direct, Eisenstein };
inline const char* route_name(Route r) { return r == Route::Direct ? "direct" : "eisenstein"; }

struct LValue {
    APComplex value;   // radius includes the truncation bound
    Route route = Route::Direct;
    long N = 0;        // largest ideal norm summed
    Mag tail;          // truncation bound (dual side + primal tail)
    bool empty = false;  // no ideal of norm <= N in the selection
};

constexpr long kDefaultTruncation = 10000;
// smallest N (at least the default) whose truncation bound for this modulus is about tol
long suggest_truncation(const ImagQuadField& K, const OKElem& modulus, double tol);

LValue l_direct(const HeckeCharacter& psi, const LSpec& spec, long N, Prec p);
// one value per class of RayClassGroup(K, spec.modulus); spec.classes ignored
std::vector<LValue> l_direct_classes(const HeckeCharacter& psi, const LSpec& spec, long N, Prec p);

// partial L(psibar^(k-i), sigma_c, k) mod m from E_{i,k}(Omega, Omega m c^-1 O_K)
LValue l_via_eisenstein(const HeckeCharacter& psi, int i, int k, const OKElem& m, const OKElem& c,
                        const APComplex& Omega);
// the same summed over every class mod m: L(psibar^(k-i), k) with Euler factors at m removed
LValue l_eisenstein_total(const HeckeCharacter& psi, int i, int k, const OKElem& m, const APComplex& Omega);

// ray classes mod m whose psi-value is congruent to psi(target) mod q (q | m)
std::vector<size_t> classes_with_psi_residue(const HeckeCharacter& psi, const RayClassGroup& G,
                                             const OKElem& q, const OKElem& target);

// sum_{b in B} E_k(psi(a b), f p^n) against (k-1)! L_{K_n}(psi^-k, sigma_a, 0),
// B the ray classes mod f p^n with psi(b) = 1 mod p^n
struct PartialChain {
    APComplex eisenstein;
    LValue lvalue;        // (k-1)! times the partial L-value
    size_t kernel_size = 0;
    Mag residual;         // |eisenstein - lvalue| / |lvalue|
};
PartialChain partial_chain(const Preset& P, long p, int n, int k, const OKElem& a, long N, Prec prec);

struct DamerellResult {
    int k = 0, j = 0;
    APComplex value;          // (2pi/sqrt|d|)^j Omega^-(k+j) L(psibar^(k+j), k)
    LValue L;
    std::optional<AlgebraicCandidate> candidate;
    bool sqrt_flag = false;   // j odd: the archimedean constant carries sqrt|d|
    APComplex mu_infinity;    // (2pi)^-j (4 Omega)^(k+j) [sqrt|d|]
};
// DetectionFailed when no rational of height <= height_bound is found
DamerellResult damerell(const Preset& P, int k, int j, long N, Prec prec, const mpz_class& height_bound = 100000000);

struct TamagawaRHS {
    KElem factor;              // N a - psi^k psibar^-j (a)
    OKElem factor_integral;    // N(a)^j times factor, same p-valuation
    int valuation = 0;         // at the prime p above p
    OKElem prime;
    std::string euler_set;     // "fpp*" or "fp"
    LValue L;
    APComplex value;
};
TamagawaRHS tamagawa_rhs(const Preset& P, int k, int j, long p, const OKElem& a, long N, Prec prec);

// the same j = 0 value through sum over Cl(f p) of E_k(psi(c) Omega/pi, L, a), Omega = Omega_inf / f
APComplex tamagawa_eisenstein_chain(const Preset& P, int k, long p, const OKElem& a, Prec prec);

struct AlphaSearch {
    bool found = false;
    OKElem alpha;
    int valuation = -1;       // of the factor at p, capped at `cap`
    int h0_exponent = 0;      // #H^0 = N(p)^h0_exponent, from the local Galois image
    int min_valuation = 0;    // over all searched ideals
    size_t searched = 0;
    int cap = 0;
};
AlphaSearch alpha_search(const Preset& P, int k, int j, long p, long max_norm = 500, int cap = 8);

} // namespace cmeis
