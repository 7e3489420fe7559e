#include "cmeis/thetaunits.hpp"

#include <cmath>
#include <set>

namespace cmeis {

namespace {

mpq_class frac(const mpq_class& x) {
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return x - f;
}

const CmTag& tag_of(const Lattice& L) {
    if (!L.cm_tag()) fail(ErrorCode::InvalidInput, "CM lattice expected");
    return *L.cm_tag();
}

APComplex pow12(const APComplex& x) {
    APComplex x2 = x * x, x4 = x2 * x2;
    return x4 * x4 * x4;
}

Jet pow6(const Jet& x) {
    Jet x2 = x * x;
    return x2 * x2 * x2;
}

Lattice divided(const Lattice& L, const ImagQuadField& K, const OKElem& a) {
    return L.scaled(inv(K.embed(a, L.prec())));
}

// wp(h) h^2 = 1 + sum_k c_k h^(2k+2)
Jet wp_laurent_h2(const Lattice& L, size_t len) {
    Prec p = L.prec();
    size_t kmax = len / 2 + 1;
    std::vector<APComplex> c(kmax + 1, APComplex(p));
    if (kmax >= 1) c[1] = L.g2() / 20L;
    if (kmax >= 2) c[2] = L.g3() / 28L;
    for (size_t k = 3; k <= kmax; ++k) {
        APComplex s(p);
        for (size_t m = 1; m + 1 < k; ++m) s += c[m] * c[k - 1 - m];
        c[k] = s * 3L / static_cast<long>((2 * k + 3) * (k - 2));
    }
    Jet H(len, p);
    H.c[0] = APComplex(1L, p);
    for (size_t k = 1; 2 * k + 2 < len; ++k) H.c[2 * k + 2] = c[k];
    return H;
}

APComplex minimal_rep(const APComplex& z, const Lattice& L) {
    APComplex best = L.reduce(z);
    for (int i = -1; i <= 1; ++i)
        for (int j = -1; j <= 1; ++j) {
            APComplex c = best + L.w1() * static_cast<long>(i) + L.w2() * static_cast<long>(j);
            if (c.abs_up() < best.abs_up()) best = c;
        }
    return best;
}

} // namespace

APComplex theta(const APComplex& z, const Lattice& L) {
    // evaluate at the reduced point; theta(r + w) = theta(r) exp(6(eta(w) r - eta(r) w)) for w in L
    APComplex w(L.prec());
    APComplex r = L.reduce(z, &w);
    APComplex t = L.disc() * exp(eta_quasi(r, L) * r * -6L) * pow12(sigma(r, L));
    return t * exp((eta_quasi(w, L) * r - eta_quasi(r, L) * w) * 6L);
}

APComplex cm_point(const Lattice& L, const ImagQuadField& K, const KElem& kappa) {
    const CmTag& t = tag_of(L);
    Prec p = L.prec();
    KElem r(frac(kappa.a), frac(kappa.b), kappa.t, kappa.n);
    return t.Omega * K.embed(t.c, p) * K.embed(r, p);
}

std::vector<std::pair<APComplex, int>> alpha_torsion(const Lattice& L, const ImagQuadField& K, const OKElem& a) {
    HNF h = K.ideal_hnf(a);
    long N = h.index().get_si();
    std::vector<char> seen(N, 0);
    std::vector<std::pair<APComplex, int>> out;
    KElem ai = inv(KElem(a));
    for (long idx = 1; idx < N; ++idx) {
        if (seen[idx]) continue;
        OKElem r = K.residue_from_index(idx, h);
        long neg = K.residue_index(-r, h);
        seen[idx] = seen[neg] = 1;
        out.emplace_back(cm_point(L, K, KElem(r) * ai), neg == idx ? 1 : 2);
    }
    return out;
}

APComplex theta_alpha_sigma(const APComplex& z, const Lattice& L, const ImagQuadField& K, const OKElem& a) {
    APComplex zr = L.reduce(z);
    long N = a.norm().get_si();
    return pow(theta(zr, L), N) / theta(zr, divided(L, K, a));
}

APComplex theta_alpha_wp(const APComplex& z, const Lattice& L, const ImagQuadField& K, const OKElem& a) {
    APComplex zr = L.reduce(z);
    APComplex w = wp(zr, L);
    APComplex prod = L.disc() / divided(L, K, a).disc();
    for (auto& [u, mult] : alpha_torsion(L, K, a)) {
        APComplex d = w - wp(u, L);
        APComplex d2 = d * d;
        APComplex f = L.disc() / (d2 * d2 * d2);
        prod = prod * (mult == 2 ? f * f : f);
    }
    return prod;
}

ThetaValue theta_alpha(const APComplex& z, const Lattice& L, const ImagQuadField& K, const OKElem& a) {
    ThetaValue t{APComplex(L.prec()), theta_alpha_sigma(z, L, K, a), theta_alpha_wp(z, L, K, a)};
    if (!overlaps(t.via_sigma, t.via_wp))
        fail(ErrorCode::PathDisagreement,
             "Theta paths differ: " + t.via_sigma.to_string(20) + " vs " + t.via_wp.to_string(20));
    t.value = t.via_wp.rad() < t.via_sigma.rad() ? t.via_wp : t.via_sigma;
    return t;
}

Jet theta_alpha_taylor(const APComplex& z0, const Lattice& L, const ImagQuadField& K, const OKElem& a, size_t len) {
    Prec p = L.prec();
    APComplex zr = L.reduce(z0);
    long Na = a.norm().get_si();
    APComplex C = L.disc() / divided(L, K, a).disc() * pow(L.disc(), Na - 1);
    auto tors = alpha_torsion(L, K, a);
    bool at_lattice = zr.contains_zero();
    Jet base = at_lattice ? wp_laurent_h2(L, len) : wp_jet(zr, L, len);
    Jet h2(len, p);
    if (len > 2) h2.c[2] = APComplex(1L, p);
    Jet G = Jet::constant(APComplex(1L, p), len);
    for (auto& [u, mult] : tors) {
        APComplex wu = wp(u, L);
        Jet f = at_lattice ? base - h2 * wu : base - Jet::constant(wu, len);
        G = G * f;
        if (mult == 2) G = G * f;
    }
    Jet T = inv(pow6(G)) * C;
    if (!at_lattice) return T;
    // Theta has a zero of order 12(Na-1) at lattice points
    size_t s = static_cast<size_t>(12 * (Na - 1));
    Jet out(len, p);
    for (size_t j = s; j < len; ++j) out.c[j] = T.c[j - s];
    return out;
}

Jet log_theta_alpha_taylor(const APComplex& z0, const Lattice& L, const ImagQuadField& K, const OKElem& a,
                           size_t len) {
    Prec p = L.prec();
    APComplex zr = L.reduce(z0);
    long Na = a.norm().get_si();
    Jet W = wp_jet(zr, L, len);
    Jet S(len, p);
    for (auto& [u, mult] : alpha_torsion(L, K, a)) {
        Jet l = log(W - Jet::constant(wp(u, L), len));
        S = S + l * APComplex(static_cast<long>(mult), p);
    }
    Jet out = S * APComplex(-6L, p);
    out.c[0] += log(L.disc() / divided(L, K, a).disc() * pow(L.disc(), Na - 1));
    return out;
}

Mag rel_residual(const APComplex& x, const APComplex& y) { return (x - y).abs_up() / y.abs_down(); }

Mag distribution_check(const OKElem& b, const APComplex& z, const Lattice& L, const ImagQuadField& K,
                       const OKElem& a) {
    if (!K.coprime(a, b)) fail(ErrorCode::NotCoprime, "distribution relation needs (a, b) = 1");
    HNF h = K.ideal_hnf(b);
    long N = h.index().get_si();
    KElem bi = inv(KElem(b));
    APComplex prod(1L, L.prec());
    for (long idx = 0; idx < N; ++idx) {
        APComplex v = cm_point(L, K, KElem(K.residue_from_index(idx, h)) * bi);
        prod = prod * theta_alpha(z + v, L, K, a).value;
    }
    return rel_residual(prod, theta_alpha(z, divided(L, K, b), K, a).value);
}

UnitSetup::UnitSetup(const Preset& P, long p_, const OKElem& a_, Prec prec)
    : preset(P), K(P.K), psi(P.psi), Omega(P.omega(prec)), L(Lattice::cm(K, Omega)), p(p_), a(a_) {
    auto sp = K.split_type(p);
    if (sp.kind != SplitKind::Split) fail(ErrorCode::InvalidInput, std::to_string(p) + " does not split");
    prime = sp.primes[0];
    prime_conj = sp.primes[1];
    if (!K.coprime(prime, psi.conductor())) fail(ErrorCode::InvalidInput, "bad prime");
    if (!K.coprime(a, psi.conductor() * (6 * p)))
        fail(ErrorCode::NotCoprime, "a must be prime to 6fp");
    pi = psi.eval(prime);
    pistar = psi.eval(prime_conj);
}

KElem UnitSetup::level_point(int n, int m) const {
    return inv(KElem(psi.conductor() * pow(pi, static_cast<unsigned long>(n)) *
                     pow(pistar, static_cast<unsigned long>(m))));
}

OKElem UnitSetup::modulus(int n, int m) const {
    return psi.conductor() * pow(prime, static_cast<unsigned long>(n)) * pow(prime_conj, static_cast<unsigned long>(m));
}

EllipticUnit elliptic_unit(const UnitSetup& S, int n, int m) {
    return {n, m, theta_alpha(S.point(S.level_point(n, m)), S.L, S.K, S.a).value, S.modulus(n, m)};
}

NormCompat norm_compat_check(const UnitSetup& S, int n1, int m1, int n2, int m2) {
    if (n1 < n2 || m1 < m2) fail(ErrorCode::InvalidInput, "norm goes down the tower");
    RayClassGroup G1(S.K, S.modulus(n1, m1)), G2(S.K, S.modulus(n2, m2));
    size_t id = G2.identity();
    KElem v = S.level_point(n1, m1);
    auto key = [](const KElem& x) { return std::pair{frac(x.a), frac(x.b)}; };
    std::set<std::pair<mpq_class, mpq_class>> hit;
    NormCompat out;
    APComplex prod(1L, S.L.prec());
    for (const OKElem& c : G1.reps()) {
        if (G2.artin_coset(c) != id) continue;
        KElem pc(S.psi.eval(c));
        hit.insert(key((pc - KElem(S.K.one())) * v));
        prod = prod * theta_alpha(S.point(pc * v), S.L, S.K, S.a).value;
        ++out.kernel_size;
    }
    APComplex e = elliptic_unit(S, n2, m2).value;
    out.residual = rel_residual(prod, e);
    // b-torsion shifts the kernel misses (an Euler factor when an exponent drops to 0)
    OKElem b = pow(S.prime, static_cast<unsigned long>(n1 - n2)) * pow(S.prime_conj, static_cast<unsigned long>(m1 - m2));
    HNF h = S.K.ideal_hnf(b);
    KElem bi = inv(KElem(b));
    out.torsion_count = h.index().get_ui();
    for (size_t idx = 0; idx < out.torsion_count; ++idx) {
        KElem t = KElem(S.K.residue_from_index(static_cast<long>(idx), h)) * bi;
        if (hit.count(key(t))) continue;
        prod = prod * theta_alpha(S.point(v + t), S.L, S.K, S.a).value;
    }
    out.completed_residual = rel_residual(prod, e);
    return out;
}

namespace {

APComplex coleman_center(const UnitSetup& S, int m) {
    return S.point(inv(KElem(S.psi.conductor() * pow(S.pistar, static_cast<unsigned long>(m)))));
}

// Theta(zeta x) = Theta(x) for units zeta, so any unit multiple of the level point will do
APComplex coleman_offset(const UnitSetup& S, const APComplex& c0, int n, int m) {
    APComplex ze(S.L.prec());
    bool first = true;
    for (const OKElem& u : S.K.units()) {
        APComplex c = minimal_rep(c0 - S.point(KElem(u) * S.level_point(n, m)), S.L);
        if (first || c.abs_up() < ze.abs_up()) ze = c;
        first = false;
    }
    return ze;
}

} // namespace

ColemanCheck coleman_interpolation_check(const UnitSetup& S, int n, int m, size_t terms, double tol) {
    if (n < 1) fail(ErrorCode::InvalidInput, "n >= 1");
    APComplex c0 = coleman_center(S, m);
    APComplex ze = coleman_offset(S, c0, n, m);
    // nearest pole of Theta(c0 + h): points of a^-1 L not in L
    double R = 1e300;
    for (auto& [u, mult] : alpha_torsion(S.L, S.K, S.a)) {
        (void)mult;
        for (const APComplex& w : {u, -u}) R = std::min(R, minimal_rep(c0 - w, S.L).abs_down().to_double());
    }
    double za = ze.abs_up().to_double();
    ColemanCheck out;
    out.ratio = za / R;
    if (out.ratio >= 1)
        fail(ErrorCode::TruncationInsufficient,
             "evaluation point outside the disk of convergence (ratio " + std::to_string(out.ratio) + ")");
    // Cauchy estimate on a circle of radius r (max |Theta| sampled); best of a few radii
    Prec p0 = S.L.prec();
    APComplex e0 = elliptic_unit(S, n, m).value;
    Mag M;
    out.remainder_bound = Mag::inf();
    for (double f : {0.5, 0.7, 0.85, 0.95}) {
        double r = za + f * (R - za), rho = za / r;
        Mag Mr;
        for (int s = 0; s < 64; ++s) {
            double th = 2 * M_PI * s / 64;
            APComplex pt = c0 + APComplex(Real(r * std::cos(th), p0), Real(r * std::sin(th), p0));
            Mr = max(Mr, theta_alpha_wp(pt, S.L, S.K, S.a).abs_up());
        }
        Mag b = Mr * Mag(2 * std::pow(rho, static_cast<double>(terms)) / (1 - rho)) / e0.abs_down();
        if (b < out.remainder_bound) out.remainder_bound = b;
        M = max(M, Mr);
    }
    if (out.remainder_bound.to_double() > tol)
        fail(ErrorCode::TruncationInsufficient, "remainder bound " + mag_string(out.remainder_bound) + " > tol");

    // terms of size up to M cancel down to |e|
    // plus ball growth in the jet inverse, roughly a few bits per coefficient
    long extra = std::max(0L, (M / e0.abs_down()).exp2()) + 32 + 4 * static_cast<long>(terms);
    out.work_prec = p0 + extra;
    UnitSetup S2(S.preset, S.p, S.a, out.work_prec);
    APComplex c2 = coleman_center(S2, m), z2 = coleman_offset(S2, c2, n, m);
    Jet T = theta_alpha_taylor(c2, S2.L, S2.K, S2.a, terms);
    APComplex x = -z2, P(out.work_prec);
    for (size_t j = terms; j-- > 0;) P = P * x + T.c[j];
    out.residual = rel_residual(P, elliptic_unit(S2, n, m).value);
    return out;
}

APComplex theta_galois_norm(const Preset& P, const Lattice& L, const OKElem& a, const OKElem& m) {
    const ImagQuadField& K = P.K;
    OKElem f = P.psi.conductor();
    OKElem M = exact_div(f * m, K.gcd(f, m));
    RayClassGroup G(K, M);
    KElem v = inv(KElem(m));
    APComplex prod(1L, L.prec());
    for (const OKElem& c : G.reps()) prod = prod * theta_alpha(cm_point(L, K, KElem(P.psi.eval(c)) * v), L, K, a).value;
    return prod;
}

} // namespace cmeis
