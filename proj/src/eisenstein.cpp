#include "cmeis/eisenstein.hpp"

#include <cmath>
#include <functional>
#include <random>
#include <sstream>

namespace cmeis {

void EisWeight::check() const {
    if (k < 1 || i > 0 || -i >= k)
        fail(ErrorCode::UnsupportedWeight, "need 0 <= -i < k, got (i,k)=(" + std::to_string(i) + "," + std::to_string(k) + ")");
}

namespace {

double lfact(int n) { return std::lgamma(n + 1.0); }

// Gamma(s, Y) for real s, via Y^(s-1) e^-Y / (1 - (s-1)/Y) (and without the
// correction when s <= 1); returned as a log
double log_upper_gamma_bound(double s, double Y) {
    double l = (s - 1) * std::log(Y) - Y;
    if (s > 1) {
        double r = (s - 1) / Y;
        if (r >= 1) return INFINITY;
        l -= std::log1p(-r);
    }
    return l;
}

// bound on sum over points x of a lattice (covolume V, cell diameter delta)
// with |x| > R of |x|^e Gamma(n, c |x|^2)
Mag ewald_tail(double e, int n, double c, double R, double delta, double V) {
    double s0 = R - 2 * delta;
    if (s0 <= 0) return Mag::inf();
    if (e > 0 && c * s0 * s0 <= (e + 1) * n) return Mag::inf();  // not yet monotone
    // int_{s0}^inf s^(e+1) Gamma(n, c s^2) ds
    //   <= (1/2) c^(-(e+2)/2) sum_{m<n} (n-1)!/m! Gamma(m + e/2 + 1, c s0^2)
    double Y = c * s0 * s0;
    double tot = 0;
    for (int m = 0; m < n; ++m) {
        double l = lfact(n - 1) - lfact(m) + log_upper_gamma_bound(m + e / 2 + 1, Y);
        tot += std::exp(l);
    }
    tot *= 0.5 * std::pow(c, -(e + 2) / 2);
    return Mag(2 * M_PI / V * (1 + delta / s0) * tot * (1 + 1e-6));
}

APComplex unreg_gamma(int n, const Real& y) {
    APComplex q = gamma_q(n, y);
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n - 1);
    return q * Real(f, y.prec());
}

} // namespace

APComplex eis_ewald(EisWeight w, const APComplex& z0, const Lattice& L) {
    w.check();
    const int k = w.k, i = w.i, a = k - i;
    Prec p = L.prec();
    APComplex z = L.reduce(z0);
    if (z.contains_zero()) fail(ErrorCode::PoleAtLatticePoint, "E at a lattice point");
    LatticeBasis B = L.basis();
    Real Vr = B.covolume();
    double V = Vr.to_double(), delta = B.cell_diameter().to_double();
    Real t = pi(p) / Vr;
    double td = M_PI / V;

    // dual basis: Re(w conj(xi)) integral
    APComplex I = APComplex::i(p);
    APComplex xi1 = -(I * L.w2()) / APComplex::from_real(Vr);
    APComplex xi2 = I * L.w1() / APComplex::from_real(Vr);
    LatticeBasis D{xi1, xi2};
    double Vd = 1 / V, deltad = D.cell_diameter().to_double();

    double target = std::ldexp(1.0, -static_cast<int>(p) - 12);
    double scale = std::pow(std::hypot(L.w1().re_d(), L.w1().im_d()), -(k + i));
    double R = std::sqrt((p + 40) * M_LN2 / td) + 2 * delta;
    Mag tp = ewald_tail(-(k + i), k, td, R, delta, V);
    while (!(tp < Mag(target * scale))) {
        R *= 1.1;
        tp = ewald_tail(-(k + i), k, td, R, delta, V);
    }
    double cd = M_PI * V;
    double dual_pref = M_PI / V * std::pow(M_PI, k + i - 2);
    double Rd = std::sqrt((p + 40) * M_LN2 / cd) + 2 * deltad;
    Mag td_tail = ewald_tail(k + i - 2, 1 - i, cd, Rd, deltad, Vd) * Mag(dual_pref);
    while (!(td_tail < Mag(target * scale))) {
        Rd *= 1.1;
        td_tail = ewald_tail(k + i - 2, 1 - i, cd, Rd, deltad, Vd) * Mag(dual_pref);
    }

    APComplex S(p);
    double az = std::hypot(z.re_d(), z.im_d());
    double n1 = std::hypot(L.w1().re_d(), L.w1().im_d()), n2 = std::hypot(L.w2().re_d(), L.w2().im_d());
    long bm = static_cast<long>((R + az) * n2 / V) + 1, bn = static_cast<long>((R + az) * n1 / V) + 1;
    for (long m = -bm; m <= bm; ++m)
        for (long n = -bn; n <= bn; ++n) {
            APComplex x = z + L.w1() * m + L.w2() * n;
            double ax = std::hypot(x.re_d(), x.im_d());
            if (ax > R) continue;
            APComplex g = unreg_gamma(k, t * norm2(x));
            // the gamma argument inherits x's radius; |d/dy Q| <= 1
            g.add_error(x.rad() * Mag(2 * td * ax + 1) * Mag(std::exp(lfact(k - 1))));
            S += pow(x, -k) * pow(conj(x), -i) * g;
        }
    S.add_error(tp);

    APComplex Sd(p);
    APComplex mpi = -(I * APComplex::from_real(pi(p)));
    Real pi2 = pi(p) * pi(p);
    long dm = static_cast<long>(Rd * n1) + 1, dn = static_cast<long>(Rd * n2) + 1;
    for (long m = -dm; m <= dm; ++m)
        for (long n = -dn; n <= dn; ++n) {
            if (m == 0 && n == 0) continue;
            APComplex xi = xi1 * m + xi2 * n;
            double ax = std::hypot(xi.re_d(), xi.im_d());
            if (ax > Rd) continue;
            Real r2 = norm2(xi);
            APComplex g = unreg_gamma(1 - i, pi2 * r2 / t);
            g.add_error(xi.rad() * Mag(2 * cd * ax + 1) * Mag(std::exp(lfact(-i))));
            APComplex pw = pow(APComplex::from_real(pi2) * APComplex::from_real(r2), i - 1);
            pw.add_error(pw.abs_up() * xi.rad() * Mag(4.0 * (1 - i) / ax));
            // e^{2 pi i Re(z conj xi)}
            Real ph = (z.re() * xi.re() + z.im() * xi.im()) * pi(p) * 2;
            APComplex e = exp(APComplex(Real(p), ph, (z.rad() + xi.rad()) * Mag(2 * M_PI * (az + ax + 1))));
            Sd += pow(mpi * conj(xi), a) * pw * g * e;
        }
    Sd = Sd * APComplex::from_real(pi(p) / Vr);
    Sd.add_error(td_tail);
    APComplex Ai = APComplex::from_real(pow(L.A(), i));
    return (S + Sd) * Ai;
}

std::vector<APComplex> eis_holo_all(int kmax, const APComplex& z0, const Lattice& L) {
    APComplex z = L.reduce(z0);
    if (z.contains_zero()) fail(ErrorCode::PoleAtLatticePoint, "E at a lattice point");
    std::vector<APComplex> out;
    out.push_back(zeta(z, L) - L.s2() * z - conj(z) / APComplex::from_real(L.A()));
    if (kmax >= 2) {
        Jet j = wp_jet(z, L, kmax - 1);
        out.push_back(j.c[0] + L.s2());
        long f = 1;
        for (int k = 3; k <= kmax; ++k) {
            f *= (k - 2);
            APComplex v = j.c[k - 2] * f;
            out.push_back(k % 2 ? -v : v);
        }
    }
    return out;
}

APComplex eis_holo(int k, const APComplex& z, const Lattice& L) {
    if (k < 1) fail(ErrorCode::UnsupportedWeight, "k >= 1");
    return eis_holo_all(k, z, L).back();
}

APComplex eis(EisWeight w, const APComplex& z, const Lattice& L) {
    w.check();
    if (w.i == 0) return eis_holo(w.k, z, L);
    return eis_ewald(w, z, L);
}

APComplex eis_alpha(EisWeight w, const APComplex& z, const Lattice& L, const ImagQuadField& K, const OKElem& a) {
    Prec p = L.prec();
    Lattice La = L.scaled(inv(K.embed(a, p)));
    return eis(w, z, L) * Real(a.norm(), p) - eis(w, z, La);
}

APComplex galois_eis(EisWeight w, const APComplex& v, const Lattice& L, const HeckeCharacter& psi, const OKElem& c,
                     const OKElem* torsion_modulus) {
    auto& K = psi.field();
    if (torsion_modulus && !K.coprime(c, *torsion_modulus)) fail(ErrorCode::NotCoprime, "c not prime to torsion order");
    Prec p = L.prec();
    APComplex pc = K.embed(psi.eval(c), p);
    return pow(pc, w.i - w.k) * eis(w, v, L.scaled(inv(pc)));
}

APComplex IsobaricPoly::eval(const std::vector<APComplex>& X) const {
    Prec p = X.at(0).prec();
    APComplex s(p);
    for (auto& [e, c] : coeffs) {
        APComplex m(c, p);
        for (size_t j = 0; j < e.size(); ++j)
            if (e[j]) m = m * pow(X.at(j), e[j]);
        s += m;
    }
    return s;
}

std::string IsobaricPoly::str() const {
    std::ostringstream o;
    bool first = true;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        auto& [e, c] = *it;
        if (c == 0) continue;
        o << (first ? "" : (sgn(c) < 0 ? " - " : " + "));
        mpq_class ac = first ? c : mpq_class(abs(c));
        if (ac != 1) o << (ac == -1 ? "-" : ac.get_str() + "*");
        bool any = false;
        for (size_t j = 0; j < e.size(); ++j)
            if (e[j]) {
                o << (any ? "*" : "") << "X" << j + 1 << (e[j] > 1 ? "^" + std::to_string(e[j]) : "");
                any = true;
            }
        first = false;
    }
    return o.str();
}

std::vector<std::vector<int>> isobaric_monomials(int weight, int degree) {
    std::vector<std::vector<int>> out;
    std::vector<int> e(weight, 0);
    // enumerate partitions of weight into parts, parts = variable index
    std::function<void(int, int, int)> rec = [&](int rem, int maxpart, int deg) {
        if (rem == 0) {
            out.push_back(e);
            return;
        }
        if (deg == degree) return;
        for (int j = std::min(rem, maxpart); j >= 1; --j) {
            ++e[j - 1];
            rec(rem - j, j, deg + 1);
            --e[j - 1];
        }
    };
    rec(weight, weight, 0);
    return out;
}

std::vector<PhiSample> phi_samples(int count, unsigned seed, Prec p) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> U(0, 1);
    std::vector<PhiSample> out;
    for (int s = 0; s < count; ++s) {
        double ang = 2 * M_PI * U(rng), r = 0.7 + 0.6 * U(rng);
        APComplex w1(Real(r * std::cos(ang), p), Real(r * std::sin(ang), p));
        APComplex tau(Real(U(rng) - 0.5, p), Real(0.95 + 0.6 * U(rng), p));
        Lattice L(w1, w1 * tau);
        // z away from the lattice: fractional coordinates in [0.15, 0.85]
        APComplex z = w1 * Real(0.15 + 0.7 * U(rng), p) + w1 * tau * Real(0.15 + 0.7 * U(rng), p);
        out.push_back({z, L});
    }
    return out;
}

PhiFit fit_phi(EisWeight w, const std::vector<PhiSample>& samples, const std::vector<PhiSample>& heldout, double tol) {
    w.check();
    int W = w.k - w.i, d = 1 - w.i;
    auto mons = isobaric_monomials(W, d);
    size_t M = mons.size();
    if (samples.size() < 2 * M) fail(ErrorCode::RankDeficient, "need at least twice as many samples as monomials");
    Prec p = samples[0].z.prec();

    auto row = [&](const PhiSample& s, std::vector<APComplex>& X) {
        X = eis_holo_all(W, s.z, s.L);
        std::vector<APComplex> r;
        for (auto& e : mons) {
            IsobaricPoly mono;
            mono.coeffs[e] = 1;
            r.push_back(mono.eval(X));
        }
        return r;
    };
    // normal equations over the reals (real and imaginary parts are separate equations)
    std::vector<std::vector<Real>> G(M, std::vector<Real>(M + 1, Real(p)));
    for (auto& s : samples) {
        std::vector<APComplex> X;
        auto r = row(s, X);
        APComplex y = eis(w, s.z, s.L);
        for (size_t a = 0; a < M; ++a) {
            for (size_t b = 0; b < M; ++b) G[a][b] += r[a].re() * r[b].re() + r[a].im() * r[b].im();
            G[a][M] += r[a].re() * y.re() + r[a].im() * y.im();
        }
    }
    Real scale(p);
    for (size_t a = 0; a < M; ++a)
        if (scale < abs(G[a][a])) scale = abs(G[a][a]);
    for (size_t c = 0; c < M; ++c) {
        size_t piv = c;
        for (size_t r = c + 1; r < M; ++r)
            if (abs(G[piv][c]) < abs(G[r][c])) piv = r;
        std::swap(G[c], G[piv]);
        if (abs(G[c][c]) < scale * Real(1e-40, p)) fail(ErrorCode::RankDeficient, "singular normal equations");
        for (size_t r = 0; r < M; ++r) {
            if (r == c) continue;
            Real f = G[r][c] / G[c][c];
            for (size_t t = c; t <= M; ++t) G[r][t] -= f * G[c][t];
        }
    }
    PhiFit out;
    out.phi.weight = W;
    out.phi.degree = d;
    IsobaricPoly raw = out.phi;
    for (size_t c = 0; c < M; ++c) {
        Real v = G[c][M] / G[c][c];
        auto cand = detect_algebraic(APComplex(v, Real(p)), FieldLabel::rationals(), 1000000, 1e-30);
        if (!cand) fail(ErrorCode::NonRationalCoefficient, "coefficient " + v.to_string(20) + " not rational");
        raw.coeffs[mons[c]] = cand->a;
    }
    std::vector<int> lead(W, 0);
    lead[0] += -w.i;
    lead[w.k - 1] += 1;
    mpq_class l = raw.coeffs.count(lead) ? raw.coeffs[lead] : mpq_class(0);
    mpq_class target = 1;
    for (int t = 0; t < -w.i; ++t) target *= -2;
    if (l == 0) fail(ErrorCode::NonRationalCoefficient, "leading monomial absent");
    out.normalization = l / target;
    for (auto& [e, c] : raw.coeffs) {
        mpq_class v = c / out.normalization;
        if (v != 0) out.phi.coeffs[e] = v;
    }
    mpq_class two_i = 1;
    for (int t = 0; t < -w.i; ++t) two_i /= 2;
    out.leading_ok = out.normalization == two_i;
    double worst = 0;
    for (auto& s : heldout) {
        std::vector<APComplex> X = eis_holo_all(W, s.z, s.L);
        APComplex r = eis(w, s.z, s.L) - out.phi.eval(X) * APComplex(out.normalization, p);
        worst = std::max(worst, r.abs_up().to_double());
    }
    out.heldout_residual = worst;
    if (!(worst < tol)) fail(ErrorCode::NonRationalCoefficient, "held-out residual " + std::to_string(worst));
    return out;
}

} // namespace cmeis
