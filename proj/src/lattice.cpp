#include "cmeis/lattice.hpp"

#include <cmath>

namespace cmeis {

namespace {

APComplex two_pi_i(Prec p) { return APComplex(Real(p), pi(p) * 2); }

// |x|^(stuff) helpers in double; only used for choosing term counts and bounds
double dabs(const APComplex& z) { return std::hypot(z.re_d(), z.im_d()); }

// sum_{n>N} n^k x^n/(1-x^n) <= (N+1)^k x^(N+1) / ((1-r)(1-x)),  r = ((N+2)/(N+1))^k x
Mag tail_nk(int k, double x, long N) {
    double r = std::pow((N + 2.0) / (N + 1.0), k) * x;
    if (r >= 1 || x >= 1) return Mag::inf();
    return Mag(std::pow(N + 1.0, k) * std::pow(x, N + 1.0) / ((1 - r) * (1 - x)) * (1 + 1e-9));
}

long terms_for(int k, double x, Prec p) {
    long N = 1;
    while (tail_nk(k, x, N).exp2() > -p - 16 && N < 100000) ++N;
    return N;
}

// 1 + c * sum_{n>=1} n^k q^n/(1-q^n)
APComplex eis_q(int k, long c, const APComplex& q, double qa) {
    Prec p = q.prec();
    long N = terms_for(k, qa, p);
    APComplex s(p), qn(1L, p), one(1L, p);
    for (long n = 1; n <= N; ++n) {
        qn = qn * q;
        s += qn * pow(Real(n, p), k) / (one - qn);
    }
    APComplex r = one + s * c;
    r.add_error(tail_nk(k, qa, N) * Mag(static_cast<double>(std::labs(c))));
    return r;
}

// sum_{n>N} y_n/(1-y_n)^e with y_n = q^n * y  (geometric in n)
Mag geo_tail(double qa, double y0, long N, int e) {
    double y = std::pow(qa, N + 1.0) * y0;
    if (y >= 1) return Mag::inf();
    return Mag(y / (std::pow(1 - y, e) * (1 - qa)) * (1 + 1e-9));
}

struct QData {
    const APComplex& w1;
    const APComplex& q;
    double qa;
    const APComplex& eta1;
};

APComplex zeta_series(const APComplex& z, const QData& d) {
    Prec p = z.prec();
    APComplex x = two_pi_i(p) / d.w1;
    APComplex u = exp(x * z);
    double ua = dabs(u), ub = 1 / ua;
    long N = 1;
    while ((geo_tail(d.qa, ua, N, 1) + geo_tail(d.qa, ub, N, 1)).exp2() > -p - 16) ++N;
    APComplex one(1L, p), ui = inv(u), qn(1L, p), s(p);
    for (long n = 1; n <= N; ++n) {
        qn = qn * d.q;
        APComplex a = qn * u, b = qn * ui;
        s += b / (one - b) - a / (one - a);
    }
    s.add_error(geo_tail(d.qa, ua, N, 1) + geo_tail(d.qa, ub, N, 1));
    APComplex half = x / 2L;
    return d.eta1 * z / d.w1 + half * (u + one) / (u - one) + x * s;
}

} // namespace

Mag qsum_tail(int k, double x, long N) { return tail_nk(k, x, N); }

Lattice::Lattice(const APComplex& g1, const APComplex& g2, std::optional<CmTag> cm)
    : g1_(g1), g2_(g2), w1_(g1), w2_(g2), tau_(g1.prec()), q_(g1.prec()), cm_(std::move(cm)) {
    Prec p = g1.prec();
    APComplex t = w2_ / w1_;
    if (t.im().sign() == 0) fail(ErrorCode::InvalidInput, "degenerate lattice");
    if (t.im().sign() < 0) w2_ = -w2_;
    for (int it = 0; it < 200; ++it) {
        t = w2_ / w1_;
        long m = to_mpz(t.re()).get_si();
        if (m) w2_ -= w1_ * m;
        if (norm2(w2_) < norm2(w1_)) {
            APComplex tmp = w2_;
            w2_ = -w1_;
            w1_ = tmp;
        } else if (m == 0) {
            break;
        }
    }
    tau_ = w2_ / w1_;
    q_ = exp(two_pi_i(p) * tau_);
    qabs_ = q_.abs_up().to_double();
    if (qabs_ > 0.01) fail(ErrorCode::InvalidInput, "basis reduction failed");

    area_ = LatticeBasis{w1_, w2_}.covolume();
    A_ = area_ / pi(p);
    APComplex E2 = eis_q(1, -24, q_, qabs_);
    APComplex pi2 = APComplex::from_real(pi(p) * pi(p));
    eta1_ = pi2 * E2 / (w1_ * 3L);
    QData d{w1_, q_, qabs_, eta1_};
    eta2_ = zeta_series(w2_ / 2L, d) * 2L;
    APComplex leg = eta1_ * w2_ - eta2_ * w1_ - two_pi_i(p);
    legendre_ = leg.mid_up();
    if (!leg.contains_zero()) fail(ErrorCode::PathDisagreement, "Legendre relation fails: " + leg.to_string(8));
    Real Ar = A_;
    s2_ = (eta1_ - conj(w1_) / APComplex::from_real(Ar)) / w1_;

    APComplex c = APComplex::from_real(pi(p) * 2) / w1_;
    APComplex c2 = c * c, c4 = c2 * c2;
    g2v_ = c4 * eis_q(3, 240, q_, qabs_) / 12L;
    g3v_ = c4 * c2 * eis_q(5, -504, q_, qabs_) / 216L;

    // Delta = c^12 q prod (1-q^n)^24
    long N = terms_for(0, qabs_, p);
    APComplex prod(1L, p), qn(1L, p), one(1L, p);
    for (long n = 1; n <= N; ++n) {
        qn = qn * q_;
        prod = prod * (one - qn);
    }
    APComplex p24 = pow(prod, 24);
    // log of the dropped factors is at most 24 sum_{n>N} x^n/(1-x^n)
    Mag rel = mag_expm1(tail_nk(0, qabs_, N) * Mag(24.0));
    p24.add_error(p24.abs_up() * rel);
    disc_ = pow(c4, 3) * q_ * p24;
}

Lattice Lattice::cm(const ImagQuadField& K, const APComplex& Omega, const KElem& c) {
    Prec p = Omega.prec();
    APComplex a = Omega * K.embed(c, p);
    APComplex b = a * K.omega(p);
    return Lattice(a, b, CmTag{K.d(), Omega, c});
}

Lattice Lattice::scaled(const APComplex& c) const {
    std::optional<CmTag> t = cm_;
    if (t) t->Omega = t->Omega * c;
    return Lattice(g1_ * c, g2_ * c, t);
}

APComplex Lattice::reduce(const APComplex& z, APComplex* shift) const {
    APComplex v = z / w1_;
    Real b = v.im() / tau_.im();
    Real a = v.re() - b * tau_.re();
    long m = to_mpz(a).get_si(), n = to_mpz(b).get_si();
    APComplex s = w1_ * m + w2_ * n;
    if (shift) *shift = s;
    return z - s;
}

APComplex TorsionPoint::embed(const Lattice& L) const {
    Prec p = L.prec();
    return L.gen1() * Real(r1, p) + L.gen2() * Real(r2, p);
}

mpz_class TorsionPoint::order() const {
    mpz_class l;
    mpz_lcm(l.get_mpz_t(), r1.get_den_mpz_t(), r2.get_den_mpz_t());
    return l;
}

Jet wp_jet(const APComplex& z0, const Lattice& L, size_t len) {
    Prec p = L.prec();
    APComplex z = L.reduce(z0);
    if (z.contains_zero()) fail(ErrorCode::PoleAtLatticePoint, "wp at a lattice point");
    APComplex x = two_pi_i(p) / L.w1();
    Jet arg(len, p);
    arg.c[0] = x * z;
    if (len > 1) arg.c[1] = x;
    Jet U = exp(arg);
    double ua = dabs(U.c[0]), ub = 1 / ua, qa = L.qabs();
    double w1a = dabs(L.w1());
    double fx = 2 * M_PI / w1a;
    auto bound = [&](long N, size_t j) {
        Mag b = geo_tail(qa, ua, N, j + 2) + geo_tail(qa, ub, N, j + 2);
        b *= Mag(std::pow(fx, j) * (j + 1));
        if (j == 0) b += geo_tail(qa, 1.0, N, 3) * Mag(2.0);
        return b;
    };
    long N = 1;
    size_t jt = len - 1;
    while ((bound(N, jt) * Mag(std::pow(w1a, jt + 2.0))).exp2() > -p - 16 && N < 10000) ++N;

    Jet one = Jet::constant(APComplex(1L, p), len);
    Jet Ui = inv(U);
    Jet s = U / ((one - U) * (one - U));
    APComplex qn(1L, p), sc(p), onec(1L, p);
    for (long n = 1; n <= N; ++n) {
        qn = qn * L.q();
        Jet a = U * qn, b = Ui * qn;
        Jet oa = one - a, ob = one - b;
        s = s + a / (oa * oa) + b / (ob * ob);
        APComplex d = onec - qn;
        sc += qn / (d * d);
    }
    s.c[0] = s.c[0] - sc * 2L + APComplex(mpq_class(1, 12), p);
    for (size_t j = 0; j < len; ++j) s.c[j].add_error(bound(N, j));
    return s * (x * x);
}

APComplex wp(const APComplex& z, const Lattice& L, int n) {
    Jet j = wp_jet(z, L, n + 1);
    APComplex v = j.c[n];
    for (int k = 2; k <= n; ++k) v = v * static_cast<long>(k);
    return v;
}

APComplex zeta(const APComplex& z, const Lattice& L) {
    APComplex shift(L.prec());
    APComplex r = L.reduce(z, &shift);
    if (r.contains_zero()) fail(ErrorCode::PoleAtLatticePoint, "zeta at a lattice point");
    QData d{L.w1(), L.q(), L.qabs(), L.eta1()};
    return zeta_series(r, d) + eta_quasi(shift, L);
}

APComplex eta_quasi(const APComplex& z, const Lattice& L) {
    return L.s2() * z + conj(z) / APComplex::from_real(L.A());
}

APComplex sigma(const APComplex& z, const Lattice& L) {
    Prec p = L.prec();
    APComplex x = two_pi_i(p) / L.w1();
    APComplex h = x * z / 2L;
    APComplex u = exp(h * 2L), uh = exp(h);
    double ua = dabs(u), ub = 1 / ua, qa = L.qabs();
    auto tail = [&](long N) {
        return geo_tail(qa, ua, N, 1) + geo_tail(qa, ub, N, 1) + geo_tail(qa, 1.0, N, 1) * Mag(2.0);
    };
    long N = 1;
    while (tail(N).exp2() > -p - 16 && N < 100000) ++N;
    APComplex one(1L, p), ui = inv(u), qn(1L, p), prod(1L, p);
    for (long n = 1; n <= N; ++n) {
        qn = qn * L.q();
        APComplex d = one - qn;
        prod = prod * (one - qn * u) * (one - qn * ui) / (d * d);
    }
    prod.add_error(prod.abs_up() * mag_expm1(tail(N)));
    APComplex pre = exp(L.eta1() * z * z / (L.w1() * 2L)) * (uh - inv(uh)) / x;
    return pre * prod;
}

APComplex discriminant(const Lattice& L) { return L.disc(); }

} // namespace cmeis
