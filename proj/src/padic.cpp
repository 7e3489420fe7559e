#include "cmeis/padic.hpp"

#include <algorithm>

namespace cmeis {

namespace {

mpz_class ppow(long p, long e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), p, e < 0 ? 0 : e);
    return r;
}

// strip factors of p, return how many
long strip(mpz_class& x, long p) {
    if (x == 0) return 0;
    long v = 0;
    mpz_class pp(p);
    while (mpz_divisible_p(x.get_mpz_t(), pp.get_mpz_t())) {
        x /= pp;
        ++v;
    }
    return v;
}

void same_prime(const Padic& x, const Padic& y) {
    if (x.p() != y.p()) fail(ErrorCode::InvalidInput, "p-adic numbers over different primes");
}

} // namespace

Padic::Padic(long p, long prec) : p_(p), N_(prec), v_(prec) {}

Padic Padic::make(mpz_class r, long v, long N, long p) {
    Padic x(p, N);
    if (r == 0) return x;
    v += strip(r, p);
    if (v >= N) return x;
    mpz_class m = ppow(p, N - v);
    mpz_mod(r.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t());
    x.v_ = v;
    x.u_ = r;
    return x;
}

Padic Padic::of(const mpz_class& x, long p, long prec) { return make(x, 0, prec, p); }

Padic Padic::of(const mpq_class& x, long p, long prec) {
    mpz_class a = x.get_num(), b = x.get_den();
    if (a == 0) return Padic(p, prec);
    long v = strip(a, p) - strip(b, p);
    if (v >= prec) return Padic(p, prec);
    mpz_class m = ppow(p, prec - v), bi;
    mpz_invert(bi.get_mpz_t(), b.get_mpz_t(), m.get_mpz_t());
    return make(a * bi, v, prec, p);
}

mpz_class Padic::residue(long m) const {
    if (N_ < m) fail(ErrorCode::PrecisionExhausted, "p-adic value known only mod p^" + std::to_string(N_));
    if (is_zero()) return 0;
    if (v_ < 0) fail(ErrorCode::InvalidInput, "p-adic value not integral");
    mpz_class r = u_ * ppow(p_, v_), M = ppow(p_, m);
    mpz_mod(r.get_mpz_t(), r.get_mpz_t(), M.get_mpz_t());
    return r;
}

Padic Padic::with_prec(long N) const {
    if (N >= N_) return *this;
    return make(u_, v_, N, p_);
}

std::string Padic::str() const {
    if (is_zero()) return "O(" + std::to_string(p_) + "^" + std::to_string(N_) + ")";
    return u_.get_str() + "*" + std::to_string(p_) + "^" + std::to_string(v_) + " + O(" + std::to_string(p_) + "^" +
           std::to_string(N_) + ")";
}

Padic Padic::operator-() const {
    if (is_zero()) return *this;
    return make(-u_, v_, N_, p_);
}

Padic operator+(const Padic& x, const Padic& y) {
    same_prime(x, y);
    long N = std::min(x.N_, y.N_);
    if (x.is_zero() && y.is_zero()) return Padic(x.p_, N);
    long m = std::min(x.v_, y.v_);
    if (m >= N) return Padic(x.p_, N);
    mpz_class r = 0;
    if (!x.is_zero()) r += x.u_ * ppow(x.p_, x.v_ - m);
    if (!y.is_zero()) r += y.u_ * ppow(x.p_, y.v_ - m);
    return Padic::make(r, m, N, x.p_);
}

Padic operator*(const Padic& x, const Padic& y) {
    same_prime(x, y);
    long N = std::min(x.N_ + y.v_, y.N_ + x.v_);
    if (x.is_zero() || y.is_zero()) return Padic(x.p_, N);
    return Padic::make(x.u_ * y.u_, x.v_ + y.v_, N, x.p_);
}

Padic inv(const Padic& x) {
    if (x.is_zero()) fail(ErrorCode::PrecisionExhausted, "inverse of a p-adic zero " + x.str());
    long rel = x.N_ - x.v_;
    mpz_class m = ppow(x.p_, rel), r;
    mpz_invert(r.get_mpz_t(), x.u_.get_mpz_t(), m.get_mpz_t());
    return Padic::make(r, -x.v_, -x.v_ + rel, x.p_);
}

bool agree_mod(const Padic& x, const Padic& y, long m) {
    Padic d = x - y;
    return d.prec() >= m && d.val() >= m;
}

PadicEmbedding::PadicEmbedding(const ImagQuadField& K, const OKElem& prime, long prec) : N_(prec) {
    mpz_class np = prime.norm();
    if (!np.fits_slong_p() || !is_prime(np.get_si()))
        fail(ErrorCode::InvalidInput, "embedding needs a prime of degree one, got " + prime.str());
    p_ = np.get_si();
    // root r of X^2 - tX + n with a + b r = 0 mod p, lifted by Newton
    mpz_class a = prime.a, b = prime.b, pp(p_), r;
    if (b % pp == 0) fail(ErrorCode::InvalidInput, "prime " + prime.str() + " is not split");
    mpz_class bi;
    mpz_invert(bi.get_mpz_t(), b.get_mpz_t(), pp.get_mpz_t());
    r = -a * bi;
    mpz_mod(r.get_mpz_t(), r.get_mpz_t(), pp.get_mpz_t());
    long t = K.t(), n = K.n();
    mpz_class M = ppow(p_, prec + 2);
    for (long e = 1; e < prec + 2; e *= 2) {
        mpz_class fr = r * r - t * r + n, dfr = 2 * r - t, di;
        if (mpz_invert(di.get_mpz_t(), dfr.get_mpz_t(), M.get_mpz_t()) == 0)
            fail(ErrorCode::InvalidInput, "ramified prime " + prime.str());
        r = r - fr * di;
        mpz_mod(r.get_mpz_t(), r.get_mpz_t(), M.get_mpz_t());
    }
    w_ = Padic::of(r, p_, prec);
}

Padic PadicEmbedding::operator()(const KElem& x) const {
    return Padic::of(x.a, p_, N_) + Padic::of(x.b, p_, N_) * w_;
}

} // namespace cmeis
