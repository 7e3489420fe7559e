#include "cmeis/apcomplex.hpp"

#include "cmeis/error.hpp"

namespace cmeis {

namespace {

// 2^(k - prec): a few ulps of relative slack
Mag ulps(Prec p, long k) { return Mag::pow2(k - p); }

} // namespace

APComplex::APComplex(const mpq_class& x, Prec p) : re_(x, p), im_(p) {
    rad_ = Mag::of(re_) * ulps(p, 0);
}

Mag APComplex::mid_up() const {
    Real h = hypot(re_, im_);
    return Mag::of(h) * (1.0 + 1e-12);
}

Mag APComplex::mid_down() const {
    Real h = hypot(re_, im_);
    return Mag::lower(h) * (1.0 - 1e-12);
}

APComplex APComplex::with_prec(Prec p) const {
    Real r(p), i(p);
    mpfr_set(r.get(), re_.get(), MPFR_RNDN);
    mpfr_set(i.get(), im_.get(), MPFR_RNDN);
    Mag e = rad_;
    if (p < prec()) e += mid_up() * ulps(p, 1);
    return APComplex(std::move(r), std::move(i), e);
}

APComplex& APComplex::operator+=(const APComplex& o) {
    Mag e = (mid_up() + o.mid_up()) * ulps(std::min(prec(), o.prec()), 1);
    re_ += o.re_;
    im_ += o.im_;
    rad_ += o.rad_;
    rad_ += e;
    return *this;
}

APComplex& APComplex::operator-=(const APComplex& o) {
    Mag e = (mid_up() + o.mid_up()) * ulps(std::min(prec(), o.prec()), 1);
    re_ -= o.re_;
    im_ -= o.im_;
    rad_ += o.rad_;
    rad_ += e;
    return *this;
}

APComplex operator*(const APComplex& a, const APComplex& b) {
    Mag ma = a.mid_up(), mb = b.mid_up();
    Real re = a.re() * b.re() - a.im() * b.im();
    Real im = a.re() * b.im() + a.im() * b.re();
    Mag e = ma * b.rad() + mb * a.rad() + a.rad() * b.rad();
    e += ma * mb * ulps(std::min(a.prec(), b.prec()), 3);
    return APComplex(std::move(re), std::move(im), e);
}

APComplex& APComplex::operator*=(const APComplex& o) { return *this = *this * o; }

APComplex operator*(const APComplex& a, const Real& b) {
    Mag mb = Mag::of(b);
    Mag e = a.rad() * mb + a.mid_up() * mb * ulps(a.prec(), 1);
    return APComplex(a.re() * b, a.im() * b, e);
}

APComplex operator*(const APComplex& a, long b) {
    Mag mb(static_cast<double>(b));
    Mag e = a.rad() * mb + a.mid_up() * mb * ulps(a.prec(), 1);
    return APComplex(a.re() * b, a.im() * b, e);
}

APComplex operator/(const APComplex& a, long b) {
    if (b == 0) fail(ErrorCode::InvalidInput, "division by zero");
    Mag mb(1.0 / static_cast<double>(b < 0 ? -b : b) * (1 + 1e-15));
    Mag e = a.rad() * mb + a.mid_up() * mb * ulps(a.prec(), 1);
    return APComplex(a.re() / b, a.im() / b, e);
}

APComplex inv(const APComplex& z) {
    Mag lo = z.mid_down();
    if (!(z.rad() < lo)) fail(ErrorCode::PrecisionExhausted, "inverse of a ball containing zero");
    Real n = norm2(z);
    Real re = z.re() / n;
    Real im = -(z.im() / n);
    Mag den = lo * Mag::sub_lower(lo, z.rad());
    Mag e = z.rad() / den;
    e += (Mag(1.0) / lo) * ulps(z.prec(), 3);
    return APComplex(std::move(re), std::move(im), e);
}

APComplex operator/(const APComplex& a, const APComplex& b) { return a * inv(b); }
APComplex& APComplex::operator/=(const APComplex& o) { return *this = *this / o; }

APComplex operator+(APComplex a, const APComplex& b) { a += b; return a; }
APComplex operator-(APComplex a, const APComplex& b) { a -= b; return a; }

APComplex conj(const APComplex& z) { return APComplex(z.re(), -z.im(), z.rad()); }
APComplex mul_i(const APComplex& z) { return APComplex(-z.im(), z.re(), z.rad()); }
Real norm2(const APComplex& z) { return z.re() * z.re() + z.im() * z.im(); }

APComplex exp(const APComplex& z) {
    Real m = exp(z.re());
    Real re = m * cos(z.im());
    Real im = m * sin(z.im());
    Mag mm = Mag::of(m) * (1.0 + 1e-12);
    // argument rounding: the imaginary part carries |im| * 2^-p absolute error
    Mag argerr = (Mag::of(z.im()) + Mag::of(z.re()) + Mag(1.0)) * ulps(z.prec(), 2);
    Mag e = mm * mag_expm1(z.rad() + argerr);
    e += mm * ulps(z.prec(), 3);
    return APComplex(std::move(re), std::move(im), e);
}

APComplex log(const APComplex& z) {
    Mag lo = z.mid_down();
    if (!(z.rad() < lo)) fail(ErrorCode::PrecisionExhausted, "log of a ball containing zero");
    Real re = log(hypot(z.re(), z.im()));
    Real im = atan2(z.im(), z.re());
    Mag e = z.rad() / Mag::sub_lower(lo, z.rad());
    e += (Mag::of(re) + Mag(4.0)) * ulps(z.prec(), 3);
    return APComplex(std::move(re), std::move(im), e);
}

APComplex sqrt(const APComplex& z) {
    Prec p = z.prec();
    Real r = hypot(z.re(), z.im());
    Real a = sqrt((r + z.re()) / 2);
    Real b = sqrt((r - z.re()) / 2);
    if (z.im().sign() < 0) b = -b;
    Mag lo = z.mid_down();
    Mag e;
    if (z.rad().is_zero()) {
    } else if (z.rad() < lo) {
        Real s = sqrt(Mag::sub_lower(lo, z.rad()).to_real(53));
        e = z.rad() / Mag::lower(s);
    } else {
        e = Mag::of(sqrt((lo + z.rad() * 2.0).to_real(53))) * 2.0;
    }
    e += Mag::of(sqrt(r)) * ulps(p, 3);
    return APComplex(std::move(a), std::move(b), e);
}

APComplex pow(const APComplex& z, long n) {
    if (n < 0) return inv(pow(z, -n));
    APComplex r(1L, z.prec()), b = z;
    while (n) {
        if (n & 1) r = r * b;
        n >>= 1;
        if (n) b = b * b;
    }
    return r;
}

Mag dist_up(const APComplex& a, const APComplex& b) {
    APComplex d = a - b;
    return d.abs_up();
}

bool overlaps(const APComplex& a, const APComplex& b) {
    APComplex d = a - b;
    return d.mid_down() <= d.rad();
}

std::string APComplex::to_string(int digits) const {
    return "(" + re_.to_string(digits) + ", " + im_.to_string(digits) + ") +/- " + mag_string(rad_, 3);
}

Jet Jet::constant(const APComplex& a, size_t n) {
    Jet j(n, a.prec());
    j.c[0] = a;
    return j;
}

Jet Jet::variable(const APComplex& a, size_t n) {
    Jet j = constant(a, n);
    if (n > 1) j.c[1] = APComplex(1L, a.prec());
    return j;
}

Jet operator+(const Jet& a, const Jet& b) {
    Jet r = a;
    for (size_t k = 0; k < r.size(); ++k) r.c[k] += b.c[k];
    return r;
}

Jet operator-(const Jet& a, const Jet& b) {
    Jet r = a;
    for (size_t k = 0; k < r.size(); ++k) r.c[k] -= b.c[k];
    return r;
}

Jet operator*(const Jet& a, const Jet& b) {
    Jet r(a.size(), a.prec());
    for (size_t n = 0; n < a.size(); ++n)
        for (size_t k = 0; k <= n; ++k) r.c[n] += a.c[k] * b.c[n - k];
    return r;
}

Jet operator*(const Jet& a, const APComplex& b) {
    Jet r = a;
    for (auto& x : r.c) x = x * b;
    return r;
}

Jet inv(const Jet& a) {
    Jet r(a.size(), a.prec());
    APComplex i0 = inv(a.c[0]);
    r.c[0] = i0;
    for (size_t n = 1; n < a.size(); ++n) {
        APComplex s(a.prec());
        for (size_t k = 1; k <= n; ++k) s += a.c[k] * r.c[n - k];
        r.c[n] = -(s * i0);
    }
    return r;
}

Jet exp(const Jet& a) {
    Jet r(a.size(), a.prec());
    r.c[0] = exp(a.c[0]);
    for (size_t n = 1; n < a.size(); ++n) {
        APComplex s(a.prec());
        for (size_t k = 1; k <= n; ++k) s += (a.c[k] * r.c[n - k]) * static_cast<long>(k);
        r.c[n] = s / static_cast<long>(n);
    }
    return r;
}

Jet log(const Jet& a) {
    Jet r(a.size(), a.prec());
    r.c[0] = log(a.c[0]);
    APComplex i0 = inv(a.c[0]);
    for (size_t n = 1; n < a.size(); ++n) {
        APComplex s(a.prec());
        for (size_t k = 1; k < n; ++k) s += (r.c[k] * a.c[n - k]) * static_cast<long>(k);
        r.c[n] = (a.c[n] - s / static_cast<long>(n)) * i0;
    }
    return r;
}

} // namespace cmeis
