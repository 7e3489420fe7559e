#pragma once
// MPFR-backed real with explicit precision, plus Mag: an upper bound
// for error radii that cannot overflow a double.
#include <mpfr.h>
#include <gmpxx.h>

#include <string>
#include <utility>

namespace cmeis {

using Prec = long;

class Real {
public:
    explicit Real(Prec prec = 256) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
    Real(long x, Prec prec) { mpfr_init2(v_, prec); mpfr_set_si(v_, x, MPFR_RNDN); }
    Real(double x, Prec prec) { mpfr_init2(v_, prec); mpfr_set_d(v_, x, MPFR_RNDN); }
    Real(const mpz_class& x, Prec prec) { mpfr_init2(v_, prec); mpfr_set_z(v_, x.get_mpz_t(), MPFR_RNDN); }
    Real(const mpq_class& x, Prec prec) { mpfr_init2(v_, prec); mpfr_set_q(v_, x.get_mpq_t(), MPFR_RNDN); }
    static Real parse(const std::string& s, Prec prec) {
        Real r(prec);
        mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN);
        return r;
    }
    Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    Real(Real&& o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept { mpfr_swap(v_, o.v_); return *this; }
    ~Real() { mpfr_clear(v_); }

    Prec prec() const { return mpfr_get_prec(v_); }
    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    std::string to_string(int digits = 30) const;
    bool is_zero() const { return mpfr_zero_p(v_); }
    int sign() const { return mpfr_sgn(v_); }
    long exp2() const { return is_zero() ? -(1L << 40) : mpfr_get_exp(v_); }

    Real operator-() const { Real r(prec()); mpfr_neg(r.v_, v_, MPFR_RNDN); return r; }
    Real& operator+=(const Real& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator-=(const Real& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator*=(const Real& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator/=(const Real& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }

private:
    mpfr_t v_;
};

inline Prec pmax(const Real& a, const Real& b) { return a.prec() > b.prec() ? a.prec() : b.prec(); }

#define CMEIS_RBIN(op, fn)                                                  \
    inline Real operator op(const Real& a, const Real& b) {                 \
        Real r(pmax(a, b));                                                 \
        fn(r.get(), a.get(), b.get(), MPFR_RNDN);                           \
        return r;                                                           \
    }                                                                       \
    inline Real operator op(const Real& a, long b) {                        \
        Real r(a.prec());                                                   \
        fn##_si(r.get(), a.get(), b, MPFR_RNDN);                            \
        return r;                                                           \
    }
CMEIS_RBIN(+, mpfr_add)
CMEIS_RBIN(-, mpfr_sub)
CMEIS_RBIN(*, mpfr_mul)
CMEIS_RBIN(/, mpfr_div)
#undef CMEIS_RBIN

inline Real operator*(long a, const Real& b) { return b * a; }
inline Real operator+(long a, const Real& b) { return b + a; }
inline Real operator-(long a, const Real& b) { return -(b - a); }

inline bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.get(), b.get()); }
inline bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.get(), b.get()); }
inline bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.get(), b.get()); }
inline bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.get(), b.get()); }

#define CMEIS_RFUN(name, fn)                                     \
    inline Real name(const Real& a) {                            \
        Real r(a.prec());                                        \
        fn(r.get(), a.get(), MPFR_RNDN);                         \
        return r;                                                \
    }
CMEIS_RFUN(sqrt, mpfr_sqrt)
CMEIS_RFUN(exp, mpfr_exp)
CMEIS_RFUN(log, mpfr_log)
CMEIS_RFUN(sin, mpfr_sin)
CMEIS_RFUN(cos, mpfr_cos)
CMEIS_RFUN(abs, mpfr_abs)
#undef CMEIS_RFUN

inline Real round(const Real& a) { Real r(a.prec()); mpfr_round(r.get(), a.get()); return r; }
inline Real floor(const Real& a) { Real r(a.prec()); mpfr_floor(r.get(), a.get()); return r; }
inline Real atan2(const Real& y, const Real& x) {
    Real r(pmax(y, x));
    mpfr_atan2(r.get(), y.get(), x.get(), MPFR_RNDN);
    return r;
}
inline Real hypot(const Real& x, const Real& y) {
    Real r(pmax(x, y));
    mpfr_hypot(r.get(), x.get(), y.get(), MPFR_RNDN);
    return r;
}
inline Real pi(Prec p) { Real r(p); mpfr_const_pi(r.get(), MPFR_RNDN); return r; }
inline Real pow(const Real& a, long n) { Real r(a.prec()); mpfr_pow_si(r.get(), a.get(), n, MPFR_RNDN); return r; }
inline mpz_class to_mpz(const Real& a) {
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), a.get(), MPFR_RNDN);
    return z;
}

// Upper bound on a nonnegative quantity. Every operation rounds up.
class Mag {
public:
    Mag() { mpfr_init2(v_, 30); mpfr_set_zero(v_, 1); }
    explicit Mag(double x) { mpfr_init2(v_, 30); mpfr_set_d(v_, x < 0 ? -x : x, MPFR_RNDU); }
    Mag(const Mag& o) { mpfr_init2(v_, 30); mpfr_set(v_, o.v_, MPFR_RNDU); }
    Mag& operator=(const Mag& o) { mpfr_set(v_, o.v_, MPFR_RNDU); return *this; }
    ~Mag() { mpfr_clear(v_); }

    static Mag of(const Real& x) { Mag m; mpfr_abs(m.v_, x.get(), MPFR_RNDU); return m; }
    // lower bound of |x| packaged as a Mag (used for denominators)
    static Mag lower(const Real& x) { Mag m; mpfr_abs(m.v_, x.get(), MPFR_RNDD); return m; }
    static Mag pow2(long e) { Mag m; mpfr_set_ui_2exp(m.v_, 1, e, MPFR_RNDU); return m; }
    static Mag inf() { Mag m; mpfr_set_inf(m.v_, 1); return m; }

    mpfr_srcptr get() const { return v_; }
    mpfr_ptr get() { return v_; }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDU); }
    bool is_finite() const { return mpfr_number_p(v_); }
    bool is_zero() const { return mpfr_zero_p(v_); }
    long exp2() const { return is_zero() ? -(1L << 40) : mpfr_get_exp(v_); }
    Real to_real(Prec p) const { Real r(p); mpfr_set(r.get(), v_, MPFR_RNDU); return r; }

    Mag& operator+=(const Mag& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDU); return *this; }
    Mag& operator*=(const Mag& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDU); return *this; }
    friend Mag operator+(Mag a, const Mag& b) { a += b; return a; }
    friend Mag operator*(Mag a, const Mag& b) { a *= b; return a; }
    friend Mag operator*(Mag a, double b) { a *= Mag(b); return a; }
    // a / b where b is a lower bound on the true divisor
    friend Mag operator/(const Mag& a, const Mag& b) {
        Mag r;
        mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDU);
        return r;
    }
    // a - b rounded down, clamped at zero; for lower bounds
    static Mag sub_lower(const Mag& a, const Mag& b) {
        Mag r;
        mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDD);
        if (mpfr_sgn(r.v_) < 0) mpfr_set_zero(r.v_, 1);
        return r;
    }
    friend bool operator<(const Mag& a, const Mag& b) { return mpfr_less_p(a.v_, b.v_); }
    friend bool operator<=(const Mag& a, const Mag& b) { return mpfr_lessequal_p(a.v_, b.v_); }
    friend Mag max(const Mag& a, const Mag& b) { return a < b ? b : a; }

private:
    mpfr_t v_;
};

Mag mag_exp(const Mag& x);     // e^x, rounded up
Mag mag_expm1(const Mag& x);   // e^x - 1, rounded up
std::string mag_string(const Mag& m, int digits = 6);

} // namespace cmeis
