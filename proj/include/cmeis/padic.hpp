#pragma once
// p-adic numbers u * p^v with a tracked absolute precision: the value is
// known modulo p^prec. Arithmetic propagates precision; nothing is rounded.
#include "cmeis/field.hpp"

#include <gmpxx.h>
#include <string>

namespace cmeis {

class Padic {
public:
    Padic() = default;
    Padic(long p, long prec);  // zero known mod p^prec
    static Padic of(const mpz_class& x, long p, long prec);
    static Padic of(const mpq_class& x, long p, long prec);
    static Padic of(long x, long p, long prec) { return of(mpz_class(x), p, prec); }

    long p() const { return p_; }
    long prec() const { return N_; }
    long val() const { return v_; }  // == prec() when zero to precision
    bool is_zero() const { return v_ >= N_; }
    bool is_unit() const { return v_ == 0 && N_ > 0; }
    const mpz_class& unit() const { return u_; }  // unit part mod p^(prec - val)
    // x mod p^m as an integer in [0, p^m); x must be integral and known to p^m
    mpz_class residue(long m) const;
    Padic with_prec(long N) const;
    std::string str() const;

    friend Padic operator+(const Padic& x, const Padic& y);
    friend Padic operator*(const Padic& x, const Padic& y);
    friend Padic inv(const Padic& x);
    Padic operator-() const;

private:
    long p_ = 0, N_ = 0, v_ = 0;
    mpz_class u_;
    static Padic make(mpz_class r, long v, long N, long p);
};

inline Padic operator-(const Padic& x, const Padic& y) { return x + (-y); }
inline Padic operator/(const Padic& x, const Padic& y) { return x * inv(y); }
inline Padic& operator+=(Padic& x, const Padic& y) { return x = x + y; }
// equal modulo p^m, and both known that far
bool agree_mod(const Padic& x, const Padic& y, long m);

// K -> Q_p along a split (or rational) prime: w goes to the root of its minimal
// polynomial that lies in the chosen prime
class PadicEmbedding {
public:
    PadicEmbedding(const ImagQuadField& K, const OKElem& prime, long prec);
    Padic operator()(const KElem& x) const;
    Padic operator()(const OKElem& x) const { return (*this)(KElem(x)); }
    long p() const { return p_; }
    long prec() const { return N_; }

private:
    long p_, N_;
    Padic w_;
};

} // namespace cmeis
