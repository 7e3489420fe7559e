#pragma once
// Complex ball: midpoint (re, im) at fixed precision and a radius that
// bounds |true - mid|. Rounding error of every op is folded into the radius.
#include "cmeis/real.hpp"

#include <string>
#include <vector>

namespace cmeis {

class APComplex {
public:
    explicit APComplex(Prec p = 256) : re_(p), im_(p) {}
    APComplex(Real re, Real im, Mag rad = Mag()) : re_(std::move(re)), im_(std::move(im)), rad_(rad) {}
    APComplex(long x, Prec p) : re_(x, p), im_(p) {}
    APComplex(const mpq_class& x, Prec p);
    static APComplex from_real(const Real& x) { return APComplex(x, Real(x.prec())); }
    static APComplex i(Prec p) { return APComplex(Real(p), Real(1L, p)); }

    const Real& re() const { return re_; }
    const Real& im() const { return im_; }
    const Mag& rad() const { return rad_; }
    Prec prec() const { return re_.prec(); }

    // |mid| bounds
    Mag mid_up() const;
    Mag mid_down() const;
    Mag abs_up() const { return mid_up() + rad_; }
    Mag abs_down() const { return Mag::sub_lower(mid_down(), rad_); }
    bool contains_zero() const { return abs_down().is_zero(); }

    void add_error(const Mag& e) { rad_ += e; }
    APComplex with_prec(Prec p) const;
    APComplex mid() const { return APComplex(re_, im_); }

    APComplex operator-() const { return APComplex(-re_, -im_, rad_); }
    APComplex& operator+=(const APComplex& o);
    APComplex& operator-=(const APComplex& o);
    APComplex& operator*=(const APComplex& o);
    APComplex& operator/=(const APComplex& o);

    std::string to_string(int digits = 25) const;
    double re_d() const { return re_.to_double(); }
    double im_d() const { return im_.to_double(); }

private:
    Real re_, im_;
    Mag rad_;
};

APComplex operator+(APComplex a, const APComplex& b);
APComplex operator-(APComplex a, const APComplex& b);
APComplex operator*(const APComplex& a, const APComplex& b);
APComplex operator/(const APComplex& a, const APComplex& b);
APComplex operator*(const APComplex& a, const Real& b);
APComplex operator*(const APComplex& a, long b);
inline APComplex operator*(long b, const APComplex& a) { return a * b; }
APComplex operator/(const APComplex& a, long b);

APComplex conj(const APComplex& z);
APComplex inv(const APComplex& z);
APComplex exp(const APComplex& z);
APComplex log(const APComplex& z);  // principal branch
APComplex sqrt(const APComplex& z); // principal branch
APComplex pow(const APComplex& z, long n);
APComplex mul_i(const APComplex& z);
Real norm2(const APComplex& z);     // |mid|^2 (no radius)

// distance |a - b| upper bound including both radii
Mag dist_up(const APComplex& a, const APComplex& b);
// |a-b| <= tol considering radii, i.e. the balls are consistent with equality within tol
bool overlaps(const APComplex& a, const APComplex& b);

// truncated Taylor series in a small variable, coefficients are balls
struct Jet {
    std::vector<APComplex> c;
    Jet() = default;
    Jet(size_t n, Prec p) : c(n, APComplex(p)) {}
    static Jet constant(const APComplex& a, size_t n);
    static Jet variable(const APComplex& a, size_t n); // a + eps
    size_t size() const { return c.size(); }
    Prec prec() const { return c.at(0).prec(); }
};
Jet operator+(const Jet& a, const Jet& b);
Jet operator-(const Jet& a, const Jet& b);
Jet operator*(const Jet& a, const Jet& b);
Jet operator*(const Jet& a, const APComplex& b);
Jet inv(const Jet& a);
inline Jet operator/(const Jet& a, const Jet& b) { return a * inv(b); }
Jet exp(const Jet& a);
Jet log(const Jet& a);

} // namespace cmeis
