#pragma once
// Imaginary quadratic fields of class number one: O_K arithmetic,
// ideals (always principal), the Hecke character psi, ray class groups.
#include "cmeis/numerics.hpp"

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

namespace cmeis {

// a + b*w with w^2 = t*w - n
struct OKElem {
    mpz_class a, b;
    long t = 0, n = 1;

    OKElem() = default;
    OKElem(mpz_class a_, mpz_class b_, long t_, long n_) : a(std::move(a_)), b(std::move(b_)), t(t_), n(n_) {}

    mpz_class norm() const { return a * a + t * a * b + n * b * b; }
    mpz_class trace() const { return 2 * a + t * b; }
    OKElem conj() const { return OKElem(a + t * b, -b, t, n); }
    bool is_zero() const { return a == 0 && b == 0; }
    OKElem operator-() const { return OKElem(-a, -b, t, n); }
    bool operator==(const OKElem& o) const { return a == o.a && b == o.b; }
    bool operator!=(const OKElem& o) const { return !(*this == o); }
    bool operator<(const OKElem& o) const { return a != o.a ? a < o.a : b < o.b; }
    std::string str() const;
};

OKElem operator+(const OKElem& x, const OKElem& y);
OKElem operator-(const OKElem& x, const OKElem& y);
OKElem operator*(const OKElem& x, const OKElem& y);
OKElem operator*(const OKElem& x, long c);
OKElem pow(const OKElem& x, unsigned long e);
bool divides(const OKElem& d, const OKElem& x);  // x in dO_K
OKElem exact_div(const OKElem& x, const OKElem& d);

// element of K: a + b*w with rational coordinates
struct KElem {
    mpq_class a, b;
    long t = 0, n = 1;
    KElem() = default;
    KElem(mpq_class a_, mpq_class b_, long t_, long n_) : a(std::move(a_)), b(std::move(b_)), t(t_), n(n_) {}
    explicit KElem(const OKElem& x) : a(x.a), b(x.b), t(x.t), n(x.n) {}
    mpq_class norm() const { return a * a + t * a * b + n * b * b; }
    KElem conj() const { return KElem(a + t * b, -b, t, n); }
    bool is_zero() const { return a == 0 && b == 0; }
    bool is_integral() const { return a.get_den() == 1 && b.get_den() == 1; }
    OKElem to_ok() const;
    std::string str() const;
};
KElem operator+(const KElem& x, const KElem& y);
KElem operator-(const KElem& x, const KElem& y);
KElem operator*(const KElem& x, const KElem& y);
KElem inv(const KElem& x);
inline KElem operator/(const KElem& x, const KElem& y) { return x * inv(y); }
KElem pow(const KElem& x, long e);

// Z-lattice {x + y w} in HNF: generated by (A,0) and (B,C), 0 <= B < A
struct HNF {
    mpz_class A, B, C;
    mpz_class index() const { return A * C; }
};
HNF hnf_of(const std::vector<std::pair<mpz_class, mpz_class>>& gens);

enum class SplitKind { Split, Inert, Ramified };

class ImagQuadField {
public:
    explicit ImagQuadField(long d);

    long d() const { return d_; }
    long t() const { return t_; }
    long n() const { return n_; }
    int w() const { return static_cast<int>(units_.size()); }
    FieldLabel label() const { return FieldLabel::quadratic(d_); }

    OKElem elem(long a, long b) const { return OKElem(a, b, t_, n_); }
    OKElem elem(const mpz_class& a, const mpz_class& b) const { return OKElem(a, b, t_, n_); }
    KElem kelem(const mpq_class& a, const mpq_class& b) const { return KElem(a, b, t_, n_); }
    OKElem one() const { return elem(1, 0); }
    const std::vector<OKElem>& units() const { return units_; }  // units_[k] = zeta^k
    const OKElem& unit_generator() const { return units_.at(1 % units_.size()); }

    APComplex embed(const OKElem& x, Prec p) const;
    APComplex embed(const KElem& x, Prec p) const;
    APComplex omega(Prec p) const { return label().omega(p); }

    OKElem normalize(const OKElem& x) const;  // first unit multiple in a fixed order
    bool associates(const OKElem& x, const OKElem& y) const { return normalize(x) == normalize(y); }
    HNF ideal_hnf(const OKElem& g) const;
    bool coprime(const OKElem& x, const OKElem& y) const;
    OKElem gcd(const OKElem& x, const OKElem& y) const;

    // residues modulo (m): canonical representative and dense index in [0, N m)
    OKElem reduce(const OKElem& x, const HNF& h) const;
    long residue_index(const OKElem& x, const HNF& h) const;
    OKElem residue_from_index(long idx, const HNF& h) const;

    struct Splitting {
        SplitKind kind;
        std::vector<OKElem> primes;  // normalized generators above p
    };
    Splitting split_type(long p) const;
    // valuation of x at the prime ideal (pi)
    int valuation(const OKElem& x, const OKElem& pi) const;
    std::vector<std::pair<OKElem, int>> factor(const OKElem& x) const;  // prime ideal factorization

private:
    long d_, t_, n_;
    std::vector<OKElem> units_;
};

class HeckeCharacter {
public:
    // table: residue mod f -> power of the unit generator
    HeckeCharacter(const ImagQuadField& K, OKElem f, const std::vector<std::pair<OKElem, int>>& table);

    const ImagQuadField& field() const { return K_; }
    const OKElem& conductor() const { return f_; }
    OKElem eval(const OKElem& alpha) const;  // psi((alpha)); NotCoprime if not prime to f
    OKElem eval_conj(const OKElem& alpha) const { return eval(alpha).conj(); }  // psibar
    int twist_index(const OKElem& alpha) const;

private:
    ImagQuadField K_;
    OKElem f_;
    HNF fh_;
    std::vector<int> table_;  // by residue index, -1 where not a unit residue
};

class RayClassGroup {
public:
    static constexpr long kCap = 10000;
    RayClassGroup(const ImagQuadField& K, const OKElem& m);

    const OKElem& modulus() const { return m_; }
    size_t order() const { return reps_.size(); }
    const std::vector<OKElem>& reps() const { return reps_; }
    size_t unit_residue_count() const { return n_units_mod_; }
    size_t unit_image_size() const { return n_unit_image_; }
    size_t artin_coset(const OKElem& a) const;
    long class_of(const OKElem& a) const;  // -1 when a is not prime to the modulus
    size_t mul(size_t x, size_t y) const { return table_[x][y]; }
    size_t identity() const { return artin_coset(K_.one()); }

private:
    ImagQuadField K_;
    OKElem m_;
    HNF h_;
    std::vector<long> cls_;  // residue index -> class, -1 if not a unit
    std::vector<OKElem> reps_;
    std::vector<std::vector<size_t>> table_;
    size_t n_units_mod_ = 0, n_unit_image_ = 0;
};

bool is_prime(long p);

} // namespace cmeis
