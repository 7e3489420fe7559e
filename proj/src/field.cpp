#include "cmeis/field.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace cmeis {

namespace {

void same_field(const OKElem& x, const OKElem& y) {
    if (x.t != y.t || x.n != y.n) fail(ErrorCode::InvalidInput, "elements from different fields");
}

mpz_class fdiv(const mpz_class& a, const mpz_class& b) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

mpz_class fmod(const mpz_class& a, const mpz_class& b) {
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

} // namespace

bool is_prime(long p) {
    if (p < 2) return false;
    for (long q = 2; q * q <= p; ++q)
        if (p % q == 0) return false;
    return true;
}

std::string OKElem::str() const {
    std::string w = (t == 0 && n == 1) ? "i" : "w";
    if (b == 0) return a.get_str();
    std::string s = a == 0 ? "" : a.get_str();
    if (b > 0 && a != 0) s += "+";
    if (b == -1) s += "-";
    else if (b != 1) s += b.get_str() + "*";
    return s + w;
}

OKElem operator+(const OKElem& x, const OKElem& y) { same_field(x, y); return OKElem(x.a + y.a, x.b + y.b, x.t, x.n); }
OKElem operator-(const OKElem& x, const OKElem& y) { same_field(x, y); return OKElem(x.a - y.a, x.b - y.b, x.t, x.n); }
OKElem operator*(const OKElem& x, const OKElem& y) {
    same_field(x, y);
    mpz_class bb = x.b * y.b;
    return OKElem(x.a * y.a - x.n * bb, x.a * y.b + x.b * y.a + x.t * bb, x.t, x.n);
}
OKElem operator*(const OKElem& x, long c) { return OKElem(x.a * c, x.b * c, x.t, x.n); }

OKElem pow(const OKElem& x, unsigned long e) {
    OKElem r(1, 0, x.t, x.n), b = x;
    while (e) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

bool divides(const OKElem& d, const OKElem& x) {
    if (d.is_zero()) return x.is_zero();
    OKElem p = x * d.conj();
    mpz_class N = d.norm();
    return fmod(p.a, N) == 0 && fmod(p.b, N) == 0;
}

OKElem exact_div(const OKElem& x, const OKElem& d) {
    if (!divides(d, x)) fail(ErrorCode::InvalidInput, x.str() + " not divisible by " + d.str());
    OKElem p = x * d.conj();
    mpz_class N = d.norm();
    return OKElem(p.a / N, p.b / N, x.t, x.n);
}

std::string KElem::str() const {
    if (b == 0) return a.get_str();
    std::string w = (t == 0 && n == 1) ? "i" : "w";
    return a.get_str() + (sgn(b) < 0 ? "-" : "+") + mpq_class(abs(b)).get_str() + "*" + w;
}

OKElem KElem::to_ok() const {
    if (!is_integral()) fail(ErrorCode::InvalidInput, "not integral: " + str());
    return OKElem(a.get_num(), b.get_num(), t, n);
}

KElem operator+(const KElem& x, const KElem& y) { return KElem(x.a + y.a, x.b + y.b, x.t, x.n); }
KElem operator-(const KElem& x, const KElem& y) { return KElem(x.a - y.a, x.b - y.b, x.t, x.n); }
KElem operator*(const KElem& x, const KElem& y) {
    mpq_class bb = x.b * y.b;
    return KElem(x.a * y.a - x.n * bb, x.a * y.b + x.b * y.a + x.t * bb, x.t, x.n);
}
KElem inv(const KElem& x) {
    if (x.is_zero()) fail(ErrorCode::InvalidInput, "inverse of zero");
    mpq_class N = x.norm();
    KElem c = x.conj();
    return KElem(c.a / N, c.b / N, x.t, x.n);
}
KElem pow(const KElem& x, long e) {
    if (e < 0) return pow(inv(x), -e);
    KElem r(1, 0, x.t, x.n), b = x;
    while (e) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

HNF hnf_of(const std::vector<std::pair<mpz_class, mpz_class>>& gens) {
    mpz_class px = 0, py = 0, A = 0;
    for (auto [x, y] : gens) {
        if (y == 0) {
            A = gcd(A, x);
            continue;
        }
        if (py == 0) {
            A = gcd(A, px);
            px = x;
            py = y;
            continue;
        }
        mpz_class g, s, t;
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), py.get_mpz_t(), y.get_mpz_t());
        mpz_class nx = s * px + t * x;
        mpz_class zx = (y / g) * px - (py / g) * x;  // y-coordinate cancels
        A = gcd(A, zx);
        px = nx;
        py = g;
    }
    if (py < 0) { px = -px; py = -py; }
    A = abs(A);
    if (A == 0 || py == 0) fail(ErrorCode::InvalidInput, "degenerate ideal lattice");
    return {A, fmod(px, A), py};
}

ImagQuadField::ImagQuadField(long d) : d_(d) {
    static const long ok[] = {3, 4, 7, 8, 11, 19, 43, 67, 163};
    if (std::find(std::begin(ok), std::end(ok), d) == std::end(ok))
        fail(ErrorCode::InvalidInput, "d_K=" + std::to_string(d) + " is not a class number one discriminant");
    if (d % 4 == 0) { t_ = 0; n_ = d / 4; }
    else { t_ = 1; n_ = (d + 1) / 4; }
    OKElem z = d == 4 || d == 3 ? elem(0, 1) : elem(-1, 0);
    OKElem u = one();
    do {
        units_.push_back(u);
        u = u * z;
    } while (u != one());
}

APComplex ImagQuadField::embed(const OKElem& x, Prec p) const {
    return APComplex(mpq_class(x.a), p) + omega(p) * Real(x.b, p);
}

APComplex ImagQuadField::embed(const KElem& x, Prec p) const {
    return APComplex(x.a, p) + omega(p) * Real(x.b, p);
}

OKElem ImagQuadField::normalize(const OKElem& x) const {
    OKElem best = x;
    for (auto& u : units_) {
        OKElem y = u * x;
        if (best < y) best = y;
    }
    return best;
}

HNF ImagQuadField::ideal_hnf(const OKElem& g) const {
    if (g.is_zero()) fail(ErrorCode::InvalidInput, "zero ideal");
    OKElem gw = g * elem(0, 1);
    return hnf_of({{g.a, g.b}, {gw.a, gw.b}});
}

bool ImagQuadField::coprime(const OKElem& x, const OKElem& y) const {
    OKElem xw = x * elem(0, 1), yw = y * elem(0, 1);
    return hnf_of({{x.a, x.b}, {xw.a, xw.b}, {y.a, y.b}, {yw.a, yw.b}}).index() == 1;
}

OKElem ImagQuadField::gcd(const OKElem& x, const OKElem& y) const {
    OKElem xw = x * elem(0, 1), yw = y * elem(0, 1);
    HNF h = hnf_of({{x.a, x.b}, {xw.a, xw.b}, {y.a, y.b}, {yw.a, yw.b}});
    // Lagrange-reduce the ideal lattice; its shortest vector generates it
    OKElem u = elem(h.A, 0), v = elem(h.B, h.C);
    for (int it = 0; it < 1000; ++it) {
        if (v.norm() < u.norm()) std::swap(u, v);
        // v -= round(<u,v>/<u,u>) u with <x,y> = (N(x+y) - N(x) - N(y))/2
        mpz_class num = (u + v).norm() - u.norm() - v.norm();
        mpz_class den = 2 * u.norm();
        mpz_class q = fdiv(2 * num + den, 2 * den);
        if (q == 0) break;
        v = v - u * q.get_si();
    }
    if (u.norm() != h.index()) fail(ErrorCode::InvalidInput, "ideal is not principal?");
    return normalize(u);
}

OKElem ImagQuadField::reduce(const OKElem& x, const HNF& h) const {
    mpz_class q = fdiv(x.b, h.C);
    mpz_class y = x.b - q * h.C;
    mpz_class a = fmod(x.a - q * h.B, h.A);
    return elem(a, y);
}

long ImagQuadField::residue_index(const OKElem& x, const HNF& h) const {
    OKElem r = reduce(x, h);
    return mpz_class(r.b * h.A + r.a).get_si();
}

OKElem ImagQuadField::residue_from_index(long idx, const HNF& h) const {
    long A = h.A.get_si();
    return elem(idx % A, idx / A);
}

ImagQuadField::Splitting ImagQuadField::split_type(long p) const {
    if (!is_prime(p)) fail(ErrorCode::InvalidInput, std::to_string(p) + " is not prime");
    int ks = mpz_kronecker_si(mpz_class(-d_).get_mpz_t(), p);
    // find an element of norm p if one exists
    std::vector<OKElem> found;
    long bmax = static_cast<long>(std::sqrt(4.0 * p / (4.0 * n_ - t_ * t_))) + 1;
    for (long b = 0; b <= bmax && found.empty(); ++b) {
        long disc = t_ * t_ * b * b - 4 * (n_ * b * b - p);
        if (disc < 0) continue;
        long s = static_cast<long>(std::llround(std::sqrt(static_cast<double>(disc))));
        if (s * s != disc) continue;
        for (long sg : {1L, -1L}) {
            long num = -t_ * b + sg * s;
            if (num % 2 == 0 && elem(num / 2, b).norm() == p) found.push_back(elem(num / 2, b));
        }
    }
    if (ks == 0) return {SplitKind::Ramified, {normalize(found.at(0))}};
    if (ks < 0) return {SplitKind::Inert, {elem(p, 0)}};
    OKElem pi = normalize(found.at(0));
    return {SplitKind::Split, {pi, normalize(pi.conj())}};
}

int ImagQuadField::valuation(const OKElem& x, const OKElem& pi) const {
    if (x.is_zero()) fail(ErrorCode::InvalidInput, "valuation of zero");
    int v = 0;
    OKElem y = x;
    while (divides(pi, y)) {
        y = exact_div(y, pi);
        ++v;
    }
    return v;
}

std::vector<std::pair<OKElem, int>> ImagQuadField::factor(const OKElem& x) const {
    mpz_class N = x.norm();
    std::vector<std::pair<OKElem, int>> out;
    std::set<long> ps;
    mpz_class r = N;
    for (long p = 2; r > 1 && mpz_class(p) * p <= r; ++p)
        while (r % p == 0) { ps.insert(p); r /= p; }
    if (r > 1) ps.insert(r.get_si());
    for (long p : ps)
        for (auto& pi : split_type(p).primes) {
            int v = valuation(x, pi);
            if (v) out.push_back({pi, v});
        }
    return out;
}

HeckeCharacter::HeckeCharacter(const ImagQuadField& K, OKElem f, const std::vector<std::pair<OKElem, int>>& table)
    : K_(K), f_(std::move(f)), fh_(K_.ideal_hnf(f_)) {
    long N = fh_.index().get_si();
    table_.assign(N, -1);
    int w = K_.w();
    for (auto& [r, idx] : table) table_[K_.residue_index(r, fh_)] = ((idx % w) + w) % w;
    std::vector<long> unit_res;
    for (long i = 0; i < N; ++i) {
        bool u = K_.coprime(K_.residue_from_index(i, fh_), f_);
        if (u && table_[i] < 0) fail(ErrorCode::PresetInvalid, "twist table misses residue " + K_.residue_from_index(i, fh_).str());
        if (!u && table_[i] >= 0) fail(ErrorCode::PresetInvalid, "twist table has non-unit residue");
        if (u) unit_res.push_back(i);
    }
    for (long i : unit_res)
        for (long j : unit_res) {
            long ij = K_.residue_index(K_.residue_from_index(i, fh_) * K_.residue_from_index(j, fh_), fh_);
            if (table_[ij] != (table_[i] + table_[j]) % w)
                fail(ErrorCode::PresetInvalid, "twist table is not multiplicative");
        }
    for (int k = 0; k < w; ++k) {
        // eps(u) = u^-1 makes psi independent of the generator
        long ui = K_.residue_index(K_.units()[k], fh_);
        if ((table_[ui] + k) % w != 0) fail(ErrorCode::PresetInvalid, "eps(u) != u^-1 for a unit");
    }
}

int HeckeCharacter::twist_index(const OKElem& alpha) const {
    int idx = table_[K_.residue_index(alpha, fh_)];
    if (idx < 0 || !K_.coprime(alpha, f_)) fail(ErrorCode::NotCoprime, alpha.str() + " not prime to conductor");
    return idx;
}

OKElem HeckeCharacter::eval(const OKElem& alpha) const {
    return K_.units()[twist_index(alpha)] * alpha;
}

RayClassGroup::RayClassGroup(const ImagQuadField& K, const OKElem& m) : K_(K), m_(m), h_(K.ideal_hnf(m)) {
    mpz_class Nm = h_.index();
    if (Nm > kCap) fail(ErrorCode::ModulusTooLarge, "modulus norm " + Nm.get_str() + " above cap");
    long N = Nm.get_si();
    cls_.assign(N, -1);
    long next = 0;
    for (long i = 0; i < N; ++i) {
        OKElem r = K_.residue_from_index(i, h_);
        if (!K_.coprime(r, m_)) continue;
        ++n_units_mod_;
        if (cls_[i] >= 0) continue;
        for (auto& u : K_.units()) cls_[K_.residue_index(u * r, h_)] = next;
        ++next;
    }
    {
        std::set<long> img;
        for (auto& u : K_.units()) img.insert(K_.residue_index(u, h_));
        n_unit_image_ = img.size();
    }
    // smallest-norm representative per class
    reps_.assign(next, OKElem());
    std::vector<bool> have(next, false);
    long found = 0;
    for (long B = 4; found < next; B *= 2) {
        std::vector<OKElem> cands;
        for (long b = -B; b <= B; ++b)
            for (long a = -B; a <= B; ++a) {
                OKElem x = K_.elem(a, b);
                if (!x.is_zero() && x.norm() <= B) cands.push_back(x);
            }
        std::sort(cands.begin(), cands.end(), [](const OKElem& x, const OKElem& y) {
            mpz_class nx = x.norm(), ny = y.norm();
            return nx != ny ? nx < ny : y < x;
        });
        for (auto& x : cands) {
            long c = cls_[K_.residue_index(x, h_)];
            if (c < 0 || have[c] || !K_.coprime(x, m_)) continue;
            have[c] = true;
            reps_[c] = x;
            ++found;
        }
    }
    table_.assign(next, std::vector<size_t>(next));
    for (long x = 0; x < next; ++x)
        for (long y = 0; y < next; ++y) table_[x][y] = artin_coset(reps_[x] * reps_[y]);
}

long RayClassGroup::class_of(const OKElem& a) const { return cls_[K_.residue_index(a, h_)]; }

size_t RayClassGroup::artin_coset(const OKElem& a) const {
    long c = class_of(a);
    if (c < 0) fail(ErrorCode::NotCoprime, a.str() + " not prime to modulus " + m_.str());
    return static_cast<size_t>(c);
}

} // namespace cmeis
