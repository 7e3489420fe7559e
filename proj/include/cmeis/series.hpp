#pragma once
// Truncated power series in one and two variables over an exact ring:
// mpq_class (rationals) or Padic. Everything is modulo total degree D+1.
#include "cmeis/padic.hpp"

#include <gmpxx.h>
#include <algorithm>
#include <string>
#include <vector>

namespace cmeis {

// ring glue
inline mpq_class ring_from(const mpq_class&, long n) { return mpq_class(n); }
inline bool ring_is_zero(const mpq_class& x) { return x == 0; }
inline mpq_class ring_inv(const mpq_class& x) {
    if (x == 0) fail(ErrorCode::InvalidInput, "division by zero in series");
    return 1 / x;
}
inline bool ring_agree(const mpq_class& x, const mpq_class& y, long) { return x == y; }
// a term that may be dropped from a sum without losing anything (p-adic zeros
// known to less than the working precision still carry their uncertainty)
inline bool ring_skip(const mpq_class& x, const mpq_class&) { return x == 0; }
inline std::string ring_str(const mpq_class& x) { return x.get_str(); }

inline Padic ring_from(const Padic& like, long n) { return Padic::of(n, like.p(), like.prec()); }
inline bool ring_is_zero(const Padic& x) { return x.is_zero(); }
inline Padic ring_inv(const Padic& x) { return inv(x); }
inline bool ring_agree(const Padic& x, const Padic& y, long m) { return agree_mod(x, y, m); }
inline bool ring_skip(const Padic& x, const Padic& z) { return x.is_zero() && x.prec() >= z.prec(); }
inline std::string ring_str(const Padic& x) { return x.str(); }

template <class C>
struct Series {
    std::vector<C> c;  // c[0..D]
    C z;               // zero of the ring, carries p and precision cap for Padic

    Series() = default;
    Series(int D, const C& zero) : c(D + 1, zero), z(zero) {}
    int D() const { return static_cast<int>(c.size()) - 1; }
    static Series var(int D, const C& zero) {
        Series s(D, zero);
        if (D >= 1) s.c[1] = ring_from(zero, 1);
        return s;
    }
    static Series constant(int D, const C& x, const C& zero) {
        Series s(D, zero);
        s.c[0] = x;
        return s;
    }
    Series truncate(int D) const {
        Series s(D, z);
        for (int k = 0; k <= std::min(D, this->D()); ++k) s.c[k] = c[k];
        return s;
    }
};

template <class C>
Series<C> operator+(const Series<C>& a, const Series<C>& b) {
    Series<C> r(std::min(a.D(), b.D()), a.z);
    for (int k = 0; k <= r.D(); ++k) r.c[k] = a.c[k] + b.c[k];
    return r;
}
template <class C>
Series<C> operator-(const Series<C>& a, const Series<C>& b) {
    Series<C> r(std::min(a.D(), b.D()), a.z);
    for (int k = 0; k <= r.D(); ++k) r.c[k] = a.c[k] - b.c[k];
    return r;
}
template <class C>
Series<C> operator*(const C& x, const Series<C>& a) {
    Series<C> r = a;
    for (auto& v : r.c) v = x * v;
    return r;
}
template <class C>
Series<C> operator*(const Series<C>& a, const Series<C>& b) {
    const C& z0 = a.z;
    int D = std::min(a.D(), b.D());
    Series<C> r(D, a.z);
    for (int i = 0; i <= D; ++i) {
        if (ring_skip(a.c[i], z0)) continue;
        for (int j = 0; i + j <= D; ++j)
            if (!ring_skip(b.c[j], z0)) r.c[i + j] = r.c[i + j] + a.c[i] * b.c[j];
    }
    return r;
}

template <class C>
Series<C> series_inverse(const Series<C>& a) {
    const C& z0 = a.z;
    Series<C> r(a.D(), a.z);
    C i0 = ring_inv(a.c[0]);
    r.c[0] = i0;
    for (int n = 1; n <= a.D(); ++n) {
        C s = a.z;
        for (int k = 1; k <= n; ++k)
            if (!ring_skip(a.c[k], z0)) s = s + a.c[k] * r.c[n - k];
        r.c[n] = -(s * i0);
    }
    return r;
}

template <class C>
Series<C> derivative(const Series<C>& a) {
    Series<C> r(a.D(), a.z);
    for (int k = 1; k <= a.D(); ++k) r.c[k - 1] = ring_from(a.z, k) * a.c[k];
    return r;
}

// zero constant term; the top coefficient of a is dropped
template <class C>
Series<C> integral(const Series<C>& a) {
    Series<C> r(a.D(), a.z);
    for (int k = 0; k < a.D(); ++k) r.c[k + 1] = a.c[k] * ring_inv(ring_from(a.z, k + 1));
    return r;
}

// g(h(T)), h(0) = 0
template <class C>
Series<C> compose(const Series<C>& g, const Series<C>& h) {
    if (!ring_is_zero(h.c[0])) fail(ErrorCode::InvalidInput, "composition with nonzero constant term");
    int D = std::min(g.D(), h.D());
    Series<C> r(D, g.z);
    for (int k = D; k >= 0; --k) {
        r = r * h;
        r.c[0] = r.c[0] + g.c[k];
    }
    return r;
}

template <class C>
Series<C> power(const Series<C>& a, int e) {
    Series<C> r = Series<C>::constant(a.D(), ring_from(a.z, 1), a.z);
    for (int i = 0; i < e; ++i) r = r * a;
    return r;
}

// compositional inverse of a = c1 T + ..., c1 a unit; Newton on a(e) = T
template <class C>
Series<C> revert(const Series<C>& a) {
    if (!ring_is_zero(a.c[0])) fail(ErrorCode::InvalidInput, "reversion needs zero constant term");
    int D = a.D();
    Series<C> T = Series<C>::var(D, a.z);
    Series<C> e = ring_inv(a.c[1]) * T;
    Series<C> da = derivative(a);
    for (int good = 2; good <= 2 * (D + 1); good *= 2) {
        Series<C> err = compose(a, e) - T;
        e = e - err * series_inverse(compose(da, e));
    }
    return e;
}

template <class C>
bool agree(const Series<C>& a, const Series<C>& b, long m = 0) {
    int D = std::min(a.D(), b.D());
    for (int k = 0; k <= D; ++k)
        if (!ring_agree(a.c[k], b.c[k], m)) return false;
    return true;
}

// bivariate, c[i][j] is the coefficient of X^i Y^j, i + j <= D
template <class C>
struct Series2 {
    int D = 0;
    std::vector<std::vector<C>> c;
    C z;

    Series2() = default;
    Series2(int D_, const C& zero) : D(D_), z(zero) {
        c.resize(D + 1);
        for (int i = 0; i <= D; ++i) c[i].assign(D + 1 - i, zero);
    }
    static Series2 in_x(const Series<C>& s) {
        Series2 r(s.D(), s.z);
        for (int i = 0; i <= s.D(); ++i) r.c[i][0] = s.c[i];
        return r;
    }
    static Series2 in_y(const Series<C>& s) {
        Series2 r(s.D(), s.z);
        for (int j = 0; j <= s.D(); ++j) r.c[0][j] = s.c[j];
        return r;
    }
    Series2 swapped() const {
        Series2 r(D, z);
        for (int i = 0; i <= D; ++i)
            for (int j = 0; i + j <= D; ++j) r.c[j][i] = c[i][j];
        return r;
    }
};

template <class C>
Series2<C> operator+(const Series2<C>& a, const Series2<C>& b) {
    Series2<C> r(std::min(a.D, b.D), a.z);
    for (int i = 0; i <= r.D; ++i)
        for (int j = 0; i + j <= r.D; ++j) r.c[i][j] = a.c[i][j] + b.c[i][j];
    return r;
}
template <class C>
Series2<C> operator-(const Series2<C>& a, const Series2<C>& b) {
    Series2<C> r(std::min(a.D, b.D), a.z);
    for (int i = 0; i <= r.D; ++i)
        for (int j = 0; i + j <= r.D; ++j) r.c[i][j] = a.c[i][j] - b.c[i][j];
    return r;
}
template <class C>
Series2<C> operator*(const C& x, const Series2<C>& a) {
    Series2<C> r = a;
    for (auto& row : r.c)
        for (auto& v : row) v = x * v;
    return r;
}
template <class C>
Series2<C> operator*(const Series2<C>& a, const Series2<C>& b) {
    const C& z0 = a.z;
    int D = std::min(a.D, b.D);
    Series2<C> r(D, a.z);
    for (int i1 = 0; i1 <= D; ++i1)
        for (int j1 = 0; i1 + j1 <= D; ++j1) {
            const C& x = a.c[i1][j1];
            if (ring_skip(x, z0)) continue;
            for (int i2 = 0; i1 + j1 + i2 <= D; ++i2)
                for (int j2 = 0; i1 + j1 + i2 + j2 <= D; ++j2) {
                    const C& y = b.c[i2][j2];
                    if (!ring_skip(y, z0)) r.c[i1 + i2][j1 + j2] = r.c[i1 + i2][j1 + j2] + x * y;
                }
        }
    return r;
}

template <class C>
bool agree(const Series2<C>& a, const Series2<C>& b, long m = 0) {
    int D = std::min(a.D, b.D);
    for (int i = 0; i <= D; ++i)
        for (int j = 0; i + j <= D; ++j)
            if (!ring_agree(a.c[i][j], b.c[i][j], m)) return false;
    return true;
}

// G^0 .. G^n
template <class C>
std::vector<Series2<C>> powers(const Series2<C>& G, int n) {
    std::vector<Series2<C>> P;
    Series2<C> one(G.D, G.z);
    one.c[0][0] = ring_from(G.z, 1);
    P.push_back(one);
    for (int k = 1; k <= n; ++k) P.push_back(P.back() * G);
    return P;
}
template <class C>
std::vector<Series<C>> powers(const Series<C>& g, int n) {
    std::vector<Series<C>> P{Series<C>::constant(g.D(), ring_from(g.z, 1), g.z)};
    for (int k = 1; k <= n; ++k) P.push_back(P.back() * g);
    return P;
}

// g(G(X,Y)), G(0,0) = 0
template <class C>
Series2<C> apply(const Series<C>& g, const Series2<C>& G) {
    if (!ring_is_zero(G.c[0][0])) fail(ErrorCode::InvalidInput, "composition with nonzero constant term");
    int D = std::min(g.D(), G.D);
    Series2<C> r(D, g.z);
    for (int k = D; k >= 0; --k) {
        r = r * G;
        r.c[0][0] = r.c[0][0] + g.c[k];
    }
    return r;
}

// F(g(X), h(Y)) with g(0) = h(0) = 0
template <class C>
Series2<C> substitute(const Series2<C>& F, const Series<C>& g, const Series<C>& h) {
    const C& z0 = F.z;
    int D = std::min({F.D, g.D(), h.D()});
    auto gp = powers(g, D), hp = powers(h, D);
    // M[i][b] = sum_j F_ij [h^j]_b
    std::vector<std::vector<C>> M(D + 1, std::vector<C>(D + 1, F.z));
    for (int i = 0; i <= D; ++i)
        for (int j = 0; i + j <= D; ++j) {
            if (ring_skip(F.c[i][j], z0)) continue;
            for (int b = j; b <= D - i; ++b) M[i][b] = M[i][b] + F.c[i][j] * hp[j].c[b];
        }
    Series2<C> r(D, F.z);
    for (int i = 0; i <= D; ++i)
        for (int a = i; a <= D; ++a) {
            if (ring_skip(gp[i].c[a], z0)) continue;
            for (int b = 0; a + b <= D; ++b)
                if (!ring_skip(M[i][b], z0)) r.c[a][b] = r.c[a][b] + gp[i].c[a] * M[i][b];
        }
    return r;
}

// F(g(T), h(T))
template <class C>
Series<C> evaluate(const Series2<C>& F, const Series<C>& g, const Series<C>& h) {
    const C& z0 = F.z;
    int D = std::min({F.D, g.D(), h.D()});
    auto gp = powers(g.truncate(D), D), hp = powers(h.truncate(D), D);
    Series<C> r(D, F.z);
    for (int i = 0; i <= D; ++i) {
        Series<C> inner(D, F.z);
        for (int j = 0; i + j <= D; ++j)
            if (!ring_skip(F.c[i][j], z0))
                for (int b = 0; b <= D; ++b) inner.c[b] = inner.c[b] + F.c[i][j] * hp[j].c[b];
        r = r + gp[i] * inner;
    }
    return r;
}

template <class C>
std::string to_string(const Series<C>& s) {
    std::string out;
    for (int k = 0; k <= s.D(); ++k) {
        if (ring_is_zero(s.c[k])) continue;
        if (!out.empty()) out += " + ";
        out += "(" + ring_str(s.c[k]) + ")*T^" + std::to_string(k);
    }
    return out.empty() ? "0" : out;
}

} // namespace cmeis
