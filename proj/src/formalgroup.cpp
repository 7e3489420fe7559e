#include "cmeis/formalgroup.hpp"

namespace cmeis {

template <class C>
FormalGroupLaw<C> make_law(const Series2<C>& F) {
    FormalGroupLaw<C> L;
    L.F = F;
    Series<C> dY(F.D, F.z);
    for (int i = 0; i < F.D; ++i) dY.c[i] = F.c[i][1];
    L.log = integral(series_inverse(dY));
    L.exp = revert(L.log);
    return L;
}

template <class C>
bool has_unit(const Series2<C>& F, long m) {
    for (int i = 0; i <= F.D; ++i) {
        C want = ring_from(F.z, i == 1 ? 1 : 0);
        if (!ring_agree(F.c[i][0], want, m) || !ring_agree(F.c[0][i], want, m)) return false;
    }
    return true;
}

template <class C>
bool commutative(const Series2<C>& F, long m) {
    return agree(F, F.swapped(), m);
}

// F(F(X,Y),Z) against F(X,F(Y,Z)); both sides read off the powers of F
template <class C>
bool associative(const Series2<C>& F, long m) {
    int D = F.D;
    auto P = powers(F, D);
    for (int a = 0; a <= D; ++a)
        for (int b = 0; a + b <= D; ++b)
            for (int k = 0; a + b + k <= D; ++k) {
                C lhs = F.z, rhs = F.z;
                for (int i = 0; i + k <= D; ++i)
                    if (!ring_skip(F.c[i][k], F.z)) lhs = lhs + F.c[i][k] * P[i].c[a][b];
                for (int j = 0; a + j <= D; ++j)
                    if (!ring_skip(F.c[a][j], F.z)) rhs = rhs + F.c[a][j] * P[j].c[b][k];
                if (!ring_agree(lhs, rhs, m)) return false;
            }
    return true;
}

template <class C>
bool log_additive(const FormalGroupLaw<C>& L, long m) {
    return agree(apply(L.log, L.F), Series2<C>::in_x(L.log) + Series2<C>::in_y(L.log), m);
}

template <class C>
Series<C> multiply_by(const Series2<C>& F, long n) {
    Series<C> T = Series<C>::var(F.D, F.z), r(F.D, F.z);
    for (long k = 0; k < n; ++k) r = evaluate(F, T, r);
    return r;
}

template FormalGroupLaw<mpq_class> make_law(const Series2<mpq_class>&);
template FormalGroupLaw<Padic> make_law(const Series2<Padic>&);
template bool has_unit(const Series2<mpq_class>&, long);
template bool has_unit(const Series2<Padic>&, long);
template bool commutative(const Series2<mpq_class>&, long);
template bool commutative(const Series2<Padic>&, long);
template bool associative(const Series2<mpq_class>&, long);
template bool associative(const Series2<Padic>&, long);
template bool log_additive(const FormalGroupLaw<mpq_class>&, long);
template bool log_additive(const FormalGroupLaw<Padic>&, long);
template Series<mpq_class> multiply_by(const Series2<mpq_class>&, long);
template Series<Padic> multiply_by(const Series2<Padic>&, long);

// ---- Weierstrass ----

WeierstrassFG weierstrass_fg(const mpq_class& a4, const mpq_class& a6, int D) {
    if (4 * a4 * a4 * a4 + 27 * a6 * a6 == 0)
        fail(ErrorCode::SingularCurve, "y^2 = x^3 + (" + a4.get_str() + ")x + (" + a6.get_str() + ") is singular");
    const mpq_class z0 = 0;
    int E = D + 4;
    // w = -1/y solves w = z^3 + a4 z w^2 + a6 w^3; each pass fixes at least two more degrees
    Series<mpq_class> z = Series<mpq_class>::var(E, z0), z3 = power(z, 3), w = z3;
    for (int it = 0; it <= E; ++it) {
        Series<mpq_class> w2 = w * w;
        w = z3 + mpq_class(a4) * (z * w2) + mpq_class(a6) * (w2 * w);
    }
    WeierstrassFG G;
    G.a4 = a4;
    G.a6 = a6;
    Series<mpq_class> u(D, z0);  // w / z^3
    for (int k = 0; k <= D; ++k) u.c[k] = w.c[k + 3];
    G.x2 = series_inverse(u);
    G.y3 = mpq_class(-1) * G.x2;
    // x = T^-2 a, 2y = -2 T^-3 a, so dx/(2y) = (1 - T a'/(2a)) dT
    Series<mpq_class> Ta(D, z0), a_d = derivative(G.x2);
    for (int k = 1; k <= D; ++k) Ta.c[k] = a_d.c[k - 1];
    G.omega = Series<mpq_class>::constant(D, 1, z0) - mpq_class(1, 2) * (Ta * series_inverse(G.x2));

    // chord through z1, z2 in the (z, w) plane: w = lambda z + nu; the third
    // intersection is z3 and F = -z3 (the inverse on this model is z -> -z)
    Series2<mpq_class> lam(D, z0);
    for (int i = 0; i <= D; ++i)
        for (int j = 0; i + j <= D; ++j) lam.c[i][j] = w.c[i + j + 1];
    Series2<mpq_class> X = Series2<mpq_class>::in_x(Series<mpq_class>::var(D, z0));
    Series2<mpq_class> Y = X.swapped();
    Series2<mpq_class> nu = Series2<mpq_class>::in_x(w.truncate(D)) - lam * X;
    Series2<mpq_class> lam2 = lam * lam;
    Series2<mpq_class> num = mpq_class(2 * a4) * (lam * nu) + mpq_class(3 * a6) * (lam2 * nu);
    Series2<mpq_class> u2 = mpq_class(a4) * lam2 + mpq_class(a6) * (lam2 * lam);
    // 1/(1+u2), u2 starts in degree 4
    Series2<mpq_class> invden(D, z0), term(D, z0);
    term.c[0][0] = 1;
    for (int k = 0; 4 * k <= D; ++k) {
        invden = invden + term;
        term = mpq_class(-1) * (term * u2);
    }
    G.law = make_law(X + Y + num * invden);
    return G;
}

Series<mpq_class> WeierstrassFG::curve_residual() const {
    int D = x2.D();
    Series<mpq_class> T4(D, 0), T6(D, 0);
    if (D >= 4) T4.c[4] = 1;
    if (D >= 6) T6.c[6] = 1;
    Series<mpq_class> x3 = x2 * x2 * x2;
    return y3 * y3 - x3 - mpq_class(a4) * (T4 * x2) - mpq_class(a6) * T6;
}

Series<Padic> cm_endomorphism(const WeierstrassFG& W, const Padic& a) {
    const auto& lq = W.law.log;
    Series<Padic> lg(lq.D(), Padic(a.p(), a.prec()));
    for (int k = 0; k <= lq.D(); ++k) lg.c[k] = Padic::of(lq.c[k], a.p(), a.prec());
    return compose(revert(lg), a * lg);
}

long frobenius_defect(const Series<Padic>& e) {
    long v = e.z.prec();
    for (int k = 0; k <= e.D(); ++k) {
        Padic d = e.c[k] - ring_from(e.z, k == e.z.p() ? 1 : 0);
        v = std::min(v, d.is_zero() ? d.prec() : d.val());
    }
    return v;
}

// ---- Lubin-Tate ----

namespace {

Padic pw(const Padic& x, int e) {
    Padic r = ring_from(x, 1);
    for (int i = 0; i < e; ++i) r = r * x;
    return r;
}

int top_degree(const Series<Padic>& f) {
    int k = f.D();
    while (k > 0 && f.c[k].is_zero()) --k;
    return k;
}

void check_lift(const Series<Padic>& f, const Padic& pi, long q) {
    if (pi.is_zero() || pi.val() < 1)
        fail(ErrorCode::InvalidFrobeniusLift, "pi must be a nonzero non-unit, got " + pi.str());
    if (!f.c[0].is_zero() || !(f.c[1] - pi).is_zero())
        fail(ErrorCode::InvalidFrobeniusLift, "f must be pi T mod T^2");
    for (int k = 2; k <= f.D(); ++k) {
        Padic x = f.c[k] - ring_from(pi, k == q ? 1 : 0);
        if (!x.is_zero() && x.val() < pi.val())
            fail(ErrorCode::InvalidFrobeniusLift,
                 "f is not T^" + std::to_string(q) + " mod pi at degree " + std::to_string(k));
    }
    if (q > f.D()) fail(ErrorCode::InvalidFrobeniusLift, "truncation below q");
}

} // namespace

Series<Padic> intertwiner(const Series<Padic>& f, const Series<Padic>& g, const Padic& pi, const Padic& a) {
    int D = std::min(f.D(), g.D());
    const Padic z = f.z;
    int kmax = top_degree(g.truncate(D));
    auto fp = powers(f.truncate(D), D);
    // h[k][d] = coefficient of T^d in theta^k
    std::vector<std::vector<Padic>> h(kmax + 1, std::vector<Padic>(D + 1, z));
    Series<Padic> th(D, z);
    th.c[1] = a;
    h[1][1] = a;
    for (int d = 2; d <= D; ++d) {
        for (int k = 2; k <= kmax; ++k) {
            Padic s = z;
            for (int e = 1; d - e >= k - 1; ++e) s = s + h[1][e] * h[k - 1][d - e];
            h[k][d] = s;
        }
        Padic rhs = z;
        for (int m = 1; m < d; ++m)
            if (!ring_skip(th.c[m], z)) rhs = rhs + th.c[m] * fp[m].c[d];
        for (int k = 2; k <= kmax; ++k)
            if (!ring_skip(g.c[k], z)) rhs = rhs - g.c[k] * h[k][d];
        th.c[d] = rhs / (pi - pw(pi, d));
        h[1][d] = th.c[d];
    }
    return th;
}

Series<Padic> LubinTate::endo(const Padic& a) const { return intertwiner(f, f, pi, a); }

LubinTate lubin_tate(const Padic& pi, const Series<Padic>& f_in, long q, int D) {
    Series<Padic> f = f_in.truncate(D);
    D = f.D();
    check_lift(f, pi, q);
    const Padic z = f.z;
    int kmax = top_degree(f);
    auto U = powers(f, D);
    // hp[k][d][a]: the X^a Y^(d-a) coefficient of F^k
    std::vector<std::vector<std::vector<Padic>>> hp(kmax + 1, std::vector<std::vector<Padic>>(D + 1));
    for (int k = 1; k <= kmax; ++k)
        for (int d = 0; d <= D; ++d) hp[k][d].assign(d + 1, z);
    Series2<Padic> F(D, z);
    F.c[1][0] = F.c[0][1] = ring_from(z, 1);
    hp[1][1][0] = hp[1][1][1] = ring_from(z, 1);
    for (int d = 2; d <= D; ++d) {
        for (int k = 2; k <= kmax; ++k)
            for (int e = 1; d - e >= k - 1; ++e)
                for (int a1 = 0; a1 <= e; ++a1) {
                    if (ring_skip(hp[1][e][a1], z)) continue;
                    for (int a2 = 0; a2 <= d - e; ++a2)
                        if (!ring_skip(hp[k - 1][d - e][a2], z))
                            hp[k][d][a1 + a2] = hp[k][d][a1 + a2] + hp[1][e][a1] * hp[k - 1][d - e][a2];
                }
        Padic den = pi - pw(pi, d);
        for (int a = 0; a <= d; ++a) {
            // F(f X, f Y) from the known part of F, f(F) from the powers
            Padic A = z, B = z;
            for (int i = 0; i <= a; ++i)
                for (int j = 0; i + j < d && j <= d - a; ++j)
                    if (!ring_skip(F.c[i][j], z)) A = A + F.c[i][j] * U[i].c[a] * U[j].c[d - a];
            for (int k = 2; k <= kmax; ++k)
                if (!ring_skip(f.c[k], z)) B = B + f.c[k] * hp[k][d][a];
            F.c[a][d - a] = (A - B) / den;
            hp[1][d][a] = F.c[a][d - a];
        }
    }
    LubinTate G;
    G.pi = pi;
    G.q = q;
    G.f = f;
    G.law = make_law(F);
    return G;
}

Series<Padic> frobenius_lift(const Padic& pi, long q, int D) {
    Padic z(pi.p(), pi.prec());
    Series<Padic> f(D, z);
    f.c[1] = pi;
    if (q <= D) f.c[q] = ring_from(z, 1);
    return f;
}

Series<Padic> multiplicative_lift(long p, long prec, int D) {
    Series<Padic> f(D, Padic(p, prec));
    mpz_class b = 1;
    for (long k = 1; k <= p && k <= D; ++k) {
        b = b * (p - k + 1) / k;
        f.c[k] = Padic::of(b, p, prec);
    }
    return f;
}

// ---- Coleman norm ----

namespace {

// Z_p[X]/(E), E monic of degree d given by e[0..d-1]
struct ExtRing {
    std::vector<Padic> e;
    Padic z;
    int d() const { return static_cast<int>(e.size()); }
    using Elem = std::vector<Padic>;

    Elem zero() const { return Elem(d(), z); }
    Elem mul(const Elem& a, const Elem& b) const {
        std::vector<Padic> t(2 * d() - 1, z);
        for (int i = 0; i < d(); ++i) {
            if (ring_skip(a[i], z)) continue;
            for (int j = 0; j < d(); ++j)
                if (!ring_skip(b[j], z)) t[i + j] = t[i + j] + a[i] * b[j];
        }
        for (int m = 2 * d() - 2; m >= d(); --m) {
            if (ring_skip(t[m], z)) continue;
            for (int k = 0; k < d(); ++k) t[m - d() + k] = t[m - d() + k] - t[m] * e[k];
        }
        t.resize(d());
        return t;
    }
    Elem add(const Elem& a, const Elem& b) const {
        Elem r(d(), z);
        for (int i = 0; i < d(); ++i) r[i] = a[i] + b[i];
        return r;
    }
};

using RSeries = std::vector<ExtRing::Elem>;  // indexed by T-degree

RSeries rmul(const ExtRing& R, const RSeries& a, const RSeries& b) {
    int D = static_cast<int>(a.size()) - 1;
    RSeries r(D + 1, R.zero());
    for (int i = 0; i <= D; ++i)
        for (int j = 0; i + j <= D; ++j) r[i + j] = R.add(r[i + j], R.mul(a[i], b[j]));
    return r;
}

} // namespace

Series<Padic> coleman_norm(const Series<Padic>& g_in, const LubinTate& G) {
    int D = std::min(g_in.D(), G.law.D());
    Series<Padic> g = g_in.truncate(D);
    const Padic z = G.f.z, one = ring_from(z, 1);
    // unit or monomial times unit
    int lead = 0;
    while (lead <= D && g.c[lead].is_zero()) ++lead;
    if (lead > D || g.c[lead].val() != 0)
        fail(ErrorCode::NonUnitInput, "g must be T^n times a unit");
    long q = G.q;
    if (top_degree(G.f) != q || !(G.f.c[q] - one).is_zero())
        fail(ErrorCode::InvalidInput, "coleman_norm needs [pi] monic polynomial of degree q");
    ExtRing R;
    R.z = z;
    for (long k = 0; k < q - 1; ++k) R.e.push_back(G.f.c[k + 1]);
    int d = R.d();

    // X^j reduced, then Phi = F(T, X)
    std::vector<ExtRing::Elem> Xp{R.zero()};
    Xp[0][0] = one;
    ExtRing::Elem X = R.zero();
    if (d > 1) X[1] = one;
    else X[0] = -R.e[0];
    for (int j = 1; j <= D; ++j) Xp.push_back(R.mul(Xp.back(), X));
    const auto& F = G.law.F;
    RSeries Phi(D + 1, R.zero());
    for (int i = 0; i <= D; ++i)
        for (int j = 0; i + j <= D; ++j)
            if (!ring_skip(F.c[i][j], z)) {
                ExtRing::Elem c = Xp[j];
                for (auto& v : c) v = F.c[i][j] * v;
                Phi[i] = R.add(Phi[i], c);
            }
    // The torsion point X is not T-adically small: the dropped terms c_ij X^j,
    // j > D - i, lie in pi^floor(j/d). Unless F is visibly a polynomial (no
    // terms in the top half of the degrees), that bounds what Phi[i] knows.
    bool polynomial = true;
    for (int i = 0; i <= D; ++i)
        for (int j = 0; i + j <= D; ++j)
            if (2 * (i + j) > D && !F.c[i][j].is_zero()) polynomial = false;
    if (!polynomial)
        for (int i = 0; i <= D; ++i)
            for (auto& v : Phi[i]) v = v.with_prec(((D + 1 - i) / d) * G.pi.val());
    // h = g(Phi) by Horner from the top nonzero coefficient
    int top = top_degree(g);
    RSeries h(D + 1, R.zero());
    for (int k = top; k >= 0; --k) {
        h = rmul(R, h, Phi);
        h[0][0] = h[0][0] + g.c[k];
    }
    // matrix of multiplication by h on the basis 1, X, .., X^(d-1)
    std::vector<std::vector<Series<Padic>>> M(d, std::vector<Series<Padic>>(d, Series<Padic>(D, z)));
    for (int c = 0; c < d; ++c)
        for (int t = 0; t <= D; ++t) {
            ExtRing::Elem v = R.mul(h[t], Xp[c]);
            for (int r = 0; r < d; ++r) M[r][c].c[t] = v[r];
        }
    // determinant over subsets of columns, rows taken in order
    std::vector<Series<Padic>> dp(size_t(1) << d, Series<Padic>(D, z));
    std::vector<bool> live(dp.size(), false);
    dp[0].c[0] = one;
    live[0] = true;
    for (size_t mask = 0; mask < dp.size(); ++mask) {
        if (!live[mask]) continue;
        int r = __builtin_popcountll(mask);
        if (r == d) continue;
        for (int c = 0; c < d; ++c) {
            if (mask & (size_t(1) << c)) continue;
            size_t nm = mask | (size_t(1) << c);
            Series<Padic> t = dp[mask] * M[r][c];
            if (__builtin_popcountll(mask >> (c + 1)) % 2) dp[nm] = dp[nm] - t;
            else dp[nm] = dp[nm] + t;
            live[nm] = true;
        }
    }
    Series<Padic> P = g * dp.back();

    // solve (N g)(f(T)) = P(T)
    auto fp = powers(G.f.truncate(D), D);
    Series<Padic> N(D, z);
    for (int n = 0; n <= D; ++n) {
        Padic s = P.c[n];
        for (int k = 0; k < n; ++k)
            if (!ring_skip(N.c[k], z)) s = s - N.c[k] * fp[k].c[n];
        N.c[n] = s / fp[n].c[n];
        if (!N.c[n].is_zero() && N.c[n].val() < 0)
            fail(ErrorCode::DescentFailure, "norm coefficient " + std::to_string(n) + " is not integral: " + N.c[n].str());
    }
    return N;
}

} // namespace cmeis
