#include "cmeis/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace cmeis {

Real LatticeBasis::covolume() const {
    Real v = w1.re() * w2.im() - w1.im() * w2.re();
    return abs(v);
}

Real LatticeBasis::cell_diameter() const {
    APComplex a = w1 + w2, b = w1 - w2;
    Real da = sqrt(norm2(a)), db = sqrt(norm2(b));
    return (da < db ? db : da) / 2;
}

Mag lattice_tail_bound(int m, double R, double covol, double delta) {
    // each point outside R owns a cell lying in |y| >= R - delta, and
    // |x|^-m <= ((R+delta)/R)^m |y|^-m on that cell
    if (R <= delta) return Mag::inf();
    Mag f(std::pow((R + delta) / R, m) * (1 + 1e-12));
    Mag g(2 * M_PI / covol * std::pow(R - delta, 2 - m) / (m - 2) * (1 + 1e-12));
    return f * g;
}

APComplex lattice_sum(SumSpec& spec, const LatticeBasis& L) {
    int m = spec.k + spec.i;
    if (m < 3) fail(ErrorCode::DivergentSpec, "k+i < 3 does not converge absolutely");
    Prec p = spec.z.prec();
    double V = L.covolume().to_double();
    double delta = L.cell_diameter().to_double();
    double az = std::hypot(spec.z.re_d(), spec.z.im_d());
    double n1 = std::hypot(L.w1.re_d(), L.w1.im_d());
    double n2 = std::hypot(L.w2.re_d(), L.w2.im_d());
    long bm = static_cast<long>((spec.R + az) * n2 / V) + 1;
    long bn = static_cast<long>((spec.R + az) * n1 / V) + 1;
    APComplex total(p);
    // exact cancellation in x when z is a lattice point is caught by inv()
    for (long a = -bm; a <= bm; ++a) {
        for (long b = -bn; b <= bn; ++b) {
            APComplex x = spec.z + L.w1 * a + L.w2 * b;
            double ax = std::hypot(x.re_d(), x.im_d());
            if (ax > spec.R) continue;
            if (x.contains_zero()) {
                if (spec.k > 0 || spec.i > 0) fail(ErrorCode::PoleAtLatticePoint, "z lies on the lattice");
            }
            total += pow(x, -spec.k) * pow(conj(x), -spec.i);
        }
    }
    spec.tail = lattice_tail_bound(m, spec.R, V, delta);
    total.add_error(spec.tail);
    return total;
}

APComplex gamma_q(int n, const Real& y) {
    if (n < 1) fail(ErrorCode::InvalidInput, "gamma_q needs n >= 1");
    Prec p = y.prec();
    Real term(1L, p), s(1L, p);
    for (int m = 1; m < n; ++m) {
        term = term * y / m;
        s += term;
    }
    Real v = exp(-y) * s;
    Mag e = Mag::of(v) * Mag::pow2(4 + static_cast<long>(std::log2(n + 1.0)) - p);
    e += Mag::of(v) * (Mag::of(y) + Mag(1.0)) * Mag::pow2(2 - p);
    return APComplex(v, Real(p), e);
}

APComplex FieldLabel::omega(Prec p) const {
    if (d == 0) return APComplex(p);
    if (d % 4 == 0) {
        Real s = sqrt(Real(d / 4, p));
        return APComplex(Real(p), s, Mag::of(s) * Mag::pow2(1 - p));
    }
    Real s = sqrt(Real(d, p)) / 2;
    return APComplex(Real(1L, p) / 2, s, Mag::of(s) * Mag::pow2(1 - p));
}

std::string AlgebraicCandidate::to_string() const {
    if (field.is_q() || b == 0) return a.get_str();
    std::string w = field.d == 4 ? "i" : (field.d % 4 == 0 ? "sqrt(-" + std::to_string(field.d / 4) + ")" : "w");
    return a.get_str() + (sgn(b) < 0 ? " - " : " + ") + mpq_class(abs(b)).get_str() + "*" + w;
}

APComplex AlgebraicCandidate::embed(Prec p) const {
    return APComplex(a, p) + field.omega(p) * Real(b, p);
}

namespace {

using Vec = std::vector<Real>;

Real dot(const Vec& a, const Vec& b) {
    Real s(a[0].prec());
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// textbook LLL with delta = 0.99; rows are reduced in place
void lll(std::vector<Vec>& B) {
    size_t n = B.size();
    Prec p = B[0][0].prec();
    auto gso = [&](std::vector<Vec>& Bs, std::vector<std::vector<Real>>& mu, std::vector<Real>& nrm) {
        Bs = B;
        mu.assign(n, std::vector<Real>(n, Real(p)));
        nrm.assign(n, Real(p));
        for (size_t i = 0; i < n; ++i) {
            for (size_t j = 0; j < i; ++j) {
                mu[i][j] = dot(B[i], Bs[j]) / nrm[j];
                for (size_t t = 0; t < Bs[i].size(); ++t) Bs[i][t] -= mu[i][j] * Bs[j][t];
            }
            nrm[i] = dot(Bs[i], Bs[i]);
        }
    };
    std::vector<Vec> Bs;
    std::vector<std::vector<Real>> mu;
    std::vector<Real> nrm;
    gso(Bs, mu, nrm);
    size_t k = 1;
    int guard = 0;
    while (k < n && guard++ < 100000) {
        for (size_t jj = k; jj-- > 0;) {
            Real q = round(mu[k][jj]);
            if (!q.is_zero()) {
                for (size_t t = 0; t < B[k].size(); ++t) B[k][t] -= q * B[jj][t];
                gso(Bs, mu, nrm);
            }
        }
        Real lhs = nrm[k];
        Real rhs = (Real(0.99, p) - mu[k][k - 1] * mu[k][k - 1]) * nrm[k - 1];
        if (rhs <= lhs) {
            ++k;
        } else {
            std::swap(B[k], B[k - 1]);
            gso(Bs, mu, nrm);
            k = std::max<size_t>(k - 1, 1);
        }
    }
}

mpz_class cand_height(const mpq_class& a, const mpq_class& b) {
    mpz_class den;
    mpz_lcm(den.get_mpz_t(), a.get_den_mpz_t(), b.get_den_mpz_t());
    mpz_class na = abs(mpz_class(a * den)), nb = abs(mpz_class(b * den));
    return std::max({den, na, nb});
}

} // namespace

std::optional<AlgebraicCandidate> detect_algebraic(const APComplex& x, FieldLabel field,
                                                   const mpz_class& height_bound, double tol) {
    if (!(x.rad() < Mag(tol / 4)))
        fail(ErrorCode::PrecisionExhausted, "value radius " + mag_string(x.rad()) + " exceeds tol/4");
    Prec p = x.prec();
    Real C = Real(1L, p) / Real(tol, p);
    std::vector<Vec> B;
    if (field.is_q()) {
        B = {{Real(1L, p), Real(p), C * x.re()}, {Real(p), Real(1L, p), -C}};
    } else {
        APComplex w = field.omega(p);
        B = {{Real(1L, p), Real(p), Real(p), C * x.re(), C * x.im()},
             {Real(p), Real(1L, p), Real(p), -C, Real(p)},
             {Real(p), Real(p), Real(1L, p), -(C * w.re()), -(C * w.im())}};
    }
    lll(B);
    // candidates: reduced vectors and small combinations of the first two
    std::vector<Vec> tries = B;
    if (B.size() >= 2) {
        for (long s : {1L, -1L, 2L, -2L}) {
            Vec v = B[0];
            for (size_t t = 0; t < v.size(); ++t) v[t] += B[1][t] * s;
            tries.push_back(v);
        }
    }
    std::vector<AlgebraicCandidate> found;
    for (auto& v : tries) {
        mpz_class d = to_mpz(v[0]), pa = to_mpz(v[1]);
        mpz_class qb = field.is_q() ? mpz_class(0) : to_mpz(v[2]);
        if (d == 0) continue;
        AlgebraicCandidate c;
        c.field = field;
        c.a = mpq_class(pa, d);
        c.b = mpq_class(qb, d);
        c.a.canonicalize();
        c.b.canonicalize();
        c.height = cand_height(c.a, c.b);
        if (c.height > height_bound) continue;
        c.residual = dist_up(x, c.embed(p));
        if (!(c.residual < Mag(tol))) continue;
        if (std::find(found.begin(), found.end(), c) == found.end()) found.push_back(c);
    }
    if (found.empty()) return std::nullopt;
    std::sort(found.begin(), found.end(), [](auto& a, auto& b) { return a.residual < b.residual; });
    for (size_t t = 1; t < found.size(); ++t)
        if (found[t].residual < Mag(2 * tol))
            fail(ErrorCode::AmbiguousDetection, found[0].to_string() + " vs " + found[t].to_string());
    return found[0];
}

} // namespace cmeis
