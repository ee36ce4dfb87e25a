// series.hpp
// Truncated bivariate formal power series in (q, t) over exact rationals,
// and the generating function whose t^n coefficient is the Poincare
// polynomial of the rank-2 moduli space M(n): the prefactor
// 1 / ((q^2-1) Theta) with Theta = sum_{m in Z} q^{2m(2m-1)} t^{m^2},
// the b-sum of geometric-series terms weighted by t^{(b+1)^2}, and the
// triple product prod_{d>=1} (1-q^{4d-2}t^d)^-2 (1-q^{4d}t^d)^-2
// (1-q^{4d+2}t^d)^-2.
#ifndef CHOW_SERIES_HPP
#define CHOW_SERIES_HPP

#include "chow/rational.hpp"

#include <map>
#include <vector>

namespace chow {

class PowerSeries2 {
public:
    PowerSeries2(int trunc_q, int trunc_t) : trunc_q_(trunc_q), trunc_t_(trunc_t) {
        if (trunc_q < 0 || trunc_t < 0) throw error("PowerSeries2: negative truncation");
    }

    int trunc_q() const { return trunc_q_; }
    int trunc_t() const { return trunc_t_; }

    static PowerSeries2 one(int tq, int tt) {
        PowerSeries2 s(tq, tt);
        s.set(0, 0, Rational(1));
        return s;
    }

    Rational coeff(int q, int t) const {
        auto it = coeffs_.find({q, t});
        return it == coeffs_.end() ? Rational(0) : it->second;
    }

    void set(int q, int t, Rational c) {
        if (q < 0 || t < 0) throw error("PowerSeries2: negative exponent");
        if (q > trunc_q_ || t > trunc_t_) return;
        if (c.is_zero())
            coeffs_.erase({q, t});
        else
            coeffs_[{q, t}] = std::move(c);
    }

    void add(int q, int t, const Rational& c) {
        if (q > trunc_q_ || t > trunc_t_ || c.is_zero()) return;
        auto it = coeffs_.find({q, t});
        if (it == coeffs_.end()) {
            coeffs_[{q, t}] = c;
        } else {
            it->second += c;
            if (it->second.is_zero()) coeffs_.erase(it);
        }
    }

    friend PowerSeries2 operator+(const PowerSeries2& a, const PowerSeries2& b) {
        a.check(b);
        PowerSeries2 r = a;
        for (const auto& [e, c] : b.coeffs_) r.add(e.first, e.second, c);
        return r;
    }
    friend PowerSeries2 operator-(const PowerSeries2& a, const PowerSeries2& b) {
        a.check(b);
        PowerSeries2 r = a;
        for (const auto& [e, c] : b.coeffs_) r.add(e.first, e.second, -c);
        return r;
    }

    friend PowerSeries2 operator*(const PowerSeries2& a, const PowerSeries2& b) {
        a.check(b);
        PowerSeries2 r(a.trunc_q_, a.trunc_t_);
        for (const auto& [ea, ca] : a.coeffs_)
            for (const auto& [eb, cb] : b.coeffs_) {
                int q = ea.first + eb.first, t = ea.second + eb.second;
                if (q <= r.trunc_q_ && t <= r.trunc_t_) r.add(q, t, ca * cb);
            }
        return r;
    }

    // Multiplicative inverse up to truncation; requires a unit constant term.
    PowerSeries2 inverse() const {
        Rational c0 = coeff(0, 0);
        if (c0.is_zero()) throw error("PowerSeries2: inverse of non-unit");
        PowerSeries2 b(trunc_q_, trunc_t_);
        Rational inv0 = Rational(1) / c0;
        b.set(0, 0, inv0);
        // Coefficients in graded order; every term of *this used below has
        // positive total degree, so only already-computed entries of b occur.
        for (int d = 1; d <= trunc_q_ + trunc_t_; ++d) {
            for (int t = std::max(0, d - trunc_q_); t <= std::min(d, trunc_t_); ++t) {
                int q = d - t;
                Rational s(0);
                for (const auto& [e, c] : coeffs_) {
                    if (e.first == 0 && e.second == 0) continue;
                    if (e.first > q || e.second > t) continue;
                    Rational bc = b.coeff(q - e.first, t - e.second);
                    if (!bc.is_zero()) s += c * bc;
                }
                if (!s.is_zero()) b.set(q, t, -s * inv0);
            }
        }
        return b;
    }

    friend bool operator==(const PowerSeries2& a, const PowerSeries2& b) {
        return a.trunc_q_ == b.trunc_q_ && a.trunc_t_ == b.trunc_t_ &&
               a.coeffs_ == b.coeffs_;
    }

    // Restriction to smaller truncation bounds (truncation-consistency tests).
    PowerSeries2 restrict(int tq, int tt) const {
        PowerSeries2 r(tq, tt);
        for (const auto& [e, c] : coeffs_)
            if (e.first <= tq && e.second <= tt) r.coeffs_[e] = c;
        return r;
    }

    const std::map<std::pair<int, int>, Rational>& coeffs() const { return coeffs_; }

private:
    void check(const PowerSeries2& o) const {
        if (trunc_q_ != o.trunc_q_ || trunc_t_ != o.trunc_t_)
            throw error("PowerSeries2: truncation mismatch");
    }

    int trunc_q_;
    int trunc_t_;
    std::map<std::pair<int, int>, Rational> coeffs_;
};

inline PowerSeries2 yoshioka_series(int trunc_q, int trunc_t) {
    if (trunc_q <= 0 || trunc_t <= 0) throw error("yoshioka_series: positive truncations required");
    const int Q = trunc_q, T = trunc_t;

    // Theta-type sum over m in Z; m = 0 gives 1, negative m give positive
    // q-exponents 2m(2m-1). Cut off once both exponents leave the window.
    PowerSeries2 theta(Q, T);
    theta.add(0, 0, Rational(1));
    for (int m = 1;; ++m) {
        bool contributed = false;
        for (int mm : {m, -m}) {
            long long qe = 2LL * mm * (2LL * mm - 1);
            long long te = 1LL * m * m;
            if (qe <= Q && te <= T) {
                theta.add(static_cast<int>(qe), static_cast<int>(te), Rational(1));
                contributed = true;
            }
        }
        if (!contributed) break;
    }

    // Prefactor 1 / ((q^2 - 1) Theta): q^2 - 1 is a unit with constant
    // term -1 as a power series, so the product inverts termwise.
    PowerSeries2 qsq_m1(Q, T);
    qsq_m1.set(0, 0, Rational(-1));
    qsq_m1.set(2, 0, Rational(1));
    PowerSeries2 prefactor = (qsq_m1 * theta).inverse();

    // b-sum: [ q^{2(b+1)(2b+1)}/(1 - q^{8(b+1)} t^{2b+1})
    //         - q^{2b(2b+5)}/(1 - q^{8b} t^{2b+1}) ] t^{(b+1)^2}.
    PowerSeries2 bsum(Q, T);
    for (int b = 0; (b + 1) * (b + 1) <= T; ++b) {
        int tbase = (b + 1) * (b + 1);
        int tstep = 2 * b + 1;
        {
            long long q0 = 2LL * (b + 1) * (2 * b + 1), qstep = 8LL * (b + 1);
            for (long long k = 0;; ++k) {
                long long qe = q0 + qstep * k, te = tbase + 1LL * tstep * k;
                if (qe > Q || te > T) break;
                bsum.add(static_cast<int>(qe), static_cast<int>(te), Rational(1));
            }
        }
        {
            long long q0 = 2LL * b * (2 * b + 5), qstep = 8LL * b;
            for (long long k = 0;; ++k) {
                long long qe = q0 + qstep * k, te = tbase + 1LL * tstep * k;
                if (qe > Q || te > T) break;
                bsum.add(static_cast<int>(qe), static_cast<int>(te), Rational(-1));
                if (qstep == 0 && te + tstep > T) break;
            }
        }
    }

    // Triple product: (1 - q^a t^d)^{-2} has coefficients (k+1) q^{ak} t^{dk}.
    PowerSeries2 prod = PowerSeries2::one(Q, T);
    for (int d = 1; d <= T; ++d) {
        for (int a : {4 * d - 2, 4 * d, 4 * d + 2}) {
            PowerSeries2 f(Q, T);
            for (long long k = 0; a * k <= Q && 1LL * d * k <= T; ++k)
                f.set(static_cast<int>(a * k), static_cast<int>(d * k),
                      Rational(static_cast<long long>(k + 1)));
            prod = prod * f;
        }
    }

    return prefactor * bsum * prod;
}

struct PoincareData {
    int n = 0;
    std::vector<Integer> betti; // b_0 ... b_{8n-8}
};

// Extract the t^n coefficient with enough q-room for the known degree
// bound 8n-8, and validate the structural invariants before returning.
inline PoincareData poincare(int n) {
    if (n < 1) throw error("poincare: n must be >= 1");
    int deg = 8 * n - 8;
    int trunc_q = deg + 2; // slack past the degree bound
    PowerSeries2 f = yoshioka_series(trunc_q, n);
    PoincareData out;
    out.n = n;
    out.betti.resize(static_cast<size_t>(deg) + 1, Integer(0));
    for (int i = 0; i <= trunc_q; ++i) {
        Rational c = f.coeff(i, n);
        if (c.is_zero()) continue;
        if (!c.is_integer()) throw error("poincare: non-integral Betti number");
        if (i > deg) throw error("poincare: coefficient beyond degree 8n-8");
        out.betti[static_cast<size_t>(i)] = c.num();
    }
    if (out.betti[static_cast<size_t>(deg)] < 0)
        throw error("poincare: negative top Betti number");
    for (int i = 1; i <= deg; i += 2)
        if (out.betti[static_cast<size_t>(i)] != 0)
            throw error("poincare: nonzero odd Betti number");
    for (int i = 0; i <= deg; ++i)
        if (out.betti[static_cast<size_t>(i)] != out.betti[static_cast<size_t>(deg - i)])
            throw error("poincare: Betti numbers not palindromic");
    return out;
}

} // namespace chow

#endif
