// pipeline.hpp
// The six basis surfaces Xi_1..Xi_6, their 6x6 intersection table against
// {eps^2, eps.delta, delta^2, tau_0, tau_1, tau_2} as exact polynomials in
// n, the pairing of the curve classes f, l against eps, delta, the
// coefficients a_i computed on the 4-fold P over Gamma x X, the extremal
// 1-point invariants a_i / d^2, and the dimension bookkeeping.
#ifndef CHOW_PIPELINE_HPP
#define CHOW_PIPELINE_HPP

#include "chow/chern.hpp"
#include "chow/graded_ring.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace chow {

enum class CycleSource { derived, transcribed };

struct CycleSpec {
    int id = 0;
    RingPtr ambient;
    RingElement cycle_class; // degree ambient.dim - 2
    ChernTriple chern;
    RingElement eps;
    RingElement delta;
    std::array<RingElement, 3> taus;
    CycleSource source = CycleSource::derived;
};

struct IntersectionTable {
    // rows Xi_1..Xi_6, cols eps^2, eps.delta, delta^2, tau_0, tau_1, tau_2
    std::array<std::array<ParamPoly, 6>, 6> entries;
    static const std::array<const char*, 6>& row_names() {
        static const std::array<const char*, 6> r = {"Xi1", "Xi2", "Xi3",
                                                     "Xi4", "Xi5", "Xi6"};
        return r;
    }
    static const std::array<const char*, 6>& col_names() {
        static const std::array<const char*, 6> c = {"eps2", "epsdel", "del2",
                                                     "tau0", "tau1", "tau2"};
        return c;
    }
};

struct PairingBasis {
    // [[f.eps, f.delta], [l.eps, l.delta]]
    std::array<std::array<long long, 2>, 2> matrix;
    ParamPoly f_dot_K; // f . (-3 eps)
    ParamPoly f_dot_B; // f . (n eps - 2 delta)
};

enum class Provenance { computed, vanishing_by_localization };

struct InvariantResult {
    int i = 0;
    int d = 0;
    Rational value;
    long long a = 0;
    Provenance provenance = Provenance::computed;
};

struct DimensionReport {
    int n = 0, d = 0, g = 0, k = 0;
    int expected_dim = 0;
    int actual_dim = 0;
    int excess = 0;
};

namespace detail {

inline ParamPoly npoly(const Params& p) { return ParamPoly::variable(p, "n"); }
inline ParamPoly cpoly(const Params& p, long long v) {
    return ParamPoly::constant(p, Rational(v));
}

inline void require_equal(const RingElement& a, const RingElement& b,
                          const std::string& what) {
    if (a != b)
        throw error("cycle build: derived/transcribed mismatch for " + what +
                    ": " + a.str() + " vs " + b.str());
}

} // namespace detail

class GwPipeline {
public:
    explicit GwPipeline(Params params = {"n"}) : params_(std::move(params)) {
        build_cycles();
    }

    const Params& params() const { return params_; }
    const CycleSpec& cycle(int i) const {
        if (i < 1 || i > 6) throw error("cycle: index out of range");
        return cycles_[static_cast<size_t>(i - 1)];
    }

    IntersectionTable intersection_table() const {
        IntersectionTable t;
        for (int i = 0; i < 6; ++i) {
            const CycleSpec& c = cycles_[static_cast<size_t>(i)];
            std::array<RingElement, 6> cols = {
                c.eps * c.eps,   c.eps * c.delta, c.delta * c.delta,
                c.taus[0],       c.taus[1],       c.taus[2]};
            for (int j = 0; j < 6; ++j)
                t.entries[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                    c.ambient->integrate(cols[static_cast<size_t>(j)] * c.cycle_class);
        }
        return t;
    }

    // Determinant of the 6x6 table, symbolically in n. Laplace expansion
    // along the first column.
    ParamPoly basis_determinant_symbolic() const {
        auto t = intersection_table();
        std::vector<std::vector<ParamPoly>> m(6, std::vector<ParamPoly>(6));
        for (size_t i = 0; i < 6; ++i)
            for (size_t j = 0; j < 6; ++j) m[i][j] = t.entries[i][j];
        return det_laplace<ParamPoly>(m, ParamPoly(params_));
    }

    Rational basis_determinant_at(int n) const {
        auto t = intersection_table();
        std::map<std::string, Rational> bind{{"n", Rational(n)}};
        std::vector<std::vector<Rational>> m(6, std::vector<Rational>(6));
        for (size_t i = 0; i < 6; ++i)
            for (size_t j = 0; j < 6; ++j) m[i][j] = t.entries[i][j].eval(bind);
        return det_laplace<Rational>(m, Rational(0));
    }

    // Pairings of the contracted fiber class f and the extension line l
    // against eps and delta, computed on P^1 models from the pushforward
    // Chern classes, never transcribed.
    PairingBasis pairing_matrix() const {
        PairingBasis out;
        // f: fiber of B_* -> M(n-1) x X. On it zeta restricts to the point
        // class and every pullback from the base vanishes.
        RingPtr fib = GradedRing::projective_space(params_, "z", 1);
        ChernTriple tf;
        tf.ambient = fib;
        for (int k = 0; k < 3; ++k) {
            tf.rank[k] = standard_rank(params_, k);
            tf.c1[k] = fib->gen("z");
            tf.c2[k] = fib->zero();
        }
        auto [f_eps, f_delta] = eps_delta(tf);
        ParamPoly fe = fib->integrate(f_eps);
        ParamPoly fd = fib->integrate(f_delta);

        // l: a line in the P^{n-1} of extensions, where the pushforwards
        // have c1 = -(n-1) zeta for k = 0 and -n zeta for k = 1, 2.
        RingPtr lin = GradedRing::projective_space(params_, "z", 1);
        ParamPoly n = detail::npoly(params_);
        ParamPoly one = detail::cpoly(params_, 1);
        ChernTriple tl;
        tl.ambient = lin;
        tl.rank[0] = standard_rank(params_, 0);
        tl.rank[1] = standard_rank(params_, 1);
        tl.rank[2] = standard_rank(params_, 2);
        tl.c1[0] = lin->gen("z") * (-(n - one));
        tl.c1[1] = lin->gen("z") * (-n);
        tl.c1[2] = lin->gen("z") * (-n);
        for (int k = 0; k < 3; ++k) tl.c2[k] = lin->zero();
        auto [l_eps, l_delta] = eps_delta(tl);
        ParamPoly le = lin->integrate(l_eps);
        ParamPoly ld = lin->integrate(l_delta);

        auto as_int = [](const ParamPoly& p) {
            Rational c = p.constant_value();
            if (!c.is_integer()) throw error("pairing: non-integer pairing");
            return static_cast<long long>(c.num());
        };
        out.matrix = {{{as_int(fe), as_int(fd)}, {as_int(le), as_int(ld)}}};
        if (out.matrix != decltype(out.matrix){{{0, 1}, {1, 0}}})
            throw error("pairing: matrix differs from [[0,1],[1,0]]");
        out.f_dot_K = fe * Rational(-3);
        out.f_dot_B = n * fe - fd * Rational(2);
        return out;
    }

    // a_i = (0,3) . [Xi_i] . (-2 zeta + (2,2)) in the 4-fold P over
    // Gamma x X. Defined only for i <= 4; the remaining surfaces do not
    // lie in the boundary.
    long long a_coefficient(int i) const {
        if (i < 1 || i > 4) throw error("a_coefficient: defined for i in 1..4 only");
        build_boundary_fourfold();
        const RingPtr& P = fourfold_;
        RingElement g = P->gen("g"), h = P->gen("h"), z = P->gen("zeta");
        RingElement xi;
        switch (i) {
            case 1: xi = g * h; break;
            case 2: xi = z * g; break;
            case 3: xi = h * h; break;
            case 4: xi = z * h; break;
        }
        RingElement factor = z * Rational(-2) + g * Rational(2) + h * Rational(2);
        ParamPoly a = P->integrate(h * Rational(3) * xi * factor);
        if (a.total_degree() != 0)
            throw error("a_coefficient: result depends on n");
        Rational c = a.constant_value();
        if (!c.is_integer()) throw error("a_coefficient: non-integer result");
        return static_cast<long long>(c.num());
    }

    // c_{2d-2} of the rank-(2d-2) obstruction piece on degree-d covers of
    // the contracted fiber; a cited multiple-cover constant.
    static Rational multiple_cover_constant(int d) {
        if (d < 1) throw error("multiple_cover_constant: d must be >= 1");
        return Rational(Integer(1), Integer(d) * d * d);
    }

    InvariantResult invariant(int i, int d) const {
        if (i < 1 || i > 6) throw error("invariant: i out of range");
        if (d < 1) throw error("invariant: d must be >= 1");
        InvariantResult r;
        r.i = i;
        r.d = d;
        if (i >= 5) {
            r.a = 0;
            r.value = Rational(0);
            r.provenance = Provenance::vanishing_by_localization;
            return r;
        }
        r.a = a_coefficient(i);
        // degree-d pushforward factor times the multiple-cover constant
        r.value = Rational(r.a) * Rational(d) * multiple_cover_constant(d);
        r.provenance = Provenance::computed;
        return r;
    }

    static int expected_dim(int dim_Y, int K_dot_beta, int g, int k) {
        return -K_dot_beta + (dim_Y - 3) * (1 - g) + k;
    }

    static DimensionReport excess_report(int n, int d) {
        if (n < 3) throw error("excess_report: n must be >= 3");
        if (d < 1) throw error("excess_report: d must be >= 1");
        DimensionReport r;
        r.n = n;
        r.d = d;
        r.g = 0;
        r.k = 0;
        r.actual_dim = 2 * d + 4 * n - 8;
        r.expected_dim = expected_dim(4 * n - 4, 0, 0, 0); // = 4n - 7
        r.excess = r.actual_dim - r.expected_dim;
        return r;
    }

    template <typename T>
    static T det_laplace(const std::vector<std::vector<T>>& m, const T& zero) {
        size_t k = m.size();
        if (k == 1) return m[0][0];
        T sum = zero;
        for (size_t r = 0; r < k; ++r) {
            std::vector<std::vector<T>> minor;
            minor.reserve(k - 1);
            for (size_t i = 0; i < k; ++i) {
                if (i == r) continue;
                std::vector<T> row;
                row.reserve(k - 1);
                for (size_t j = 1; j < k; ++j) row.push_back(m[i][j]);
                minor.push_back(std::move(row));
            }
            T term = m[r][0] * det_laplace(minor, zero);
            if (r % 2 == 0)
                sum += term;
            else
                sum -= term;
        }
        return sum;
    }

private:
    void build_cycles() {
        ParamPoly n = detail::npoly(params_);
        ParamPoly one = detail::cpoly(params_, 1);

        // --- Xi_1, Xi_2: ambient P(V_1) over X = P^2, relation
        //     zeta^2 = -h.zeta - (n-1) h^2.
        RingPtr X = GradedRing::projective_space(params_, "h", 2);
        RingElement h0 = X->gen("h");
        RingPtr PV1 = GradedRing::projective_bundle(
            X, -h0, (h0 * h0) * (n - one));
        RingElement h = PV1->gen("h"), z = PV1->gen("zeta");

        ChernTriple t12;
        t12.ambient = PV1;
        for (int k = 0; k < 3; ++k) {
            t12.rank[k] = standard_rank(params_, k);
            // base Gamma collapsed to a point: pulled-back classes vanish
            auto [c1, c2] = pushforward_chern(k, PV1, z, h, PV1->zero(), PV1->zero());
            t12.c1[k] = c1;
            t12.c2[k] = c2;
        }
        auto [eps12, del12] = eps_delta(t12);
        std::array<RingElement, 3> tau12 = {tau(t12, 0), tau(t12, 1), tau(t12, 2)};
        {
            RingElement eps_t = h * Rational(2);
            RingElement del_t = z + h * (n - one);
            detail::require_equal(eps12, eps_t, "eps|P(V1)");
            detail::require_equal(del12, del_t, "delta|P(V1)");
            for (int k = 0; k < 3; ++k) {
                RingElement u = z - h * Rational(k);
                RingElement tau_t = -(u * u) * (t12.rank[k] - one);
                detail::require_equal(tau12[static_cast<size_t>(k)], tau_t,
                                      "tau|P(V1)");
            }
        }
        cycles_[0] = {1, PV1, h, t12, eps12, del12, tau12, CycleSource::derived};
        cycles_[1] = {2, PV1, z, t12, eps12, del12, tau12, CycleSource::derived};

        // --- Xi_3, Xi_4: ambient W over Gamma x l = P^1 x P^1, relation
        //     zeta^2 = (2,-1).zeta - (n-3) pt.
        RingPtr G = GradedRing::projective_space(params_, "g", 1);
        RingPtr L = GradedRing::projective_space(params_, "y", 1);
        RingPtr GL = GradedRing::product(G, L);
        RingElement g0 = GL->gen("g"), y0 = GL->gen("y");
        RingPtr W = GradedRing::projective_bundle(
            GL, g0 * Rational(2) - y0, (g0 * y0) * (n - detail::cpoly(params_, 3)));
        RingElement g = W->gen("g"), y = W->gen("y"), zw = W->gen("zeta");

        ChernTriple t34;
        t34.ambient = W;
        ParamPoly nm1 = n - one;
        for (int k = 0; k < 3; ++k) {
            t34.rank[k] = standard_rank(params_, k);
            auto [c1, c2] = pushforward_chern(k, W, zw, y, g * a_nk(nm1, k), W->zero());
            t34.c1[k] = c1;
            t34.c2[k] = c2;
        }
        auto [eps34, del34] = eps_delta(t34);
        std::array<RingElement, 3> tau34 = {tau(t34, 0), tau(t34, 1), tau(t34, 2)};
        {
            RingElement eps_t = g * (n * Rational(2) - detail::cpoly(params_, 4)) +
                                y * Rational(2);
            RingElement del_t = zw +
                                g * (n * n - n * Rational(2) - one) +
                                y * nm1;
            detail::require_equal(eps34, eps_t, "eps|W");
            detail::require_equal(del34, del_t, "delta|W");
            for (int k = 0; k < 3; ++k) {
                ParamPoly a = a_nk(nm1, k);
                ParamPoly rkm1 = t34.rank[k] - one;
                RingElement lin = g * (a * Rational(2) - rkm1 * Rational(2)) +
                                  y * (rkm1 * Rational(2 * k + 1));
                RingElement tau_t = lin * zw +
                                    (g * y) * (rkm1 * (n - detail::cpoly(params_, 3)) -
                                               a * Rational(2 * k));
                detail::require_equal(tau34[static_cast<size_t>(k)], tau_t, "tau|W");
            }
        }
        cycles_[2] = {3, W, y, t34, eps34, del34, tau34, CycleSource::derived};
        cycles_[3] = {4, W, zw, t34, eps34, del34, tau34, CycleSource::derived};

        // --- Xi_5: P^1 x P^1, all three pushforwards have c1 = (1,1), c2 = pt.
        cycles_[4] = quadric_cycle(5, 1, 1);
        // --- Xi_6: P^1 x M_2(x), c1 = (2,1), c2 = pt.
        cycles_[5] = quadric_cycle(6, 2, 1);
    }

    CycleSpec quadric_cycle(int id, long long b1, long long b2) {
        RingPtr A = GradedRing::product(
            GradedRing::projective_space(params_, "s", 1),
            GradedRing::projective_space(params_, "u", 1));
        RingElement s = A->gen("s"), u = A->gen("u");
        ChernTriple t;
        t.ambient = A;
        for (int k = 0; k < 3; ++k) {
            t.rank[k] = standard_rank(params_, k);
            t.c1[k] = s * Rational(b1) + u * Rational(b2);
            t.c2[k] = s * u;
        }
        auto [eps, del] = eps_delta(t);
        if (!eps.is_zero()) throw error("cycle build: eps must vanish on Xi_5/Xi_6");
        std::array<RingElement, 3> taus = {tau(t, 0), tau(t, 1), tau(t, 2)};
        return {id, A, A->one(), t, eps, del, taus, CycleSource::transcribed};
    }

    // P = P(E_{n-1}) over Gamma x X with c1(E) = (2,-1) and
    // c2(E) = (2,0).(0,-1) + (n-1) graph curves of class g.h + h^2. The
    // graph count is validated against the restriction relation
    // zeta^2 = (2,-1) zeta - (n-3) pt over Gamma x l before use.
    void build_boundary_fourfold() const {
        if (fourfold_) return;
        ParamPoly n = detail::npoly(params_);
        RingPtr G = GradedRing::projective_space(params_, "g", 1);
        RingPtr X = GradedRing::projective_space(params_, "h", 2);
        RingPtr GX = GradedRing::product(G, X);
        RingElement g = GX->gen("g"), h = GX->gen("h");
        RingElement graph = g * h + h * h;
        RingElement c1 = g * Rational(2) - h;
        RingElement c2 = (g * Rational(2)) * (-h) +
                         graph * (n - detail::cpoly(params_, 1));
        // cross-checks: restriction over Gamma x l carries (n-3) pt, the
        // fiber over a point of Gamma carries (n-1) pt
        ParamPoly over_line = GX->integrate(c2 * h);
        ParamPoly over_point = GX->integrate(c2 * g);
        ParamPoly one = detail::cpoly(params_, 1);
        if (over_line != n - detail::cpoly(params_, 3) || over_point != n - one)
            throw error("boundary fourfold: graph-curve count fails the "
                        "restriction cross-check");
        fourfold_ = GradedRing::projective_bundle(GX, c1, c2);
    }

    Params params_;
    std::array<CycleSpec, 6> cycles_;
    mutable RingPtr fourfold_;
};

} // namespace chow

#endif
