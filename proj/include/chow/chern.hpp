// chern.hpp
// Chern-class calculus for the rank-bookkeeping of the three pushforward
// bundles A_k on the moduli space: the divisor classes eps, delta and the
// degree-4 classes tau_k, the first/second Chern classes of the pushforward
// sheaves on a projective bundle over a curve-times-surface base, and the
// standard rank-2 twist formula.
#ifndef CHOW_CHERN_HPP
#define CHOW_CHERN_HPP

#include "chow/graded_ring.hpp"

namespace chow {

// Rank and Chern data of A_k = R^1 pi_{1*}(E (x) pi_2^* O(-k)), k = 0,1,2,
// restricted to an ambient space. Ranks are n-1, n, n-1.
struct ChernTriple {
    RingPtr ambient;
    ParamPoly rank[3];
    RingElement c1[3];
    RingElement c2[3];

    void validate() const {
        for (int k = 0; k < 3; ++k) {
            if (c1[k].ring() != ambient || c2[k].ring() != ambient)
                throw error("ChernTriple: class not in ambient ring");
            if (!c1[k].is_zero() && !(c1[k].is_homogeneous() && c1[k].degree() == 1))
                throw error("ChernTriple: c1 not homogeneous of degree 1");
            if (!c2[k].is_zero() && !(c2[k].is_homogeneous() && c2[k].degree() == 2))
                throw error("ChernTriple: c2 not homogeneous of degree 2");
        }
    }
};

// Standard ranks n-1, n, n-1 as polynomials in the parameter n.
inline ParamPoly standard_rank(const Params& params, int k) {
    ParamPoly n = ParamPoly::variable(params, "n");
    ParamPoly one = ParamPoly::constant(params, Rational(1));
    switch (k) {
        case 0:
        case 2: return n - one;
        case 1: return n;
        default: throw error("standard_rank: k out of range");
    }
}

// Degrees a_{n,k} of the bundles on the rational curve of bundles:
// 2n-2, n, 0 for k = 0, 1, 2. The argument n may be any polynomial
// (e.g. n-1 for the boundary construction).
inline ParamPoly a_nk(const ParamPoly& n, int k) {
    const Params& params = n.params();
    switch (k) {
        case 0: return n * Rational(2) - ParamPoly::constant(params, Rational(2));
        case 1: return n;
        case 2: return ParamPoly(params);
        default: throw error("a_nk: k out of range");
    }
}

// eps = c1(A_0) - c1(A_2), delta = n c1(A_0) - (n-1) c1(A_1).
inline std::pair<RingElement, RingElement> eps_delta(const ChernTriple& t) {
    t.validate();
    const Params& params = t.ambient->params();
    ParamPoly n = ParamPoly::variable(params, "n");
    ParamPoly nm1 = n - ParamPoly::constant(params, Rational(1));
    RingElement eps = t.c1[0] - t.c1[2];
    RingElement delta = t.c1[0] * n - t.c1[1] * nm1;
    return {eps, delta};
}

// tau_k = 2 r_k c2(A_k) - (r_k - 1) c1(A_k)^2.
inline RingElement tau(const ChernTriple& t, int k) {
    if (k < 0 || k > 2) throw error("tau: k out of range");
    t.validate();
    const Params& params = t.ambient->params();
    ParamPoly two_rk = t.rank[k] * Rational(2);
    ParamPoly rk_m1 = t.rank[k] - ParamPoly::constant(params, Rational(1));
    return t.c2[k] * two_rk - (t.c1[k] * t.c1[k]) * rk_m1;
}

// Chern classes of R^1 pi_{1*} on a projective bundle over a base carrying
// the line class l and the pulled-back classes of the rank-r_k bundle
// downstairs:
//   c1 = zeta - k l + base_c1,   c2 = (zeta - k l) . base_c1 + base_c2.
// All inputs live in the bundle ring; zeta is its relative hyperplane class.
inline std::pair<RingElement, RingElement>
pushforward_chern(int k, const RingPtr& bundle, const RingElement& zeta,
                  const RingElement& line, const RingElement& base_c1,
                  const RingElement& base_c2) {
    if (k < 0 || k > 2) throw error("pushforward_chern: k out of range");
    if (zeta.ring() != bundle || line.ring() != bundle || base_c1.ring() != bundle ||
        base_c2.ring() != bundle)
        throw error("pushforward_chern: classes not in the bundle ring");
    RingElement u = zeta - line * Rational(k);
    RingElement c1 = u + base_c1;
    RingElement c2 = u * base_c1 + base_c2;
    return {c1, c2};
}

// Rank-2 twist by a line bundle l: (c1, c2) -> (c1 + 2l, c2 + c1 l + l^2).
inline std::pair<RingElement, RingElement>
twist_rank2(const RingElement& c1, const RingElement& c2, const RingElement& l) {
    if (c1.ring() != c2.ring() || c1.ring() != l.ring())
        throw error("twist_rank2: owner mismatch");
    if (!l.is_zero() && !(l.is_homogeneous() && l.degree() == 1))
        throw error("twist_rank2: twisting class must have degree 1");
    return {c1 + l * Rational(2), c2 + c1 * l + l * l};
}

} // namespace chow

#endif
