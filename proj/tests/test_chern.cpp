#include "chow/chern.hpp"

#include <catch_amalgamated.hpp>

using namespace chow;

namespace {

const Params N{"n"};

ParamPoly np() { return ParamPoly::variable(N, "n"); }
ParamPoly cp(long long v) { return ParamPoly::constant(N, Rational(v)); }

} // namespace

TEST_CASE("degrees of the three bundles") {
    CHECK(a_nk(np(), 0) == np() * Rational(2) - cp(2));
    CHECK(a_nk(np(), 1) == np());
    CHECK(a_nk(np(), 2).is_zero());
    CHECK(a_nk(np() - cp(1), 1) == np() - cp(1));
    CHECK(a_nk(np() - cp(1), 0) == np() * Rational(2) - cp(4));
    CHECK_THROWS_AS(a_nk(np(), 3), chow::error);
}

TEST_CASE("standard ranks") {
    CHECK(standard_rank(N, 0) == np() - cp(1));
    CHECK(standard_rank(N, 1) == np());
    CHECK(standard_rank(N, 2) == np() - cp(1));
    CHECK_THROWS_AS(standard_rank(N, -1), chow::error);
}

namespace {

ChernTriple bundle_over_plane_triple(RingPtr& out_ring) {
    RingPtr P2 = GradedRing::projective_space(N, "h", 2);
    RingElement h0 = P2->gen("h");
    RingPtr B = GradedRing::projective_bundle(P2, -h0, (h0 * h0) * (np() - cp(1)));
    ChernTriple t;
    t.ambient = B;
    for (int k = 0; k < 3; ++k) {
        t.rank[k] = standard_rank(N, k);
        auto [c1, c2] = pushforward_chern(k, B, B->gen("zeta"), B->gen("h"),
                                          B->zero(), B->zero());
        t.c1[k] = c1;
        t.c2[k] = c2;
    }
    out_ring = B;
    return t;
}

} // namespace

TEST_CASE("eps and delta on the bundle over the plane") {
    RingPtr B;
    ChernTriple t = bundle_over_plane_triple(B);
    auto [eps, del] = eps_delta(t);
    RingElement h = B->gen("h"), z = B->gen("zeta");
    CHECK(eps == h * Rational(2));
    CHECK(del == z + h * (np() - cp(1)));
}

TEST_CASE("eps and delta on the extension line") {
    // On the P^{n-1} of extensions: c1_0 = -(n-1) z, c1_1 = c1_2 = -n z,
    // so eps is the hyperplane class and delta vanishes.
    RingPtr P1 = GradedRing::projective_space(N, "z", 1);
    RingElement z = P1->gen("z");
    ChernTriple t;
    t.ambient = P1;
    for (int k = 0; k < 3; ++k) {
        t.rank[k] = standard_rank(N, k);
        t.c2[k] = P1->zero();
    }
    t.c1[0] = z * (-(np() - cp(1)));
    t.c1[1] = z * (-np());
    t.c1[2] = z * (-np());
    auto [eps, del] = eps_delta(t);
    CHECK(eps == z);
    CHECK(del.is_zero());
}

TEST_CASE("eps vanishes when all c1 agree") {
    RingPtr P1 = GradedRing::projective_space(N, "z", 1);
    ChernTriple t;
    t.ambient = P1;
    for (int k = 0; k < 3; ++k) {
        t.rank[k] = standard_rank(N, k);
        t.c1[k] = P1->gen("z");
        t.c2[k] = P1->zero();
    }
    auto [eps, del] = eps_delta(t);
    CHECK(eps.is_zero());
    CHECK(del == t.c1[0]);
}

TEST_CASE("tau on the two quadric surfaces") {
    RingPtr Q = GradedRing::product(GradedRing::projective_space(N, "s", 1),
                                    GradedRing::projective_space(N, "u", 1));
    RingElement s = Q->gen("s"), u = Q->gen("u");

    auto triple_with_c1 = [&](long long b1, long long b2) {
        ChernTriple t;
        t.ambient = Q;
        for (int k = 0; k < 3; ++k) {
            t.rank[k] = standard_rank(N, k);
            t.c1[k] = s * Rational(b1) + u * Rational(b2);
            t.c2[k] = s * u;
        }
        return t;
    };

    ChernTriple t5 = triple_with_c1(1, 1);
    for (int k = 0; k < 3; ++k) CHECK(Q->integrate(tau(t5, k)) == cp(2));

    ChernTriple t6 = triple_with_c1(2, 1);
    CHECK(Q->integrate(tau(t6, 0)) == cp(6) - np() * Rational(2));
    CHECK(Q->integrate(tau(t6, 1)) == cp(4) - np() * Rational(2));
    CHECK(Q->integrate(tau(t6, 2)) == cp(6) - np() * Rational(2));

    // zero data gives zero; rank 1 kills the c1^2 term
    ChernTriple t0 = t5;
    for (int k = 0; k < 3; ++k) {
        t0.c1[k] = Q->zero();
        t0.c2[k] = Q->zero();
    }
    CHECK(tau(t0, 0).is_zero());
    ChernTriple t1 = t5;
    t1.rank[1] = cp(1);
    CHECK(tau(t1, 1) == t1.c2[1] * Rational(2));
    CHECK_THROWS_AS(tau(t5, 3), chow::error);
}

TEST_CASE("pushforward Chern classes") {
    // On the 4-fold over Gamma x X: base classes a_{n-1,k} g, c2 = 0.
    RingPtr GX = GradedRing::product(GradedRing::projective_space(N, "g", 1),
                                     GradedRing::projective_space(N, "h", 2));
    RingElement g0 = GX->gen("g"), h0 = GX->gen("h");
    RingElement graph = g0 * h0 + h0 * h0;
    RingElement c2E = (g0 * Rational(2)) * (-h0) + graph * (np() - cp(1));
    RingPtr P = GradedRing::projective_bundle(GX, g0 * Rational(2) - h0, c2E);
    RingElement g = P->gen("g"), h = P->gen("h"), z = P->gen("zeta");

    auto [c1, c2] = pushforward_chern(1, P, z, h, g * a_nk(np() - cp(1), 1), P->zero());
    CHECK(c1 == z - h + g * (np() - cp(1)));
    CHECK(c2 == (z - h) * (g * (np() - cp(1))));

    auto [d1, d2] = pushforward_chern(0, P, z, h, P->zero(), P->zero());
    CHECK(d1 == z);
    CHECK(d2.is_zero());

    CHECK_THROWS_AS(pushforward_chern(3, P, z, h, P->zero(), P->zero()), chow::error);
}

TEST_CASE("rank-2 twist") {
    RingPtr P2 = GradedRing::projective_space(N, "h", 2);
    RingElement h = P2->gen("h");
    auto [c1, c2] = twist_rank2(-h, (h * h) * np(), h);
    CHECK(c1 == h);
    CHECK(c2 == (h * h) * np());

    // twist by zero is the identity
    auto [e1, e2] = twist_rank2(-h, (h * h) * np(), P2->zero());
    CHECK(e1 == -h);
    CHECK(e2 == (h * h) * np());

    CHECK_THROWS_AS(twist_rank2(-h, (h * h) * np(), h * h), chow::error);
}

TEST_CASE("twist against Whitney formal roots") {
    // Ring with three square-zero classes a, b, l: a rank-2 bundle with
    // formal roots a, b twisted by l has roots a+l, b+l.
    std::vector<Generator> gens{{"a", 1}, {"b", 1}, {"l", 1}};
    auto sq = [](int i) {
        Relation r;
        Monomial m(3, 0);
        m[static_cast<size_t>(i)] = 2;
        r.lead = m;
        return r;
    };
    RingPtr F = GradedRing::make(N, gens, {sq(0), sq(1), sq(2)}, 3);
    RingElement a = F->gen("a"), b = F->gen("b"), l = F->gen("l");
    auto [c1, c2] = twist_rank2(a + b, a * b, l);
    CHECK(c1 == (a + l) + (b + l));
    CHECK(c2 == (a + l) * (b + l));

    // twisting twice by l agrees with twisting once by 2l
    auto [f1, f2] = twist_rank2(c1, c2, l);
    auto [g1, g2] = twist_rank2(a + b, a * b, l * Rational(2));
    CHECK(f1 == g1);
    CHECK(f2 == g2);
}

TEST_CASE("triple validation") {
    RingPtr P1 = GradedRing::projective_space(N, "z", 1);
    ChernTriple t;
    t.ambient = P1;
    for (int k = 0; k < 3; ++k) {
        t.rank[k] = standard_rank(N, k);
        t.c1[k] = P1->gen("z");
        t.c2[k] = P1->zero();
    }
    CHECK_NOTHROW(t.validate());
    t.c2[1] = P1->gen("z"); // degree 1, not 2
    CHECK_THROWS_AS(t.validate(), chow::error);
}
