#include "chow/series.hpp"

#include <catch_amalgamated.hpp>

using namespace chow;

TEST_CASE("series multiplication") {
    PowerSeries2 a(4, 4), b(4, 4);
    a.set(0, 0, Rational(1));
    a.set(1, 1, Rational(1)); // 1 + qt
    b.set(0, 0, Rational(1));
    b.set(1, 1, Rational(-1)); // 1 - qt
    PowerSeries2 p = a * b;
    CHECK(p.coeff(0, 0) == Rational(1));
    CHECK(p.coeff(1, 1) == Rational(0));
    CHECK(p.coeff(2, 2) == Rational(-1));

    PowerSeries2 s(4, 4);
    s.set(0, 0, Rational(1));
    s.set(1, 1, Rational(1));
    s.set(2, 2, Rational(1)); // 1 + qt + q^2 t^2
    CHECK((s * s).coeff(2, 2) == Rational(3));

    CHECK(a * PowerSeries2::one(4, 4) == a);
    CHECK_THROWS_AS(a * PowerSeries2::one(5, 4), chow::error);
}

TEST_CASE("series inverse") {
    // 1/(q^2 - 1) = -(1 + q^2 + q^4 + ...)
    PowerSeries2 f(8, 0);
    f.set(0, 0, Rational(-1));
    f.set(2, 0, Rational(1));
    PowerSeries2 inv = f.inverse();
    for (int k = 0; k <= 8; k += 2) CHECK(inv.coeff(k, 0) == Rational(-1));
    CHECK(inv.coeff(1, 0) == Rational(0));
    CHECK(f * inv == PowerSeries2::one(8, 0));

    CHECK(PowerSeries2::one(3, 3).inverse() == PowerSeries2::one(3, 3));

    // 1/(1 - t) = sum t^k
    PowerSeries2 g(0, 5);
    g.set(0, 0, Rational(1));
    g.set(0, 1, Rational(-1));
    PowerSeries2 ginv = g.inverse();
    for (int k = 0; k <= 5; ++k) CHECK(ginv.coeff(0, k) == Rational(1));

    PowerSeries2 z(3, 3);
    z.set(1, 0, Rational(1));
    CHECK_THROWS_AS(z.inverse(), chow::error);
}

TEST_CASE("generating function truncation consistency") {
    PowerSeries2 small = yoshioka_series(12, 3);
    PowerSeries2 large = yoshioka_series(12 + 8, 3 + 2);
    CHECK(large.restrict(12, 3) == small);

    PowerSeries2 small2 = yoshioka_series(18, 2);
    CHECK(yoshioka_series(26, 4).restrict(18, 2) == small2);

    CHECK_THROWS_AS(yoshioka_series(0, 3), chow::error);
}

TEST_CASE("known Betti tables") {
    PoincareData p1 = poincare(1); // the moduli space is a point
    REQUIRE(p1.betti.size() == 1);
    CHECK(p1.betti[0] == 1);

    PoincareData p2 = poincare(2);
    std::vector<Integer> expect2 = {1, 0, 2, 0, 3, 0, 2, 0, 1};
    CHECK(p2.betti == expect2);

    PoincareData p3 = poincare(3);
    std::vector<Integer> expect3 = {1, 0, 2, 0, 6, 0, 9, 0, 12, 0, 9, 0, 6, 0, 2, 0, 1};
    CHECK(p3.betti == expect3);

    CHECK(poincare(4).betti[4] == 6);
    CHECK_THROWS_AS(poincare(0), chow::error);
}

TEST_CASE("structural invariants for n up to 8") {
    for (int n = 1; n <= 8; ++n) {
        // poincare() itself validates integrality, the degree bound,
        // odd-degree vanishing and palindromy; it must not throw.
        PoincareData p = poincare(n);
        CHECK(p.betti.size() == static_cast<size_t>(8 * n - 8 + 1));
        CHECK(p.betti.front() == 1);
        CHECK(p.betti.back() == 1); // palindromic partner of b_0
        if (n >= 2) CHECK(p.betti[2] == 2);
        if (n == 2) CHECK(p.betti[4] == 3);
        if (n >= 3) CHECK(p.betti[4] == 6);
        for (const auto& b : p.betti) CHECK(b >= 0);
    }
}
