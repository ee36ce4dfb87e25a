#include "chow/param_poly.hpp"

#include <catch_amalgamated.hpp>

#include <random>

using chow::Integer;
using chow::ParamPoly;
using chow::Params;
using chow::Rational;

namespace {

const Params N{"n"};

ParamPoly np() { return ParamPoly::variable(N, "n"); }
ParamPoly cp(long long v) { return ParamPoly::constant(N, Rational(v)); }

} // namespace

TEST_CASE("rational normalization") {
    CHECK(Rational(Integer(2), Integer(4)) == Rational(Integer(1), Integer(2)));
    CHECK(Rational(Integer(-1), Integer(-2)) == Rational(Integer(1), Integer(2)));
    CHECK(Rational(Integer(3), Integer(-6)).den() == 2);
    CHECK(Rational(Integer(3), Integer(-6)).num() == -1);
    CHECK(Rational(0).str() == "0");
    CHECK(Rational(Integer(-12), Integer(8)).str() == "-3/2");
    CHECK(Rational(7).is_integer());
    CHECK_FALSE(Rational(Integer(1), Integer(3)).is_integer());
    CHECK_THROWS_AS(Rational(Integer(1), Integer(0)), chow::error);
}

TEST_CASE("rational arithmetic") {
    Rational a(Integer(1), Integer(3)), b(Integer(1), Integer(6));
    CHECK(a + b == Rational(Integer(1), Integer(2)));
    CHECK(a - b == Rational(Integer(1), Integer(6)));
    CHECK(a * b == Rational(Integer(1), Integer(18)));
    CHECK(a / b == Rational(2));
    CHECK(-a == Rational(Integer(-1), Integer(3)));
    CHECK(b < a);
    CHECK_THROWS_AS(a / Rational(0), chow::error);
}

TEST_CASE("polynomial arithmetic") {
    // (n-2)(n-10) = n^2 - 12n + 20
    ParamPoly prod = (np() - cp(2)) * (np() - cp(10));
    ParamPoly expected = np() * np() - np() * Rational(12) + cp(20);
    CHECK(prod == expected);
    CHECK(prod.str() == "n^2-12n+20");

    ParamPoly p = np() * Rational(2) - cp(4);
    CHECK(p + ParamPoly(N) == p);   // additive identity
    CHECK((p - p).is_zero());       // cancellation
    CHECK((p - p).str() == "0");
}

TEST_CASE("polynomial evaluation") {
    std::map<std::string, Rational> at3{{"n", Rational(3)}};
    std::map<std::string, Rational> at5{{"n", Rational(5)}};
    CHECK((np() * Rational(2) - cp(3)).eval(at3) == Rational(3));
    CHECK(cp(4).eval(at3) == Rational(4));
    CHECK(((np() - cp(1)) * (np() - cp(5))).eval(at5) == Rational(0));
    CHECK_THROWS_AS(np().eval({}), chow::error);
}

TEST_CASE("parameter-set mismatch") {
    ParamPoly a = np();
    ParamPoly b = ParamPoly::variable({"m"}, "m");
    CHECK_THROWS_AS(a + b, chow::error);
    CHECK_THROWS_AS(a * b, chow::error);
    CHECK_THROWS_AS(ParamPoly::variable(N, "m"), chow::error);
}

TEST_CASE("deterministic rendering") {
    ParamPoly p = np() * np() * np() * Rational(2) - np() * np() * Rational(8) +
                  np() * Rational(9) - cp(1);
    CHECK(p.str() == "2n^3-8n^2+9n-1");
    CHECK((cp(4) - np() * Rational(2)).str() == "-2n+4");
    CHECK(np().str() == "n");
    CHECK((-np()).str() == "-n");
    CHECK((np() * Rational(3) - cp(3)).str() == "3n-3");
}

namespace {

ParamPoly random_poly(std::mt19937& rng) {
    std::uniform_int_distribution<int> deg(0, 3), coeff(-5, 5), den(1, 3);
    ParamPoly p(N);
    int d = deg(rng);
    for (int k = 0; k <= d; ++k) {
        Rational c(Integer(coeff(rng)), Integer(den(rng)));
        ParamPoly term = ParamPoly::constant(N, c);
        for (int j = 0; j < k; ++j) term = term * np();
        p += term;
    }
    return p;
}

} // namespace

TEST_CASE("randomized ring axioms") {
    std::mt19937 rng(20240817);
    for (int trial = 0; trial < 200; ++trial) {
        ParamPoly a = random_poly(rng), b = random_poly(rng), c = random_poly(rng);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK(a * (b + c) == a * b + a * c);
    }
}

TEST_CASE("evaluation is a ring homomorphism") {
    std::mt19937 rng(612);
    std::uniform_int_distribution<int> num(-9, 9), den(1, 4);
    for (int trial = 0; trial < 200; ++trial) {
        ParamPoly a = random_poly(rng), b = random_poly(rng);
        std::map<std::string, Rational> at{
            {"n", Rational(Integer(num(rng)), Integer(den(rng)))}};
        CHECK((a + b).eval(at) == a.eval(at) + b.eval(at));
        CHECK((a * b).eval(at) == a.eval(at) * b.eval(at));
    }
}
