#include "chow/pipeline.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <array>
#include <numeric>

using namespace chow;

namespace {

const Params N{"n"};

GwPipeline& pipe() {
    static GwPipeline p(N);
    return p;
}

// The transcribed 6x6 table, rows Xi1..Xi6 against eps^2, eps.delta,
// delta^2, tau0, tau1, tau2, rendered exactly as ParamPoly::str() does.
const std::array<std::array<const char*, 6>, 6> kTable = {{
    {"0", "2", "2n-3", "n-2", "3n-3", "5n-10"},
    {"4", "2n-4", "n^2-5n+5", "n^2-4n+4", "n^2-6n+5", "n^2-12n+20"},
    {"0", "2n-4", "2n^2-4n", "2n-4", "0", "-2n+4"},
    {"8n-16", "4n^2-12n+10", "2n^3-8n^2+9n-1", "n^2-5n+6", "n^2-1", "n^2+7n-18"},
    {"0", "0", "2", "2", "2", "2"},
    {"0", "0", "4", "-2n+6", "-2n+4", "-2n+6"},
}};

// The same table as integer values for the independent determinant oracle.
long long table_entry_at(size_t i, size_t j, long long n) {
    const std::array<std::array<std::array<long long, 4>, 6>, 6> c = {{
        // coefficients of 1, n, n^2, n^3 per entry
        {{{0, 0, 0, 0}, {2, 0, 0, 0}, {-3, 2, 0, 0}, {-2, 1, 0, 0},
          {-3, 3, 0, 0}, {-10, 5, 0, 0}}},
        {{{4, 0, 0, 0}, {-4, 2, 0, 0}, {5, -5, 1, 0}, {4, -4, 1, 0},
          {5, -6, 1, 0}, {20, -12, 1, 0}}},
        {{{0, 0, 0, 0}, {-4, 2, 0, 0}, {0, -4, 2, 0}, {-4, 2, 0, 0},
          {0, 0, 0, 0}, {4, -2, 0, 0}}},
        {{{-16, 8, 0, 0}, {10, -12, 4, 0}, {-1, 9, -8, 2}, {6, -5, 1, 0},
          {-1, 0, 1, 0}, {-18, 7, 1, 0}}},
        {{{0, 0, 0, 0}, {0, 0, 0, 0}, {2, 0, 0, 0}, {2, 0, 0, 0},
          {2, 0, 0, 0}, {2, 0, 0, 0}}},
        {{{0, 0, 0, 0}, {0, 0, 0, 0}, {4, 0, 0, 0}, {6, -2, 0, 0},
          {4, -2, 0, 0}, {6, -2, 0, 0}}},
    }};
    long long v = 0, p = 1;
    for (int k = 0; k < 4; ++k) {
        v += c[i][j][static_cast<size_t>(k)] * p;
        p *= n;
    }
    return v;
}

// Textbook Leibniz sum over all 720 permutations -- independent of the
// Laplace expansion used by the engine.
long long leibniz_det(long long n) {
    std::array<size_t, 6> perm{};
    std::iota(perm.begin(), perm.end(), 0);
    long long det = 0;
    do {
        long long prod = 1;
        for (size_t i = 0; i < 6; ++i) prod *= table_entry_at(i, perm[i], n);
        // parity by counting inversions
        int inv = 0;
        for (size_t i = 0; i < 6; ++i)
            for (size_t j = i + 1; j < 6; ++j)
                if (perm[i] > perm[j]) ++inv;
        det += (inv % 2 == 0) ? prod : -prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
}

} // namespace

TEST_CASE("intersection table matches the transcription entry-by-entry") {
    auto t = pipe().intersection_table();
    for (size_t i = 0; i < 6; ++i)
        for (size_t j = 0; j < 6; ++j) {
            INFO("row " << i + 1 << " col " << j);
            CHECK(t.entries[i][j].str() == kTable[i][j]);
        }
}

TEST_CASE("cycle specs are well-formed") {
    for (int i = 1; i <= 6; ++i) {
        const CycleSpec& c = pipe().cycle(i);
        CHECK(c.id == i);
        if (!c.cycle_class.is_zero()) {
            CHECK(c.cycle_class.is_homogeneous());
            CHECK(c.cycle_class.degree() == c.ambient->dimension() - 2);
        }
        CHECK(c.source ==
              (i <= 4 ? CycleSource::derived : CycleSource::transcribed));
    }
    CHECK_THROWS_AS(pipe().cycle(0), chow::error);
    CHECK_THROWS_AS(pipe().cycle(7), chow::error);
}

TEST_CASE("boundary divisor restriction on W") {
    // n eps - 2 delta restricts to -2 zeta + 2g + 2y on the ambient of
    // Xi_3 / Xi_4.
    const CycleSpec& c = pipe().cycle(3);
    ParamPoly n = ParamPoly::variable(N, "n");
    RingElement lhs = c.eps * n - c.delta * Rational(2);
    RingElement rhs = c.ambient->gen("zeta") * Rational(-2) +
                      c.ambient->gen("g") * Rational(2) +
                      c.ambient->gen("y") * Rational(2);
    CHECK(lhs == rhs);
}

TEST_CASE("basis determinant, symbolic and numeric") {
    ParamPoly det = pipe().basis_determinant_symbolic();
    CHECK(det.str() == "-256n^5+1536n^4-3328n^3+3072n^2-1024n");

    CHECK(pipe().basis_determinant_at(3) == Rational(-3072));
    CHECK(pipe().basis_determinant_at(4) == Rational(-36864));
    CHECK(pipe().basis_determinant_at(5) == Rational(-184320));
    CHECK(pipe().basis_determinant_at(10) == Rational(-13271040));
    CHECK(pipe().basis_determinant_at(50) == Rational(Integer("-70808371200")));

    // evaluation homomorphism: symbolic at n equals numeric at n
    for (int n : {3, 7, 19, 50}) {
        std::map<std::string, Rational> b{{"n", Rational(n)}};
        CHECK(det.eval(b) == pipe().basis_determinant_at(n));
    }
}

TEST_CASE("determinant agrees with the permutation-sum oracle") {
    CHECK(leibniz_det(3) == -3072);
    CHECK(leibniz_det(10) == -13271040);
    for (long long n : {3, 4, 5, 6, 10, 17}) {
        CHECK(pipe().basis_determinant_at(static_cast<int>(n)) ==
              Rational(leibniz_det(n)));
    }
}

TEST_CASE("determinant is nonzero for n in 3..50") {
    for (int n = 3; n <= 50; ++n)
        CHECK_FALSE(pipe().basis_determinant_at(n).is_zero());
}

TEST_CASE("pairing matrix and its corollaries") {
    PairingBasis p = pipe().pairing_matrix();
    CHECK(p.matrix[0][0] == 0);
    CHECK(p.matrix[0][1] == 1);
    CHECK(p.matrix[1][0] == 1);
    CHECK(p.matrix[1][1] == 0);
    CHECK(p.f_dot_K.is_zero());
    CHECK(p.f_dot_B == ParamPoly::constant(N, Rational(-2)));
}

TEST_CASE("extremal coefficients on the boundary 4-fold") {
    CHECK(pipe().a_coefficient(1) == -6);
    CHECK(pipe().a_coefficient(2) == 12);
    CHECK(pipe().a_coefficient(3) == 0);
    CHECK(pipe().a_coefficient(4) == -6);
    CHECK_THROWS_AS(pipe().a_coefficient(5), chow::error);
    CHECK_THROWS_AS(pipe().a_coefficient(0), chow::error);
}

TEST_CASE("multiple cover constant") {
    CHECK(GwPipeline::multiple_cover_constant(1) == Rational(1));
    CHECK(GwPipeline::multiple_cover_constant(2) ==
          Rational(Integer(1), Integer(8)));
    CHECK(GwPipeline::multiple_cover_constant(3) ==
          Rational(Integer(1), Integer(27)));
    CHECK_THROWS_AS(GwPipeline::multiple_cover_constant(0), chow::error);
}

TEST_CASE("one-point invariants") {
    CHECK(pipe().invariant(1, 1).value == Rational(-6));
    CHECK(pipe().invariant(2, 2).value == Rational(3));
    CHECK(pipe().invariant(4, 2).value == Rational(Integer(-3), Integer(2)));

    InvariantResult v5 = pipe().invariant(5, 7);
    CHECK(v5.value == Rational(0));
    CHECK(v5.provenance == Provenance::vanishing_by_localization);
    CHECK(pipe().invariant(6, 1).provenance ==
          Provenance::vanishing_by_localization);
    CHECK(pipe().invariant(1, 1).provenance == Provenance::computed);

    // d^2 . invariant is constant in d
    for (int i = 1; i <= 4; ++i) {
        Rational base = pipe().invariant(i, 1).value;
        for (int d = 2; d <= 5; ++d)
            CHECK(pipe().invariant(i, d).value * Rational(d) * Rational(d) == base);
    }
    CHECK_THROWS_AS(pipe().invariant(1, 0), chow::error);
    CHECK_THROWS_AS(pipe().invariant(7, 1), chow::error);
}

TEST_CASE("dimension bookkeeping") {
    // n = 3: dim of the moduli space is 4n-4 = 8
    CHECK(GwPipeline::expected_dim(8, 0, 0, 1) == 6);  // 4n-6 one-pointed
    CHECK(GwPipeline::expected_dim(8, 0, 0, 0) == 5);  // 4n-7 zero-pointed
    CHECK(GwPipeline::expected_dim(3, 0, 0, 0) == 0);

    DimensionReport r = GwPipeline::excess_report(3, 1);
    CHECK(r.actual_dim == 6);
    CHECK(r.expected_dim == 5);
    CHECK(r.excess == 1);
    CHECK(GwPipeline::excess_report(4, 3).excess == 5);
    for (int n = 3; n <= 10; ++n)
        for (int d = 1; d <= 5; ++d)
            CHECK(GwPipeline::excess_report(n, d).excess == 2 * d - 1);
    CHECK_THROWS_AS(GwPipeline::excess_report(2, 1), chow::error);
    CHECK_THROWS_AS(GwPipeline::excess_report(3, 0), chow::error);
}
