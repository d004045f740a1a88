#include "geoquad/families.hpp"

#include <gtest/gtest.h>

#include <functional>

using namespace geoquad;

namespace {

Integer catalan(unsigned n) {
    Integer b;
    mpz_bin_uiui(b.get_mpz_t(), 2 * n, n);
    return b / (n + 1);
}

Integer pow3(unsigned n) {
    Integer p;
    mpz_ui_pow_ui(p.get_mpz_t(), 3, n);
    return p;
}

void expect_prefix(const TruncatedSeries& s, std::initializer_list<long> want) {
    std::size_t n = 0;
    for (long w : want) {
        ASSERT_LE(n, s.order());
        EXPECT_EQ(s[n], w) << "coefficient " << n;
        ++n;
    }
}

}  // namespace

TEST(SolveBase, RCountsPointedTrees) {
    const auto base = solve_base(12);
    // [g^n]R = 3^n Cat(n)
    for (unsigned n = 0; n <= 12; ++n) EXPECT_EQ(base.R[n], pow3(n) * catalan(n));
    expect_prefix(base.R, {1, 3, 18, 135});
}

TEST(SolveBase, XSatisfiesDefiningEquation) {
    const std::size_t N = 15;
    const auto base = solve_base(N);
    const auto g = TruncatedSeries::variable(N);
    const auto one = TruncatedSeries::constant(N, 1);
    EXPECT_EQ(base.x[0], 0);
    EXPECT_EQ(base.x[1], 1);
    // x^2 + x + 1 = x/(gR^2), rewritten without the pole
    const auto gR2 = g * base.R * base.R;
    EXPECT_EQ(gR2 * (one + base.x + base.x * base.x), base.x);
    EXPECT_EQ(one + Rational(3) * g * base.R * base.R, base.R);
}

TEST(SeriesR, ZeroIndexIsZero) {
    const auto r0 = series_R(0, 8);
    for (std::size_t n = 0; n <= 8; ++n) EXPECT_EQ(r0[n], 0);
}

TEST(SeriesR, R1CountsRootedQuadrangulations) {
    const auto r1 = series_R(1, 10);
    // 2 * 3^n Cat(n) / (n+2)
    for (unsigned n = 0; n <= 10; ++n) EXPECT_EQ(r1[n], 2 * pow3(n) * catalan(n) / (n + 2));
    expect_prefix(r1, {1, 2, 9, 54});
}

TEST(SeriesR, ClosedFormMatchesRecursion) {
    const std::size_t N = 30;
    const auto base = solve_base(N);
    const auto rec = series_R_by_recursion(10, N);
    for (std::size_t i = 1; i <= 10; ++i) EXPECT_EQ(series_R(i, base), rec[i - 1]) << "i=" << i;
}

TEST(SeriesR, ConvergesToBaseAsIndexGrows) {
    const std::size_t N = 10;
    const auto base = solve_base(N);
    // R_i and R agree below order i (the difference is O(x^i)).
    for (std::size_t i = 1; i <= 8; ++i) {
        const auto ri = series_R(i, base);
        for (std::size_t n = 0; n < i; ++n) EXPECT_EQ(ri[n], base.R[n]);
        EXPECT_NE(ri[i], base.R[i]);
    }
}

TEST(SeriesZ, Fixture) {
    expect_prefix(series_Z(2, 3), {1, 5, 32, 234});
    EXPECT_EQ(series_Z(1, 8), series_R(1, 8));
}

TEST(SeriesZ, ProductMatchesClosedForm) {
    const std::size_t N = 16;
    const auto base = solve_base(N);
    const auto one = TruncatedSeries::constant(N, 1);
    auto f = [&](unsigned k) { return one - pow(base.x, k); };
    const auto z = series_Z_table(7, base);
    for (unsigned i = 1; i <= 7; ++i) {
        const auto closed = pow(base.R, i) * f(1) * f(i + 3) / (f(3) * f(i + 1));
        EXPECT_EQ(z[i], closed) << "i=" << i;
    }
}

TEST(IrreducibleParts, Fixture) {
    expect_prefix(series_U(2, 4), {0, 1, 10, 90, 810});
    EXPECT_EQ(series_U(1, 6), series_R(1, 6));
}

TEST(IrreducibleParts, CompositionsRebuildTheSequence) {
    const std::size_t N = 12;
    const auto z = series_Z_table(6, solve_base(N));
    const auto u = irreducible_part(z);
    // z_i = sum over compositions (c_1..c_m) of i of u_{c_1} ... u_{c_m}
    std::function<TruncatedSeries(std::size_t)> comp = [&](std::size_t i) {
        TruncatedSeries acc(N);
        for (std::size_t first = 1; first <= i; ++first)
            acc += first == i ? u[i] : u[first] * comp(i - first);
        return acc;
    };
    for (std::size_t i = 1; i <= 6; ++i) EXPECT_EQ(comp(i), z[i]) << "i=" << i;
}

TEST(ConfluentTuples, KOneIsU) {
    for (auto mode : {TupleMode::weak, TupleMode::strong})
        EXPECT_EQ(series_U_k(3, 1, 8, mode), series_U(3, 8));
}

TEST(ConfluentTuples, StrongPairsSquareU) {
    expect_prefix(series_U_k(2, 2, 5, TupleMode::strong), {0, 0, 1, 20});
    const auto u = series_U(3, 9);
    EXPECT_EQ(series_U_k(3, 3, 9, TupleMode::strong), u * u * u);
}

TEST(ConfluentTuples, WeakUsesPoweredBoundarySeries) {
    const std::size_t N = 8;
    const auto z = series_Z_table(3, solve_base(N));
    // k=2: U^(2)_1 = Z_1^2, U^(2)_2 = Z_2^2 - Z_1^2 Z_1^2
    const auto w = series_U_k_table(2, 2, TupleMode::weak, solve_base(N));
    EXPECT_EQ(w[1], z[1] * z[1]);
    EXPECT_EQ(w[2], z[2] * z[2] - pow(z[1], 4));
    EXPECT_THROW(series_U_k(2, 0, N, TupleMode::weak), SeriesError);
}

TEST(ConfluentTuples, StrongNeverExceedsWeak) {
    const std::size_t N = 10;
    const auto base = solve_base(N);
    for (unsigned k = 2; k <= 4; ++k) {
        const auto w = series_U_k_table(5, k, TupleMode::weak, base);
        const auto s = series_U_k_table(5, k, TupleMode::strong, base);
        for (std::size_t i = 1; i <= 5; ++i)
            for (std::size_t n = 0; n <= N; ++n) EXPECT_LE(s[i][n], w[i][n]);
    }
}

TEST(Pinch, SmallIndices) {
    const std::size_t N = 10;
    const auto base = solve_base(N);
    const auto p = series_pinch_table(4, base);
    const auto r1 = series_R(1, base);
    for (std::size_t n = 0; n <= N; ++n) EXPECT_EQ(p.Zpp[1][n], 0);
    EXPECT_EQ(p.Zpp[2], r1 * r1);
    const auto z = series_Z_table(4, base);
    EXPECT_EQ(p.ZZpp[3], Rational(2) * z[3] * (z[1] * z[2] + z[2] * z[1]));
}

TEST(Pinch, GeneratingFunctionIdentity) {
    // Summed over i with a marker t, the subtraction recursion is
    // U2pp(t) (1 + Z2(t))^2 = ZZpp(t) - 2 Z2(t)^2, checked coefficientwise in t.
    const std::size_t N = 8, I = 6;
    const auto base = solve_base(N);
    const auto z = series_Z_table(I, base);
    const auto p = series_pinch_table(I, base);
    std::vector<TruncatedSeries> z2(I + 1, TruncatedSeries(N));
    for (std::size_t i = 1; i <= I; ++i) z2[i] = z[i] * z[i];
    auto conv = [&](const std::vector<TruncatedSeries>& a, const std::vector<TruncatedSeries>& b) {
        std::vector<TruncatedSeries> c(I + 1, TruncatedSeries(N));
        for (std::size_t i = 1; i <= I; ++i)
            for (std::size_t j = 1; j < i; ++j) c[i] += a[j] * b[i - j];
        return c;
    };
    const auto z2z2 = conv(z2, z2);
    const auto uz = conv(p.U2pp, z2);
    const auto uzz = conv(uz, z2);
    for (std::size_t i = 1; i <= I; ++i) {
        const auto lhs = p.U2pp[i] + Rational(2) * uz[i] + uzz[i];
        const auto rhs = p.ZZpp[i] - Rational(2) * z2z2[i];
        EXPECT_EQ(lhs, rhs) << "i=" << i;
    }
}

TEST(Pinch, CoefficientsNonnegative) {
    const std::size_t N = 12;
    const auto p = series_pinch_table(6, solve_base(N));
    for (std::size_t i = 1; i <= 6; ++i)
        for (std::size_t n = 0; n <= N; ++n) {
            EXPECT_GE(p.Zpp[i][n], 0);
            EXPECT_GE(p.U2pp[i][n], 0) << "i=" << i << " n=" << n;
        }
}

TEST(TwoPoint, LogR1) {
    const auto base = solve_base(6);
    expect_prefix(two_point_series(1, base), {0, 2, 7});
}

TEST(TwoPoint, Telescopes) {
    const auto base = solve_base(10);
    TruncatedSeries sum(10);
    for (std::size_t j = 1; j <= 5; ++j) sum += two_point_series(j, base);
    EXPECT_EQ(sum, log(series_R(5, base)));
    EXPECT_THROW(two_point_series(0, base), SeriesError);
}

TEST(PointedPartition, Values) {
    EXPECT_EQ(pointed_partition(1), Rational(3, 2));
    EXPECT_EQ(pointed_partition(2), Rational(9, 2));
    EXPECT_EQ(pointed_partition(3), Rational(45, 2));
    EXPECT_EQ(series_U(2, 2)[1] / pointed_partition(1), Rational(2, 3));
    EXPECT_EQ(series_U(2, 2)[2] / pointed_partition(2), Rational(20, 9));
}

TEST(Families, HigherOrderExtendsLowerOrder) {
    const auto lo = series_family(Family::U2pp, 4, 1, 6);
    const auto hi = series_family(Family::U2pp, 4, 1, 11);
    EXPECT_EQ(hi.truncated(6), lo);
    EXPECT_EQ(series_family(Family::R, 0, 1, 5), solve_base(5).R);
    EXPECT_THROW(parse_family("Q"), SeriesError);
}

TEST(Families, CountingFamiliesAreNonnegativeIntegers) {
    const std::size_t N = 10;
    for (auto f : {Family::Z, Family::U, Family::Uk, Family::UkStrong}) {
        for (std::size_t i = 1; i <= 4; ++i) {
            const auto s = series_family(f, i, 2, N);
            for (std::size_t n = 0; n <= N; ++n) {
                EXPECT_GE(s[n], 0);
                EXPECT_EQ(s[n].get_den(), 1);
            }
        }
    }
    const auto tp = series_family(Family::TwoPoint, 3, 1, N);
    for (std::size_t n = 0; n <= N; ++n) EXPECT_GE(tp[n], 0);
}
