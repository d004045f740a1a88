#include "geoquad/asymptotics.hpp"
#include "geoquad/families.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace geoquad;

namespace {

constexpr unsigned kOrder = 12;

TruncatedSeries poly(std::initializer_list<long> c) {
    std::vector<Rational> v;
    for (long x : c) v.emplace_back(x);
    v.resize(kOrder + 3);
    return TruncatedSeries(kOrder + 2, v);
}

// log(1 - 2t)
TruncatedSeries log1m2t() {
    TruncatedSeries l(kOrder + 2);
    Integer p = 1;
    for (unsigned m = 1; m <= kOrder + 2; ++m) {
        p *= 2;
        l[m] = -Rational(p, m);
        l[m].canonicalize();
    }
    return l;
}

// s / t^k, assuming the low coefficients vanish.
TruncatedSeries shift_down(const TruncatedSeries& s, unsigned k) {
    TruncatedSeries r(s.order() - k);
    for (std::size_t n = 0; n <= r.order(); ++n) {
        r[n] = s[n + k];
    }
    for (unsigned n = 0; n < k; ++n) EXPECT_EQ(s[n], 0);
    return r;
}

// Closed generating functions for alpha, gamma, delta, expanded in t.
struct ClosedForms {
    TruncatedSeries alpha, gamma, delta;
};

ClosedForms closed_forms() {
    const auto t = poly({0, 1});
    const auto u = poly({1, -2});
    const auto L = log1m2t();
    const auto base = t - u * L;
    const auto alpha = shift_down(t * poly({-2, 6}) - u * L, 1) / shift_down(base, 1);
    const auto gnum = Rational(3) * t * (Rational(2) * t * poly({-1, 17, -34, 20}) - pow(u, 4) * L);
    const auto gden = Rational(5) * u * u * base * base;
    const auto gamma = shift_down(gnum, 2) / shift_down(gden, 2);
    const auto dnum =
        Rational(3) * t * (Rational(2) * t * poly({3, 177, -412, 708, -624, 224}) + Rational(3) * pow(u, 6) * L);
    // prefactor 3/35: delta_1 = D_1 = 4 fixes the normalization
    const auto dden = Rational(35) * pow(u, 4) * base * base;
    const auto delta = shift_down(dnum, 2) / shift_down(dden, 2);
    return {alpha, gamma, delta};
}

double to_d(const Rational& q) { return q.get_d(); }

}  // namespace

TEST(Acd, SmallValues) {
    EXPECT_EQ(acd(1).a, Rational(4, 3));
    EXPECT_EQ(acd(2).a, Rational(20, 9));
    EXPECT_EQ(acd(2).d, Rational(112, 3));
    EXPECT_THROW(acd(0), std::invalid_argument);
}

TEST(Agd, DeltaFixture) {
    const auto t = agd(5);
    const Rational want[] = {Rational(4), Rational(80, 3), Rational(132), Rational(366208, 675),
                             Rational(3998176, 2025)};
    for (unsigned i = 1; i <= 5; ++i) EXPECT_EQ(t[i].d, want[i - 1]) << "i=" << i;
    EXPECT_EQ(t[1].a, acd(1).a);
}

TEST(Agd, MatchesClosedGeneratingFunctions) {
    const auto cf = closed_forms();
    const auto t = agd(kOrder);
    for (unsigned i = 1; i < kOrder; ++i) {
        EXPECT_EQ(t[i].a, cf.alpha[i]) << "alpha i=" << i;
        EXPECT_EQ(t[i].c, cf.gamma[i]) << "gamma i=" << i;
        EXPECT_EQ(t[i].d, cf.delta[i]) << "delta i=" << i;
    }
}

TEST(Agd, ConvolutionIdentities) {
    const unsigned I = 20;
    const auto z = acd_table(I);
    const auto u = agd(I);
    for (unsigned i = 1; i <= I; ++i) {
        Rational a = u[i].a, c = u[i].c, d = u[i].d;
        for (unsigned j = 1; j < i; ++j) {
            a += u[j].a * z[i - j].a;
            c += u[j].a * z[i - j].c + u[j].c * z[i - j].a;
            d += u[j].a * z[i - j].d + u[j].d * z[i - j].a;
        }
        EXPECT_EQ(a, z[i].a);
        EXPECT_EQ(c, z[i].c);
        EXPECT_EQ(d, z[i].d);
        EXPECT_GT(u[i].d, 0);
    }
}

// Double-precision recursion on 2^{-ik}-scaled critical coefficients, an
// independent path that reaches indices far beyond the exact tables.
struct ScaledTables {
    std::vector<double> a, c, d;
};

ScaledTables scaled_agd(unsigned imax, unsigned k) {
    std::vector<double> A(imax + 1), C(imax + 1), D(imax + 1);
    for (unsigned n = 1; n <= imax; ++n) {
        const double i = n;
        const double a = (i + 3) / (3 * (i + 1));
        const double c = i * (i + 3) * (i * i + 6 * i + 3) / (30 * (i + 1));
        const double d = i * (i + 2) * (i + 3) * (i + 4) * (3 * i * i + 12 * i + 13) / (420 * (i + 1));
        A[n] = std::pow(a, k);
        C[n] = k * std::pow(a, k - 1.0) * c;
        D[n] = k * std::pow(a, k - 1.0) * d;
    }
    ScaledTables t{std::vector<double>(imax + 1), std::vector<double>(imax + 1), std::vector<double>(imax + 1)};
    for (unsigned n = 1; n <= imax; ++n) {
        double a = A[n], c = C[n], d = D[n];
        for (unsigned j = 1; j < n; ++j) {
            a -= t.a[j] * A[n - j];
            c -= t.a[j] * C[n - j] + t.c[j] * A[n - j];
            d -= t.a[j] * D[n - j] + t.d[j] * A[n - j];
        }
        t.a[n] = a;
        t.c[n] = c;
        t.d[n] = d;
    }
    return t;
}

double scaled(const Rational& q, unsigned bits) {
    Rational s = q;
    mpq_div_2exp(s.get_mpq_t(), q.get_mpq_t(), bits);
    return s.get_d();
}

constexpr unsigned kFar = 6000;

TEST(Agd, ScaledOracleMatchesExactTable) {
    const auto exact = agd(80);
    const auto f = scaled_agd(80, 1);
    for (unsigned i : {1u, 10u, 40u, 80u}) {
        EXPECT_NEAR(scaled(exact[i].a, i) / f.a[i], 1.0, 1e-9);
        EXPECT_NEAR(scaled(exact[i].c, i) / f.c[i], 1.0, 1e-9);
        EXPECT_NEAR(scaled(exact[i].d, i) / f.d[i], 1.0, 1e-9);
    }
}

TEST(Agd, LargeIndexLaws) {
    // The approach is slow (relative corrections of order log(i)/i), so the
    // exact table only shows a monotone trend; the limits are checked far out.
    const auto t = agd(80);
    double prev = 0;
    for (unsigned i = 20; i <= 80; i += 10) {
        const double r = scaled(t[i].d, i) / (9.0 / 7.0 * std::pow(i, 3));
        EXPECT_GT(r, prev);
        EXPECT_LT(r, 1.0);
        prev = r;
    }
    const auto f = scaled_agd(kFar, 1);
    const double I = kFar;
    EXPECT_NEAR(f.d[kFar] / (9.0 / 7.0 * I * I * I), 1.0, 0.05);
    EXPECT_NEAR(f.a[kFar] / (12.0 / (I * I * I)), 1.0, 0.05);
    EXPECT_NEAR(f.c[kFar] / (9.0 / 5.0 * I), 1.0, 0.05);
    EXPECT_NEAR(f.c[kFar] / f.a[kFar] / (3.0 / 20.0 * I * I * I * I), 1.0, 0.05);
}

TEST(KTables, KOneIsAgd) {
    const auto k1 = k_tables(10, 1);
    EXPECT_EQ(k1.weak, agd(10));
    EXPECT_EQ(k1.strong, agd(10));
    EXPECT_THROW(k_tables(4, 0), std::invalid_argument);
}

TEST(KTables, WeakPairsLaw) {
    const auto exact = k_tables(60, 2);
    const auto f = scaled_agd(kFar, 2);
    EXPECT_NEAR(scaled(exact.weak[60].d, 120) / f.d[60], 1.0, 1e-9);
    const double I = kFar;
    EXPECT_NEAR(f.d[kFar] / (2 * 3 * 9.0 / 7.0 * I * I * I), 1.0, 0.05);
}

TEST(KTables, ExceptionalPoints) {
    const auto t = k_tables(100, 2);
    auto ratio = [&](unsigned i) { return scaled(t.strong[i].d, 2 * i) / (2 * 9.0) / (12.0 / 7.0); };
    EXPECT_NEAR(ratio(100), 1.0, 0.05);
    EXPECT_LT(std::abs(ratio(100) - 1), std::abs(ratio(60) - 1));
}

TEST(KTables, StrongBoundedByWeak) {
    for (unsigned k = 1; k <= 4; ++k) {
        const auto t = k_tables(25, k);
        for (unsigned i = 1; i <= 25; ++i) EXPECT_LE(t.strong[i].d, t.weak[i].d) << "k=" << k << " i=" << i;
    }
}

TEST(KTables, CriticalValuesOfExactSeries) {
    // alpha^(k) as the constant of the critical expansion must match the exact
    // weak series evaluated at g = 1/12 in the limit; here only the first
    // index, where U^(k)_1 = R_1^k and R_1(1/12) = 4/3.
    const auto t = k_tables(3, 3);
    EXPECT_EQ(t.weak[1].a, Rational(64, 27));
}

TEST(W2pp, FirstValueAndLaw) {
    const auto w = w2pp_table(200);
    EXPECT_EQ(w[1], 0);
    // decreasing toward 24 from above
    double prev = 1e300;
    for (unsigned i = 100; i <= 200; i += 20) {
        const double v = scaled(w[i], 2 * i) * i * i;
        EXPECT_LT(v, prev);
        EXPECT_GT(v, 24.0);
        prev = v;
    }
}

TEST(W2pp, EqualsCriticalValueOfSubtractionRecursion) {
    const auto w = w2pp_table(30);
    const auto p = pinch_jets(30);
    for (unsigned i = 1; i <= 30; ++i) EXPECT_EQ(w[i], p.u2pp[i].a) << "i=" << i;
}

TEST(Saddle, BoundaryCountAtTwoHundred) {
    const auto z2 = series_Z(2, 200);
    const double r = saddle_ratio(z2[200], 200, acd(2).d);
    EXPECT_GE(r, 0.9);
    EXPECT_LE(r, 1.1);
}

TEST(Saddle, PointedPartition) {
    const double r = saddle_ratio(pointed_partition(200), 200, Rational(1));
    EXPECT_NEAR(r, 1.0, 0.1);
    EXPECT_LT(saddle_count(50, Rational(1)).ln, saddle_count(50, Rational(2)).ln);
    const auto lr = saddle_count(10, Rational(1));
    EXPECT_NEAR(lr.mantissa() * std::pow(10.0, lr.exponent()), std::exp(lr.ln), 1e-6 * std::exp(lr.ln));
}

TEST(Saddle, ExactCoefficientsRecoverDelta) {
    // Least-squares fit of [g^n]U_i n^{5/2} / 12^n against
    // c0 + c1/n + c2/n^{3/2} + c3/n^2 over n = 150..300; the half-integer
    // power is there because the critical expansion runs in xi/sqrt(n).
    const auto base = solve_base(300);
    const auto u = irreducible_part(series_Z_table(6, base));
    const auto delta = agd(6);
    constexpr int P = 4;
    const double powers[P] = {0, 1, 1.5, 2};
    for (unsigned i = 1; i <= 6; ++i) {
        double m[P][P + 1] = {};
        for (unsigned n = 150; n <= 300; n += 10) {
            const double N = n;
            const double y = std::exp(log_of(u[i][n]) - N * std::log(12.0) + 2.5 * std::log(N));
            double x[P];
            for (int a = 0; a < P; ++a) x[a] = std::pow(N, -powers[a]);
            for (int a = 0; a < P; ++a) {
                for (int b = 0; b < P; ++b) m[a][b] += x[a] * x[b];
                m[a][P] += x[a] * y;
            }
        }
        for (int col = 0; col < P; ++col)
            for (int row = col + 1; row < P; ++row) {
                const double f = m[row][col] / m[col][col];
                for (int k = col; k <= P; ++k) m[row][k] -= f * m[col][k];
            }
        double c[P];
        for (int row = P - 1; row >= 0; --row) {
            double acc = m[row][P];
            for (int k = row + 1; k < P; ++k) acc -= m[row][k] * c[k];
            c[row] = acc / m[row][row];
        }
        const double want = to_d(delta[i].d) / (2 * std::sqrt(std::numbers::pi));
        EXPECT_NEAR(c[0] / want, 1.0, 0.05) << "i=" << i;
    }
}

TEST(AverageLaws, Values) {
    const auto l = average_laws(2, 1, LawMode::weak, 10);
    EXPECT_EQ(l.per_origin.exact, Rational(80, 3));
    EXPECT_DOUBLE_EQ(l.per_pair, 12.0);
    EXPECT_THROW(average_laws(11, 1, LawMode::weak, 10), IndexBeyondTable);
    const auto s = average_laws(5, 1, LawMode::strong, 10);
    EXPECT_EQ(s.per_origin.exact, agd(5)[5].d);
}

TEST(AverageLaws, StrongAreaProduct) {
    const auto l = average_laws(80, 1, LawMode::weak, 80);
    EXPECT_EQ(l.area_product.exact, agd(80)[80].c / agd(80)[80].a);
    EXPECT_DOUBLE_EQ(l.area_product.limit, 0.15 * std::pow(80.0, 4));
}

TEST(AverageLaws, ContactsGrowLinearly) {
    const auto p = pinch_jets(80);
    double prev = 0;
    for (unsigned i = 2; i <= 80; ++i) {
        const double c = to_d(p.u2pp[i].d / p.u2[i].d);
        EXPECT_GT(c, prev);
        prev = c;
    }
    const double slope = to_d(p.u2pp[80].d / p.u2[80].d - p.u2pp[60].d / p.u2[60].d) / 20.0;
    EXPECT_NEAR(slope, 1.0 / 3.0, 0.05);
}
