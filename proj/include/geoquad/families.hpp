#pragma once

// Generating functions for maps with distance constraints: R_i, Z_i, their
// irreducible parts, confluent k-tuples, pinch-point series and two-point
// functions.

#include "geoquad/series.hpp"

#include <string>
#include <utility>
#include <vector>

namespace geoquad {

struct BaseSolution {
    TruncatedSeries R;
    TruncatedSeries x;
};

/// R = 1 + 3gR^2 and the branch of x + 1/x + 1 = 1/(gR^2) vanishing at g = 0.
/// Clearing the pole gives x = gR^2 (1 + x + x^2). Both fixed points are
/// solved coefficient by coefficient, since [g^n] of each right-hand side only
/// involves lower coefficients.
inline BaseSolution solve_base(std::size_t order) {
    TruncatedSeries R(order), R2(order);
    R[0] = 1;
    R2[0] = 1;
    for (std::size_t n = 1; n <= order; ++n) {
        R[n] = 3 * R2[n - 1];
        Rational acc;
        for (std::size_t a = 0; a <= n; ++a) acc += R[a] * R[n - a];
        R2[n] = acc;
    }
    TruncatedSeries x(order), x2(order), w(order);  // w = 1 + x + x^2
    w[0] = 1;
    for (std::size_t n = 1; n <= order; ++n) {
        Rational acc;
        for (std::size_t m = 1; m <= n; ++m) acc += R2[m - 1] * w[n - m];
        x[n] = acc;
        Rational sq;
        for (std::size_t a = 1; a < n; ++a) sq += x[a] * x[n - a];
        x2[n] = sq;
        w[n] = x[n] + x2[n];
    }
    return {R, x};
}

/// Closed form R_i = R (1-x^i)(1-x^{i+3}) / ((1-x^{i+1})(1-x^{i+2})), R_0 = 0.
inline TruncatedSeries series_R(std::size_t i, const BaseSolution& base) {
    const std::size_t order = base.R.order();
    if (i == 0) return TruncatedSeries(order);
    const TruncatedSeries one = TruncatedSeries::constant(order, 1);
    auto f = [&](std::size_t k) { return one - pow(base.x, static_cast<unsigned>(k)); };
    return base.R * f(i) * f(i + 3) / (f(i + 1) * f(i + 2));
}

inline TruncatedSeries series_R(std::size_t i, std::size_t order) { return series_R(i, solve_base(order)); }

/// R_1..R_imax from the recursion R_i = 1/(1 - g(R_{i-1}+R_i+R_{i+1})),
/// truncated at index imax+order+2 with tail R. Verification path only.
inline std::vector<TruncatedSeries> series_R_by_recursion(std::size_t imax, std::size_t order) {
    const std::size_t top = imax + order + 2;
    const TruncatedSeries g = TruncatedSeries::variable(order);
    const TruncatedSeries one = TruncatedSeries::constant(order, 1);
    const TruncatedSeries tail = solve_base(order).R;
    std::vector<TruncatedSeries> r(top + 2, one);
    r[0] = TruncatedSeries(order);
    r[top + 1] = tail;
    for (std::size_t sweep = 0; sweep <= order + 1; ++sweep) {
        std::vector<TruncatedSeries> next = r;
        for (std::size_t j = 1; j <= top; ++j) next[j] = one / (one - g * (r[j - 1] + r[j] + r[j + 1]));
        r = std::move(next);
    }
    return {r.begin() + 1, r.begin() + 1 + static_cast<std::ptrdiff_t>(imax)};
}

/// Z_1..Z_imax (index 0 holds the constant 1, the empty product).
inline std::vector<TruncatedSeries> series_Z_table(std::size_t imax, const BaseSolution& base) {
    std::vector<TruncatedSeries> z{TruncatedSeries::constant(base.R.order(), 1)};
    for (std::size_t i = 1; i <= imax; ++i) z.push_back(z.back() * series_R(i, base));
    return z;
}

inline TruncatedSeries series_Z(std::size_t i, std::size_t order) {
    return series_Z_table(i, solve_base(order))[i];
}

/// u_i = z_i - sum_{j<i} u_j z_{i-j}. Both sequences are 1-based; entry 0 is
/// ignored on input and set to zero on output.
inline std::vector<TruncatedSeries> irreducible_part(const std::vector<TruncatedSeries>& z) {
    std::vector<TruncatedSeries> u(z.size());
    if (z.empty()) return u;
    u[0] = TruncatedSeries(z[0].order());
    for (std::size_t i = 1; i < z.size(); ++i) {
        TruncatedSeries acc = z[i];
        for (std::size_t j = 1; j < i; ++j) acc -= u[j] * z[i - j];
        u[i] = std::move(acc);
    }
    return u;
}

enum class TupleMode { weak, strong };

/// U^(k)_1..U^(k)_imax. Weak: irreducible part of (Z_i)^k. Strong: (U_i)^k.
inline std::vector<TruncatedSeries> series_U_k_table(std::size_t imax, unsigned k, TupleMode mode,
                                                     const BaseSolution& base) {
    if (k == 0) throw SeriesError("k must be at least 1");
    const auto z = series_Z_table(imax, base);
    if (mode == TupleMode::strong) {
        auto u = irreducible_part(z);
        for (std::size_t i = 1; i <= imax; ++i) u[i] = pow(u[i], k);
        return u;
    }
    std::vector<TruncatedSeries> zk(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) zk[i] = pow(z[i], k);
    return irreducible_part(zk);
}

inline TruncatedSeries series_U_k(std::size_t i, unsigned k, std::size_t order, TupleMode mode) {
    return series_U_k_table(i, k, mode, solve_base(order))[i];
}

inline TruncatedSeries series_U(std::size_t i, std::size_t order) {
    return series_U_k(i, 1, order, TupleMode::weak);
}

struct PinchSeries {
    std::vector<TruncatedSeries> Zpp;   // boundary with a marked pinch point
    std::vector<TruncatedSeries> ZZpp;  // 2 Z_i Zpp_i
    std::vector<TruncatedSeries> U2pp;  // weak pairs with a marked contact
};

/// Pinch-point series for i = 1..imax (entry 0 is zero).
inline PinchSeries series_pinch_table(std::size_t imax, const BaseSolution& base) {
    const std::size_t order = base.R.order();
    const auto z = series_Z_table(imax, base);
    std::vector<TruncatedSeries> z2(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) z2[i] = z[i] * z[i];
    const auto u2 = irreducible_part(z2);

    PinchSeries p;
    p.Zpp.assign(imax + 1, TruncatedSeries(order));
    p.ZZpp.assign(imax + 1, TruncatedSeries(order));
    p.U2pp.assign(imax + 1, TruncatedSeries(order));
    for (std::size_t i = 1; i <= imax; ++i) {
        for (std::size_t j = 1; j < i; ++j) p.Zpp[i] += z[j] * z[i - j];
        p.ZZpp[i] = Rational(2) * z[i] * p.Zpp[i];
    }
    for (std::size_t i = 1; i <= imax; ++i) {
        TruncatedSeries acc = p.ZZpp[i];
        for (std::size_t j = 1; j < i; ++j) {
            acc -= u2[j] * p.ZZpp[i - j];
            acc -= Rational(2) * u2[j] * z2[i - j];
            acc -= p.U2pp[j] * z2[i - j];
        }
        p.U2pp[i] = std::move(acc);
    }
    return p;
}

/// log(R_i / R_{i-1}): pairs of distinguished vertices at distance i. At i = 1
/// this is log R_1.
inline TruncatedSeries two_point_series(std::size_t i, const BaseSolution& base) {
    if (i == 0) throw SeriesError("two-point series needs i >= 1");
    const TruncatedSeries ri = series_R(i, base);
    if (i == 1) return log(ri);
    return log(ri / series_R(i - 1, base));
}

/// 3^n/(2n) * binom(2n, n)/(n+1): pointed quadrangulations weighted by 1/|Aut|.
inline Rational pointed_partition(unsigned n) {
    if (n == 0) throw SeriesError("pointed partition needs n >= 1");
    Integer binom;
    mpz_bin_uiui(binom.get_mpz_t(), 2 * n, n);
    Integer p3;
    mpz_ui_pow_ui(p3.get_mpz_t(), 3, n);
    Rational v(p3 * binom, Integer(2 * n) * Integer(n + 1));
    v.canonicalize();
    return v;
}

enum class Family { R, Z, U, Uk, UkStrong, Zpp, U2pp, TwoPoint };

inline Family parse_family(const std::string& s) {
    if (s == "R") return Family::R;
    if (s == "Z") return Family::Z;
    if (s == "U") return Family::U;
    if (s == "Uk") return Family::Uk;
    if (s == "UkStrong") return Family::UkStrong;
    if (s == "Zpp") return Family::Zpp;
    if (s == "U2pp") return Family::U2pp;
    if (s == "TwoPoint") return Family::TwoPoint;
    throw SeriesError("unknown series family: " + s);
}

/// One member of a family by tag; R with i = 0 returns the base series R.
inline TruncatedSeries series_family(Family f, std::size_t i, unsigned k, std::size_t order) {
    const BaseSolution base = solve_base(order);
    switch (f) {
        case Family::R: return i == 0 ? base.R : series_R(i, base);
        case Family::Z: return series_Z_table(i, base)[i];
        case Family::U: return series_U_k_table(i, 1, TupleMode::weak, base)[i];
        case Family::Uk: return series_U_k_table(i, k, TupleMode::weak, base)[i];
        case Family::UkStrong: return series_U_k_table(i, k, TupleMode::strong, base)[i];
        case Family::Zpp: return series_pinch_table(i, base).Zpp[i];
        case Family::U2pp: return series_pinch_table(i, base).U2pp[i];
        case Family::TwoPoint: return two_point_series(i, base);
    }
    throw SeriesError("unreachable family");
}

}  // namespace geoquad
