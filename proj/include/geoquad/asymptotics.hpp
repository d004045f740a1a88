#pragma once

// Critical expansions of the boundary and geodesic series and the large-n,
// large-i laws derived from them.
//
// Near g = 1/12 every series X here expands as A + C u^2 + (2/3) i D u^3 with
// u = xi/sqrt(n) and no linear term. Products and quotients keep that shape,
// so the three coefficients form a ring (Jet) and all table recursions are
// ring computations.

#include "geoquad/series.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace geoquad {

class IndexBeyondTable : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

struct Jet {
    Rational a, c, d;

    friend Jet operator+(const Jet& x, const Jet& y) { return {x.a + y.a, x.c + y.c, x.d + y.d}; }
    friend Jet operator-(const Jet& x, const Jet& y) { return {x.a - y.a, x.c - y.c, x.d - y.d}; }
    friend Jet operator*(const Jet& x, const Jet& y) {
        return {x.a * y.a, x.a * y.c + x.c * y.a, x.a * y.d + x.d * y.a};
    }
    friend Jet operator*(const Rational& k, const Jet& x) { return {k * x.a, k * x.c, k * x.d}; }
    Jet& operator+=(const Jet& o) { return *this = *this + o; }
    Jet& operator-=(const Jet& o) { return *this = *this - o; }
    friend bool operator==(const Jet&, const Jet&) = default;
};

inline Jet jet_pow(const Jet& x, unsigned k) {
    Jet r{1, 0, 0};
    for (unsigned j = 0; j < k; ++j) r = r * x;
    return r;
}

inline Integer pow2(unsigned i) {
    Integer p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, i);
    return p;
}

/// Critical coefficients (A_i, C_i, D_i) of the boundary series Z_i.
inline Jet acd(unsigned i) {
    if (i == 0) throw std::invalid_argument("acd needs i >= 1");
    const Integer p = pow2(i);
    const Integer I = i;
    Rational A(p * (I + 3), 3 * (I + 1));
    Rational C(p * I * (I + 3) * (I * I + 6 * I + 3), 30 * (I + 1));
    Rational D(p * I * (I + 2) * (I + 3) * (I + 4) * (3 * I * I + 12 * I + 13), 420 * (I + 1));
    A.canonicalize();
    C.canonicalize();
    D.canonicalize();
    return {A, C, D};
}

/// Tables are 1-based; entry 0 is the zero jet.
using JetTable = std::vector<Jet>;

/// u_i = z_i - sum_{j<i} u_j z_{i-j} in the jet ring. On (A, C, D) this is
/// exactly alpha_i = A_i - sum alpha_j A_{i-j}, gamma_i = C_i - sum(alpha_j
/// C_{i-j} + gamma_j A_{i-j}), delta_i likewise with D.
inline JetTable jet_irreducible(const JetTable& z) {
    JetTable u(z.size());
    for (std::size_t i = 1; i < z.size(); ++i) {
        Jet acc = z[i];
        for (std::size_t j = 1; j < i; ++j) acc -= u[j] * z[i - j];
        u[i] = acc;
    }
    return u;
}

inline JetTable acd_table(unsigned imax) {
    JetTable t(imax + 1);
    for (unsigned i = 1; i <= imax; ++i) t[i] = acd(i);
    return t;
}

/// (alpha_i, gamma_i, delta_i) for i = 1..imax.
inline JetTable agd(unsigned imax) { return jet_irreducible(acd_table(imax)); }

struct KTables {
    JetTable weak;    // (alpha^(k), gamma^(k), delta^(k))
    JetTable strong;  // (alpha~^(k), gamma~^(k), delta~^(k))
};

/// Weak tables from A^(k) = A^k, C^(k) = k A^{k-1} C, D^(k) = k A^{k-1} D, and
/// strong tables from the k-th power of (alpha, gamma, delta).
inline KTables k_tables(unsigned imax, unsigned k) {
    if (k == 0) throw std::invalid_argument("k must be at least 1");
    const JetTable base = acd_table(imax);
    JetTable zk(imax + 1);
    for (unsigned i = 1; i <= imax; ++i) zk[i] = jet_pow(base[i], k);
    KTables out{jet_irreducible(zk), jet_irreducible(base)};
    for (unsigned i = 1; i <= imax; ++i) out.strong[i] = jet_pow(out.strong[i], k);
    return out;
}

struct PinchJets {
    JetTable zpp;   // sum_j Z_j Z_{i-j}
    JetTable zzpp;  // 2 Z_i Zpp_i
    JetTable u2;    // irreducible part of Z_i^2
    JetTable u2pp;  // weak pairs with a marked contact
};

/// Critical expansions of the pinch-point series, built by the same
/// subtraction recursion as the exact series.
inline PinchJets pinch_jets(unsigned imax) {
    const JetTable z = acd_table(imax);
    PinchJets p;
    p.zpp.assign(imax + 1, Jet{});
    p.zzpp.assign(imax + 1, Jet{});
    p.u2pp.assign(imax + 1, Jet{});
    JetTable z2(imax + 1);
    for (unsigned i = 1; i <= imax; ++i) z2[i] = z[i] * z[i];
    p.u2 = jet_irreducible(z2);
    for (unsigned i = 1; i <= imax; ++i) {
        for (unsigned j = 1; j < i; ++j) p.zpp[i] += z[j] * z[i - j];
        p.zzpp[i] = Rational(2) * (z[i] * p.zpp[i]);
    }
    for (unsigned i = 1; i <= imax; ++i) {
        Jet acc = p.zzpp[i];
        for (unsigned j = 1; j < i; ++j) {
            acc -= p.u2[j] * p.zzpp[i - j];
            acc -= Rational(2) * (p.u2[j] * z2[i - j]);
            acc -= p.u2pp[j] * z2[i - j];
        }
        p.u2pp[i] = acc;
    }
    return p;
}

/// Coefficients of t^1..t^imax in (A2pp - 2 A2^2)/(1 + A2)^2 where
/// A2 = sum A_i^2 t^i and A2pp = sum 2 A_i (sum_j A_j A_{i-j}) t^i.
inline std::vector<Rational> w2pp_table(unsigned imax) {
    TruncatedSeries a(imax), a2(imax), a2pp(imax);
    for (unsigned i = 1; i <= imax; ++i) a[i] = acd(i).a;
    const TruncatedSeries app = a * a;
    for (unsigned i = 1; i <= imax; ++i) {
        a2[i] = a[i] * a[i];
        a2pp[i] = 2 * a[i] * app[i];
    }
    const TruncatedSeries one = TruncatedSeries::constant(imax, 1);
    const TruncatedSeries w = (a2pp - Rational(2) * a2 * a2) / ((one + a2) * (one + a2));
    return w.coefficients();
}

/// Positive real kept as its natural log, to survive 12^n magnitudes.
struct LogReal {
    double ln = 0;

    double mantissa() const { return std::pow(10.0, log10() - std::floor(log10())); }
    long exponent() const { return static_cast<long>(std::floor(log10())); }
    double log10() const { return ln / std::numbers::ln10; }
};

inline double log_of(const Rational& q) {
    if (sgn(q) <= 0) throw std::domain_error("log of a nonpositive rational");
    long en = 0, ed = 0;
    const double mn = mpz_get_d_2exp(&en, q.get_num_mpz_t());
    const double md = mpz_get_d_2exp(&ed, q.get_den_mpz_t());
    return std::log(mn / md) + static_cast<double>(en - ed) * std::numbers::ln2;
}

/// Large-n estimate 12^n D / (2 sqrt(pi) n^{5/2}) of [g^n]X.
inline LogReal saddle_count(unsigned n, const Rational& D) {
    if (n == 0) throw std::invalid_argument("saddle estimate needs n >= 1");
    const double N = n;
    return {N * std::log(12.0) + log_of(D) - std::log(2.0 * std::sqrt(std::numbers::pi)) - 2.5 * std::log(N)};
}

/// coefficient / saddle_count(n, D) as a plain double.
inline double saddle_ratio(const Rational& coefficient, unsigned n, const Rational& D) {
    return std::exp(log_of(coefficient) - saddle_count(n, D).ln);
}

enum class LawMode { weak, strong };

/// A finite-i exact value next to its large-i closed form.
struct LawPair {
    Rational exact;
    double limit = 0;
};

struct AverageLaws {
    unsigned i = 0, k = 1;
    LawPair per_origin;   // k-tuples of length-i geodesics from the origin
    double per_pair = 0;  // limit of the same count between two points at distance i
    double vertices_at_distance = 0;  // (3/7) i^3
    LawPair area_product;  // strong pairs: <n1 n2>/n = gamma_i/alpha_i
    LawPair contacts;      // weak pairs: n -> infinity average number of contacts
    double weak_area_theta = 0;  // weak pairs: <n1 n2>/n ~ theta_i, limit only
};

inline AverageLaws average_laws(unsigned i, unsigned k, LawMode mode, unsigned table_size) {
    if (i == 0 || i > table_size) throw IndexBeyondTable("index outside the computed table");
    const double I = i;
    const KTables t = k_tables(table_size, k);
    const JetTable ag = agd(table_size);
    AverageLaws out;
    out.i = i;
    out.k = k;
    const double two_i = std::ldexp(1.0, static_cast<int>(i));
    const double p3 = std::pow(3.0, k - 1.0);
    out.vertices_at_distance = 3.0 / 7.0 * I * I * I;
    if (mode == LawMode::weak) {
        out.per_origin = {t.weak[i].d, std::pow(two_i, k) * k * p3 * 9.0 / 7.0 * I * I * I};
        out.per_pair = k * std::pow(3.0 * two_i, k);
    } else {
        const double i_pow = std::pow(I, 6.0 - 3.0 * k);
        out.per_origin = {t.strong[i].d, k * std::pow(3.0 * two_i, k) * 3.0 * std::pow(4.0, k - 1.0) / 7.0 * i_pow};
        out.per_pair = out.per_origin.limit / out.vertices_at_distance;
    }
    out.area_product = {ag[i].c / ag[i].a, 3.0 / 20.0 * I * I * I * I};
    const PinchJets pj = pinch_jets(table_size);
    out.contacts = {pj.u2pp[i].d / pj.u2[i].d, I / 3.0};
    out.weak_area_theta = 27.0 / 100.0 * I * I * I;
    return out;
}

}  // namespace geoquad
