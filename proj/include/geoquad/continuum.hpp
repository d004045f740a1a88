#pragma once

// Scaling functions of the n -> infinity, i = r n^{1/4} limit.
//
// Every curve is a xi-integral against e^{-xi^2} of a bracket built from
// cosh, cos, sinh, sin at x = r sqrt(3 xi). Near x = 0 the brackets cancel
// catastrophically, so below kSeriesCutoff they are replaced by Taylor
// series whose coefficients come from exact rational series arithmetic.
//
// Tolerances are relative to the integral of |integrand| (the L1 norm the
// quadrature tracks); the reported error is absolute.

#include "geoquad/series.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace geoquad {

class ToleranceNotReached : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Curve { phi, rho, sigma, lambda, lambda_over_sigma, weak_area_correction };

inline std::string curve_name(Curve c) {
    switch (c) {
        case Curve::phi: return "phi";
        case Curve::rho: return "rho";
        case Curve::sigma: return "sigma";
        case Curve::lambda: return "lambda";
        case Curve::lambda_over_sigma: return "ratio";
        case Curve::weak_area_correction: return "theta";
    }
    return "?";
}

inline Curve parse_curve(const std::string& s) {
    for (Curve c : {Curve::phi, Curve::rho, Curve::sigma, Curve::lambda, Curve::lambda_over_sigma,
                    Curve::weak_area_correction})
        if (curve_name(c) == s) return c;
    throw std::invalid_argument("unknown curve: " + s);
}

struct Estimate {
    double value = 0;
    double error = 0;
};

struct ScalingCurve {
    Curve tag = Curve::phi;
    std::vector<double> r, value, error;
};

namespace detail {

using cplx = std::complex<double>;

constexpr double kSeriesCutoff = 1.5;  // in x = r sqrt(3 xi)
constexpr double kFlatCutoff = 60;     // beyond this the brackets sit at their limits
constexpr double kComplexCutoff = 1.0; // in |u| for the complex kernel
constexpr std::size_t kSeriesOrder = 80;

inline TruncatedSeries exp_like(std::size_t K, int parity, int sign_period) {
    // sum of x^k/k! over k of the given parity, signs alternating every
    // second kept term when sign_period is set
    TruncatedSeries s(K);
    Rational f = 1;
    int kept = 0;
    for (std::size_t k = 0; k <= K; ++k) {
        if (k > 0) f /= static_cast<unsigned long>(k);
        if (static_cast<int>(k % 2) != parity) continue;
        s[k] = (sign_period && kept % 2) ? Rational(-f) : f;
        ++kept;
    }
    return s;
}

inline TruncatedSeries shift_down(const TruncatedSeries& s, std::size_t k) {
    for (std::size_t j = 0; j < k; ++j)
        if (sgn(s[j]) != 0) throw std::logic_error("series does not vanish to the expected order");
    TruncatedSeries out(s.order() - k);
    for (std::size_t j = k; j <= s.order(); ++j) out[j - k] = s[j];
    return out;
}

inline TruncatedSeries shift_up(const TruncatedSeries& s, std::size_t k) {
    TruncatedSeries out(s.order());
    for (std::size_t j = 0; j + k <= s.order(); ++j) out[j + k] = s[j];
    return out;
}

inline std::vector<double> to_doubles(const TruncatedSeries& s) {
    std::vector<double> out;
    for (const auto& c : s.coefficients()) out.push_back(c.get_d());
    return out;
}

template <class T>
T horner(const std::vector<double>& c, T x) {
    T acc = 0;
    for (std::size_t k = c.size(); k-- > 0;) acc = acc * x + c[k];
    return acc;
}

/// Taylor coefficients in x of the real brackets.
struct BracketSeries {
    std::vector<double> phi, dphi, sigma, lambda;
};

inline const BracketSeries& bracket_series() {
    static const BracketSeries b = [] {
        const std::size_t K = kSeriesOrder;
        const TruncatedSeries C = exp_like(K, 0, 0), Ct = exp_like(K, 0, 1);
        const TruncatedSeries Sh = exp_like(K, 1, 0), Sn = exp_like(K, 1, 1);
        const auto one = [](std::size_t k) { return TruncatedSeries::constant(k, 1); };
        const TruncatedSeries cc = C * Ct;
        const TruncatedSeries M = shift_down(cc - one(K), 4);  // (c c~ - 1) / x^4
        const TruncatedSeries E = shift_down(C - Ct, 2);       // (c - c~) / x^2
        const std::size_t k = M.order();
        const TruncatedSeries ccx = cc.truncated(k), Ex = E.truncated(k);
        const TruncatedSeries E2 = Ex * Ex, E4 = E2 * E2;

        const TruncatedSeries B = one(k) + Rational(6) * M / E2;
        const TruncatedSeries P =
            shift_up(Rational(8) * pow(M, 3), 4) + Rational(2) * M * (ccx - Rational(4) * one(k)) * E2 - E4;
        const TruncatedSeries S = shift_down(P, 4) / (E4 * E2).truncated(k - 4);
        const TruncatedSeries W = (shift_down(Sh, 1) * shift_down(Sn, 1)).truncated(k);
        const TruncatedSeries Q = shift_up(Rational(36) * pow(M, 3), 4) +
                                  Rational(6) * M * (Rational(2) * ccx - Rational(5) * one(k)) * E2 +
                                  (ccx - Rational(4) * one(k)) * E4;
        const TruncatedSeries L = Rational(81) * (Rational(3) * S + euler_derivative(S)) +
                                  Rational(108) * shift_down(W * Q, 4) / (E4 * E4).truncated(k - 4);
        return BracketSeries{to_doubles(B), to_doubles(derivative(B)), to_doubles(S), to_doubles(L)};
    }();
    return b;
}

struct Hyper {
    double c, ct, s, st, N, D, Np, Dp;
    explicit Hyper(double x)
        : c(std::cosh(x)), ct(std::cos(x)), s(std::sinh(x)), st(std::sin(x)), N(c * ct - 1), D(c - ct),
          Np(s * ct - c * st), Dp(s + st) {}
};

// direct closed forms, exact but cancelling near x = 0
inline double phi_bracket_direct(double x) {
    const Hyper h(x);
    return 1 + 6 * h.N / (h.D * h.D);
}
inline double dphi_bracket_direct(double x) {
    const Hyper h(x);
    return 6 * (h.Np * h.D - 2 * h.N * h.Dp) / (h.D * h.D * h.D);
}
inline double sigma_bracket_direct(double x) {
    const Hyper h(x);
    const double D2 = h.D * h.D, D4 = D2 * D2;
    return 8 * h.N * h.N * h.N / (D4 * D2) + 2 * h.N * (h.N - 3) / D4 - 1 / D2;
}
inline double lambda_bracket_direct(double x) {
    const Hyper h(x);
    const double N = h.N, D = h.D, D2 = D * D, D4 = D2 * D2;
    const double S = 8 * N * N * N / (D4 * D2) + 2 * N * (N - 3) / D4 - 1 / D2;
    const double dS = 24 * N * N * h.Np / (D4 * D2) - 48 * N * N * N * h.Dp / (D4 * D2 * D) +
                      2 * h.Np * (2 * N - 3) / D4 - 8 * N * (N - 3) * h.Dp / (D4 * D) + 2 * h.Dp / (D2 * D);
    const double T = 36 * N * N * N / (D4 * D4) + 6 * N * (2 * N - 3) / (D4 * D2) + (N - 3) / D4;
    return 81 * (3 * S + x * dS) + 108 * x * x * h.s * h.st * T;
}

inline double phi_bracket(double x) {
    if (x < kSeriesCutoff) return horner(bracket_series().phi, x);
    return x > kFlatCutoff ? 1.0 : phi_bracket_direct(x);
}
inline double dphi_bracket(double x) {
    if (x < kSeriesCutoff) return horner(bracket_series().dphi, x);
    return x > kFlatCutoff ? 0.0 : dphi_bracket_direct(x);
}
inline double sigma_bracket(double x) {
    if (x < kSeriesCutoff) return horner(bracket_series().sigma, x);
    return x > kFlatCutoff ? 0.0 : sigma_bracket_direct(x);
}
inline double lambda_bracket(double x) {
    if (x < kSeriesCutoff) return horner(bracket_series().lambda, x);
    return x > kFlatCutoff ? 0.0 : lambda_bracket_direct(x);
}

/// Upper end of the xi range: the weight times a generous polynomial bound
/// on the bracket is below tol/10 beyond it.
inline double xi_cutoff(double tol) {
    double X = 1;
    while (std::exp(-X * X) * std::pow(X, 6) * 1e4 > tol / 10) X += 0.25;
    return X;
}

inline Estimate integrate(const std::function<double(double)>& f, double a, double b, double tol,
                          const char* what) {
    double err = 0, L1 = 0;
    const double v =
        boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 25, tol, &err, &L1);
    if (!std::isfinite(v) || err > tol * std::max(L1, 1e-300))
    {
        char msg[160];
        std::snprintf(msg, sizeof msg, ": quadrature error %.3g above %.3g relative to L1 %.3g", err, tol, L1);
        throw ToleranceNotReached(std::string(what) + msg);
    }
    return {v, err};
}

/// int_0^inf xi^p e^{-xi^2} g(xi) dxi, with the tail bound folded into the error.
inline Estimate xi_integral(int p, const std::function<double(double)>& g, double tol, const char* what) {
    const double X = xi_cutoff(tol);
    auto f = [&](double xi) { return std::pow(xi, p) * std::exp(-xi * xi) * g(xi); };
    Estimate e = integrate(f, 0, X, tol, what);
    e.error += std::exp(-X * X) * std::pow(X, 6) * 1e4 * tol;
    return e;
}

inline void check_args(double r, double tol, bool allow_zero) {
    if (!(tol > 0)) throw std::invalid_argument("tolerance must be positive");
    if (!(allow_zero ? r >= 0 : r > 0) || !std::isfinite(r)) throw std::invalid_argument("r out of range");
}

// Complex kernel for the pair-area correction. With a = sqrt(-3 i xi / 2)
// and u = r a, the xi-derivative of F reduces to G = 3 w(u) / (8 a^3) where
// w(u) = -coth u + u csch^2 u + 2u/3 ~ (4/45) u^3.
struct KernelSeries {
    std::vector<double> ucoth, u2csch2;  // u coth u, u^2 csch^2 u
    std::vector<double> w[4];            // w and its first three derivatives
};

inline const KernelSeries& kernel_series() {
    static const KernelSeries k = [] {
        const std::size_t K = kSeriesOrder;
        const TruncatedSeries C = exp_like(K, 0, 0);
        const TruncatedSeries Sx = shift_down(exp_like(K, 1, 0), 1);  // sinh(u)/u
        const TruncatedSeries uc = C.truncated(K - 1) / Sx;
        const TruncatedSeries uc2 = TruncatedSeries::constant(K - 1, 1) / (Sx * Sx);
        TruncatedSeries wu = uc2 - uc;
        wu[2] += Rational(2, 3);
        KernelSeries out;
        out.ucoth = to_doubles(uc);
        out.u2csch2 = to_doubles(uc2);
        TruncatedSeries w = shift_down(wu, 1);
        for (auto& d : out.w) {
            d = to_doubles(w);
            w = derivative(w);
        }
        return out;
    }();
    return k;
}

/// coth u and csch^2 u for Re u >= 0.
inline std::pair<cplx, cplx> coth_csch2(cplx u) {
    if (std::abs(u) < kComplexCutoff) {
        const auto& ks = kernel_series();
        const cplx u2 = u * u;
        return {horner(ks.ucoth, u) / u, horner(ks.u2csch2, u) / u2};
    }
    const cplx e = std::exp(-2.0 * u);
    return {(1.0 + e) / (1.0 - e), 4.0 * e / ((1.0 - e) * (1.0 - e))};
}

/// k-th u-derivative of w.
inline cplx w_derivative(int k, cplx u) {
    if (std::abs(u) < kComplexCutoff) return horner(kernel_series().w[k], u);
    const auto [q, p] = coth_csch2(u);
    switch (k) {
        case 0: return -q + u * p + 2.0 * u / 3.0;
        case 1: return 2.0 * p - 2.0 * u * p * q + 2.0 / 3.0;
        case 2: return -6.0 * p * q + 4.0 * u * p * q * q + 2.0 * u * p * p;
        default: return 16.0 * p * q * q + 8.0 * p * p - 8.0 * u * p * q * q * q - 16.0 * u * p * p * q;
    }
}

inline cplx kernel_a(double xi) { return std::sqrt(cplx(0, -1.5 * xi)); }

/// d^k/dr^k of G(r, xi), xi > 0.
inline cplx G(int k, double r, double xi) {
    const cplx a = kernel_a(xi);
    return 3.0 * std::pow(a, k) * w_derivative(k, r * a) / (8.0 * a * a * a);
}

/// d^2/dr^2 of F(r, xi) = sqrt(-2 i xi / 3) coth(r a) + i r xi / 3.
inline cplx F2(double r, double xi) {
    const cplx a = kernel_a(xi);
    const auto [q, p] = coth_csch2(r * a);
    return cplx(0, -2 * xi) * a * p * q;
}

/// Im F(r, xi) and its closed real form, for cross-checks of the branch.
inline cplx F(double r, double xi) {
    const cplx a = kernel_a(xi);
    return 2.0 * a / 3.0 * coth_csch2(r * a).first + cplx(0, r * xi / 3);
}
inline double F_imag_real_form(double r, double xi) {
    const Hyper h(r * std::sqrt(3 * xi));
    return r * xi / 3 - std::sqrt(xi / 3) * (h.s - h.st) / h.D;
}

}  // namespace detail

/// Fraction of vertices within distance r n^{1/4} of the origin.
inline Estimate phi(double r, double tol = 1e-8) {
    detail::check_args(r, tol, true);
    if (r == 0) return {0, 0};
    const double k = std::sqrt(3.0) * r;
    auto e = detail::xi_integral(2, [&](double xi) { return detail::phi_bracket(k * std::sqrt(xi)); }, tol, "phi");
    const double pre = 4 / std::sqrt(M_PI);
    return {pre * e.value, pre * e.error};
}

/// Vertex density: the r-derivative of phi, with the bracket differentiated
/// in closed form.
inline Estimate rho(double r, double tol = 1e-8) {
    detail::check_args(r, tol, false);
    const double k = std::sqrt(3.0) * r;
    auto e = detail::xi_integral(
        2, [&](double xi) { return std::sqrt(3 * xi) * detail::dphi_bracket(k * std::sqrt(xi)); }, tol, "rho");
    const double pre = 4 / std::sqrt(M_PI);
    return {pre * e.value, pre * e.error};
}

/// Density of exceptional points (two strongly avoiding geodesics).
inline Estimate sigma(double r, double tol = 1e-8) {
    detail::check_args(r, tol, false);
    const double k = std::sqrt(3.0) * r;
    auto e =
        detail::xi_integral(4, [&](double xi) { return detail::sigma_bracket(k * std::sqrt(xi)); }, tol, "sigma");
    const double pre = 432 / std::sqrt(M_PI);
    return {pre * e.value, pre * e.error};
}

struct LambdaRatio {
    Estimate lambda, ratio;
};

/// lambda and lambda/sigma, the mean product of the two domain fractions of
/// a strong pair.
inline LambdaRatio lambda_ratio(double r, double tol = 1e-8) {
    detail::check_args(r, tol, false);
    const double k = std::sqrt(3.0) * r;
    auto e = detail::xi_integral(0, [&](double xi) { return detail::lambda_bracket(k * std::sqrt(xi)); }, tol,
                                 "lambda");
    const double pre = 1 / std::sqrt(M_PI);
    const Estimate lam{pre * e.value, pre * e.error};
    const Estimate sg = sigma(r, tol);
    const double q = lam.value / sg.value;
    return {lam, {q, (lam.error + std::abs(q) * sg.error) / std::abs(sg.value)}};
}

/// Mean number of contacts of a weak pair, n^{1/4} r / 3.
inline double contact_scaling(double r, double n) {
    if (r < 0 || n < 1) throw std::invalid_argument("contact_scaling needs r >= 0 and n >= 1");
    return std::pow(n, 0.25) * r / 3;
}

/// theta(r) with <omega1 omega2>_r = theta(r) / n^{1/4} for weak pairs.
/// The outer xi-integral wraps an r'-convolution of the kernel G.
inline Estimate weak_area_correction(double r, double tol = 1e-8) {
    detail::check_args(r, tol, false);
    const double inner_tol = tol / 10;
    auto bracket = [&](double xi) {
        if (xi == 0) return 0.0;
        const detail::cplx g0 = detail::G(0, r, xi), g1 = detail::G(1, r, xi), g2 = detail::G(2, r, xi);
        const double local = (2.0 * (g1 * g1 + g0 * g2)).imag();
        auto conv = [&](double s) { return (detail::G(0, s, xi) * detail::G(3, r - s, xi)).imag(); };
        const Estimate c = detail::integrate(conv, 0, r, inner_tol, "theta convolution");
        return local - 2 * c.value;
    };
    const Estimate outer = detail::xi_integral(1, bracket, tol, "theta");
    const Estimate d = rho(r, tol);
    const double pre = 9 * 2 / std::sqrt(M_PI) / d.value;
    const double v = pre * outer.value;
    return {v, std::abs(pre) * outer.error + std::abs(v) * d.error / d.value};
}

/// The two xi-integrals whose ratio gives the mean domain fraction of one
/// side; their ratio is 1/2 by symmetry.
inline std::pair<Estimate, Estimate> domain_symmetry_integrals(double r, double tol = 1e-8) {
    detail::check_args(r, tol, false);
    auto num = detail::xi_integral(1, [&](double xi) { return xi == 0 ? 0.0 : detail::G(2, r, xi).imag(); }, tol,
                                   "symmetry numerator");
    auto den = detail::xi_integral(1, [&](double xi) { return xi == 0 ? 0.0 : 2 * detail::F2(r, xi).imag(); },
                                   tol, "symmetry denominator");
    return {num, den};
}

inline Estimate evaluate(Curve c, double r, double tol) {
    switch (c) {
        case Curve::phi: return phi(r, tol);
        case Curve::rho: return rho(r, tol);
        case Curve::sigma: return sigma(r, tol);
        case Curve::lambda: return lambda_ratio(r, tol).lambda;
        case Curve::lambda_over_sigma: return lambda_ratio(r, tol).ratio;
        case Curve::weak_area_correction: return weak_area_correction(r, tol);
    }
    throw std::invalid_argument("unknown curve");
}

/// Grid r_min, r_min + step, ... <= r_max, split over `threads` workers.
inline ScalingCurve tabulate(Curve c, double r_min, double r_max, double step, double tol, int threads = 1) {
    if (!(step > 0) || r_max < r_min) throw std::invalid_argument("bad grid");
    ScalingCurve out;
    out.tag = c;
    for (int j = 0;; ++j) {
        const double r = r_min + j * step;
        if (r > r_max + step * 1e-9) break;
        out.r.push_back(r);
    }
    const std::size_t n = out.r.size();
    out.value.resize(n);
    out.error.resize(n);
    std::vector<std::exception_ptr> failed(n);
    auto work = [&](std::size_t from, std::size_t stride) {
        for (std::size_t j = from; j < n; j += stride) try {
                const Estimate e = evaluate(c, out.r[j], tol);
                out.value[j] = e.value;
                out.error[j] = e.error;
            } catch (...) {
                failed[j] = std::current_exception();
            }
    };
    const std::size_t T = std::max<std::size_t>(1, std::min<std::size_t>(threads, n));
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < T; ++t) pool.emplace_back(work, t, T);
    work(0, T);
    for (auto& t : pool) t.join();
    for (auto& f : failed)
        if (f) std::rethrow_exception(f);
    return out;
}

}  // namespace geoquad
