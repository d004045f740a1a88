#pragma once

// Truncated formal power series in g with exact rational coefficients.

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace geoquad {

using Rational = mpq_class;
using Integer = mpz_class;

inline std::string to_string(const Rational& q) { return q.get_str(); }

class SeriesError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Power series truncated modulo g^{order+1}. Every operation is exact in
/// that quotient ring; mixing orders truncates to the smaller one.
class TruncatedSeries {
public:
    TruncatedSeries() = default;
    explicit TruncatedSeries(std::size_t order) : c_(order + 1) {}
    TruncatedSeries(std::size_t order, std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
        c_.resize(order + 1);
    }

    static TruncatedSeries constant(std::size_t order, const Rational& v) {
        TruncatedSeries s(order);
        s.c_[0] = v;
        return s;
    }
    /// The series g (zero when order is 0).
    static TruncatedSeries variable(std::size_t order) {
        TruncatedSeries s(order);
        if (order >= 1) s.c_[1] = 1;
        return s;
    }

    std::size_t order() const { return c_.size() - 1; }
    const Rational& operator[](std::size_t n) const { return c_[n]; }
    Rational& operator[](std::size_t n) { return c_[n]; }
    /// Coefficient of g^n, zero beyond the stored order is NOT implied, so
    /// callers asking past the order get an exception.
    const Rational& coeff(std::size_t n) const {
        if (n >= c_.size()) throw SeriesError("coefficient index beyond truncation order");
        return c_[n];
    }
    const std::vector<Rational>& coefficients() const { return c_; }

    TruncatedSeries truncated(std::size_t order) const {
        TruncatedSeries s(order);
        for (std::size_t n = 0; n <= order && n < c_.size(); ++n) s.c_[n] = c_[n];
        return s;
    }

    TruncatedSeries& operator+=(const TruncatedSeries& o) {
        shrink_to(o.order());
        for (std::size_t n = 0; n < c_.size(); ++n) c_[n] += o.c_[n];
        return *this;
    }
    TruncatedSeries& operator-=(const TruncatedSeries& o) {
        shrink_to(o.order());
        for (std::size_t n = 0; n < c_.size(); ++n) c_[n] -= o.c_[n];
        return *this;
    }
    TruncatedSeries& operator*=(const Rational& k) {
        for (auto& v : c_) v *= k;
        return *this;
    }

    friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
    friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
    friend TruncatedSeries operator*(TruncatedSeries a, const Rational& k) { return a *= k; }
    friend TruncatedSeries operator*(const Rational& k, TruncatedSeries a) { return a *= k; }
    friend TruncatedSeries operator-(TruncatedSeries a) { return a *= Rational(-1); }

    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
        const std::size_t order = std::min(a.order(), b.order());
        TruncatedSeries r(order);
        for (std::size_t i = 0; i <= order; ++i) {
            if (sgn(a.c_[i]) == 0) continue;
            for (std::size_t j = 0; i + j <= order; ++j) {
                if (sgn(b.c_[j]) == 0) continue;
                r.c_[i + j] += a.c_[i] * b.c_[j];
            }
        }
        return r;
    }
    TruncatedSeries& operator*=(const TruncatedSeries& o) { return *this = *this * o; }

    /// a / b; b must have an invertible constant term.
    friend TruncatedSeries operator/(const TruncatedSeries& a, const TruncatedSeries& b) {
        if (sgn(b.c_[0]) == 0) throw SeriesError("division by a series with zero constant term");
        const std::size_t order = std::min(a.order(), b.order());
        TruncatedSeries q(order);
        const Rational inv0 = 1 / b.c_[0];
        for (std::size_t n = 0; n <= order; ++n) {
            Rational acc = a.c_[n];
            for (std::size_t j = 1; j <= n; ++j) {
                if (sgn(b.c_[j]) != 0) acc -= b.c_[j] * q.c_[n - j];
            }
            q.c_[n] = acc * inv0;
        }
        return q;
    }

    friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) { return a.c_ == b.c_; }

private:
    void shrink_to(std::size_t order) {
        if (order < this->order()) c_.resize(order + 1);
    }

    std::vector<Rational> c_{Rational(0)};
};

inline TruncatedSeries pow(const TruncatedSeries& s, unsigned k) {
    TruncatedSeries r = TruncatedSeries::constant(s.order(), 1);
    TruncatedSeries base = s;
    while (k) {
        if (k & 1u) r *= base;
        k >>= 1u;
        if (k) base *= base;
    }
    return r;
}

/// Formal derivative; the top coefficient is lost, so the result has order N-1
/// (order 0 stays order 0 with value 0).
inline TruncatedSeries derivative(const TruncatedSeries& s) {
    if (s.order() == 0) return TruncatedSeries(0);
    TruncatedSeries d(s.order() - 1);
    for (std::size_t n = 1; n <= s.order(); ++n) d[n - 1] = s[n] * static_cast<unsigned long>(n);
    return d;
}

/// g * d/dg, same order.
inline TruncatedSeries euler_derivative(const TruncatedSeries& s) {
    TruncatedSeries d(s.order());
    for (std::size_t n = 1; n <= s.order(); ++n) d[n] = s[n] * static_cast<unsigned long>(n);
    return d;
}

/// log of a series with constant term 1, via log(f) = ∫ f'/f.
inline TruncatedSeries log(const TruncatedSeries& s) {
    if (s[0] != 1) throw SeriesError("log requires constant term 1");
    const std::size_t order = s.order();
    TruncatedSeries out(order);
    if (order == 0) return out;
    // (g f'/f)_n = n * log_n
    TruncatedSeries q = euler_derivative(s) / s;
    for (std::size_t n = 1; n <= order; ++n) out[n] = q[n] / static_cast<unsigned long>(n);
    return out;
}

/// s(h(g)) with h(0) = 0.
inline TruncatedSeries compose(const TruncatedSeries& s, const TruncatedSeries& h) {
    if (sgn(h[0]) != 0) throw SeriesError("substitution requires zero constant term");
    const std::size_t order = std::min(s.order(), h.order());
    TruncatedSeries r(order);
    // Horner from the top.
    for (std::size_t n = order + 1; n-- > 0;) {
        r = r * h.truncated(order);
        r[0] += s[n];
    }
    return r;
}

}  // namespace geoquad
