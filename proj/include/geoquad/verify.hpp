#pragma once

// Cross-module oracle suite: bijection round trips, series coefficients
// against brute-force enumeration, and quadrature limit checks.

#include "geoquad/continuum.hpp"
#include "geoquad/enumerate.hpp"
#include "geoquad/families.hpp"

#include <cmath>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace geoquad {

struct CheckResult {
    std::string name;
    bool ok = false;
    std::string detail;
};

namespace detail {

inline std::string got_want(const mpq_class& got, const mpq_class& want) {
    return "got " + got.get_str() + " want " + want.get_str();
}

inline std::string got_want(double got, double want) {
    std::ostringstream s;
    s.precision(12);
    s << "got " << got << " want " << want;
    return s.str();
}

/// 2 3^n (2n)! / (n! (n+2)!)
inline mpz_class rooted_quadrangulations(unsigned n) {
    mpz_class c, p;
    mpz_bin_uiui(c.get_mpz_t(), 2 * n, n);
    mpz_ui_pow_ui(p.get_mpz_t(), 3, n);
    return 2 * p * c / ((n + 1) * (n + 2));
}

}  // namespace detail

/// Runs every oracle with n <= n_max faces and geodesic length i <= i_max.
/// Round trips and pointed sums go one size further. A check that throws is
/// reported as failed with the message.
inline std::vector<CheckResult> run_oracle_suite(int n_max, int i_max) {
    if (n_max < 0 || i_max < 1) throw std::invalid_argument("need n_max >= 0 and i_max >= 1");
    std::vector<CheckResult> out;
    auto run = [&](std::string name, const std::function<CheckResult()>& f) {
        CheckResult r;
        try {
            r = f();
        } catch (const std::exception& e) {
            r.ok = false;
            r.detail = std::string("threw: ") + e.what();
        }
        r.name = std::move(name);
        out.push_back(std::move(r));
    };
    const std::size_t N = n_max;

    for (int n = 0; n <= n_max + 1; ++n) {
        run("tree_round_trip/n=" + std::to_string(n), [&] {
            long trees = 0, bad = 0;
            std::set<std::vector<int>> codes;
            for_each_well_labeled_tree(n, [&](const WellLabeledTree& t) {
                ++trees;
                const Quadrangulation q = tree_to_quad(t);
                codes.insert(rooted_code(q.map, *q.root));
                bad += !(quad_to_tree(q) == t);
            });
            const mpz_class want = detail::rooted_quadrangulations(n);
            const bool ok = bad == 0 && mpz_class(trees) == want && mpz_class(codes.size()) == want;
            return CheckResult{"", ok, std::to_string(trees) + " trees, " + std::to_string(codes.size()) +
                                           " distinct maps, " + std::to_string(bad) + " failed, want " + want.get_str()};
        });
    }

    for (int n = 1; n <= n_max + 1; ++n)
        run("pointed_sum/n=" + std::to_string(n), [&] {
            const mpq_class got = pointed_weight(n), want = pointed_partition(n);
            return CheckResult{"", got == want, detail::got_want(got, want)};
        });

    for (int i = 1; i <= i_max; ++i) {
        const auto z = series_Z(i, N);
        const auto u = series_U(i, N);
        for (int n = 0; n <= n_max; ++n) {
            const std::string at = "/i=" + std::to_string(i) + ",n=" + std::to_string(n);
            run("boundary_count" + at, [&] {
                long all = 0, pinch_free = 0, bad = 0;
                for (const auto& s : enumerate_spine_trees(i, n)) {
                    ++all;
                    const auto b = spine_tree_to_boundary(s);
                    pinch_free += b.pinch_points().empty();
                    bad += !(boundary_to_spine_tree(b) == s);
                }
                const bool ok = bad == 0 && z[n] == all && u[n] == pinch_free;
                return CheckResult{"", ok,
                                   "boundaries " + std::to_string(all) + " want " + z[n].get_str() + ", pinch-free " +
                                       std::to_string(pinch_free) + " want " + u[n].get_str() + ", " +
                                       std::to_string(bad) + " failed round trips"};
            });
            run("marked_geodesics" + at, [&] {
                long marked = 0, bad = 0;
                for_each_marked_geodesic(n, i, [&](const Quadrangulation& q, const GeodesicPath& p) {
                    ++marked;
                    const auto zq = zip_boundary(spine_tree_to_boundary(unzip_to_spine_tree(q.map, p)));
                    bad += rooted_code(zq.quad.map, *zq.quad.root) != rooted_code(q.map, *q.root);
                });
                return CheckResult{"", bad == 0 && u[n] == marked,
                                   "got " + std::to_string(marked) + " want " + u[n].get_str() + ", " +
                                       std::to_string(bad) + " failed unzip/zip"};
            });
            for (auto mode : {TupleMode::weak, TupleMode::strong}) {
                const auto s = series_U_k(i, 2, N, mode);
                const std::string tag = mode == TupleMode::weak ? "weak_pairs" : "strong_pairs";
                const auto counts = exhaustive_counts(n, i, 2, mode);
                run(tag + at, [&] {
                    const mpq_class got(counts.tuples);
                    return CheckResult{"", got == s[n], detail::got_want(got, s[n])};
                });
                if (mode == TupleMode::weak)
                    run("contacts" + at, [&] {
                        const auto pinch = series_pinch_table(i, solve_base(N));
                        const mpq_class got(counts.contacts);
                        return CheckResult{"", got == pinch.U2pp[i][n], detail::got_want(got, pinch.U2pp[i][n])};
                    });
            }
        }
    }

    const double tol = 1e-8;
    auto near = [](double got, double want, double abs_err) {
        return CheckResult{"", std::abs(got - want) <= abs_err, detail::got_want(got, want)};
    };
    run("phi_at_eight", [&] { return near(phi(8, tol).value, 1, 1e-6); });
    run("rho_small_r", [&] { return near(rho(0.1, tol).value / (3.0 / 7 * 1e-3), 1, 0.05); });
    run("rho_integrates_phi", [&] {
        auto f = [&](double r) { return rho(r, tol).value; };
        const double d = phi(0.3, tol).value - phi(0.1, tol).value;
        return near(detail::integrate(f, 0.1, 0.3, 1e-10, "rho").value, d, 1e-8);
    });
    for (double r : {0.5, 1.0, 2.0})
        run("rho_from_kernel/r=" + std::to_string(r).substr(0, 3), [&] {
            const auto den = domain_symmetry_integrals(r, tol).second;
            return near(9 * den.value, 1.5 * std::sqrt(std::numbers::pi) * rho(r, tol).value, 1e-7);
        });
    run("sigma_small_r", [&] { return near(sigma(0.02, tol).value, 12.0 / 7, 12.0 / 7 * 0.01); });
    run("lambda_small_r", [&] {
        const double r = 0.05;
        const auto l = lambda_ratio(r, tol);
        CheckResult a = near(l.lambda.value / (9.0 / 35 * std::pow(r, 4)), 1, 0.05);
        const CheckResult b = near(l.ratio.value / (3.0 / 20 * std::pow(r, 4)), 1, 0.05);
        a.ok = a.ok && b.ok;
        a.detail = "lambda " + a.detail + ", ratio " + b.detail;
        return a;
    });
    run("ratio_below_a_quarter", [&] {
        const auto l = lambda_ratio(4, tol);
        return CheckResult{"", l.ratio.value <= 0.25 + l.ratio.error && l.ratio.value >= 0.225,
                           detail::got_want(l.ratio.value, 0.25)};
    });
    run("theta_small_r", [&] {
        const double r = 0.05;
        return near(weak_area_correction(r, tol).value / (0.27 * r * r * r), 1, 0.05);
    });
    run("domain_symmetry", [&] {
        const auto [num, den] = domain_symmetry_integrals(1.0, tol);
        return near(num.value / den.value, 0.5, 1e-8);
    });
    return out;
}

}  // namespace geoquad
