#pragma once

// Uniform rooted quadrangulations through rejection-sampled well-labeled
// trees, and Monte Carlo averages over them.
//
// Randomness: std::mt19937_64. A run with seed s is cut into blocks of
// kBlockSize samples; block b draws from its own generator seeded with
// splitmix64(s ^ splitmix64(b)). Blocks are handed to workers round robin,
// so results do not depend on the thread count.

#include "geoquad/enumerate.hpp"
#include "geoquad/labeled_tree.hpp"
#include "geoquad/planar_map.hpp"
#include "geoquad/schaeffer.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace geoquad {

class ConfigInvalid : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t block_seed(std::uint64_t seed, std::uint64_t block) { return splitmix64(seed ^ splitmix64(block)); }

/// Uniform well-labeled tree with n edges. The contour word is drawn one
/// step at a time with exact ballot odds (an up step from height h with m
/// steps and u ups left has probability (h+2)u / ((h+1)m)), labels are drawn
/// alongside, and the attempt is dropped at the first label below 1.
/// `attempts`, when given, is increased by the number of labelings tried.
inline WellLabeledTree sample_well_labeled_tree(int n, std::mt19937_64& rng, long* attempts = nullptr) {
    if (n < 0) throw std::invalid_argument("n must be nonnegative");
    std::uniform_int_distribution<int> step(-1, 1);
    std::string word;
    std::vector<int> labels, stack;
    for (;;) {
        word.clear();
        labels.assign(1, 1);
        stack.assign(1, 0);
        bool ok = true;
        for (long m = 2L * n; m > 0; --m) {
            const long h = static_cast<long>(stack.size()) - 1;
            const long u = (m - h) / 2;
            const bool up = std::uniform_int_distribution<long>(0, (h + 1) * m - 1)(rng) < (h + 2) * u;
            if (!up) {
                word.push_back(')');
                stack.pop_back();
                continue;
            }
            const int l = labels[stack.back()] + step(rng);
            if (l < 1) {
                ok = false;
                break;
            }
            word.push_back('(');
            stack.push_back(static_cast<int>(labels.size()));
            labels.push_back(l);
        }
        if (attempts) ++*attempts;
        if (ok) return WellLabeledTree::from_contour(word, std::move(labels));
    }
}

inline Quadrangulation sample_quadrangulation(int n, std::mt19937_64& rng) {
    return tree_to_quad(sample_well_labeled_tree(n, rng));
}

/// Exact running moments of one observable, raw and weighted. Sums are
/// rationals, so merging in any order gives the same result.
struct SampleStats {
    std::string observable;
    int index = 0;  // i, or p for the predecessor law
    long count = 0;
    mpq_class sum = 0, sum2 = 0;
    mpq_class w = 0, wx = 0, wx2 = 0, w2 = 0, w2x = 0, w2x2 = 0;
    bool exact = false;  // exhaustive: no sampling error
    std::vector<std::uint64_t> seeds;  // block seeds that fed it

    void add(const mpq_class& x, const mpq_class& weight) {
        ++count;
        sum += x;
        sum2 += x * x;
        w += weight;
        wx += weight * x;
        wx2 += weight * x * x;
        const mpq_class ww = weight * weight;
        w2 += ww;
        w2x += ww * x;
        w2x2 += ww * x * x;
    }

    void merge(const SampleStats& o) {
        count += o.count;
        sum += o.sum;
        sum2 += o.sum2;
        w += o.w;
        wx += o.wx;
        wx2 += o.wx2;
        w2 += o.w2;
        w2x += o.w2x;
        w2x2 += o.w2x2;
        seeds.insert(seeds.end(), o.seeds.begin(), o.seeds.end());
        std::sort(seeds.begin(), seeds.end());
    }

    mpq_class exact_mean() const { return count ? mpq_class(sum / count) : mpq_class(0); }
    mpq_class exact_weighted_mean() const { return w != 0 ? mpq_class(wx / w) : mpq_class(0); }
    double mean() const { return exact_mean().get_d(); }
    double weighted_mean() const { return exact_weighted_mean().get_d(); }

    double stderr_() const {
        if (exact || count < 2) return 0;
        const mpq_class m = exact_mean();
        const mpq_class var = (sum2 - count * m * m) / (count - 1);
        return std::sqrt(std::max(0.0, var.get_d()) / count);
    }
    /// Ratio-estimator standard error: sqrt(sum w^2 (x - mu)^2) / sum w.
    double weighted_stderr() const {
        if (exact || count < 2 || w == 0) return 0;
        const mpq_class mu = exact_weighted_mean();
        const mpq_class s = w2x2 - 2 * mu * w2x + mu * mu * w2;
        const double c = static_cast<double>(count) / (count - 1);
        return std::sqrt(std::max(0.0, s.get_d()) * c) / w.get_d();
    }

    friend bool operator==(const SampleStats& a, const SampleStats& b) {
        return a.observable == b.observable && a.index == b.index && a.count == b.count && a.sum == b.sum &&
               a.sum2 == b.sum2 && a.w == b.w && a.wx == b.wx && a.wx2 == b.wx2 && a.w2 == b.w2 &&
               a.w2x == b.w2x && a.w2x2 == b.w2x2 && a.seeds == b.seeds;
    }
};

// observables: "g" geodesics of length i from the origin, "v" vertices at
// distance i, "p" share of vertices at distance in [i_min, i_max] with
// exactly p edges one step closer (p = 1..kMaxPredecessors); a double edge
// to the same neighbor is two choices for a geodesic
inline constexpr int kMaxPredecessors = 4;

struct ExperimentConfig {
    int n = 0;
    long samples = 0;
    std::vector<std::string> observables{"g"};
    int i_min = 1, i_max = 1;
    std::uint64_t seed = 1;
    int threads = 1;
    bool exhaustive = false;
    int exhaustive_cap = kDefaultTreeCap;
};

inline constexpr long kBlockSize = 64;

inline void validate(const ExperimentConfig& c) {
    if (c.n < 1) throw ConfigInvalid("n must be at least 1");
    if (c.i_min < 1 || c.i_max < c.i_min) throw ConfigInvalid("bad i-range");
    if (c.threads < 1) throw ConfigInvalid("threads must be at least 1");
    if (c.observables.empty()) throw ConfigInvalid("no observables");
    for (const auto& o : c.observables)
        if (o != "g" && o != "v" && o != "p") throw ConfigInvalid("unknown observable: " + o);
    if (c.exhaustive) {
        if (c.n > c.exhaustive_cap) throw ConfigInvalid("n above the exhaustive cap");
    } else if (c.samples < 1) {
        throw ConfigInvalid("samples must be at least 1");
    }
}

namespace detail {

using StatsTable = std::map<std::pair<std::string, int>, SampleStats>;

inline StatsTable empty_table(const ExperimentConfig& c) {
    StatsTable t;
    for (const auto& o : c.observables) {
        const int lo = o == "p" ? 1 : c.i_min, hi = o == "p" ? kMaxPredecessors : c.i_max;
        for (int j = lo; j <= hi; ++j) {
            SampleStats s;
            s.observable = o;
            s.index = j;
            t.emplace(std::make_pair(o, j), std::move(s));
        }
    }
    return t;
}

/// Adds one rooted map, pointed at the tail of its root.
inline void observe(const ExperimentConfig& c, const Quadrangulation& q, StatsTable& t) {
    const PlanarMap& m = q.map;
    const int o = m.vertex(*q.root);
    const mpq_class weight(1, m.degree(o));
    const DistanceLabeling d = bfs_labels(m, o);
    std::vector<mpz_class> at_distance_g(c.i_max + 1, 0);
    std::vector<long> at_distance_v(c.i_max + 1, 0);
    const bool want_g = t.count({"g", c.i_min}) > 0;
    if (want_g) {
        const auto counts = geodesic_counts(m, d);
        for (int v = 0; v < m.vertex_count(); ++v)
            if (d.label[v] <= c.i_max) at_distance_g[d.label[v]] += counts[v];
    }
    for (int v = 0; v < m.vertex_count(); ++v)
        if (d.label[v] <= c.i_max) ++at_distance_v[d.label[v]];
    std::vector<long> pred(kMaxPredecessors + 1, 0);
    long in_range = 0;
    if (t.count({"p", 1})) {
        for (int v = 0; v < m.vertex_count(); ++v) {
            if (d.label[v] < c.i_min || d.label[v] > c.i_max) continue;
            ++in_range;
            int p = 0;
            for (int h : m.around_vertex(v)) p += d.label[m.head(h)] == d.label[v] - 1;
            if (p <= kMaxPredecessors) ++pred[p];
        }
    }
    for (auto& [key, s] : t) {
        const auto& [obs, j] = key;
        if (obs == "g") s.add(mpq_class(at_distance_g[j]), weight);
        else if (obs == "v") s.add(mpq_class(at_distance_v[j]), weight);
        else s.add(in_range ? mpq_class(pred[j], in_range) : mpq_class(0), weight);
    }
}

}  // namespace detail

inline std::vector<SampleStats> run_experiment(const ExperimentConfig& c) {
    validate(c);
    detail::StatsTable total = detail::empty_table(c);
    if (c.exhaustive) {
        for_each_rooted_quadrangulation(c.n, [&](const Quadrangulation& q) { detail::observe(c, q, total); },
                                        c.exhaustive_cap);
        for (auto& [k, s] : total) s.exact = true;
    } else {
        const long blocks = (c.samples + kBlockSize - 1) / kBlockSize;
        std::vector<detail::StatsTable> per_block(blocks);
        auto work = [&](long from, long stride) {
            for (long b = from; b < blocks; b += stride) {
                detail::StatsTable t = detail::empty_table(c);
                const std::uint64_t s = block_seed(c.seed, static_cast<std::uint64_t>(b));
                std::mt19937_64 rng(s);
                const long todo = std::min(kBlockSize, c.samples - b * kBlockSize);
                for (long j = 0; j < todo; ++j) detail::observe(c, sample_quadrangulation(c.n, rng), t);
                for (auto& [k, st] : t) st.seeds.push_back(s);
                per_block[b] = std::move(t);
            }
        };
        const long T = std::max(1L, std::min<long>(c.threads, blocks));
        std::vector<std::thread> pool;
        for (long t = 1; t < T; ++t) pool.emplace_back(work, t, T);
        work(0, T);
        for (auto& th : pool) th.join();
        for (const auto& t : per_block)
            for (const auto& [k, s] : t) total.at(k).merge(s);
    }
    std::vector<SampleStats> out;
    for (auto& [k, s] : total) out.push_back(std::move(s));
    return out;
}

}  // namespace geoquad
