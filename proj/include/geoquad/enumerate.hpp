#pragma once

// Exhaustive small-size families, the brute-force side of every exact count.

#include "geoquad/confluent.hpp"
#include "geoquad/labeled_tree.hpp"
#include "geoquad/schaeffer.hpp"

#include <gmpxx.h>

#include <functional>
#include <map>
#include <vector>

namespace geoquad {

/// Every rooted quadrangulation with n faces, through the tree bijection.
inline void for_each_rooted_quadrangulation(int n, const std::function<void(const Quadrangulation&)>& f,
                                            int cap = kDefaultTreeCap) {
    for_each_well_labeled_tree(n, [&](const WellLabeledTree& t) { f(tree_to_quad(t)); }, cap);
}

/// Every (quadrangulation, geodesic of length i) with n faces, each counted
/// once: the geodesic's first step is the root.
inline void for_each_marked_geodesic(int n, int i,
                                     const std::function<void(const Quadrangulation&, const GeodesicPath&)>& f,
                                     int cap = kDefaultTreeCap) {
    for_each_rooted_quadrangulation(
        n,
        [&](const Quadrangulation& q) {
            const auto d = bfs_labels(q.map, q.map.vertex(*q.root));
            for (int v = 0; v < q.map.vertex_count(); ++v) {
                if (d.label[v] != i) continue;
                for (const auto& p : enumerate_geodesics(q.map, d, v))
                    if (p.half_edges[0] == *q.root) f(q, p);
            }
        },
        cap);
}

struct PointedClass {
    PlanarMap map;
    int vertex = 0;
    int automorphisms = 1;
};

/// Pointed quadrangulations with n faces up to isomorphism.
inline std::vector<PointedClass> pointed_classes(int n, int cap = kDefaultTreeCap) {
    std::map<std::vector<int>, PointedClass> seen;
    for_each_rooted_quadrangulation(
        n,
        [&](const Quadrangulation& q) {
            const int v = q.map.vertex(*q.root);
            auto code = pointed_code(q.map, v);
            if (!seen.count(code)) seen.emplace(std::move(code), PointedClass{q.map, v, automorphism_order(q.map, v)});
        },
        cap);
    std::vector<PointedClass> out;
    for (auto& [code, c] : seen) out.push_back(std::move(c));
    return out;
}

/// Sum over pointed classes of 1/|Aut|.
inline mpq_class pointed_weight(int n, int cap = kDefaultTreeCap) {
    mpq_class s = 0;
    for (const auto& c : pointed_classes(n, cap)) s += mpq_class(1, c.automorphisms);
    s.canonicalize();
    return s;
}

struct ExhaustiveCounts {
    mpz_class marked = 0;    // quadrangulations with a marked geodesic
    mpz_class tuples = 0;    // k-tuples in the requested mode
    mpz_class contacts = 0;  // summed over weak pairs (k = 2 only)
};

inline ExhaustiveCounts exhaustive_counts(int n, int i, int k, TupleMode mode, int cap = kDefaultTreeCap) {
    ExhaustiveCounts c;
    for_each_marked_geodesic(
        n, i,
        [&](const Quadrangulation& q, const GeodesicPath& p) {
            ++c.marked;
            c.tuples += count_tuples_on_cut(q.map, p, k, mode);
            if (k == 2) {
                const int target = q.map.head(p.half_edges.back());
                for (const auto& t : enumerate_confluent_tuples(q.map, q.map.vertex(*q.root), target, 2, TupleMode::weak))
                    if (t.paths[0] == p) c.contacts += contact_count(t);
            }
        },
        cap);
    return c;
}

}  // namespace geoquad
