#pragma once

// Tuples of geodesics sharing both endpoints.
//
// A tuple is read off the disk obtained by cutting the sphere along its first
// path p1: the other paths are geodesics of that disk, listed from the left
// copy of p1 to the right copy, each weakly to the left of the previous one.
// A path equal to p1 therefore appears twice (once per copy), which is the
// count the boundary series give. Strong tuples also require consecutive
// paths, boundary copies included, to share no inner vertex.

#include "geoquad/families.hpp"
#include "geoquad/schaeffer.hpp"

#include <gmpxx.h>

#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

namespace geoquad {

class ModeUnsupported : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class PathsCross : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The disk cut along p1, with its geodesics sorted left of the left copy
/// first. Strand ids index `geodesics`.
struct CutDisk {
    int sphere_half_edges = 0;
    GeodesicPath cut;  // p1 on the sphere
    BoundaryQuad disk;
    std::vector<GeodesicPath> geodesics;  // disk half-edges
    std::vector<std::vector<int>> vertices;
    int left = -1, right = -1;  // strands of the two copies of p1

    int length() const { return cut.length(); }

    /// Sphere half-edge for a disk half-edge.
    int to_sphere(int h) const {
        if (h < sphere_half_edges) return h;
        const int j = (h - sphere_half_edges) / 2;
        const int e = cut.half_edges[j];
        return (h - sphere_half_edges) % 2 ? disk.map.alpha(e) : e;
    }
    GeodesicPath sphere_path(int strand) const {
        GeodesicPath p;
        for (int h : geodesics[strand].half_edges) p.half_edges.push_back(to_sphere(h));
        return p;
    }

    /// b weakly left of a: at the origin by counterclockwise position from
    /// the left copy, at each shared inner vertex inside a's closed left
    /// sector.
    bool left_of(int a, int b) const {
        const auto& P = geodesics[a].half_edges;
        const auto& Q = geodesics[b].half_edges;
        if (origin_pos_[Q[0]] < origin_pos_[P[0]]) return false;
        const PlanarMap& m = disk.map;
        for (int j = 1; j < length(); ++j) {
            if (vertices[a][j] != vertices[b][j]) continue;
            const int in = m.alpha(P[j - 1]), out = P[j];
            for (int x : {m.alpha(Q[j - 1]), Q[j]}) {
                if (x == in || x == out) continue;
                bool inside = false;
                for (int y = m.sigma(out); y != in; y = m.sigma(y))
                    if (y == x) {
                        inside = true;
                        break;
                    }
                if (!inside) return false;
            }
        }
        return true;
    }

    bool inner_disjoint(int a, int b) const {
        for (int j = 1; j < length(); ++j)
            if (vertices[a][j] == vertices[b][j]) return false;
        return true;
    }

    static CutDisk make(const PlanarMap& m, const GeodesicPath& p1) {
        CutDisk c;
        c.sphere_half_edges = m.half_edges();
        c.cut = p1;
        c.disk = unzip(m, p1);
        const PlanarMap& dm = c.disk.map;
        const int o = c.disk.origin();
        const int t = dm.head(c.disk.left_arc().back());
        c.geodesics = enumerate_geodesics(dm, bfs_labels(dm, o), t);
        c.origin_pos_.assign(dm.half_edges(), -1);
        const auto ring = dm.around_vertex(o, c.disk.root);
        for (std::size_t k = 0; k < ring.size(); ++k) c.origin_pos_[ring[k]] = static_cast<int>(k);
        for (const auto& g : c.geodesics) c.vertices.push_back(path_vertices(dm, g, o));
        const auto L = c.disk.left_arc(), R = c.disk.right_arc();
        for (int s = 0; s < static_cast<int>(c.geodesics.size()); ++s) {
            if (c.geodesics[s].half_edges == L) c.left = s;
            if (c.geodesics[s].half_edges == R) c.right = s;
        }
        // bare edge: both copies are the one edge
        if (c.right < 0) c.right = c.left;
        return c;
    }

private:
    std::vector<int> origin_pos_;
};

struct ConfluentTuple {
    int k = 1;
    TupleMode mode = TupleMode::weak;
    std::vector<GeodesicPath> paths;      // on the sphere, first = cut path
    std::shared_ptr<const CutDisk> disk;  // shared by all tuples with this first path
    std::vector<int> strands;             // paths 2..k as geodesics of the disk
};

namespace detail {

inline void check_k(int k) {
    if (k < 1) throw ModeUnsupported("k must be at least 1");
}

/// Calls f on every admissible chain of k-1 strands.
template <class F>
void for_each_chain(const CutDisk& c, int k, TupleMode mode, F&& f) {
    const int S = static_cast<int>(c.geodesics.size());
    std::vector<int> chain;
    auto fits = [&](int prev, int s) {
        if (!c.left_of(prev, s)) return false;
        return mode == TupleMode::weak || c.inner_disjoint(prev, s);
    };
    auto rec = [&](auto&& self, int prev) -> void {
        if (static_cast<int>(chain.size()) == k - 1) {
            if (fits(prev, c.right)) f(chain);
            return;
        }
        for (int s = 0; s < S; ++s)
            if (fits(prev, s)) {
                chain.push_back(s);
                self(self, s);
                chain.pop_back();
            }
    };
    rec(rec, c.left);
}

}  // namespace detail

/// All k-tuples from origin to target. For k = 1 these are the geodesics.
inline std::vector<ConfluentTuple> enumerate_confluent_tuples(const PlanarMap& m, int origin, int target, int k,
                                                              TupleMode mode) {
    detail::check_k(k);
    const DistanceLabeling d = bfs_labels(m, origin);
    if (target == origin) throw std::invalid_argument("target must differ from origin");
    std::vector<ConfluentTuple> out;
    for (const auto& p1 : enumerate_geodesics(m, d, target)) {
        if (k == 1) {
            out.push_back({1, mode, {p1}, nullptr, {}});
            continue;
        }
        auto c = std::make_shared<const CutDisk>(CutDisk::make(m, p1));
        detail::for_each_chain(*c, k, mode, [&](const std::vector<int>& chain) {
            ConfluentTuple t{k, mode, {p1}, c, chain};
            for (int s : chain) t.paths.push_back(c->sphere_path(s));
            out.push_back(std::move(t));
        });
    }
    return out;
}

/// Number of admissible chains in the disk cut along p1.
inline mpz_class count_tuples_on_cut(const PlanarMap& m, const GeodesicPath& p1, int k, TupleMode mode) {
    detail::check_k(k);
    if (k == 1) return 1;
    const CutDisk c = CutDisk::make(m, p1);
    const int S = static_cast<int>(c.geodesics.size());
    auto fits = [&](int a, int b) { return c.left_of(a, b) && (mode == TupleMode::weak || c.inner_disjoint(a, b)); };
    // ways[s] = chains of the current length ending at s
    std::vector<mpz_class> ways(S, 0);
    for (int s = 0; s < S; ++s)
        if (fits(c.left, s)) ways[s] = 1;
    for (int len = 2; len <= k - 1; ++len) {
        std::vector<mpz_class> nxt(S, 0);
        for (int a = 0; a < S; ++a)
            if (ways[a] != 0)
                for (int b = 0; b < S; ++b)
                    if (fits(a, b)) nxt[b] += ways[a];
        ways = std::move(nxt);
    }
    mpz_class total = 0;
    for (int s = 0; s < S; ++s)
        if (fits(s, c.right)) total += ways[s];
    return total;
}

/// Inner vertices shared by the two paths of a pair.
inline int contact_count(const ConfluentTuple& t) {
    if (t.k != 2 || !t.disk) throw std::invalid_argument("contact count needs a pair");
    const CutDisk& c = *t.disk;
    const int s = t.strands[0];
    int n = 0;
    for (int j = 1; j < c.length(); ++j)
        if (c.vertices[s][j] == c.vertices[c.left][j] || c.vertices[s][j] == c.vertices[c.right][j]) ++n;
    return n;
}

/// Faces between the first path and the second (n1) and between the second
/// and the first again (n2), reading the first path's left copy as the start.
inline std::pair<int, int> domain_areas(const ConfluentTuple& t) {
    if (t.k != 2 || !t.disk) throw std::invalid_argument("domain areas need a pair");
    const CutDisk& c = *t.disk;
    const PlanarMap& m = c.disk.map;
    if (c.disk.is_single_edge()) return {0, 0};
    const int outer = m.face(c.disk.root);
    const auto& wall = c.geodesics[t.strands[0]].half_edges;
    std::vector<char> is_wall(m.half_edges(), 0);
    for (int h : wall) is_wall[h] = is_wall[m.alpha(h)] = 1;
    std::vector<int> side(m.face_count(), -1);  // 0: right of the strand, 1: left
    std::vector<int> stack;
    auto seed = [&](int f, int sd) {
        if (f == outer) return;
        if (side[f] == -1) {
            side[f] = sd;
            stack.push_back(f);
        } else if (side[f] != sd) {
            throw PathsCross("a face lies on both sides of the second path");
        }
    };
    for (int h : wall) {
        seed(m.face(h), 0);
        seed(m.face(m.alpha(h)), 1);
    }
    std::vector<std::vector<int>> across(m.face_count());
    for (int h = 0; h < m.half_edges(); ++h)
        if (!is_wall[h]) across[m.face(h)].push_back(m.face(m.alpha(h)));
    while (!stack.empty()) {
        const int f = stack.back();
        stack.pop_back();
        for (int g : across[f]) seed(g, side[f]);
    }
    int n1 = 0, n2 = 0;
    for (int f = 0; f < m.face_count(); ++f) {
        if (f == outer) continue;
        if (side[f] == 0) ++n1;
        else if (side[f] == 1) ++n2;
        else throw std::logic_error("face not reached from the second path");
    }
    return {n1, n2};
}

/// Pair (p1, p2) on the sphere as a tuple; p2 equal to p1 is read on the
/// left copy.
inline ConfluentTuple make_pair_tuple(const PlanarMap& m, const GeodesicPath& p1, const GeodesicPath& p2) {
    if (p1.length() != p2.length() || p1.length() == 0) throw std::invalid_argument("paths must share length");
    auto c = std::make_shared<const CutDisk>(CutDisk::make(m, p1));
    if (m.head(p1.half_edges.back()) != m.head(p2.half_edges.back()) ||
        m.vertex(p1.half_edges[0]) != m.vertex(p2.half_edges[0]))
        throw std::invalid_argument("paths must share both endpoints");
    for (int s = 0; s < static_cast<int>(c->geodesics.size()); ++s)
        if (c->sphere_path(s) == p2) {
            const int pick = p2 == p1 ? c->left : s;
            return {2, TupleMode::weak, {p1, p2}, c, {pick}};
        }
    throw PathsCross("second path crosses the first");
}

}  // namespace geoquad
