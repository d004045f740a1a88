#pragma once

// Quadrangulations <-> well-labeled trees, and the geodesic extension:
// unzip a geodesic into a boundary, fill the hole with squares, read a spine
// tree; and back.
//
// Corners. In a map, the corner c(h) is the wedge between sigma^-1(h) and h.
// Walking the tree contour with the face on the right visits corners in
// contour order; a corner's successor is the next corner in that order with
// label one less. Arches at a corner are ordered counterclockwise: incoming
// arches from the nearest source outward, then the outgoing arch.

#include "geoquad/labeled_tree.hpp"
#include "geoquad/planar_map.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace geoquad {

class NotAGeodesic : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class HasPinchPoints : public std::invalid_argument {
public:
    HasPinchPoints(std::vector<int> where)
        : std::invalid_argument("boundary has pinch points"), pinch_points(std::move(where)) {}
    std::vector<int> pinch_points;  // distances
};

namespace detail {

/// Editable rotation system; half-edges removed are marked dead.
struct Surgery {
    std::vector<int> a, s;
    std::vector<char> dead;

    explicit Surgery(const PlanarMap& m)
        : a(m.alpha_vector()), s(m.sigma_vector()), dead(m.half_edges(), 0) {}

    int add_edge() {
        const int x = static_cast<int>(a.size());
        a.push_back(x + 1);
        a.push_back(x);
        s.push_back(x);
        s.push_back(x + 1);
        dead.push_back(0);
        dead.push_back(0);
        return x;
    }
    int sigma_inv(int h) const {
        for (int y = 0; y < static_cast<int>(s.size()); ++y)
            if (!dead[y] && s[y] == h) return y;
        throw std::logic_error("broken rotation");
    }
    /// Puts x into the corner c(h).
    void insert_before(int x, int h) {
        const int p = sigma_inv(h);
        s[p] = x;
        s[x] = h;
    }
    void remove_edge(int x) {
        for (int y : {x, a[x]}) {
            const int p = sigma_inv(y);
            s[p] = s[y] == y ? p : s[y];
            dead[y] = 1;
        }
    }
    /// Live half-edges renumbered in order; returns the map and old->new ids.
    std::pair<PlanarMap, std::vector<int>> finish() const {
        std::vector<int> keep;
        for (int h = 0; h < static_cast<int>(a.size()); ++h)
            if (!dead[h]) keep.push_back(h);
        std::vector<int> renum(a.size(), -1);
        for (std::size_t k = 0; k < keep.size(); ++k) renum[keep[k]] = static_cast<int>(k);
        return {compact_map(keep, [&](int h) { return s[h]; }, [&](int h) { return a[h]; }), renum};
    }
};

/// Contour corners of a tree as (vertex, label), starting at the planted
/// corner, plus the corner arriving at each vertex first.
struct Contour {
    std::vector<int> vertex, label, first_corner;
};

inline Contour contour_corners(const WellLabeledTree& t) {
    Contour c;
    c.first_corner.assign(t.vertices(), -1);
    auto emit = [&](int v) {
        if (c.first_corner[v] < 0) c.first_corner[v] = static_cast<int>(c.vertex.size());
        c.vertex.push_back(v);
        c.label.push_back(t.label[v]);
    };
    auto rec = [&](auto&& self, int v) -> void {
        for (int u : t.children[v]) {
            emit(v);
            self(self, u);
        }
        if (v != 0) emit(v);
    };
    rec(rec, 0);
    return c;
}

}  // namespace detail

/// The Schaeffer construction. Tree vertex v becomes map vertex v + 1 and the
/// new vertex is 0 only in the sense of labels; ids follow half-edge order.
/// Half-edges 2k and 2k+1 are the arch drawn from contour corner k.
inline Quadrangulation tree_to_quad(const WellLabeledTree& t) {
    if (!t.is_well_labeled()) throw std::invalid_argument("tree is not well labeled");
    const int n = t.edges();
    if (n == 0) return build_map({1, 0}, {0, 1}, 0);
    const detail::Contour c = detail::contour_corners(t);
    const int C = 2 * n;
    auto lin = [&](int k) { return (k + C - 1) % C; };  // planted corner last
    std::vector<int> succ(C, -1), by_lin(C);
    for (int k = 0; k < C; ++k) by_lin[lin(k)] = k;
    int maxl = *std::max_element(c.label.begin(), c.label.end());
    std::vector<int> next(maxl + 2, -1);
    for (int p = C - 1; p >= 0; --p) {
        const int k = by_lin[p];
        const int l = c.label[k];
        if (l > 1) succ[k] = next[l - 1];
        next[l] = k;
    }
    std::vector<std::vector<int>> incoming(C);
    for (int p = C - 1; p >= 0; --p) {
        const int k = by_lin[p];
        if (succ[k] >= 0) incoming[succ[k]].push_back(k);  // nearest first
    }
    std::vector<int> alpha(2 * C), sigma(2 * C, -1);
    for (int k = 0; k < C; ++k) {
        alpha[2 * k] = 2 * k + 1;
        alpha[2 * k + 1] = 2 * k;
    }
    std::vector<std::vector<int>> rot(t.vertices());
    for (int k = 0; k < C; ++k) {
        auto& r = rot[c.vertex[k]];
        for (int src : incoming[k]) r.push_back(2 * src + 1);
        r.push_back(2 * k);
    }
    for (const auto& r : rot)
        for (std::size_t j = 0; j < r.size(); ++j) sigma[r[j]] = r[(j + 1) % r.size()];
    std::vector<int> ones;  // in linear order
    for (int p = 0; p < C; ++p)
        if (c.label[by_lin[p]] == 1) ones.push_back(2 * by_lin[p] + 1);
    for (std::size_t j = 0; j < ones.size(); ++j) sigma[ones[j]] = ones[(j + ones.size() - 1) % ones.size()];
    return build_map(std::move(alpha), std::move(sigma), 1);
}

/// The inverse construction: one tree edge per face, planted at the corner
/// holding the root edge.
inline WellLabeledTree quad_to_tree(const Quadrangulation& q) {
    if (!q.root) throw std::invalid_argument("quadrangulation must be rooted");
    const PlanarMap& m = q.map;
    const int h0 = *q.root;
    if (q.is_edge_map()) return WellLabeledTree::from_contour("", {1});
    const DistanceLabeling d = bfs_labels(m, m.vertex(h0));
    auto lab = [&](int h) { return d.label[m.vertex(h)]; };
    const int H = m.half_edges();
    std::vector<char> picked(H, 0);   // edge picked, marked on both halves
    std::vector<int> diag_to(H, -1);  // corner c(h) carries a diagonal to this vertex
    for (int f = 0; f < m.face_count(); ++f) {
        const auto w = m.face_walk(m.face_half_edge(f));
        int lo = lab(w[0]), hi = lab(w[0]);
        for (int h : w) {
            lo = std::min(lo, lab(h));
            hi = std::max(hi, lab(h));
        }
        if (hi - lo == 2) {
            // the edge entering the top vertex along the face walk
            for (int h : w)
                if (d.label[m.head(h)] == hi) picked[h] = picked[m.alpha(h)] = 1;
        } else {
            std::vector<int> tops;
            for (int h : w)
                if (lab(h) == hi) tops.push_back(h);
            diag_to[tops[0]] = m.vertex(tops[1]);
            diag_to[tops[1]] = m.vertex(tops[0]);
        }
    }
    const int root_vertex = m.head(h0);
    const int marker = -1;
    std::vector<std::vector<int>> around(m.vertex_count());
    std::vector<char> done(m.vertex_count(), 0);
    for (int h = 0; h < H; ++h) {
        const int v = m.vertex(h);
        if (done[v]) continue;
        done[v] = 1;
        int x = h;
        do {
            if (picked[x]) around[v].push_back(m.head(x));
            if (x == m.alpha(h0)) around[v].push_back(marker);
            const int nx = m.sigma(x);
            if (diag_to[nx] >= 0) around[v].push_back(diag_to[nx]);
            x = nx;
        } while (x != h);
    }
    WellLabeledTree t;
    auto add = [&](int parent_id, int v) {
        t.parent.push_back(parent_id);
        t.label.push_back(d.label[v]);
        t.children.emplace_back();
        if (parent_id >= 0) t.children[parent_id].push_back(static_cast<int>(t.label.size()) - 1);
        return static_cast<int>(t.label.size()) - 1;
    };
    // children of v start after `from` in counterclockwise order
    auto rec = [&](auto&& self, int v, int id, int from) -> void {
        const auto& r = around[v];
        const auto it = std::find(r.begin(), r.end(), from);
        const std::size_t at = static_cast<std::size_t>(it - r.begin());
        for (std::size_t k = 1; k < r.size(); ++k) {
            const int u = r[(at + k) % r.size()];
            if (u == marker) continue;
            self(self, u, add(id, u), v);
        }
    };
    rec(rec, root_vertex, add(-1, root_vertex), marker);
    return t;
}

/// A quadrangulation of the disk whose boundary face lies to the right of
/// `root`. The face walk from root runs along the left arc (origin to the
/// antipodal vertex) and comes back along the right arc.
struct BoundaryQuad {
    PlanarMap map;
    int root = 0;
    int i = 1;

    std::vector<int> boundary_walk() const { return map.face_walk(root); }
    int origin() const { return map.vertex(root); }
    int interior_faces() const { return map.face_count() - 1; }
    /// Half-edges of the left arc, outward.
    std::vector<int> left_arc() const {
        auto w = boundary_walk();
        return {w.begin(), w.begin() + i};
    }
    /// Half-edges of the right arc, outward.
    std::vector<int> right_arc() const {
        const auto w = boundary_walk();
        std::vector<int> r(i);
        for (int j = 1; j <= i; ++j) r[j - 1] = map.alpha(w[2 * i - j]);
        return r;
    }
    std::vector<int> left_vertices() const { return arc_vertices(left_arc()); }
    std::vector<int> right_vertices() const { return arc_vertices(right_arc()); }
    /// Distances 1..i-1 where the arcs share a vertex; a shared edge shows up
    /// through both of its endpoints.
    std::vector<int> pinch_points() const {
        const auto L = left_vertices(), R = right_vertices();
        std::vector<int> out;
        for (int j = 1; j < i; ++j)
            if (L[j] == R[j]) out.push_back(j);
        return out;
    }
    /// Boundary face of length 2i, both arcs geodesic in the whole map and
    /// inner faces of degree 4.
    bool is_valid() const {
        if (map.face_degree(map.face(root)) != 2 * i) return false;
        for (int f = 0; f < map.face_count(); ++f)
            if (f != map.face(root) && map.face_degree(f) != 4) return false;
        const auto d = bfs_labels(map, origin());
        const auto L = left_vertices(), R = right_vertices();
        for (int j = 0; j <= i; ++j)
            if (d.label[L[j]] != j || d.label[R[j]] != j) return false;
        return true;
    }
    /// The bare edge that stands for a doubled single edge.
    bool is_single_edge() const { return map.half_edges() == 2; }

private:
    std::vector<int> arc_vertices(const std::vector<int>& arc) const {
        std::vector<int> v{map.vertex(arc[0])};
        for (int h : arc) v.push_back(map.head(h));
        return v;
    }
};

struct MarkedGeodesic {
    Quadrangulation quad;  // rooted at the first step of the path
    GeodesicPath path;
};

/// Cuts the sphere along p. The original half-edges of p stay on the left
/// arc; the right arc is new. A bare edge stays a bare edge.
inline BoundaryQuad unzip(const PlanarMap& m, const GeodesicPath& p) {
    if (p.length() < 1) throw NotAGeodesic("geodesic must have length at least 1");
    const int o = m.vertex(p.half_edges[0]);
    if (!is_geodesic(m, bfs_labels(m, o), p)) throw NotAGeodesic("path is not a geodesic from its start");
    const int i = p.length();
    if (m.half_edges() == 2) return {m, p.half_edges[0], 1};
    const int H = m.half_edges();
    std::vector<int> a = m.alpha_vector(), s = m.sigma_vector();
    a.resize(H + 2 * i);
    s.resize(H + 2 * i);
    auto g = [&](int j) { return H + 2 * (j - 1); };       // at v_{j-1}
    auto gp = [&](int j) { return H + 2 * (j - 1) + 1; };  // at v_j
    for (int j = 1; j <= i; ++j) {
        a[g(j)] = gp(j);
        a[gp(j)] = g(j);
    }
    auto e = [&](int j) { return p.half_edges[j - 1]; };
    {  // origin
        const int prev = m.sigma_inv(e(1));
        s[prev] = g(1);
        s[g(1)] = e(1);
    }
    for (int j = 1; j < i; ++j) {
        const int in = m.alpha(e(j)), out = e(j + 1);
        const int first_right = m.sigma(in), last_right = m.sigma_inv(out);
        s[in] = out;
        s[gp(j)] = first_right == out ? g(j + 1) : first_right;
        if (last_right != in) s[last_right] = g(j + 1);
        s[g(j + 1)] = gp(j);
    }
    {  // target
        const int in = m.alpha(e(i));
        const int nxt = m.sigma(in);
        s[in] = gp(i);
        s[gp(i)] = nxt == in ? in : nxt;
    }
    return {PlanarMap(std::move(a), std::move(s)), e(1), i};
}

/// Inverse of unzip on pinch-free boundaries.
inline MarkedGeodesic zip_boundary(const BoundaryQuad& b) {
    const int i = b.i;
    if (b.is_single_edge()) return {build_map({1, 0}, {0, 1}, 0), {{0}}};
    if (const auto pp = b.pinch_points(); !pp.empty()) throw HasPinchPoints(pp);
    const PlanarMap& m = b.map;
    const auto L = b.left_arc(), R = b.right_arc();  // R[j-1] = g_j, alpha = g'_j
    const int H = m.half_edges();
    std::vector<int> sub(H, -1);
    std::vector<char> gone(H, 0);
    for (int j = 1; j <= i; ++j) {
        sub[R[j - 1]] = L[j - 1];
        sub[m.alpha(R[j - 1])] = m.alpha(L[j - 1]);
        gone[R[j - 1]] = gone[m.alpha(R[j - 1])] = 1;
    }
    auto subst = [&](int h) { return sub[h] >= 0 ? sub[h] : h; };
    std::vector<int> over(H, -1);
    for (int j = 1; j <= i; ++j) over[m.alpha(L[j - 1])] = m.alpha(R[j - 1]);
    std::vector<int> keep;
    for (int h = 0; h < H; ++h)
        if (!gone[h]) keep.push_back(h);
    auto sig = [&](int h) { return subst(m.sigma(over[h] >= 0 ? over[h] : h)); };
    PlanarMap z = compact_map(keep, sig, [&](int h) { return m.alpha(h); });
    std::vector<int> renum(H, -1);
    for (std::size_t k = 0; k < keep.size(); ++k) renum[keep[k]] = static_cast<int>(k);
    GeodesicPath path;
    for (int h : L) path.half_edges.push_back(renum[h]);
    Quadrangulation q = build_map(z.alpha_vector(), z.sigma_vector(), path.half_edges[0]);
    return {std::move(q), std::move(path)};
}

namespace detail {

/// Fills the boundary face with i-2 chords from the right vertex at distance
/// k to the left vertex at distance k+1, leaving i-1 squares. Returns the
/// filled map, rooted at the first left edge, and the chord ids.
inline std::pair<Quadrangulation, std::vector<int>> fill(const BoundaryQuad& b) {
    const int i = b.i;
    Surgery s(b.map);
    const auto w = b.boundary_walk();
    std::vector<int> chords;
    for (int k = 1; k <= i - 2; ++k) {
        const int x = s.add_edge();
        s.insert_before(x, w[k + 1]);              // corner at L_{k+1}
        s.insert_before(x + 1, w[2 * i - k]);      // corner at R_k
        chords.push_back(x);
    }
    auto [m, renum] = s.finish();
    for (int& c : chords) c = renum[c];
    return {build_map(m.alpha_vector(), m.sigma_vector(), renum[b.root]), chords};
}

}  // namespace detail

/// Bijection I backwards: fill, root at the first left edge, read the tree.
inline SpineTree boundary_to_spine_tree(const BoundaryQuad& b) {
    if (b.i == 1) {
        const MarkedGeodesic z = zip_boundary(b);
        return {quad_to_tree(z.quad), 1};
    }
    const auto filled = detail::fill(b);
    SpineTree s{quad_to_tree(filled.first), b.i};
    if (!is_spine_tree(s.tree, b.i)) throw std::logic_error("filled boundary did not give a spine tree");
    return s;
}

/// Cut along p, fill the hole with squares, read the tree.
inline SpineTree unzip_to_spine_tree(const PlanarMap& m, const GeodesicPath& p) {
    return boundary_to_spine_tree(unzip(m, p));
}

/// Bijection I: the Schaeffer construction on the spine tree with the arches
/// from the right-side corners of the inner spine vertices left out.
inline BoundaryQuad spine_tree_to_boundary(const SpineTree& st) {
    if (!is_spine_tree(st.tree, st.i)) throw std::invalid_argument("not a spine tree");
    const Quadrangulation q = tree_to_quad(st.tree);
    if (st.i == 1) return unzip(q.map, {{*q.root}});
    const detail::Contour c = detail::contour_corners(st.tree);
    const auto spine = st.spine();
    detail::Surgery s(q.map);
    for (int j = 1; j + 1 < st.i; ++j) s.remove_edge(2 * c.first_corner[spine[j]]);
    auto [m, renum] = s.finish();
    return {std::move(m), renum[*q.root], st.i};
}

/// Splits the boundary at its pinch points into pieces that are pinch-free
/// or a single edge, in order from the origin.
inline std::vector<BoundaryQuad> decompose_irreducible(const BoundaryQuad& b) {
    const auto pinches = b.pinch_points();
    if (pinches.empty()) return {b};
    const PlanarMap& m = b.map;
    const auto L = b.left_arc(), R = b.right_arc();
    std::vector<int> s = m.sigma_vector();
    for (int j : pinches) {
        // around the pinch: in_L -> out_L .. out_R -> in_R .. in_L
        s[R[j]] = L[j];
        s[m.alpha(L[j - 1])] = m.alpha(R[j - 1]);
    }
    std::vector<int> cuts{0};
    cuts.insert(cuts.end(), pinches.begin(), pinches.end());
    cuts.push_back(b.i);
    std::vector<int> comp(m.half_edges(), -1);
    std::vector<BoundaryQuad> out;
    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
        const int start = L[cuts[c]];
        std::vector<int> keep{start};
        comp[start] = static_cast<int>(c);
        for (std::size_t k = 0; k < keep.size(); ++k)
            for (int y : {s[keep[k]], m.alpha(keep[k])})
                if (comp[y] < 0) {
                    comp[y] = static_cast<int>(c);
                    keep.push_back(y);
                }
        std::sort(keep.begin(), keep.end());
        PlanarMap piece = compact_map(keep, [&](int h) { return s[h]; }, [&](int h) { return m.alpha(h); });
        const int root = static_cast<int>(std::lower_bound(keep.begin(), keep.end(), start) - keep.begin());
        out.push_back({std::move(piece), root, cuts[c + 1] - cuts[c]});
    }
    return out;
}

/// Glues pieces end to start; inverse of decompose_irreducible.
inline BoundaryQuad concatenate(const std::vector<BoundaryQuad>& parts) {
    if (parts.empty()) throw std::invalid_argument("nothing to concatenate");
    std::vector<int> a, s, offset;
    int total = 0;
    for (const auto& p : parts) {
        offset.push_back(static_cast<int>(a.size()));
        for (int h = 0; h < p.map.half_edges(); ++h) {
            a.push_back(p.map.alpha(h) + offset.back());
            s.push_back(p.map.sigma(h) + offset.back());
        }
        total += p.i;
    }
    for (std::size_t t = 0; t + 1 < parts.size(); ++t) {
        const auto& P = parts[t];
        const auto& N = parts[t + 1];
        const int in_l = P.map.alpha(P.left_arc().back()) + offset[t];
        const int out_r = P.map.alpha(P.right_arc().back()) + offset[t];  // g' at the target
        const int out_l = N.left_arc().front() + offset[t + 1];
        const int in_r = N.right_arc().front() + offset[t + 1];            // g at the origin
        s[in_l] = out_l;
        s[in_r] = out_r;
    }
    return {PlanarMap(std::move(a), std::move(s)), parts[0].root, total};
}

}  // namespace geoquad
