#pragma once

// Maps on the sphere as rotation systems.
//
// Half-edges are 0..H-1. alpha pairs the two halves of an edge; sigma(h) is
// the next half-edge counterclockwise around the tail vertex of h. Faces are
// the orbits of phi = sigma o alpha; with this convention each half-edge has
// its face on its right, so a face orbit runs clockwise around the face.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <deque>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace geoquad {

enum class MapErrorKind { NotPermutation, NotInvolution, Disconnected, NonPlanar, FaceDegreeNot4, NotBipartite };

inline const char* to_string(MapErrorKind k) {
    switch (k) {
        case MapErrorKind::NotPermutation: return "NotPermutation";
        case MapErrorKind::NotInvolution: return "NotInvolution";
        case MapErrorKind::Disconnected: return "Disconnected";
        case MapErrorKind::NonPlanar: return "NonPlanar";
        case MapErrorKind::FaceDegreeNot4: return "FaceDegreeNot4";
        case MapErrorKind::NotBipartite: return "NotBipartite";
    }
    return "?";
}

class MapError : public std::runtime_error {
public:
    MapError(MapErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
    MapErrorKind kind() const { return kind_; }

private:
    MapErrorKind kind_;
};

class PlanarMap {
public:
    PlanarMap() = default;

    /// Validates the permutations and checks connectivity and genus 0.
    PlanarMap(std::vector<int> alpha, std::vector<int> sigma) : alpha_(std::move(alpha)), sigma_(std::move(sigma)) {
        const int H = static_cast<int>(alpha_.size());
        if (static_cast<int>(sigma_.size()) != H) throw MapError(MapErrorKind::NotPermutation, "size mismatch");
        if (H == 0 || H % 2) throw MapError(MapErrorKind::NotInvolution, "odd or empty half-edge set");
        sigma_inv_.assign(H, -1);
        for (int h = 0; h < H; ++h) {
            const int a = alpha_[h], s = sigma_[h];
            if (a < 0 || a >= H || s < 0 || s >= H || sigma_inv_[s] != -1)
                throw MapError(MapErrorKind::NotPermutation, "sigma or alpha out of range or repeated");
            sigma_inv_[s] = h;
        }
        for (int h = 0; h < H; ++h)
            if (alpha_[h] == h || alpha_[alpha_[h]] != h)
                throw MapError(MapErrorKind::NotInvolution, "alpha is not a fixed-point-free involution");
        vertex_ = orbits([this](int h) { return sigma_[h]; }, vertex_count_);
        face_ = orbits([this](int h) { return sigma_[alpha_[h]]; }, face_count_);
        face_degree_.assign(face_count_, 0);
        for (int h = 0; h < H; ++h) ++face_degree_[face_[h]];
        vertex_first_.assign(vertex_count_, -1);
        face_first_.assign(face_count_, -1);
        for (int h = H; h-- > 0;) {
            vertex_first_[vertex_[h]] = h;
            face_first_[face_[h]] = h;
        }
        if (!connected()) throw MapError(MapErrorKind::Disconnected, "map is not connected");
        if (vertex_count_ - edge_count() + face_count_ != 2)
            throw MapError(MapErrorKind::NonPlanar, "Euler characteristic differs from 2");
    }

    int half_edges() const { return static_cast<int>(alpha_.size()); }
    int alpha(int h) const { return alpha_[h]; }
    int sigma(int h) const { return sigma_[h]; }
    int sigma_inv(int h) const { return sigma_inv_[h]; }
    int phi(int h) const { return sigma_[alpha_[h]]; }
    int vertex(int h) const { return vertex_[h]; }  // tail
    int head(int h) const { return vertex_[alpha_[h]]; }
    int face(int h) const { return face_[h]; }  // face on the right
    int vertex_count() const { return vertex_count_; }
    int edge_count() const { return half_edges() / 2; }
    int face_count() const { return face_count_; }
    int face_degree(int f) const { return face_degree_[f]; }
    const std::vector<int>& alpha_vector() const { return alpha_; }
    const std::vector<int>& sigma_vector() const { return sigma_; }

    /// One half-edge leaving v (the smallest id).
    int vertex_half_edge(int v) const { return vertex_first_.at(v); }
    /// One half-edge with f on its right (the smallest id).
    int face_half_edge(int f) const { return face_first_.at(f); }
    /// Half-edges around v counterclockwise, starting at `start` (or the
    /// smallest one).
    std::vector<int> around_vertex(int v, int start = -1) const {
        if (start < 0) start = vertex_half_edge(v);
        std::vector<int> out;
        int h = start;
        do {
            out.push_back(h);
            h = sigma_[h];
        } while (h != start);
        return out;
    }
    /// Face walk starting at h.
    std::vector<int> face_walk(int h) const {
        std::vector<int> out;
        int x = h;
        do {
            out.push_back(x);
            x = phi(x);
        } while (x != h);
        return out;
    }
    int degree(int v) const { return static_cast<int>(around_vertex(v).size()); }

    friend bool operator==(const PlanarMap& a, const PlanarMap& b) {
        return a.alpha_ == b.alpha_ && a.sigma_ == b.sigma_;
    }

private:
    template <class F>
    std::vector<int> orbits(F next, int& count) const {
        std::vector<int> id(alpha_.size(), -1);
        count = 0;
        for (int h = 0; h < half_edges(); ++h) {
            if (id[h] != -1) continue;
            int x = h;
            do {
                id[x] = count;
                x = next(x);
            } while (x != h);
            ++count;
        }
        return id;
    }

    bool connected() const {
        std::vector<char> seen(alpha_.size(), 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        int n = 0;
        while (!stack.empty()) {
            const int h = stack.back();
            stack.pop_back();
            ++n;
            for (int y : {alpha_[h], sigma_[h]})
                if (!seen[y]) {
                    seen[y] = 1;
                    stack.push_back(y);
                }
        }
        return n == half_edges();
    }

    std::vector<int> alpha_, sigma_, sigma_inv_, vertex_, face_, face_degree_, vertex_first_, face_first_;
    int vertex_count_ = 0, face_count_ = 0;
};

/// A quadrangulation of the sphere, optionally rooted (directed half-edge) and
/// pointed (origin vertex). The single-edge map with one face of degree 2 is
/// accepted as the quadrangulation with zero faces.
struct Quadrangulation {
    PlanarMap map;
    std::optional<int> root;
    std::optional<int> origin;

    int faces() const { return is_edge_map() ? 0 : map.face_count(); }
    bool is_edge_map() const { return map.half_edges() == 2; }
    /// The root tail if rooted, else the origin.
    int origin_vertex() const {
        if (root) return map.vertex(*root);
        if (origin) return *origin;
        throw std::logic_error("quadrangulation is neither rooted nor pointed");
    }
};

inline std::vector<int> two_coloring(const PlanarMap& m) {
    std::vector<int> color(m.vertex_count(), -1);
    std::vector<std::vector<int>> out(m.vertex_count());
    for (int h = 0; h < m.half_edges(); ++h) out[m.vertex(h)].push_back(h);
    std::deque<int> q{0};
    color[0] = 0;
    while (!q.empty()) {
        const int v = q.front();
        q.pop_front();
        for (int h : out[v]) {
            const int w = m.head(h);
            if (color[w] == -1) {
                color[w] = 1 - color[v];
                q.push_back(w);
            } else if (color[w] == color[v]) {
                return {};
            }
        }
    }
    return color;
}

/// Validating constructor for quadrangulations.
inline Quadrangulation build_map(std::vector<int> alpha, std::vector<int> sigma, std::optional<int> root = {},
                                 std::optional<int> origin = {}) {
    Quadrangulation q{PlanarMap(std::move(alpha), std::move(sigma)), root, origin};
    const PlanarMap& m = q.map;
    if (!q.is_edge_map()) {
        for (int f = 0; f < m.face_count(); ++f)
            if (m.face_degree(f) != 4) throw MapError(MapErrorKind::FaceDegreeNot4, "face of degree " + std::to_string(m.face_degree(f)));
        if (two_coloring(m).empty()) throw MapError(MapErrorKind::NotBipartite, "odd cycle");
    }
    if (root && (*root < 0 || *root >= m.half_edges())) throw std::out_of_range("root half-edge out of range");
    if (origin && (*origin < 0 || *origin >= m.vertex_count())) throw std::out_of_range("origin out of range");
    return q;
}

struct DistanceLabeling {
    int origin = 0;
    std::vector<int> label;  // by vertex id
};

inline DistanceLabeling bfs_labels(const PlanarMap& m, int origin) {
    if (origin < 0 || origin >= m.vertex_count()) throw std::out_of_range("origin out of range");
    std::vector<std::vector<int>> out(m.vertex_count());
    for (int h = 0; h < m.half_edges(); ++h) out[m.vertex(h)].push_back(h);
    DistanceLabeling d{origin, std::vector<int>(m.vertex_count(), -1)};
    std::deque<int> q{origin};
    d.label[origin] = 0;
    while (!q.empty()) {
        const int v = q.front();
        q.pop_front();
        for (int h : out[v]) {
            const int w = m.head(h);
            if (d.label[w] == -1) {
                d.label[w] = d.label[v] + 1;
                q.push_back(w);
            }
        }
    }
    return d;
}

/// Number of geodesics from the labeling's origin to every vertex, counting
/// parallel edges separately.
inline std::vector<mpz_class> geodesic_counts(const PlanarMap& m, const DistanceLabeling& d) {
    std::vector<int> order(m.vertex_count());
    for (int v = 0; v < m.vertex_count(); ++v) order[v] = v;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return d.label[a] < d.label[b]; });
    std::vector<std::vector<int>> out(m.vertex_count());
    for (int h = 0; h < m.half_edges(); ++h) out[m.vertex(h)].push_back(h);
    std::vector<mpz_class> c(m.vertex_count(), 0);
    c[d.origin] = 1;
    for (int v : order)
        for (int h : out[v])
            if (d.label[m.head(h)] == d.label[v] - 1) c[v] += c[m.head(h)];
    return c;
}

inline mpz_class count_geodesics(const PlanarMap& m, const DistanceLabeling& d, int target) {
    return geodesic_counts(m, d)[target];
}

/// A geodesic from the origin, identified by its half-edges (each step raises
/// the distance by one).
struct GeodesicPath {
    std::vector<int> half_edges;

    int length() const { return static_cast<int>(half_edges.size()); }
    friend auto operator<=>(const GeodesicPath&, const GeodesicPath&) = default;
};

inline std::vector<int> path_vertices(const PlanarMap& m, const GeodesicPath& p, int origin) {
    std::vector<int> v{origin};
    for (int h : p.half_edges) v.push_back(m.head(h));
    return v;
}

/// Checks the minimality certificate: starts at the origin, consecutive, and
/// the j-th vertex is at distance j.
inline bool is_geodesic(const PlanarMap& m, const DistanceLabeling& d, const GeodesicPath& p) {
    int v = d.origin;
    for (int j = 0; j < p.length(); ++j) {
        const int h = p.half_edges[j];
        if (h < 0 || h >= m.half_edges() || m.vertex(h) != v) return false;
        v = m.head(h);
        if (d.label[v] != j + 1) return false;
    }
    return true;
}

/// All geodesics from the origin to target, in lexicographic half-edge order.
inline std::vector<GeodesicPath> enumerate_geodesics(const PlanarMap& m, const DistanceLabeling& d, int target) {
    std::vector<std::vector<int>> in(m.vertex_count());  // half-edges arriving from one level down
    for (int h = 0; h < m.half_edges(); ++h)
        if (d.label[m.head(h)] == d.label[m.vertex(h)] + 1) in[m.head(h)].push_back(h);
    std::vector<GeodesicPath> out;
    std::vector<int> rev;
    auto rec = [&](auto&& self, int v) -> void {
        if (v == d.origin) {
            out.push_back({{rev.rbegin(), rev.rend()}});
            return;
        }
        for (int h : in[v]) {
            rev.push_back(h);
            self(self, m.vertex(h));
            rev.pop_back();
        }
    };
    rec(rec, target);
    std::sort(out.begin(), out.end());
    return out;
}

/// Canonical code of the map rooted at h: breadth-first renumbering through
/// sigma then alpha, listing (sigma, alpha) images. Equal codes iff the rooted
/// maps are isomorphic.
inline std::vector<int> rooted_code(const PlanarMap& m, int root) {
    const int H = m.half_edges();
    std::vector<int> id(H, -1), order;
    order.reserve(H);
    id[root] = 0;
    order.push_back(root);
    for (std::size_t k = 0; k < order.size(); ++k) {
        const int x = order[k];
        for (int y : {m.sigma(x), m.alpha(x)})
            if (id[y] == -1) {
                id[y] = static_cast<int>(order.size());
                order.push_back(y);
            }
    }
    std::vector<int> code;
    code.reserve(2 * H);
    for (int x : order) {
        code.push_back(id[m.sigma(x)]);
        code.push_back(id[m.alpha(x)]);
    }
    return code;
}

/// Code of the map pointed at v: the least rooted code over roots leaving v.
inline std::vector<int> pointed_code(const PlanarMap& m, int v) {
    std::vector<int> best;
    for (int h : m.around_vertex(v)) {
        auto c = rooted_code(m, h);
        if (best.empty() || c < best) best = std::move(c);
    }
    return best;
}

/// Order of the automorphism group of the map (orientation preserving),
/// fixing `marked` when given: the number of candidate roots whose code is
/// the least one.
inline int automorphism_order(const PlanarMap& m, std::optional<int> marked = {}) {
    std::vector<int> roots;
    if (marked) {
        roots = m.around_vertex(*marked);
    } else {
        for (int h = 0; h < m.half_edges(); ++h) roots.push_back(h);
    }
    std::vector<int> best;
    int count = 0;
    for (int h : roots) {
        auto c = rooted_code(m, h);
        if (best.empty() || c < best) {
            best = std::move(c);
            count = 1;
        } else if (c == best) {
            ++count;
        }
    }
    return count;
}

/// Rebuilds a map keeping only the listed half-edges, renumbered in the
/// given order; `sigma_of` and `alpha_of` give images in old ids.
template <class S, class A>
PlanarMap compact_map(const std::vector<int>& keep, S sigma_of, A alpha_of) {
    std::vector<int> renum;
    int top = 0;
    for (int h : keep) top = std::max(top, h + 1);
    renum.assign(top, -1);
    for (std::size_t k = 0; k < keep.size(); ++k) renum[keep[k]] = static_cast<int>(k);
    std::vector<int> a(keep.size()), s(keep.size());
    for (std::size_t k = 0; k < keep.size(); ++k) {
        a[k] = renum.at(alpha_of(keep[k]));
        s[k] = renum.at(sigma_of(keep[k]));
    }
    return PlanarMap(std::move(a), std::move(s));
}

}  // namespace geoquad
