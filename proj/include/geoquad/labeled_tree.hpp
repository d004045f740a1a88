#pragma once

// Labeled plane trees. Vertices are numbered in preorder, the root is 0 and
// the planted corner sits at the root between its last and first child.
// Children are listed counterclockwise starting after the parent edge.

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace geoquad {

class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class TreeFormatError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct WellLabeledTree {
    std::vector<int> parent;  // parent[0] = -1
    std::vector<int> label;
    std::vector<std::vector<int>> children;

    int vertices() const { return static_cast<int>(label.size()); }
    int edges() const { return vertices() - 1; }

    /// Builds from a balanced contour word ('(' down, ')' up) and labels in
    /// preorder.
    static WellLabeledTree from_contour(const std::string& word, std::vector<int> labels) {
        WellLabeledTree t;
        t.parent.push_back(-1);
        t.children.emplace_back();
        int cur = 0;
        for (char c : word) {
            if (c == '(') {
                const int v = static_cast<int>(t.parent.size());
                t.parent.push_back(cur);
                t.children.emplace_back();
                t.children[cur].push_back(v);
                cur = v;
            } else if (c == ')') {
                if (cur == 0) throw TreeFormatError("unbalanced contour word");
                cur = t.parent[cur];
            } else {
                throw TreeFormatError(std::string("bad contour character '") + c + "'");
            }
        }
        if (cur != 0) throw TreeFormatError("unbalanced contour word");
        if (labels.size() != t.parent.size()) throw TreeFormatError("label count does not match vertex count");
        t.label = std::move(labels);
        return t;
    }

    std::string contour() const {
        std::string w;
        auto rec = [&](auto&& self, int v) -> void {
            for (int c : children[v]) {
                w += '(';
                self(self, c);
                w += ')';
            }
        };
        rec(rec, 0);
        return w;
    }

    /// Text form: contour word, a space, comma-separated labels. The empty
    /// tree is "- 1".
    std::string serialize() const {
        std::ostringstream os;
        const std::string w = contour();
        os << (w.empty() ? "-" : w) << ' ';
        for (int v = 0; v < vertices(); ++v) os << (v ? "," : "") << label[v];
        return os.str();
    }

    static WellLabeledTree parse(const std::string& text) {
        std::istringstream is(text);
        std::string word, labs;
        if (!(is >> word >> labs)) throw TreeFormatError("expected '<contour> <labels>'");
        if (word == "-") word.clear();
        std::vector<int> labels;
        std::stringstream ls(labs);
        std::string tok;
        while (std::getline(ls, tok, ',')) {
            try {
                labels.push_back(std::stoi(tok));
            } catch (const std::exception&) {
                throw TreeFormatError("bad label '" + tok + "'");
            }
        }
        return from_contour(word, std::move(labels));
    }

    /// Labels positive, adjacent labels within 1, root labeled `root_label`.
    bool is_well_labeled(int root_label = 1) const {
        if (label.empty() || label[0] != root_label) return false;
        for (int v = 0; v < vertices(); ++v) {
            if (label[v] < 1) return false;
            if (v && std::abs(label[v] - label[parent[v]]) > 1) return false;
        }
        return true;
    }

    friend bool operator==(const WellLabeledTree& a, const WellLabeledTree& b) {
        return a.label == b.label && a.children == b.children;
    }
};

inline constexpr int kDefaultTreeCap = 8;

/// Calls f on every balanced word with n pairs, in lexicographic order.
inline void for_each_dyck_word(int n, const std::function<void(const std::string&)>& f) {
    std::string w;
    auto rec = [&](auto&& self, int open, int close) -> void {
        if (close == n) {
            f(w);
            return;
        }
        if (open < n) {
            w.push_back('(');
            self(self, open + 1, close);
            w.pop_back();
        }
        if (close < open) {
            w.push_back(')');
            self(self, open, close + 1);
            w.pop_back();
        }
    };
    rec(rec, 0, 0);
}

/// Every well-labeled tree with n edges planted at a corner labeled 1.
inline void for_each_well_labeled_tree(int n, const std::function<void(const WellLabeledTree&)>& f,
                                       int cap = kDefaultTreeCap) {
    if (n < 0) throw std::invalid_argument("negative edge count");
    if (n > cap) throw BudgetExceeded("tree enumeration above the cap of " + std::to_string(cap) + " edges");
    for_each_dyck_word(n, [&](const std::string& word) {
        WellLabeledTree t = WellLabeledTree::from_contour(word, std::vector<int>(n + 1, 1));
        auto rec = [&](auto&& self, int v) -> void {
            if (v == t.vertices()) {
                f(t);
                return;
            }
            for (int d = -1; d <= 1; ++d) {
                const int l = t.label[t.parent[v]] + d;
                if (l < 1) continue;
                t.label[v] = l;
                self(self, v + 1);
            }
        };
        rec(rec, 1);
    });
}

inline std::vector<WellLabeledTree> enumerate_well_labeled_trees(int n, int cap = kDefaultTreeCap) {
    std::vector<WellLabeledTree> out;
    for_each_well_labeled_tree(n, [&](const WellLabeledTree& t) { out.push_back(t); }, cap);
    return out;
}

/// A well-labeled tree whose spine is the first-child chain from the root,
/// labeled 1..i. Children after the spine child hang on the spine's left.
struct SpineTree {
    WellLabeledTree tree;
    int i = 1;

    std::vector<int> spine() const {
        std::vector<int> s{0};
        while (static_cast<int>(s.size()) < i) s.push_back(tree.children[s.back()].at(0));
        return s;
    }
    int non_spine_edges() const { return tree.edges() - (i - 1); }

    /// Subtree roots attached to each spine vertex, in counterclockwise order.
    std::vector<std::vector<int>> attached() const {
        const auto s = spine();
        std::vector<std::vector<int>> out(i);
        for (int j = 0; j < i; ++j) {
            const auto& ch = tree.children[s[j]];
            out[j].assign(ch.begin() + (j + 1 < i ? 1 : 0), ch.end());
        }
        return out;
    }

    friend bool operator==(const SpineTree&, const SpineTree&) = default;
};

inline bool is_spine_tree(const WellLabeledTree& t, int i) {
    if (i < 1 || !t.is_well_labeled()) return false;
    int v = 0;
    for (int j = 2; j <= i; ++j) {
        if (t.children[v].empty()) return false;
        v = t.children[v][0];
        if (t.label[v] != j) return false;
    }
    return true;
}

/// Spine trees with spine length i-1 and m further edges.
inline std::vector<SpineTree> enumerate_spine_trees(int i, int m, int cap = kDefaultTreeCap) {
    if (i < 1 || m < 0) throw std::invalid_argument("need i >= 1 and m >= 0");
    std::vector<SpineTree> out;
    for_each_well_labeled_tree(
        i - 1 + m,
        [&](const WellLabeledTree& t) {
            if (is_spine_tree(t, i)) out.push_back({t, i});
        },
        cap);
    return out;
}

}  // namespace geoquad
