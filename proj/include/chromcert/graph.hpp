#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "chromcert/exact.hpp"

namespace chromcert {

using Vertex = int;
using Edge = std::pair<Vertex, Vertex>;

/// Simple undirected graph on the dense vertex set {0..n-1}.
///
/// Adjacency lists are kept sorted; edges are stored once with u < v in
/// lexicographic order. Immutable after construction.
class Graph {
public:
    Graph() = default;

    explicit Graph(int n) : adj_(checked_order(n)) {}

    Graph(int n, std::span<const Edge> edges) : adj_(checked_order(n)) {
        for (auto [u, v] : edges) add_edge_unsorted(u, v);
        finalize();
    }

    Graph(int n, std::initializer_list<Edge> edges) : Graph(n, std::span<const Edge>(edges.begin(), edges.size())) {}

    int order() const { return static_cast<int>(adj_.size()); }
    int size() const { return static_cast<int>(edges_.size()); }

    const std::vector<Edge>& edges() const { return edges_; }
    std::span<const Vertex> neighbors(Vertex v) const { return adj_.at(v); }
    int degree(Vertex v) const { return static_cast<int>(adj_.at(v).size()); }

    bool adjacent(Vertex u, Vertex v) const {
        const auto& a = adj_.at(u);
        return std::binary_search(a.begin(), a.end(), v);
    }

    int max_degree() const {
        int d = 0;
        for (const auto& a : adj_) d = std::max(d, static_cast<int>(a.size()));
        return d;
    }

    int min_degree() const {
        if (adj_.empty()) return 0;
        int d = order();
        for (const auto& a : adj_) d = std::min(d, static_cast<int>(a.size()));
        return d;
    }

    /// Bitmask of neighbors; valid only for n <= 64.
    std::uint64_t neighbor_mask(Vertex v) const {
        std::uint64_t m = 0;
        for (Vertex u : adj_.at(v)) m |= std::uint64_t{1} << u;
        return m;
    }

    /// Induced subgraph on `keep` (in the given order). Vertex i of the result is keep[i].
    Graph induced(std::span<const Vertex> keep) const {
        std::vector<int> index(order(), -1);
        for (std::size_t i = 0; i < keep.size(); ++i) index.at(keep[i]) = static_cast<int>(i);
        std::vector<Edge> es;
        for (auto [u, v] : edges_) {
            if (index[u] >= 0 && index[v] >= 0) es.emplace_back(index[u], index[v]);
        }
        return Graph(static_cast<int>(keep.size()), es);
    }

    /// G - removed, with surviving vertices renumbered in increasing order.
    /// Returns the graph and the list of original ids of its vertices.
    std::pair<Graph, std::vector<Vertex>> without(std::span<const Vertex> removed) const {
        std::vector<bool> gone(order(), false);
        for (Vertex v : removed) gone.at(v) = true;
        std::vector<Vertex> keep;
        for (Vertex v = 0; v < order(); ++v) {
            if (!gone[v]) keep.push_back(v);
        }
        return {induced(keep), keep};
    }

    std::pair<Graph, std::vector<Vertex>> without(Vertex v) const {
        const Vertex r[] = {v};
        return without(r);
    }

    /// Disjoint union; vertices of `other` are shifted by order().
    Graph disjoint_union(const Graph& other) const {
        std::vector<Edge> es = edges_;
        for (auto [u, v] : other.edges_) es.emplace_back(u + order(), v + order());
        return Graph(order() + other.order(), es);
    }

    /// Connected components as sorted vertex lists, ordered by smallest vertex.
    std::vector<std::vector<Vertex>> components() const {
        std::vector<int> comp(order(), -1);
        std::vector<std::vector<Vertex>> out;
        for (Vertex s = 0; s < order(); ++s) {
            if (comp[s] >= 0) continue;
            std::vector<Vertex> members{s};
            comp[s] = static_cast<int>(out.size());
            for (std::size_t i = 0; i < members.size(); ++i) {
                for (Vertex u : adj_[members[i]]) {
                    if (comp[u] < 0) {
                        comp[u] = comp[s];
                        members.push_back(u);
                    }
                }
            }
            std::sort(members.begin(), members.end());
            out.push_back(std::move(members));
        }
        return out;
    }

    bool is_connected() const { return order() <= 1 || components().size() == 1; }

    friend bool operator==(const Graph& a, const Graph& b) { return a.adj_ == b.adj_; }

    nlohmann::json to_json() const {
        auto es = nlohmann::json::array();
        for (auto [u, v] : edges_) es.push_back({u, v});
        return {{"n", order()}, {"edges", es}};
    }

    static Graph from_json(const nlohmann::json& j) {
        int n = j.at("n").get<int>();
        std::vector<Edge> es;
        for (const auto& e : j.at("edges")) {
            if (!e.is_array() || e.size() != 2) throw Error("graph JSON edge must be a pair");
            es.emplace_back(e[0].get<int>(), e[1].get<int>());
        }
        return Graph(n, es);
    }

private:
    static std::size_t checked_order(int n) {
        if (n < 0) throw Error("graph order must be non-negative");
        return static_cast<std::size_t>(n);
    }

    void add_edge_unsorted(Vertex u, Vertex v) {
        if (u < 0 || v < 0 || u >= order() || v >= order()) {
            throw Error("edge endpoint out of range: " + std::to_string(u) + "-" + std::to_string(v));
        }
        if (u == v) throw Error("self-loop at vertex " + std::to_string(u));
        adj_[u].push_back(v);
        adj_[v].push_back(u);
    }

    void finalize() {
        for (auto& a : adj_) {
            std::sort(a.begin(), a.end());
            a.erase(std::unique(a.begin(), a.end()), a.end());
        }
        edges_.clear();
        for (Vertex u = 0; u < order(); ++u) {
            for (Vertex v : adj_[u]) {
                if (u < v) edges_.emplace_back(u, v);
            }
        }
    }

    std::vector<std::vector<Vertex>> adj_;
    std::vector<Edge> edges_;
};

inline Graph complete_graph(int m) {
    std::vector<Edge> es;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) es.emplace_back(i, j);
    return Graph(m, es);
}

inline bool is_triangle_free(const Graph& g) {
    for (auto [u, v] : g.edges()) {
        auto a = g.neighbors(u);
        auto b = g.neighbors(v);
        // sorted intersection
        auto i = a.begin();
        auto j = b.begin();
        while (i != a.end() && j != b.end()) {
            if (*i == *j) return false;
            if (*i < *j) ++i; else ++j;
        }
    }
    return true;
}

/// True iff g has no 4-cycle: no two distinct vertices share two common neighbors.
inline bool is_c4_free(const Graph& g) {
    const int n = g.order();
    std::vector<int> seen(n, -1);
    for (Vertex a = 0; a < n; ++a) {
        // seen[c] == a marks c as reached from a through some middle vertex
        for (Vertex m : g.neighbors(a)) {
            for (Vertex c : g.neighbors(m)) {
                if (c == a) continue;
                if (seen[c] == a) return false;
                seen[c] = a;
            }
        }
    }
    return true;
}

struct Bipartition {
    std::vector<Vertex> a;
    std::vector<Vertex> b;
};

/// Odd closed walk certifying non-bipartiteness (first vertex repeated at the end).
struct OddCycleWitness {
    std::vector<Vertex> walk;
};

namespace detail {

inline std::pair<std::optional<Bipartition>, OddCycleWitness> two_color(const Graph& g) {
    const int n = g.order();
    std::vector<int> side(n, -1);
    std::vector<Vertex> parent(n, -1);
    for (Vertex s = 0; s < n; ++s) {
        if (side[s] >= 0) continue;
        side[s] = 0;
        std::queue<Vertex> q;
        q.push(s);
        while (!q.empty()) {
            Vertex u = q.front();
            q.pop();
            for (Vertex w : g.neighbors(u)) {
                if (side[w] < 0) {
                    side[w] = 1 - side[u];
                    parent[w] = u;
                    q.push(w);
                } else if (side[w] == side[u]) {
                    // paths to the common ancestor plus edge u-w close an odd walk
                    std::vector<Vertex> pu{u}, pw{w};
                    while (parent[pu.back()] >= 0) pu.push_back(parent[pu.back()]);
                    while (parent[pw.back()] >= 0) pw.push_back(parent[pw.back()]);
                    while (pu.size() > 1 && pw.size() > 1 && pu[pu.size() - 2] == pw[pw.size() - 2]) {
                        pu.pop_back();
                        pw.pop_back();
                    }
                    OddCycleWitness wit;
                    wit.walk.assign(pu.begin(), pu.end());
                    for (auto it = pw.rbegin() + 1; it != pw.rend(); ++it) wit.walk.push_back(*it);
                    wit.walk.push_back(u);
                    return {std::nullopt, wit};
                }
            }
        }
    }
    Bipartition bp;
    for (Vertex v = 0; v < n; ++v) (side[v] == 0 ? bp.a : bp.b).push_back(v);
    return {bp, {}};
}

}  // namespace detail

inline std::optional<Bipartition> is_bipartite(const Graph& g) { return detail::two_color(g).first; }

/// Odd closed walk in g, or nullopt when g is bipartite.
inline std::optional<OddCycleWitness> odd_cycle_witness(const Graph& g) {
    auto [bp, wit] = detail::two_color(g);
    if (bp) return std::nullopt;
    return wit;
}

/// Line graph; vertex i is the i-th edge of g in lexicographic (min, max) order.
inline Graph line_graph(const Graph& g) {
    const auto& es = g.edges();
    std::vector<std::vector<int>> incident(g.order());
    for (int i = 0; i < static_cast<int>(es.size()); ++i) {
        incident[es[i].first].push_back(i);
        incident[es[i].second].push_back(i);
    }
    std::vector<Edge> out;
    for (const auto& inc : incident) {
        for (std::size_t x = 0; x < inc.size(); ++x)
            for (std::size_t y = x + 1; y < inc.size(); ++y) out.emplace_back(inc[x], inc[y]);
    }
    return Graph(static_cast<int>(es.size()), out);
}

/// Triangle-free supergraph of g in which every vertex has degree target_degree.
///
/// Iterated mirror-doubling: each round takes two disjoint copies of the current
/// graph and joins every vertex of degree < target_degree to its twin. The first
/// copy keeps ids, so g is the induced subgraph on {0..g.order()-1}. Twin edges
/// form a matching, so they cannot close a triangle.
inline Graph regularize(const Graph& g, int target_degree) {
    if (target_degree < g.max_degree()) throw Error("regularize: target degree below maximum degree");
    if (!is_triangle_free(g)) throw Error("regularize: input graph is not triangle-free");
    Graph cur = g;
    while (cur.order() > 0 && cur.min_degree() < target_degree) {
        const int n = cur.order();
        std::vector<Edge> es = cur.edges();
        for (auto [u, v] : cur.edges()) es.emplace_back(u + n, v + n);
        for (Vertex v = 0; v < n; ++v) {
            if (cur.degree(v) < target_degree) es.emplace_back(v, v + n);
        }
        cur = Graph(2 * n, es);
    }
    return cur;
}

}  // namespace chromcert
