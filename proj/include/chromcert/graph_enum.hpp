#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "chromcert/graph.hpp"
#include "chromcert/rng.hpp"

namespace chromcert {

/// Largest order accepted by the isomorphism-class enumerators.
inline constexpr int kEnumerationCap = 10;

namespace detail {

using AdjRows = std::vector<std::uint32_t>;

inline AdjRows adjacency_rows(const Graph& g) {
    AdjRows rows(g.order(), 0);
    for (auto [u, v] : g.edges()) {
        rows[u] |= 1u << v;
        rows[v] |= 1u << u;
    }
    return rows;
}

/// Upper-triangle code of the graph relabeled by `perm` (perm[i] = old vertex
/// placed at position i); pair (0,1) is the most significant bit.
inline std::uint64_t relabeled_code(const AdjRows& rows, const std::vector<int>& perm) {
    std::uint64_t code = 0;
    const int n = static_cast<int>(perm.size());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) code = (code << 1) | ((rows[perm[i]] >> perm[j]) & 1u);
    return code;
}

/// Stable color refinement; colors are ranks of isomorphism-invariant signatures.
inline std::vector<int> refine_colors(const AdjRows& rows) {
    const int n = static_cast<int>(rows.size());
    std::vector<int> color(n);
    for (int v = 0; v < n; ++v) color[v] = std::popcount(rows[v]);
    for (;;) {
        std::vector<std::vector<int>> sig(n);
        for (int v = 0; v < n; ++v) {
            sig[v].push_back(color[v]);
            std::vector<int> nb;
            for (std::uint32_t m = rows[v]; m; m &= m - 1) nb.push_back(color[std::countr_zero(m)]);
            std::sort(nb.begin(), nb.end());
            sig[v].insert(sig[v].end(), nb.begin(), nb.end());
        }
        std::map<std::vector<int>, int> rank;
        for (const auto& s : sig) rank.emplace(s, 0);
        int r = 0;
        for (auto& [s, id] : rank) id = r++;
        std::vector<int> next(n);
        for (int v = 0; v < n; ++v) next[v] = rank[sig[v]];
        const auto classes = [](const std::vector<int>& c) { return std::set<int>(c.begin(), c.end()).size(); };
        const bool stable = classes(next) == classes(color);
        color = std::move(next);
        if (stable) return color;
    }
}

}  // namespace detail

/// Canonical code of g (n <= kEnumerationCap): isomorphic graphs, and only
/// those, share a code. Vertices are grouped by refined color; the code is the
/// least upper-triangle word over all orderings within color classes.
inline std::uint64_t canonical_code(const Graph& g) {
    const int n = g.order();
    if (n > kEnumerationCap) throw SizeCapError("canonical_code supports n <= 10");
    const auto rows = detail::adjacency_rows(g);
    const auto color = detail::refine_colors(rows);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::stable_sort(perm.begin(), perm.end(), [&](int a, int b) { return color[a] < color[b]; });
    // cells are maximal runs of equal color; enumerate the product of their permutations
    std::vector<std::pair<int, int>> cells;
    for (int i = 0; i < n;) {
        int j = i;
        while (j < n && color[perm[j]] == color[perm[i]]) ++j;
        cells.emplace_back(i, j);
        i = j;
    }
    std::uint64_t best = ~std::uint64_t{0};
    auto rec = [&](auto&& self, std::size_t c) -> void {
        if (c == cells.size()) {
            best = std::min(best, detail::relabeled_code(rows, perm));
            return;
        }
        auto [lo, hi] = cells[c];
        std::sort(perm.begin() + lo, perm.begin() + hi);
        do {
            self(self, c + 1);
        } while (std::next_permutation(perm.begin() + lo, perm.begin() + hi));
    };
    rec(rec, 0);
    return best | (static_cast<std::uint64_t>(n) << 58);
}

/// Rebuilds the graph of order n from the upper-triangle part of a canonical code.
inline Graph graph_from_code(int n, std::uint64_t code) {
    std::vector<Edge> es;
    int bit = n * (n - 1) / 2 - 1;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, --bit)
            if ((code >> bit) & 1u) es.emplace_back(i, j);
    return Graph(n, es);
}

/// All graphs on n vertices up to isomorphism, in canonical form, ordered by
/// canonical code. Generated by adding a vertex to each class of order n-1.
inline std::vector<Graph> all_graphs(int n) {
    if (n < 0 || n > kEnumerationCap) throw SizeCapError("all_graphs supports 0 <= n <= 10");
    if (n == 0) return {Graph(0)};
    std::set<std::uint64_t> codes;
    for (const Graph& h : all_graphs(n - 1)) {
        for (std::uint32_t s = 0; s < (1u << (n - 1)); ++s) {
            std::vector<Edge> es(h.edges().begin(), h.edges().end());
            for (int u = 0; u < n - 1; ++u)
                if ((s >> u) & 1u) es.emplace_back(u, n - 1);
            codes.insert(canonical_code(Graph(n, es)));
        }
    }
    std::vector<Graph> out;
    out.reserve(codes.size());
    for (auto c : codes) out.push_back(graph_from_code(n, c & ((std::uint64_t{1} << 58) - 1)));
    return out;
}

inline std::vector<Graph> connected_graphs(int n) {
    std::vector<Graph> out;
    for (auto& g : all_graphs(n))
        if (g.is_connected()) out.push_back(std::move(g));
    return out;
}

inline std::vector<Graph> bipartite_graphs(int n) {
    std::vector<Graph> out;
    for (auto& g : all_graphs(n))
        if (is_bipartite(g)) out.push_back(std::move(g));
    return out;
}

/// Bernoulli(p) from one 53-bit draw; reproducible across platforms.
inline bool bernoulli(Rng& rng, double p) {
    return static_cast<double>(rng.next() >> 11) * 0x1.0p-53 < p;
}

/// Erdos-Renyi G(n, p); pairs visited in lexicographic order.
inline Graph random_graph(int n, double p, Rng& rng) {
    std::vector<Edge> es;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (bernoulli(rng, p)) es.emplace_back(u, v);
    return Graph(n, es);
}

/// Random bipartite graph with parts {0..a-1} and {a..a+b-1}.
inline Graph random_bipartite_graph(int a, int b, double p, Rng& rng) {
    std::vector<Edge> es;
    for (int u = 0; u < a; ++u)
        for (int v = a; v < a + b; ++v)
            if (bernoulli(rng, p)) es.emplace_back(u, v);
    return Graph(a + b, es);
}

}  // namespace chromcert
