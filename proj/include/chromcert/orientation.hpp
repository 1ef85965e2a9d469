#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "chromcert/choosability.hpp"
#include "chromcert/graph.hpp"
#include "chromcert/kspec.hpp"

namespace chromcert {

class NotBipartiteError : public Error {
public:
    using Error::Error;
};

using Arc = std::pair<Vertex, Vertex>;  // tail -> head

/// Digraph obtained by orienting every edge of a simple graph once.
struct Orientation {
    int n = 0;
    std::vector<Arc> arcs;

    std::vector<int> outdegrees() const {
        std::vector<int> d(n, 0);
        for (auto [u, v] : arcs) ++d[u];
        return d;
    }

    std::vector<int> indegrees() const {
        std::vector<int> d(n, 0);
        for (auto [u, v] : arcs) ++d[v];
        return d;
    }

    Graph underlying() const {
        std::vector<Edge> es;
        for (auto [u, v] : arcs) es.emplace_back(std::min(u, v), std::max(u, v));
        return Graph(n, es);
    }

    /// True iff the arcs orient each edge of g exactly once.
    bool orients(const Graph& g) const {
        if (n != g.order() || static_cast<int>(arcs.size()) != g.size()) return false;
        std::vector<Edge> es;
        for (auto [u, v] : arcs) es.emplace_back(std::min(u, v), std::max(u, v));
        std::sort(es.begin(), es.end());
        return es == g.edges();
    }

    nlohmann::json to_json() const {
        auto a = nlohmann::json::array();
        for (auto [u, v] : arcs) a.push_back({u, v});
        return {{"n", n}, {"arcs", a}};
    }

    static Orientation from_json(const nlohmann::json& j) {
        Orientation d;
        d.n = j.at("n").get<int>();
        for (const auto& a : j.at("arcs")) {
            if (!a.is_array() || a.size() != 2) throw Error("orientation JSON arc must be a pair");
            int u = a[0].get<int>(), v = a[1].get<int>();
            if (u < 0 || v < 0 || u >= d.n || v >= d.n || u == v) throw Error("orientation arc out of range");
            d.arcs.emplace_back(u, v);
        }
        return d;
    }
};

/// Audit record of the halving construction: the apex-augmented graph, one
/// closed circuit per component (as vertex sequences), and the result.
struct EulerTrace {
    int n = 0;                          // order of the input graph
    std::vector<Vertex> apexes;         // added vertices, numbered from n
    std::vector<Edge> augmented_edges;  // input edges followed by apex edges
    std::vector<std::vector<Vertex>> circuits;
    Orientation orientation;

    /// Re-checks the trace from scratch: every augmented edge is traversed
    /// exactly once, circuits are closed, and the orientation is the circuit
    /// direction restricted to input edges.
    bool verify(const Graph& g) const {
        const int total = n + static_cast<int>(apexes.size());
        std::vector<Edge> seen;
        std::vector<Arc> arcs;
        for (const auto& c : circuits) {
            if (c.size() < 2 || c.front() != c.back()) return false;
            for (std::size_t i = 0; i + 1 < c.size(); ++i) {
                Vertex u = c[i], v = c[i + 1];
                if (u < 0 || v < 0 || u >= total || v >= total) return false;
                seen.emplace_back(std::min(u, v), std::max(u, v));
                if (u < n && v < n) arcs.emplace_back(u, v);
            }
        }
        auto expected = augmented_edges;
        std::sort(expected.begin(), expected.end());
        std::sort(seen.begin(), seen.end());
        if (seen != expected) return false;
        auto got = orientation.arcs;
        std::sort(got.begin(), got.end());
        std::sort(arcs.begin(), arcs.end());
        return got == arcs && orientation.orients(g);
    }

    nlohmann::json to_json() const {
        auto es = nlohmann::json::array();
        for (auto [u, v] : augmented_edges) es.push_back({u, v});
        return {{"n", n},
                {"apexes", apexes},
                {"augmented_edges", es},
                {"circuits", circuits},
                {"orientation", orientation.to_json()}};
    }
};

namespace detail {

/// Hierholzer's algorithm from `start`, always leaving through the unused
/// edge to the smallest neighbor. adj[v] holds (neighbor, edge id) sorted.
inline std::vector<Vertex> euler_circuit(const std::vector<std::vector<std::pair<Vertex, int>>>& adj,
                                         std::vector<std::size_t>& next, std::vector<bool>& used, Vertex start) {
    std::vector<Vertex> stack{start}, circuit;
    while (!stack.empty()) {
        Vertex v = stack.back();
        auto& i = next[v];
        while (i < adj[v].size() && used[adj[v][i].second]) ++i;
        if (i == adj[v].size()) {
            circuit.push_back(v);
            stack.pop_back();
        } else {
            used[adj[v][i].second] = true;
            stack.push_back(adj[v][i].first);
        }
    }
    std::reverse(circuit.begin(), circuit.end());
    return circuit;
}

}  // namespace detail

/// Orientation with outdeg(v) <= ceil(deg(v)/2) for every v.
///
/// Each component with odd-degree vertices gets its own apex joined to them;
/// every degree is then even, and orienting each component's Euler circuit
/// gives outdeg = indeg. Removing the apexes leaves the bound.
inline std::pair<Orientation, EulerTrace> halved_outdegree_orientation(const Graph& g) {
    const int n = g.order();
    EulerTrace t;
    t.n = n;
    t.augmented_edges = g.edges();
    for (const auto& comp : g.components()) {
        std::vector<Vertex> odd;
        for (Vertex v : comp)
            if (g.degree(v) % 2) odd.push_back(v);
        if (odd.empty()) continue;
        const Vertex apex = n + static_cast<int>(t.apexes.size());
        t.apexes.push_back(apex);
        for (Vertex v : odd) t.augmented_edges.emplace_back(v, apex);
    }
    const int total = n + static_cast<int>(t.apexes.size());
    std::vector<std::vector<std::pair<Vertex, int>>> adj(total);
    for (int id = 0; id < static_cast<int>(t.augmented_edges.size()); ++id) {
        auto [u, v] = t.augmented_edges[id];
        adj[u].emplace_back(v, id);
        adj[v].emplace_back(u, id);
    }
    for (auto& a : adj) std::sort(a.begin(), a.end());
    std::vector<std::size_t> next(total, 0);
    std::vector<bool> used(t.augmented_edges.size(), false);
    t.orientation.n = n;
    for (Vertex s = 0; s < total; ++s) {
        if (adj[s].empty() || next[s] == adj[s].size()) continue;
        auto c = detail::euler_circuit(adj, next, used, s);
        if (c.size() < 2) continue;
        for (std::size_t i = 0; i + 1 < c.size(); ++i)
            if (c[i] < n && c[i + 1] < n) t.orientation.arcs.emplace_back(c[i], c[i + 1]);
        t.circuits.push_back(std::move(c));
    }
    return {t.orientation, t};
}

/// outdeg(v) <= ceil(deg(v)/2) at every vertex.
inline bool satisfies_halving_bound(const Orientation& d) {
    auto out = d.outdegrees();
    auto in = d.indegrees();
    for (int v = 0; v < d.n; ++v)
        if (out[v] > (out[v] + in[v] + 1) / 2) return false;
    return true;
}

/// Strongly connected components (Tarjan, iterative); comp[v] in [0, count).
inline std::pair<std::vector<int>, int> strong_components(const Orientation& d) {
    std::vector<std::vector<Vertex>> out(d.n);
    for (auto [u, v] : d.arcs) out[u].push_back(v);
    std::vector<int> index(d.n, -1), low(d.n, 0), comp(d.n, -1);
    std::vector<bool> on_stack(d.n, false);
    std::vector<Vertex> stack;
    int counter = 0, count = 0;
    for (Vertex s = 0; s < d.n; ++s) {
        if (index[s] >= 0) continue;
        std::vector<std::pair<Vertex, std::size_t>> call{{s, 0}};
        index[s] = low[s] = counter++;
        stack.push_back(s);
        on_stack[s] = true;
        while (!call.empty()) {
            auto& [v, i] = call.back();
            if (i < out[v].size()) {
                Vertex w = out[v][i++];
                if (index[w] < 0) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    call.emplace_back(w, 0);
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            if (low[v] == index[v]) {
                Vertex w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    comp[w] = count;
                } while (w != v);
                ++count;
            }
            Vertex done = v;
            call.pop_back();
            if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
        }
    }
    return {comp, count};
}

/// Exact odd-dicycle test. A strongly connected digraph has a directed cycle
/// of odd length iff it has a closed walk of odd length iff its arcs admit no
/// 2-coloring with every arc changing color; each strong component is tested
/// by BFS with parity labels.
inline bool has_odd_directed_cycle(const Orientation& d) {
    auto [comp, count] = strong_components(d);
    std::vector<std::vector<Vertex>> nbr(d.n);
    for (auto [u, v] : d.arcs) {
        if (comp[u] != comp[v]) continue;
        nbr[u].push_back(v);
        nbr[v].push_back(u);
    }
    std::vector<int> parity(d.n, -1);
    for (Vertex s = 0; s < d.n; ++s) {
        if (parity[s] >= 0) continue;
        parity[s] = 0;
        std::vector<Vertex> queue{s};
        for (std::size_t i = 0; i < queue.size(); ++i) {
            Vertex v = queue[i];
            for (Vertex w : nbr[v]) {
                if (parity[w] < 0) {
                    parity[w] = parity[v] ^ 1;
                    queue.push_back(w);
                } else if (parity[w] == parity[v]) {
                    return true;
                }
            }
        }
    }
    return false;
}

/// Brute-force reference: enumerates simple directed cycles by DFS from each
/// start vertex through larger vertices only. n <= 20.
inline bool has_odd_directed_cycle_brute(const Orientation& d) {
    if (d.n > 20) throw SizeCapError("brute odd-dicycle search supports n <= 20");
    std::vector<std::vector<Vertex>> out(d.n);
    for (auto [u, v] : d.arcs) out[u].push_back(v);
    std::vector<bool> on_path(d.n, false);
    auto dfs = [&](auto&& self, Vertex s, Vertex v, int len) -> bool {
        for (Vertex w : out[v]) {
            if (w == s && len % 2 == 1) return true;
            if (w <= s || on_path[w]) continue;
            on_path[w] = true;
            bool found = self(self, s, w, len + 1);
            on_path[w] = false;
            if (found) return true;
        }
        return false;
    };
    for (Vertex s = 0; s < d.n; ++s) {
        on_path[s] = true;
        bool found = dfs(dfs, s, s, 1);
        on_path[s] = false;
        if (found) return true;
    }
    return false;
}

/// Largest arc count accepted by alon_tarsi_difference.
inline constexpr int kAlonTarsiCap = 30;

/// EE(d) - EO(d): spanning Eulerian subdigraphs (indeg = outdeg everywhere)
/// counted with sign (-1)^(arc count). Arcs are decided in order of their
/// later endpoint so each vertex's balance is checked as soon as all of its
/// arcs are decided; partial sums that cannot rebalance are cut.
inline BigInt alon_tarsi_difference(const Orientation& d) {
    const int m = static_cast<int>(d.arcs.size());
    if (m > kAlonTarsiCap) throw SizeCapError("alon_tarsi_difference supports at most 30 arcs");
    std::vector<Arc> arcs = d.arcs;
    std::stable_sort(arcs.begin(), arcs.end(),
                     [](const Arc& a, const Arc& b) { return std::max(a.first, a.second) < std::max(b.first, b.second); });
    std::vector<int> remaining(d.n, 0);  // undecided arcs at each vertex
    for (auto [u, v] : arcs) ++remaining[u], ++remaining[v];
    std::vector<int> balance(d.n, 0);  // out - in among chosen arcs
    std::int64_t even = 0, odd = 0;
    auto rec = [&](auto&& self, int i, int chosen) -> void {
        if (i == m) {
            (chosen % 2 ? odd : even) += 1;
            return;
        }
        auto [u, v] = arcs[i];
        --remaining[u], --remaining[v];
        for (int take = 0; take < 2; ++take) {
            if (take) ++balance[u], --balance[v];
            if (std::abs(balance[u]) <= remaining[u] && std::abs(balance[v]) <= remaining[v]) {
                self(self, i + 1, chosen + take);
            }
            if (take) --balance[u], ++balance[v];
        }
        ++remaining[u], ++remaining[v];
    };
    rec(rec, 0, 0);
    return BigInt(static_cast<long>(even)) - BigInt(static_cast<long>(odd));
}

struct HalvingCheckReport {
    Orientation orientation;
    bool outdegree_bound = false;
    bool no_odd_dicycle = false;
    std::optional<BigInt> alon_tarsi;  // absent above the arc cap
    bool choosable = false;
    std::uint64_t nodes = 0;
    std::optional<ListAssignment> counterexample;

    bool pass() const {
        return outdegree_bound && no_odd_dicycle && (!alon_tarsi || *alon_tarsi != 0) && choosable;
    }

    nlohmann::json to_json() const {
        nlohmann::json j = {{"orientation", orientation.to_json()},
                            {"outdegree_bound", outdegree_bound},
                            {"no_odd_dicycle", no_odd_dicycle},
                            {"alon_tarsi", alon_tarsi ? nlohmann::json(to_decimal(*alon_tarsi)) : nlohmann::json()},
                            {"choosable", choosable},
                            {"nodes", nodes},
                            {"pass", pass()}};
        if (counterexample) j["counterexample"] = counterexample->to_json();
        return j;
    }
};

/// Small-scale check that a bipartite g is L-colorable for every list
/// assignment with |L(v)| = ceil(deg(v)/2) + 1: builds the halving orientation,
/// confirms the outdegree bound and the absence of odd dicycles, evaluates the
/// Alon-Tarsi difference within its cap, and exhausts all list assignments.
inline HalvingCheckReport verify_theorem32_small(const Graph& g) {
    if (!is_bipartite(g)) throw NotBipartiteError("verify_theorem32_small requires a bipartite graph");
    if (g.order() > 10) throw SizeCapError("verify_theorem32_small supports n <= 10");
    HalvingCheckReport r;
    r.orientation = halved_outdegree_orientation(g).first;
    r.outdegree_bound = satisfies_halving_bound(r.orientation);
    r.no_odd_dicycle = !has_odd_directed_cycle(r.orientation);
    if (g.size() <= kAlonTarsiCap) r.alon_tarsi = alon_tarsi_difference(r.orientation);
    auto res = check_degree_choosable(g, KSpec::bipartite_half());
    r.choosable = res.choosable;
    r.nodes = res.nodes;
    r.counterexample = res.bad_assignment;
    return r;
}

}  // namespace chromcert
