#pragma once

#include <charconv>
#include <string>
#include <string_view>
#include <vector>

#include "chromcert/graph.hpp"

namespace chromcert {

class UnknownGraphError : public Error {
public:
    using Error::Error;
};

enum class ZooFamily { chvatal, petersen, clebsch, odd_cycle, complete_bipartite, path, star };

/// A named graph from the zoo; `a` and `b` carry family parameters.
struct NamedGraph {
    ZooFamily family;
    int a = 0;
    int b = 0;

    static NamedGraph chvatal() { return {ZooFamily::chvatal}; }
    static NamedGraph petersen() { return {ZooFamily::petersen}; }
    static NamedGraph clebsch() { return {ZooFamily::clebsch}; }
    static NamedGraph odd_cycle(int m) { return {ZooFamily::odd_cycle, m}; }
    static NamedGraph complete_bipartite(int p, int q) { return {ZooFamily::complete_bipartite, p, q}; }
    static NamedGraph path(int m) { return {ZooFamily::path, m}; }
    static NamedGraph star(int m) { return {ZooFamily::star, m}; }

    std::string name() const {
        switch (family) {
            case ZooFamily::chvatal: return "chvatal";
            case ZooFamily::petersen: return "petersen";
            case ZooFamily::clebsch: return "clebsch";
            case ZooFamily::odd_cycle: return "odd_cycle:" + std::to_string(a);
            case ZooFamily::complete_bipartite: return "complete_bipartite:" + std::to_string(a) + "," + std::to_string(b);
            case ZooFamily::path: return "path:" + std::to_string(a);
            case ZooFamily::star: return "star:" + std::to_string(a);
        }
        return "?";
    }
};

namespace detail {

inline int parse_param(std::string_view s, std::string_view whole) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
        throw UnknownGraphError("bad parameter in graph name: " + std::string(whole));
    }
    return v;
}

inline Graph cycle_graph(int m) {
    std::vector<Edge> es;
    for (int i = 0; i < m; ++i) es.emplace_back(i, (i + 1) % m);
    return Graph(m, es);
}

}  // namespace detail

/// Parses "chvatal", "petersen", "clebsch", "odd_cycle:M", "complete_bipartite:P,Q",
/// "path:M", "star:M" and the short aliases "cM" (odd M), "kPQ" (single digits), "k33".
inline NamedGraph parse_named_graph(std::string_view s) {
    if (s == "chvatal") return NamedGraph::chvatal();
    if (s == "petersen") return NamedGraph::petersen();
    if (s == "clebsch") return NamedGraph::clebsch();
    auto colon = s.find(':');
    if (colon != std::string_view::npos) {
        auto head = s.substr(0, colon);
        auto tail = s.substr(colon + 1);
        if (head == "odd_cycle") return NamedGraph::odd_cycle(detail::parse_param(tail, s));
        if (head == "path") return NamedGraph::path(detail::parse_param(tail, s));
        if (head == "star") return NamedGraph::star(detail::parse_param(tail, s));
        if (head == "complete_bipartite") {
            auto comma = tail.find(',');
            if (comma == std::string_view::npos) throw UnknownGraphError("expected complete_bipartite:P,Q");
            return NamedGraph::complete_bipartite(detail::parse_param(tail.substr(0, comma), s),
                                                  detail::parse_param(tail.substr(comma + 1), s));
        }
    }
    if (s.size() >= 2 && s[0] == 'c') return NamedGraph::odd_cycle(detail::parse_param(s.substr(1), s));
    if (s.size() == 3 && s[0] == 'k') {
        return NamedGraph::complete_bipartite(detail::parse_param(s.substr(1, 1), s), detail::parse_param(s.substr(2, 1), s));
    }
    throw UnknownGraphError("unknown graph name: " + std::string(s));
}

/// Canonical labeled constructions.
///
///  chvatal              12 vertices, 24 edges; the standard edge list (as in networkx).
///  petersen             outer cycle 0..4, spokes i~i+5, inner pentagram i+5 ~ (i+2 mod 5)+5.
///  clebsch              folded 5-cube: vertices {0,1}^4 as 0..15, adjacent iff the
///                       XOR is a single bit or 15 (all four bits).
///  odd_cycle(m)         i ~ i+1 mod m, m odd and >= 3.
///  complete_bipartite   parts {0..p-1} and {p..p+q-1}.
///  path(m)              m vertices, i ~ i+1.
///  star(m)              center 0, leaves 1..m.
inline Graph zoo(const NamedGraph& name) {
    switch (name.family) {
        case ZooFamily::chvatal:
            return Graph(12, {{0, 1}, {0, 4}, {0, 6}, {0, 9}, {1, 2}, {1, 5}, {1, 7}, {2, 3}, {2, 6}, {2, 8},
                              {3, 4}, {3, 7}, {3, 9}, {4, 5}, {4, 8}, {5, 10}, {5, 11}, {6, 10}, {6, 11}, {7, 8},
                              {7, 11}, {8, 10}, {9, 10}, {9, 11}});
        case ZooFamily::petersen: {
            std::vector<Edge> es;
            for (int i = 0; i < 5; ++i) {
                es.emplace_back(i, (i + 1) % 5);
                es.emplace_back(i, i + 5);
                es.emplace_back(i + 5, (i + 2) % 5 + 5);
            }
            return Graph(10, es);
        }
        case ZooFamily::clebsch: {
            std::vector<Edge> es;
            for (int u = 0; u < 16; ++u) {
                for (int v = u + 1; v < 16; ++v) {
                    int x = u ^ v;
                    if (x == 1 || x == 2 || x == 4 || x == 8 || x == 15) es.emplace_back(u, v);
                }
            }
            return Graph(16, es);
        }
        case ZooFamily::odd_cycle:
            if (name.a < 3 || name.a % 2 == 0) throw UnknownGraphError("odd_cycle needs an odd length >= 3");
            return detail::cycle_graph(name.a);
        case ZooFamily::complete_bipartite: {
            if (name.a < 0 || name.b < 0) throw UnknownGraphError("complete_bipartite needs non-negative parts");
            std::vector<Edge> es;
            for (int i = 0; i < name.a; ++i)
                for (int j = 0; j < name.b; ++j) es.emplace_back(i, name.a + j);
            return Graph(name.a + name.b, es);
        }
        case ZooFamily::path: {
            if (name.a < 1) throw UnknownGraphError("path needs at least one vertex");
            std::vector<Edge> es;
            for (int i = 0; i + 1 < name.a; ++i) es.emplace_back(i, i + 1);
            return Graph(name.a, es);
        }
        case ZooFamily::star: {
            if (name.a < 0) throw UnknownGraphError("star needs a non-negative leaf count");
            std::vector<Edge> es;
            for (int i = 1; i <= name.a; ++i) es.emplace_back(0, i);
            return Graph(name.a + 1, es);
        }
    }
    throw UnknownGraphError("unknown zoo family");
}

inline Graph zoo(std::string_view name) { return zoo(parse_named_graph(name)); }

/// Cycle of any length m >= 3 (even cycles are not part of the named zoo).
inline Graph cycle_graph(int m) {
    if (m < 3) throw Error("cycle needs at least 3 vertices");
    return detail::cycle_graph(m);
}

}  // namespace chromcert
