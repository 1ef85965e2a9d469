#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "chromcert/graph.hpp"
#include "chromcert/kspec.hpp"
#include "chromcert/rng.hpp"

namespace chromcert {

using Color = int;
using ColorSet = std::vector<Color>;  // sorted, deduplicated
using ColorCount = BigInt;

/// Default vertex cap for exact counting.
inline constexpr int kCountingCap = 64;

/// Per-vertex color lists. Lists are kept sorted and deduplicated.
class ListAssignment {
public:
    ListAssignment() = default;
    explicit ListAssignment(std::vector<ColorSet> lists) : lists_(std::move(lists)) {
        for (auto& l : lists_) normalize(l);
    }

    /// Every vertex of an n-vertex graph gets {first, ..., first+size-1}.
    static ListAssignment uniform(int n, int size, Color first = 1) {
        std::vector<ColorSet> ls(n);
        for (auto& l : ls)
            for (int c = 0; c < size; ++c) l.push_back(first + c);
        return ListAssignment(std::move(ls));
    }

    int order() const { return static_cast<int>(lists_.size()); }
    const ColorSet& operator[](Vertex v) const { return lists_.at(v); }
    const std::vector<ColorSet>& lists() const { return lists_; }

    void set(Vertex v, ColorSet l) {
        normalize(l);
        lists_.at(v) = std::move(l);
    }

    bool contains(Vertex v, Color c) const {
        const auto& l = lists_.at(v);
        return std::binary_search(l.begin(), l.end(), c);
    }

    /// Lists of the vertices `keep`, in that order (matches Graph::without / induced).
    ListAssignment restrict(std::span<const Vertex> keep) const {
        std::vector<ColorSet> ls;
        ls.reserve(keep.size());
        for (Vertex v : keep) ls.push_back(lists_.at(v));
        return ListAssignment(std::move(ls));
    }

    void require_covers(const Graph& g) const {
        if (order() != g.order()) {
            throw Error("list assignment covers " + std::to_string(order()) + " vertices, graph has " +
                        std::to_string(g.order()));
        }
    }

    friend bool operator==(const ListAssignment&, const ListAssignment&) = default;

    nlohmann::json to_json() const {
        nlohmann::json m = nlohmann::json::object();
        for (int v = 0; v < order(); ++v) m[std::to_string(v)] = lists_[v];
        return {{"lists", m}};
    }

    static ListAssignment from_json(const nlohmann::json& j, int n) {
        std::vector<ColorSet> ls(n);
        std::vector<bool> seen(n, false);
        for (const auto& [key, value] : j.at("lists").items()) {
            int v = std::stoi(key);
            if (v < 0 || v >= n) throw Error("list assignment vertex out of range: " + key);
            for (const auto& c : value) {
                int col = c.get<int>();
                if (col < 0) throw Error("colors must be non-negative");
                ls[v].push_back(col);
            }
            seen[v] = true;
        }
        for (int v = 0; v < n; ++v) {
            if (!seen[v]) throw Error("list assignment misses vertex " + std::to_string(v));
        }
        return ListAssignment(std::move(ls));
    }

private:
    static void normalize(ColorSet& l) {
        std::sort(l.begin(), l.end());
        l.erase(std::unique(l.begin(), l.end()), l.end());
    }

    std::vector<ColorSet> lists_;
};

/// Partial map vertex -> color; -1 marks an uncolored vertex.
class PartialColoring {
public:
    static constexpr Color kUncolored = -1;

    PartialColoring() = default;
    explicit PartialColoring(int n) : colors_(n, kUncolored) {}
    explicit PartialColoring(std::vector<Color> colors) : colors_(std::move(colors)) {}

    int order() const { return static_cast<int>(colors_.size()); }
    bool is_colored(Vertex v) const { return colors_.at(v) != kUncolored; }
    Color operator[](Vertex v) const { return colors_.at(v); }
    void assign(Vertex v, Color c) { colors_.at(v) = c; }
    void clear(Vertex v) { colors_.at(v) = kUncolored; }
    const std::vector<Color>& colors() const { return colors_; }

    bool is_total() const {
        return std::none_of(colors_.begin(), colors_.end(), [](Color c) { return c == kUncolored; });
    }

    bool is_proper(const Graph& g) const {
        for (auto [u, v] : g.edges()) {
            if (is_colored(u) && colors_[u] == colors_[v]) return false;
        }
        return true;
    }

    bool respects(const ListAssignment& lists) const {
        for (Vertex v = 0; v < order(); ++v) {
            if (is_colored(v) && !lists.contains(v, colors_[v])) return false;
        }
        return true;
    }

    friend bool operator==(const PartialColoring&, const PartialColoring&) = default;
    friend auto operator<=>(const PartialColoring&, const PartialColoring&) = default;

private:
    std::vector<Color> colors_;
};

/// L_c(v): colors of L(v) not used by a colored neighbor of v.
inline ColorSet residual_list(const Graph& g, const ListAssignment& lists, const PartialColoring& c, Vertex v) {
    lists.require_covers(g);
    ColorSet out;
    for (Color col : lists[v]) {
        bool blocked = false;
        for (Vertex u : g.neighbors(v)) {
            if (c.is_colored(u) && c[u] == col) {
                blocked = true;
                break;
            }
        }
        if (!blocked) out.push_back(col);
    }
    return out;
}

namespace detail {

/// Fixed-width color bitset with W 64-bit words.
template <std::size_t W>
struct Bits {
    std::array<std::uint64_t, W> w{};

    void set(int c) { w[static_cast<std::size_t>(c) >> 6] |= std::uint64_t{1} << (c & 63); }
    bool test(int c) const { return (w[static_cast<std::size_t>(c) >> 6] >> (c & 63)) & 1; }
    bool empty() const {
        for (auto x : w)
            if (x) return false;
        return true;
    }
    int count() const {
        int n = 0;
        for (auto x : w) n += std::popcount(x);
        return n;
    }
    Bits minus(const Bits& o) const {
        Bits r;
        for (std::size_t i = 0; i < W; ++i) r.w[i] = w[i] & ~o.w[i];
        return r;
    }
    template <class F>
    void for_each(F&& f) const {
        for (std::size_t i = 0; i < W; ++i) {
            std::uint64_t x = w[i];
            while (x) {
                int b = std::countr_zero(x);
                f(static_cast<int>(i * 64) + b);
                x &= x - 1;
            }
        }
    }
};

/// Backtracking engine over dense color ids. n <= 64, colors < 64*W.
template <std::size_t W>
class ColoringEngine {
public:
    ColoringEngine(const Graph& g, const std::vector<Bits<W>>& lists)
        : n_(g.order()), lists_(lists), nbr_(g.order()), adj_(g.order()) {
        for (Vertex v = 0; v < n_; ++v) {
            nbr_[v] = g.neighbor_mask(v);
            adj_[v].assign(g.neighbors(v).begin(), g.neighbors(v).end());
        }
        col_.assign(n_, -1);
    }

    void precolor(Vertex v, int c) { col_[v] = c; }
    void uncolor(Vertex v) { col_[v] = -1; }
    void reset() { col_.assign(n_, -1); }
    int color_of(Vertex v) const { return col_[v]; }

    Bits<W> available(Vertex v) const {
        Bits<W> used;
        for (Vertex u : adj_[v]) {
            if (col_[u] >= 0) used.set(col_[u]);
        }
        return lists_[v].minus(used);
    }

    std::uint64_t uncolored_mask() const {
        std::uint64_t m = 0;
        for (Vertex v = 0; v < n_; ++v)
            if (col_[v] < 0) m |= std::uint64_t{1} << v;
        return m;
    }

    /// Number of proper extensions of the current precoloring.
    BigInt count() {
        for (Vertex v = 0; v < n_; ++v) {
            if (col_[v] >= 0) {
                if (!lists_[v].test(col_[v])) return 0;
                for (Vertex u : adj_[v])
                    if (col_[u] == col_[v]) return 0;
            }
        }
        return count_rec(uncolored_mask(), true);
    }

    /// Same count with a fixed vertex order and no component splitting (reference route).
    BigInt count_plain(const std::vector<Vertex>& order) {
        std::vector<Vertex> todo;
        for (Vertex v : order)
            if (col_[v] < 0) todo.push_back(v);
        return plain_rec(todo, 0);
    }

    /// Depth-first enumeration of all proper extensions; `f` sees dense colors.
    /// Returning false from `f` stops the enumeration.
    template <class F>
    bool enumerate(F&& f) {
        std::vector<Vertex> order = static_order();
        return enum_rec(order, 0, f);
    }

    std::optional<std::vector<int>> find_one() {
        std::optional<std::vector<int>> out;
        enumerate([&](const std::vector<int>& c) {
            out = c;
            return false;
        });
        return out;
    }

private:
    std::vector<Vertex> static_order() const {
        std::vector<Vertex> order;
        std::uint64_t done = 0;
        std::vector<int> placed_nbrs(n_, 0);
        for (Vertex v = 0; v < n_; ++v) {
            if (col_[v] >= 0) done |= std::uint64_t{1} << v;
        }
        for (Vertex v = 0; v < n_; ++v) placed_nbrs[v] = std::popcount(nbr_[v] & done);
        while (true) {
            Vertex best = -1;
            for (Vertex v = 0; v < n_; ++v) {
                if (done >> v & 1) continue;
                if (best < 0 || placed_nbrs[v] > placed_nbrs[best] ||
                    (placed_nbrs[v] == placed_nbrs[best] && lists_[v].count() < lists_[best].count()))
                    best = v;
            }
            if (best < 0) break;
            order.push_back(best);
            done |= std::uint64_t{1} << best;
            for (Vertex u : adj_[best]) ++placed_nbrs[u];
        }
        return order;
    }

    template <class F>
    bool enum_rec(const std::vector<Vertex>& order, std::size_t i, F& f) {
        if (i == order.size()) return f(col_);
        Vertex v = order[i];
        bool go_on = true;
        available(v).for_each([&](int c) {
            if (!go_on) return;
            col_[v] = c;
            go_on = enum_rec(order, i + 1, f);
        });
        col_[v] = -1;
        return go_on;
    }

    BigInt plain_rec(const std::vector<Vertex>& todo, std::size_t i) {
        if (i == todo.size()) return 1;
        Vertex v = todo[i];
        BigInt total = 0;
        available(v).for_each([&](int c) {
            col_[v] = c;
            total += plain_rec(todo, i + 1);
        });
        col_[v] = -1;
        return total;
    }

    std::uint64_t component_of(std::uint64_t mask, Vertex s) const {
        std::uint64_t comp = std::uint64_t{1} << s;
        std::uint64_t frontier = comp;
        while (frontier) {
            Vertex v = std::countr_zero(frontier);
            frontier &= frontier - 1;
            std::uint64_t fresh = nbr_[v] & mask & ~comp;
            comp |= fresh;
            frontier |= fresh;
        }
        return comp;
    }

    BigInt count_rec(std::uint64_t mask, bool split) {
        if (mask == 0) return 1;
        if (split) {
            Vertex s = std::countr_zero(mask);
            std::uint64_t comp = component_of(mask, s);
            if (comp != mask) {
                BigInt first = count_rec(comp, false);
                if (first == 0) return 0;
                return first * count_rec(mask & ~comp, true);
            }
        }
        // minimum remaining values
        Vertex best = -1;
        int best_avail = 1 << 30;
        for (std::uint64_t m = mask; m; m &= m - 1) {
            Vertex v = std::countr_zero(m);
            int a = available(v).count();
            if (a == 0) return 0;
            if (a < best_avail) {
                best_avail = a;
                best = v;
            }
        }
        if ((nbr_[best] & mask) == 0 && std::popcount(mask) == 1) return best_avail;
        BigInt total = 0;
        std::uint64_t rest = mask & ~(std::uint64_t{1} << best);
        available(best).for_each([&](int c) {
            col_[best] = c;
            total += count_rec(rest, true);
        });
        col_[best] = -1;
        return total;
    }

    int n_;
    std::vector<Bits<W>> lists_;
    std::vector<std::uint64_t> nbr_;
    std::vector<std::vector<Vertex>> adj_;
    std::vector<int> col_;
};

/// Dense relabeling of the colors that occur in a list assignment.
struct ColorIndex {
    std::vector<Color> colors;  // dense id -> original color

    explicit ColorIndex(const ListAssignment& lists) {
        std::set<Color> all;
        for (const auto& l : lists.lists()) all.insert(l.begin(), l.end());
        colors.assign(all.begin(), all.end());
    }

    int id(Color c) const {
        auto it = std::lower_bound(colors.begin(), colors.end(), c);
        if (it == colors.end() || *it != c) return -1;
        return static_cast<int>(it - colors.begin());
    }
};

template <std::size_t W>
std::vector<Bits<W>> dense_lists(const ListAssignment& lists, const ColorIndex& idx) {
    std::vector<Bits<W>> out(lists.order());
    for (int v = 0; v < lists.order(); ++v)
        for (Color c : lists[v]) out[v].set(idx.id(c));
    return out;
}

/// Runs `body(engine, index)` with an engine wide enough for the instance.
template <class Body>
decltype(auto) with_engine(const Graph& g, const ListAssignment& lists, Body&& body) {
    lists.require_covers(g);
    if (g.order() > kCountingCap) {
        throw SizeCapError("exact coloring engine supports at most " + std::to_string(kCountingCap) + " vertices");
    }
    ColorIndex idx(lists);
    const std::size_t k = idx.colors.size();
    if (k <= 64) {
        ColoringEngine<1> e(g, dense_lists<1>(lists, idx));
        return body(e, idx);
    }
    if (k <= 256) {
        ColoringEngine<4> e(g, dense_lists<4>(lists, idx));
        return body(e, idx);
    }
    if (k <= 1024) {
        ColoringEngine<16> e(g, dense_lists<16>(lists, idx));
        return body(e, idx);
    }
    throw SizeCapError("more than 1024 distinct colors in list assignment");
}

template <class Engine>
void apply_precoloring(Engine& e, const ColorIndex& idx, const PartialColoring& pre, int& impossible) {
    for (Vertex v = 0; v < pre.order(); ++v) {
        if (!pre.is_colored(v)) continue;
        int id = idx.id(pre[v]);
        if (id < 0) {
            impossible = 1;
            return;
        }
        e.precolor(v, id);
    }
}

}  // namespace detail

/// |C_L(g)|: exact number of proper L-colorings.
inline ColorCount count_list_colorings(const Graph& g, const ListAssignment& lists) {
    return detail::with_engine(g, lists, [](auto& e, const auto&) { return e.count(); });
}

/// Number of proper L-colorings of g that extend `pre` (pre must cover g's vertex set).
inline ColorCount count_extensions(const Graph& g, const ListAssignment& lists, const PartialColoring& pre) {
    return detail::with_engine(g, lists, [&](auto& e, const auto& idx) -> BigInt {
        int impossible = 0;
        detail::apply_precoloring(e, idx, pre, impossible);
        if (impossible) return 0;
        return e.count();
    });
}

/// Reference counter: fixed vertex order 0..n-1, no component split, no MRV.
inline ColorCount count_list_colorings_plain(const Graph& g, const ListAssignment& lists,
                                             std::vector<Vertex> order = {}) {
    if (order.empty())
        for (Vertex v = 0; v < g.order(); ++v) order.push_back(v);
    return detail::with_engine(g, lists, [&](auto& e, const auto&) { return e.count_plain(order); });
}

/// Calls f(coloring) for every proper L-coloring; f returns false to stop early.
template <class F>
void for_each_list_coloring(const Graph& g, const ListAssignment& lists, F&& f) {
    detail::with_engine(g, lists, [&](auto& e, const detail::ColorIndex& idx) {
        PartialColoring out(g.order());
        e.enumerate([&](const std::vector<int>& dense) {
            for (Vertex v = 0; v < g.order(); ++v) out.assign(v, idx.colors[dense[v]]);
            return f(static_cast<const PartialColoring&>(out));
        });
        return 0;
    });
}

/// A total proper L-coloring, if one exists.
inline std::optional<PartialColoring> is_L_colorable(const Graph& g, const ListAssignment& lists) {
    return detail::with_engine(g, lists, [&](auto& e, const detail::ColorIndex& idx) -> std::optional<PartialColoring> {
        auto dense = e.find_one();
        if (!dense) return std::nullopt;
        PartialColoring out(g.order());
        for (Vertex v = 0; v < g.order(); ++v) out.assign(v, idx.colors[(*dense)[v]]);
        return out;
    });
}

namespace detail {

/// k-colorability by DSATUR-ordered backtracking with new-color symmetry breaking.
class KColorSearch {
public:
    KColorSearch(const Graph& g, int k) : g_(g), k_(k), col_(g.order(), -1) {}

    bool run() { return rec(0, 0); }

    const std::vector<int>& coloring() const { return col_; }

private:
    bool rec(int placed, int used) {
        const int n = g_.order();
        if (placed == n) return true;
        Vertex best = -1;
        int best_sat = -1, best_deg = -1;
        for (Vertex v = 0; v < n; ++v) {
            if (col_[v] >= 0) continue;
            std::uint64_t seen = 0;
            int deg = 0;
            for (Vertex u : g_.neighbors(v)) {
                if (col_[u] >= 0) seen |= std::uint64_t{1} << col_[u];
                else ++deg;
            }
            int sat = std::popcount(seen);
            if (sat > best_sat || (sat == best_sat && deg > best_deg)) {
                best = v;
                best_sat = sat;
                best_deg = deg;
            }
        }
        std::uint64_t forbidden = 0;
        for (Vertex u : g_.neighbors(best))
            if (col_[u] >= 0) forbidden |= std::uint64_t{1} << col_[u];
        const int limit = std::min(k_, used + 1);
        for (int c = 0; c < limit; ++c) {
            if (forbidden >> c & 1) continue;
            col_[best] = c;
            if (rec(placed + 1, std::max(used, c + 1))) return true;
        }
        col_[best] = -1;
        return false;
    }

    const Graph& g_;
    int k_;
    std::vector<int> col_;
};

}  // namespace detail

/// Least k admitting a proper k-coloring.
inline int chromatic_number(const Graph& g, int cap = kCountingCap) {
    if (g.order() > cap) throw SizeCapError("chromatic_number: graph exceeds size cap " + std::to_string(cap));
    if (g.order() == 0) return 0;
    for (int k = 1; k <= g.order(); ++k) {
        if (k > 64) break;
        detail::KColorSearch s(g, k);
        if (s.run()) return k;
    }
    return g.order();
}

/// A proper coloring with colors 0..k-1, if one exists.
inline std::optional<PartialColoring> k_coloring(const Graph& g, int k) {
    detail::KColorSearch s(g, k);
    if (!s.run()) return std::nullopt;
    return PartialColoring(s.coloring());
}

enum class UniversePolicy { shared_prefix, randomized };

/// Lists with |L(v)| = k(deg(v)).
///
/// shared_prefix: L(v) = {1..k(deg v)}.
/// randomized: L(v) is a uniform k(deg v)-subset of {1..universe}, drawn with Rng(seed).
inline ListAssignment degree_list_assignment(const Graph& g, const KSpec& k,
                                             UniversePolicy policy = UniversePolicy::shared_prefix,
                                             std::uint64_t seed = 0, int universe = 0) {
    std::vector<ColorSet> ls(g.order());
    Rng rng(seed);
    for (Vertex v = 0; v < g.order(); ++v) {
        const long size = k(g.degree(v));
        if (policy == UniversePolicy::shared_prefix) {
            for (long c = 1; c <= size; ++c) ls[v].push_back(static_cast<Color>(c));
        } else {
            if (size > universe) throw Error("degree_list_assignment: universe smaller than list size");
            // partial Fisher-Yates over 1..universe
            std::vector<Color> pool(universe);
            for (int i = 0; i < universe; ++i) pool[i] = i + 1;
            for (long i = 0; i < size; ++i) {
                auto j = static_cast<std::size_t>(i) + rng.below(static_cast<std::uint64_t>(universe - i));
                std::swap(pool[static_cast<std::size_t>(i)], pool[j]);
                ls[v].push_back(pool[static_cast<std::size_t>(i)]);
            }
        }
    }
    return ListAssignment(std::move(ls));
}

}  // namespace chromcert
