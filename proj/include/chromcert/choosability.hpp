#pragma once

#include <bit>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "chromcert/coloring.hpp"

namespace chromcert {

/// Default vertex cap for exhaustive choosability.
inline constexpr int kChoosabilityCap = 12;

struct ChoosabilityOptions {
    int cap = kChoosabilityCap;
    /// Set to lift the cap; the search may then not terminate in practice.
    bool acknowledge_may_not_terminate = false;
};

struct ChoosabilityResult {
    bool choosable = true;
    /// A list assignment with no proper coloring, when not choosable.
    std::optional<ListAssignment> bad_assignment;
    std::uint64_t nodes = 0;   // partial assignments visited
    std::uint64_t leaves = 0;  // complete assignments tested for colorability
};

namespace detail {

/// Exhaustive search for an uncolorable list assignment with prescribed sizes.
///
/// Lists are enumerated up to renaming of colors: colors are numbered by first
/// appearance, so every list is a subset of the colors already used plus a run
/// of fresh ones. At most sum(sizes) colors ever appear.
///
/// A reduction keeps the search finite in practice. Vertex u is removable
/// under L when its neighbors cannot block every color of L(u) at once, i.e.
/// there is no matching from L(u) into N(u) pairing each color c with a
/// distinct neighbor w having c in L(w); then any coloring of G-u extends to u.
/// (A color on no neighbor's list, or fewer than |L(u)| neighbors sharing a
/// color with u, are the simplest cases.) Adjacent twins in the vertex order
/// are additionally restricted to lexicographically least representatives. Every proper induced subgraph is verified first (memoized by vertex
/// mask), so assignments in which some vertex is removable are colorable and
/// can be skipped as soon as that vertex's closed neighborhood is assigned.
class ChoosabilitySearch {
public:
    ChoosabilitySearch(const Graph& g, std::span<const int> sizes) : g_(g), sizes_(sizes.begin(), sizes.end()) {
        const int n = g.order();
        nbr_.resize(n);
        for (Vertex v = 0; v < n; ++v) nbr_[v] = g.neighbor_mask(v);
    }

    ChoosabilityResult run() {
        const std::uint64_t all = g_.order() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << g_.order()) - 1;
        auto bad = solve(all);
        ChoosabilityResult r;
        r.nodes = nodes_;
        r.leaves = leaves_;
        if (bad) {
            r.choosable = false;
            r.bad_assignment = to_assignment(*bad);
        }
        return r;
    }

private:
    using Lists = std::vector<std::uint64_t>;  // per original vertex; 0 for vertices outside the mask

    ListAssignment to_assignment(const Lists& bad) const {
        std::vector<ColorSet> out(g_.order());
        int next_fresh = 0;
        for (auto m : bad)
            if (m) next_fresh = std::max(next_fresh, 64 - std::countl_zero(m));
        for (Vertex v = 0; v < g_.order(); ++v) {
            for (std::uint64_t m = bad[v]; m; m &= m - 1) out[v].push_back(std::countr_zero(m) + 1);
            // vertices outside the uncolorable core get private colors
            while (static_cast<int>(out[v].size()) < sizes_[v]) out[v].push_back(++next_fresh);
        }
        return ListAssignment(std::move(out));
    }

    int degree_in(Vertex v, std::uint64_t mask) const { return std::popcount(nbr_[v] & mask); }

    std::optional<Lists> solve(std::uint64_t mask) {
        if (mask == 0) return std::nullopt;
        if (auto it = memo_.find(mask); it != memo_.end()) return it->second;
        auto result = solve_uncached(mask);
        memo_.emplace(mask, result);
        return result;
    }

    std::optional<Lists> solve_uncached(std::uint64_t mask) {
        for (std::uint64_t m = mask; m; m &= m - 1) {
            Vertex v = std::countr_zero(m);
            if (sizes_[v] > degree_in(v, mask)) return solve(mask & ~(std::uint64_t{1} << v));
        }
        // components are independent
        Vertex s = std::countr_zero(mask);
        std::uint64_t comp = std::uint64_t{1} << s, frontier = comp;
        while (frontier) {
            Vertex v = std::countr_zero(frontier);
            frontier &= frontier - 1;
            std::uint64_t fresh = nbr_[v] & mask & ~comp;
            comp |= fresh;
            frontier |= fresh;
        }
        if (comp != mask) {
            if (auto bad = solve(comp)) return bad;
            return solve(mask & ~comp);
        }
        for (std::uint64_t m = mask; m; m &= m - 1) {
            Vertex v = std::countr_zero(m);
            if (auto bad = solve(mask & ~(std::uint64_t{1} << v))) return bad;
        }
        return search(mask);
    }

    std::optional<Lists> search(std::uint64_t mask) {
        int total = 0;
        for (std::uint64_t m = mask; m; m &= m - 1) total += sizes_[std::countr_zero(m)];
        if (total > 64) throw SizeCapError("choosability search needs more than 64 colors");

        // order: repeatedly take the vertex with most already-placed neighbors,
        // followed immediately by its twins (same neighborhood and list size)
        order_.clear();
        std::uint64_t placed = 0;
        auto twins = [&](Vertex u, Vertex w) {
            return (nbr_[u] & mask) == (nbr_[w] & mask) && sizes_[u] == sizes_[w];
        };
        while (placed != mask) {
            Vertex best = -1;
            int best_key = -1;
            for (std::uint64_t m = mask & ~placed; m; m &= m - 1) {
                Vertex v = std::countr_zero(m);
                int key = std::popcount(nbr_[v] & placed) * 64 + degree_in(v, mask);
                if (key > best_key) {
                    best_key = key;
                    best = v;
                }
            }
            order_.push_back(best);
            placed |= std::uint64_t{1} << best;
            for (std::uint64_t m = mask & ~placed; m; m &= m - 1) {
                Vertex w = std::countr_zero(m);
                if (twins(best, w)) {
                    order_.push_back(w);
                    placed |= std::uint64_t{1} << w;
                }
            }
        }
        const int k = static_cast<int>(order_.size());
        std::vector<int> pos(g_.order(), -1);
        for (int i = 0; i < k; ++i) pos[order_[i]] = i;
        closes_at_.assign(k, {});
        later_nbr_.assign(k, false);
        twin_of_prev_.assign(k, false);
        used_at_.assign(k, 0);
        for (int i = 0; i < k; ++i) {
            Vertex u = order_[i];
            if (i > 0 && twins(order_[i - 1], u)) twin_of_prev_[i] = true;
            int close = i;
            for (std::uint64_t m = nbr_[u] & mask; m; m &= m - 1) {
                int p = pos[std::countr_zero(m)];
                close = std::max(close, p);
                if (p > i) later_nbr_[i] = true;
            }
            closes_at_[close].push_back(u);
        }
        mask_ = mask;
        lists_.assign(g_.order(), 0);
        found_.reset();
        pool_.clear();
        pool_next_ = 0;
        extend(0, 0);
        return found_;
    }

    bool removable(Vertex u) const {
        const std::uint64_t lu = lists_[u];
        std::uint64_t union_nbrs = 0;
        int sharing = 0;
        std::uint64_t nb[64];
        int m = 0;
        for (std::uint64_t it = nbr_[u] & mask_; it; it &= it - 1) {
            std::uint64_t lw = lists_[std::countr_zero(it)] & lu;
            union_nbrs |= lw;
            if (lw) {
                ++sharing;
                nb[m++] = lw;
            }
        }
        if (lu & ~union_nbrs) return true;
        const int need = std::popcount(lu);
        if (need > sharing) return true;
        // Kuhn's augmenting paths: colors of L(u) on the left, neighbors on the right
        int match_of_nbr[64];
        for (int j = 0; j < m; ++j) match_of_nbr[j] = -1;
        for (std::uint64_t it = lu; it; it &= it - 1) {
            const int c = std::countr_zero(it);
            std::uint64_t seen = 0;
            if (!augment(c, nb, m, match_of_nbr, seen)) return true;
        }
        return false;
    }

    static bool augment(int c, const std::uint64_t* nb, int m, int* match_of_nbr, std::uint64_t& seen) {
        for (int j = 0; j < m; ++j) {
            if (!((nb[j] >> c) & 1) || ((seen >> j) & 1)) continue;
            seen |= std::uint64_t{1} << j;
            if (match_of_nbr[j] < 0 || augment(match_of_nbr[j], nb, m, match_of_nbr, seen)) {
                match_of_nbr[j] = c;
                return true;
            }
        }
        return false;
    }

    /// Lex-leader test for adjacent twins at positions i-1, i: true when swapping
    /// their lists and renaming the colors new since position i-1 by first
    /// appearance gives a smaller sequence. Such a prefix is never the least
    /// representative of its symmetry class, so it can be skipped.
    bool swapped_twins_smaller(int i) const {
        const int base = used_at_[i - 1];
        const std::uint64_t a = lists_[order_[i - 1]];
        const std::uint64_t b = lists_[order_[i]];
        const std::uint64_t low = base >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << base) - 1;
        int map[64];
        for (int& m : map) m = -1;
        int next = base;
        auto relabel = [&](std::uint64_t list) {
            std::uint64_t out = list & low;
            for (std::uint64_t m = list & ~low; m; m &= m - 1) {
                int c = std::countr_zero(m);
                if (map[c] < 0) map[c] = next++;
            }
            for (std::uint64_t m = list & ~low; m; m &= m - 1) out |= std::uint64_t{1} << map[std::countr_zero(m)];
            return out;
        };
        const std::uint64_t b2 = relabel(b);
        const std::uint64_t a2 = relabel(a);
        if (b2 != a) return b2 < a;
        return a2 < b;
    }

    // returns true to stop (a bad assignment was found)
    bool extend(int i, int used) {
        ++nodes_;
        if (i < static_cast<int>(order_.size())) used_at_[i] = used;
        const Vertex v = order_[i];
        const int s = sizes_[v];
        if (i + 1 == static_cast<int>(order_.size())) return last_vertex(v, s);
        const int max_fresh = later_nbr_[i] ? s : 0;
        const std::uint64_t used_mask = used == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << used) - 1;
        for (int fresh = 0; fresh <= max_fresh; ++fresh) {
            const int from_used = s - fresh;
            if (from_used > used || used + fresh > 64) continue;
            std::uint64_t fresh_bits = 0;
            for (int f = 0; f < fresh; ++f) fresh_bits |= std::uint64_t{1} << (used + f);
            // all from_used-subsets of used_mask (Gosper's hack over bit positions)
            if (from_used == 0) {
                if (try_list(i, v, fresh_bits, used + fresh)) return true;
                continue;
            }
            std::uint64_t sub = (std::uint64_t{1} << from_used) - 1;
            while (true) {
                if (try_list(i, v, sub | fresh_bits, used + fresh)) return true;
                std::uint64_t c = sub & -sub;
                std::uint64_t r = sub + c;
                if (r == 0 || (r & ~used_mask)) break;
                sub = (((r ^ sub) >> 2) / c) | r;
                if (sub & ~used_mask) break;
            }
        }
        lists_[v] = 0;
        return false;
    }

    bool try_list(int i, Vertex v, std::uint64_t list, int used) {
        lists_[v] = list;
        if (twin_of_prev_[i] && swapped_twins_smaller(i)) return false;
        for (Vertex u : closes_at_[i]) {
            if (removable(u)) return false;
        }
        return extend(i + 1, used);
    }

    /// With every other list fixed, some list for the last vertex v is bad iff
    /// at least |L(v)| colors appear on N(v) under every coloring of G - v.
    /// The intersection of those color sets is computed directly instead of
    /// enumerating lists for v.
    bool last_vertex(Vertex v, int s) {
        ++leaves_;
        const std::uint64_t nv = nbr_[v] & mask_;
        std::uint64_t common = ~std::uint64_t{0};
        auto seen_on_nbrs = [&](const std::vector<int>& col) {
            std::uint64_t c = 0;
            for (std::uint64_t m = nv; m; m &= m - 1) c |= std::uint64_t{1} << col[std::countr_zero(m)];
            return c;
        };
        for (const auto& w : pool_) {
            bool fits = true;
            for (Vertex u : order_) {
                if (u != v && !((lists_[u] >> w[u]) & 1)) {
                    fits = false;
                    break;
                }
            }
            if (fits) {
                common &= seen_on_nbrs(w);
                if (std::popcount(common) < s) return false;
            }
        }
        col_.assign(g_.order(), -1);
        last_ = v;
        common_ = common;
        need_ = s;
        intersect_rec(0);
        if (std::popcount(common_) < s) return false;
        std::uint64_t bad = 0;
        for (std::uint64_t m = common_; m && std::popcount(bad) < s; m &= m - 1) bad |= m & -m;
        lists_[v] = bad;
        found_ = lists_;
        return true;
    }

    // enumerates colorings of G - last_, shrinking common_; false aborts
    bool intersect_rec(int i) {
        if (i == static_cast<int>(order_.size())) {
            std::uint64_t c = 0;
            for (std::uint64_t m = nbr_[last_] & mask_; m; m &= m - 1) c |= std::uint64_t{1} << col_[std::countr_zero(m)];
            if ((common_ & c) != common_) {
                common_ &= c;
                remember(col_);
            }
            return std::popcount(common_) >= need_;
        }
        Vertex v = order_[i];
        if (v == last_) return intersect_rec(i + 1);
        std::uint64_t forbidden = 0;
        for (std::uint64_t m = nbr_[v] & mask_; m; m &= m - 1) {
            int c = col_[std::countr_zero(m)];
            if (c >= 0) forbidden |= std::uint64_t{1} << c;
        }
        for (std::uint64_t a = lists_[v] & ~forbidden; a; a &= a - 1) {
            col_[v] = std::countr_zero(a);
            if (!intersect_rec(i + 1)) {
                col_[v] = -1;
                return false;
            }
        }
        col_[v] = -1;
        return true;
    }

    void remember(const std::vector<int>& col) {
        if (pool_.size() < kPoolSize) {
            pool_.push_back(col);
        } else {
            pool_[pool_next_] = col;
            pool_next_ = (pool_next_ + 1) % kPoolSize;
        }
    }

    const Graph& g_;
    std::vector<int> sizes_;
    std::vector<std::uint64_t> nbr_;
    std::unordered_map<std::uint64_t, std::optional<Lists>> memo_;

    // per-search state
    std::uint64_t mask_ = 0;
    std::vector<Vertex> order_;
    std::vector<std::vector<Vertex>> closes_at_;
    std::vector<bool> later_nbr_;
    std::vector<bool> twin_of_prev_;
    std::vector<int> used_at_;
    Lists lists_;
    std::optional<Lists> found_;
    static constexpr std::size_t kPoolSize = 16;
    std::vector<std::vector<int>> pool_;
    std::size_t pool_next_ = 0;
    Vertex last_ = -1;
    std::uint64_t common_ = 0;
    int need_ = 0;
    std::vector<int> col_;
    std::uint64_t nodes_ = 0;
    std::uint64_t leaves_ = 0;
};

}  // namespace detail

/// Decides whether g is L-colorable for every L with |L(v)| = sizes[v].
inline ChoosabilityResult check_choosable(const Graph& g, std::span<const int> sizes,
                                          const ChoosabilityOptions& opt = {}) {
    if (static_cast<int>(sizes.size()) != g.order()) throw Error("check_choosable: one size per vertex required");
    if (g.order() > opt.cap && !opt.acknowledge_may_not_terminate) {
        throw SizeCapError("choosability search capped at " + std::to_string(opt.cap) + " vertices");
    }
    if (g.order() > 64) throw SizeCapError("choosability search supports at most 64 vertices");
    for (int s : sizes)
        if (s < 0) throw Error("list sizes must be non-negative");
    if (std::any_of(sizes.begin(), sizes.end(), [](int s) { return s == 0; })) {
        ChoosabilityResult r;
        r.choosable = false;
        std::vector<ColorSet> ls(g.order());
        int next = 1;
        for (Vertex v = 0; v < g.order(); ++v)
            for (int i = 0; i < sizes[v]; ++i) ls[v].push_back(next++);
        r.bad_assignment = ListAssignment(std::move(ls));
        return r;
    }
    return detail::ChoosabilitySearch(g, sizes).run();
}

/// Checks every (k o deg)-list-assignment of g.
inline ChoosabilityResult check_degree_choosable(const Graph& g, const KSpec& k, const ChoosabilityOptions& opt = {}) {
    std::vector<int> sizes(g.order());
    for (Vertex v = 0; v < g.order(); ++v) sizes[v] = static_cast<int>(k(g.degree(v)));
    return check_choosable(g, sizes, opt);
}

/// Least k <= k_max such that g is k-choosable; k_max + 1 when none is.
inline int list_chromatic_number(const Graph& g, int k_max, const ChoosabilityOptions& opt = {}) {
    if (g.order() > opt.cap && !opt.acknowledge_may_not_terminate) {
        throw SizeCapError("list_chromatic_number capped at " + std::to_string(opt.cap) + " vertices");
    }
    if (g.order() == 0) return 0;
    for (int k = 1; k <= k_max; ++k) {
        std::vector<int> sizes(g.order(), k);
        if (check_choosable(g, sizes, opt).choosable) return k;
    }
    return k_max + 1;
}

}  // namespace chromcert
