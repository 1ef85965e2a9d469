#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "chromcert/coloring.hpp"
#include "chromcert/exact.hpp"
#include "chromcert/interval.hpp"
#include "chromcert/sampling.hpp"

namespace chromcert {

class ZeroDenominatorError : public Error {
public:
    using Error::Error;
};

class NotTriangleFreeError : public Error {
public:
    using Error::Error;
};

/// Enumeration-based checks refuse instances with more colorings than this.
inline constexpr long kEnumerationLimit = 20'000'000;

/// Instance of the counting-ratio experiment around a distinguished vertex.
struct RatioExperiment {
    Graph graph;
    ListAssignment lists;
    Vertex v = 0;
    int t = 1;
    BigRational ell = 1;
};

namespace detail {

/// G - v together with its lists; vertex i of the result is keep[i].
struct Deleted {
    Graph graph;
    ListAssignment lists;
    std::vector<Vertex> keep;
};

inline Deleted delete_vertices(const Graph& g, const ListAssignment& lists, std::span<const Vertex> removed) {
    auto [h, keep] = g.without(removed);
    return {std::move(h), lists.restrict(keep), std::move(keep)};
}

inline void require_enumerable(const Graph& g, const ListAssignment& lists, const char* what) {
    if (count_list_colorings(g, lists) > kEnumerationLimit) {
        throw SizeCapError(std::string(what) + ": too many colorings to enumerate");
    }
}

/// Lifts a coloring of G - S (indexed by keep) to a partial coloring of G.
inline PartialColoring lift(const PartialColoring& c, const std::vector<Vertex>& keep, int n) {
    PartialColoring out(n);
    for (std::size_t i = 0; i < keep.size(); ++i) out.assign(keep[i], c[static_cast<Vertex>(i)]);
    return out;
}

inline void require_vertex(const Graph& g, Vertex v) {
    if (v < 0 || v >= g.order()) throw Error("vertex " + std::to_string(v) + " is not in the graph");
}

}  // namespace detail

/// |C_L(G)| / |C_L(G - v)|, exactly.
inline BigRational color_count_ratio(const Graph& g, const ListAssignment& lists, Vertex v) {
    detail::require_vertex(g, v);
    lists.require_covers(g);
    const Vertex rm[] = {v};
    auto d = detail::delete_vertices(g, lists, rm);
    BigInt den = count_list_colorings(d.graph, d.lists);
    if (den == 0) throw ZeroDenominatorError("G - v has no L-coloring");
    return make_rational(count_list_colorings(g, lists), den);
}

struct SelfReducibilityReport {
    bool pass = true;
    BigInt count;         // |C_L(G)|
    BigInt residual_sum;  // sum over c in C_L(G - v) of |L_c(v)|
    std::optional<PartialColoring> counterexample;  // coloring of G - v (v uncolored) on failure
};

/// Checks |C_L(G)| = sum over c in C_L(G-v) of |L_c(v)| by full enumeration.
/// On a mismatch, the first coloring c whose number of extensions to G differs
/// from |L_c(v)| is returned.
inline SelfReducibilityReport self_reducibility_check(const Graph& g, const ListAssignment& lists, Vertex v) {
    detail::require_vertex(g, v);
    lists.require_covers(g);
    const Vertex rm[] = {v};
    auto d = detail::delete_vertices(g, lists, rm);
    detail::require_enumerable(d.graph, d.lists, "self_reducibility_check");
    SelfReducibilityReport r;
    r.count = count_list_colorings(g, lists);
    for_each_list_coloring(d.graph, d.lists, [&](const PartialColoring& c) {
        r.residual_sum += static_cast<long>(residual_list(g, lists, detail::lift(c, d.keep, g.order()), v).size());
        return true;
    });
    r.pass = r.count == r.residual_sum;
    if (!r.pass) {
        for_each_list_coloring(d.graph, d.lists, [&](const PartialColoring& c) {
            auto full = detail::lift(c, d.keep, g.order());
            BigInt ext = 0;
            for (Color col : lists[v]) {
                full.assign(v, col);
                ext += count_extensions(g, lists, full);
            }
            full.clear(v);
            if (ext != static_cast<long>(residual_list(g, lists, full, v).size())) {
                r.counterexample = full;
                return false;
            }
            return true;
        });
    }
    return r;
}

struct FewColorsReport {
    BigInt f_size;  // |F|
    BigInt bound;   // t * |C_L(G - v - u)|
    bool pass = true;
};

/// F = {c in C_L(G - v) : |L_c(u)| <= t}; checks |F| <= t |C_L(G - v - u)|.
inline FewColorsReport few_colors_event_check(const Graph& g, const ListAssignment& lists, Vertex v, Vertex u, int t) {
    detail::require_vertex(g, v);
    detail::require_vertex(g, u);
    if (!g.adjacent(v, u)) throw Error("few_colors_event_check: u must be a neighbor of v");
    if (t < 1) throw Error("few_colors_event_check: t must be positive");
    lists.require_covers(g);
    const Vertex rm_v[] = {v};
    const Vertex rm_vu[] = {v, u};
    auto d = detail::delete_vertices(g, lists, rm_v);
    auto du = detail::delete_vertices(g, lists, rm_vu);
    detail::require_enumerable(d.graph, d.lists, "few_colors_event_check");
    FewColorsReport r;
    for_each_list_coloring(d.graph, d.lists, [&](const PartialColoring& c) {
        auto full = detail::lift(c, d.keep, g.order());
        if (static_cast<int>(residual_list(g, lists, full, u).size()) <= t) ++r.f_size;
        return true;
    });
    r.bound = t * count_list_colorings(du.graph, du.lists);
    r.pass = r.f_size <= r.bound;
    return r;
}

enum class BlockedStatus { pass, fail, hypothesis_not_met };

inline std::string_view to_string(BlockedStatus s) {
    switch (s) {
        case BlockedStatus::pass: return "pass";
        case BlockedStatus::fail: return "fail";
        case BlockedStatus::hypothesis_not_met: return "hypothesis-not-met";
    }
    return "?";
}

struct BlockedReport {
    BigRational expected;  // E[t_v]
    BigRational bound;     // t deg(v) / ell
    BlockedStatus status = BlockedStatus::pass;
    /// Per neighbor u (in adjacency order): P(|L_c(u)| <= t).
    std::vector<BigRational> few_color_probability;
    /// Per neighbor u: |C_L(G-v)| / |C_L(G-v-u)|, or absent if the denominator is 0.
    std::vector<std::optional<BigRational>> hypothesis_ratio;
};

/// E[t_v] where t_v counts neighbors u of v with |L_c(u)| <= t, for c uniform
/// in C_L(G - v). The comparison with t deg(v)/ell is only meaningful when the
/// inductive hypothesis holds on G - v, i.e. |C_L(G-v)|/|C_L(G-v-u)| >= ell
/// for every neighbor u; this is checked directly, never assumed.
inline BlockedReport expected_blocked(const Graph& g, const ListAssignment& lists, Vertex v, int t,
                                      const BigRational& ell) {
    detail::require_vertex(g, v);
    if (t < 1) throw Error("expected_blocked: t must be positive");
    if (ell <= 0) throw Error("expected_blocked: ell must be positive");
    lists.require_covers(g);
    const Vertex rm[] = {v};
    auto d = detail::delete_vertices(g, lists, rm);
    const BigInt total = count_list_colorings(d.graph, d.lists);
    if (total == 0) throw ZeroDenominatorError("G - v has no L-coloring");
    detail::require_enumerable(d.graph, d.lists, "expected_blocked");

    const auto nbrs = g.neighbors(v);
    std::vector<BigInt> low(nbrs.size(), 0);
    for_each_list_coloring(d.graph, d.lists, [&](const PartialColoring& c) {
        auto full = detail::lift(c, d.keep, g.order());
        for (std::size_t i = 0; i < nbrs.size(); ++i) {
            if (static_cast<int>(residual_list(g, lists, full, nbrs[i]).size()) <= t) ++low[i];
        }
        return true;
    });

    BlockedReport r;
    BigInt sum = 0;
    bool hypothesis = true;
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
        sum += low[i];
        r.few_color_probability.push_back(make_rational(low[i], total));
        const Vertex rm2[] = {v, nbrs[i]};
        auto du = detail::delete_vertices(g, lists, rm2);
        BigInt den = count_list_colorings(du.graph, du.lists);
        if (den == 0) {
            r.hypothesis_ratio.push_back(std::nullopt);
            hypothesis = false;
        } else {
            BigRational q = make_rational(total, den);
            if (q < ell) hypothesis = false;
            r.hypothesis_ratio.push_back(q);
        }
    }
    r.expected = make_rational(sum, total);
    r.bound = BigRational(t * static_cast<long>(nbrs.size())) / ell;
    if (!hypothesis) {
        r.status = BlockedStatus::hypothesis_not_met;
    } else {
        r.status = r.expected <= r.bound ? BlockedStatus::pass : BlockedStatus::fail;
    }
    return r;
}

/// The pessimistic estimator (k - b) (t/(t+1))^((t+1)(deg - b)/(k - b)),
/// kept in exact parts: coefficient k - b, base t/(t+1), rational exponent.
/// For k <= b the estimator is clamped to 0, its convex extension.
struct PessimisticBound {
    bool clamped = false;
    BigRational coefficient;  // k - b
    BigRational base;         // t/(t+1)
    BigRational exponent;     // (t+1)(deg - b)/(k - b)

    /// Certified enclosure of the value.
    CertifiedInterval interval(mpfr_prec_t precision = 128) const {
        if (clamped) return CertifiedInterval::from_int(0, precision);
        return CertifiedInterval::from_rational(coefficient, precision) *
               CertifiedInterval::pow_rational(base, exponent, precision);
    }

    /// Exact decision of value <= x.
    bool at_most(const BigRational& x) const {
        if (clamped) return x >= 0;
        if (x <= 0) return false;
        return compare_power(coefficient, base, exponent, x).order != std::strong_ordering::greater;
    }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["clamped"] = clamped;
        if (!clamped) {
            j["coefficient"] = rational_to_json(coefficient);
            j["base"] = rational_to_json(base);
            j["exponent"] = rational_to_json(exponent);
        }
        j["value"] = interval().to_json(12);
        return j;
    }
};

/// Rational-blocked form; `blocked` may be any non-negative rational (e.g. t deg/ell).
inline PessimisticBound pessimistic_bound(const BigRational& k_v, const BigRational& blocked, const BigRational& deg_v,
                                          int t) {
    if (t < 1) throw Error("pessimistic bound: t must be positive");
    if (blocked < 0 || deg_v < 0) throw Error("pessimistic bound: blocked and deg must be non-negative");
    PessimisticBound b;
    if (k_v <= blocked) {
        b.clamped = true;
        return b;
    }
    b.coefficient = k_v - blocked;
    b.base = make_rational(t, t + 1);
    b.exponent = BigRational(t + 1) * (deg_v - blocked) / b.coefficient;
    return b;
}

inline PessimisticBound pessimistic_bound(long k_v, long blocked, long deg_v, int t) {
    return pessimistic_bound(BigRational(k_v), BigRational(blocked), BigRational(deg_v), t);
}

/// Certified lower value of the estimator (lower endpoint of its enclosure).
inline BigRational pessimistic_lower_bound(long k_v, long blocked, long deg_v, int t,
                                           mpfr_prec_t precision = 128) {
    return pessimistic_bound(k_v, blocked, deg_v, t).interval(precision).lower();
}

struct ConditionalEntry {
    PartialColoring c0;         // coloring of G0 = G - v - N(v), lifted to G
    BigInt weight;              // number of extensions of c0 to G - v
    BigRational expectation;    // E[X | c0]
    int blocked = 0;            // |B(c0)| (t = 1) or the largest |B| over low-neighbor values
    bool pass = true;
};

struct ConditionalReport {
    std::size_t c0_count = 0;     // colorings c0 that extend to G - v
    std::size_t violations = 0;   // entries with E[X | c0, B] below the estimator
    std::vector<ConditionalEntry> entries;  // first few violations, else a sample
    BigRational unconditional;    // E[X]
    bool unconditional_matches_ratio = true;
    bool pass() const { return violations == 0 && unconditional_matches_ratio; }
};

/// For every coloring c0 of G0 = G - v - N(v) that extends to G - v, computes
/// E[X | c0] with X = |L(v) minus the neighbor colors|, by enumerating the
/// independent uniform choices X_u in L_c0(u) (N(v) is independent since G is
/// triangle-free). B is the set of values of the neighbors with
/// |L_c0(u)| <= t; for t >= 2 it depends on those neighbors' values, so the
/// check is made for every such value tuple b: E[X | c0, b] >= estimator(|B(b)|)
/// with k = |L(v)|. Also checks that the c0-weighted average of E[X | c0]
/// equals |C_L(G)|/|C_L(G-v)|.
inline ConditionalReport conditional_expectation_check(const Graph& g, const ListAssignment& lists, Vertex v, int t,
                                                       std::size_t keep_entries = 8) {
    detail::require_vertex(g, v);
    if (t < 1) throw Error("conditional_expectation_check: t must be positive");
    if (!is_triangle_free(g)) throw NotTriangleFreeError("conditional_expectation_check needs a triangle-free graph");
    lists.require_covers(g);

    const auto nb = g.neighbors(v);
    const std::vector<Vertex> nbrs(nb.begin(), nb.end());
    std::vector<Vertex> removed = nbrs;
    removed.push_back(v);
    auto d0 = detail::delete_vertices(g, lists, removed);
    detail::require_enumerable(d0.graph, d0.lists, "conditional_expectation_check");
    const long k_v = static_cast<long>(lists[v].size());
    const long deg_v = static_cast<long>(nbrs.size());

    ConditionalReport r;
    BigRational weighted_sum = 0;
    BigInt weight_total = 0;
    for_each_list_coloring(d0.graph, d0.lists, [&](const PartialColoring& c) {
        auto c0 = detail::lift(c, d0.keep, g.order());
        std::vector<ColorSet> res;
        BigInt weight = 1;
        for (Vertex u : nbrs) {
            res.push_back(residual_list(g, lists, c0, u));
            weight *= static_cast<long>(res.back().size());
        }
        if (weight == 0) return true;
        ++r.c0_count;

        std::vector<std::size_t> low, high;
        for (std::size_t i = 0; i < nbrs.size(); ++i) {
            (static_cast<int>(res[i].size()) <= t ? low : high).push_back(i);
        }
        // enumerate low-neighbor values b, then high-neighbor values
        BigRational total_e = 0;
        bool ok = true;
        int worst_b = 0;
        std::vector<std::size_t> idx(nbrs.size(), 0);
        auto odometer = [&](const std::vector<std::size_t>& which) {
            for (std::size_t w : which) {
                if (++idx[w] < res[w].size()) return true;
                idx[w] = 0;
            }
            return false;
        };
        do {
            std::vector<Color> bset;
            for (std::size_t i : low) bset.push_back(res[i][idx[i]]);
            std::sort(bset.begin(), bset.end());
            bset.erase(std::unique(bset.begin(), bset.end()), bset.end());
            BigInt avail_sum = 0;
            BigInt outcomes = 0;
            for (std::size_t i : high) idx[i] = 0;
            do {
                long avail = 0;
                for (Color col : lists[v]) {
                    bool used = false;
                    for (std::size_t i = 0; i < nbrs.size() && !used; ++i) used = res[i][idx[i]] == col;
                    if (!used) ++avail;
                }
                avail_sum += avail;
                ++outcomes;
            } while (odometer(high));
            BigRational e = make_rational(avail_sum, outcomes);
            total_e += e;
            const long b = static_cast<long>(bset.size());
            worst_b = std::max(worst_b, static_cast<int>(b));
            if (!pessimistic_bound(k_v, b, deg_v, t).at_most(e)) ok = false;
        } while (odometer(low));
        BigInt low_outcomes = 1;
        for (std::size_t i : low) low_outcomes *= static_cast<long>(res[i].size());
        BigRational expectation = total_e / BigRational(low_outcomes);

        weighted_sum += expectation * BigRational(weight);
        weight_total += weight;
        if (!ok) ++r.violations;
        if (r.entries.size() < keep_entries && (!ok || r.violations == 0)) {
            r.entries.push_back({c0, weight, expectation, worst_b, ok});
        }
        return true;
    });
    if (weight_total > 0) {
        r.unconditional = weighted_sum / BigRational(weight_total);
        r.unconditional_matches_ratio = r.unconditional == color_count_ratio(g, lists, v);
    } else {
        // G - v has no coloring: there is nothing to average
        r.unconditional_matches_ratio = true;
    }
    return r;
}

/// Jensen step: with f(b) the clamped estimator at |B| = b, checks
/// E[f(|B|)] >= f(E|B|) over the distribution of |B(c0)| (t = 1 only, where B
/// is determined by c0). Valid when deg(v) >= |L(v)|, where f is convex.
struct JensenReport {
    bool applicable = false;
    CertifiedInterval mean_of_bounds{128};
    CertifiedInterval bound_at_mean{128};
    BigRational mean_blocked;
    bool violation = false;  // certified E[f] < f(E)
};

inline JensenReport jensen_check(const Graph& g, const ListAssignment& lists, Vertex v, mpfr_prec_t precision = 128) {
    detail::require_vertex(g, v);
    if (!is_triangle_free(g)) throw NotTriangleFreeError("jensen_check needs a triangle-free graph");
    JensenReport r;
    const long k_v = static_cast<long>(lists[v].size());
    const long deg_v = g.degree(v);
    r.applicable = deg_v >= k_v;
    const auto nb = g.neighbors(v);
    std::vector<Vertex> removed(nb.begin(), nb.end());
    removed.push_back(v);
    auto d0 = detail::delete_vertices(g, lists, removed);
    detail::require_enumerable(d0.graph, d0.lists, "jensen_check");
    std::map<long, BigInt> dist;
    BigInt total = 0;
    for_each_list_coloring(d0.graph, d0.lists, [&](const PartialColoring& c) {
        auto c0 = detail::lift(c, d0.keep, g.order());
        BigInt weight = 1;
        std::vector<Color> bset;
        for (Vertex u : nb) {
            auto res = residual_list(g, lists, c0, u);
            weight *= static_cast<long>(res.size());
            if (res.size() == 1) bset.push_back(res[0]);
        }
        if (weight == 0) return true;
        std::sort(bset.begin(), bset.end());
        bset.erase(std::unique(bset.begin(), bset.end()), bset.end());
        dist[static_cast<long>(bset.size())] += weight;
        total += weight;
        return true;
    });
    if (total == 0) {
        r.applicable = false;
        return r;
    }
    BigRational mean = 0;
    CertifiedInterval acc = CertifiedInterval::from_int(0, precision);
    for (const auto& [b, w] : dist) {
        mean += BigRational(b) * BigRational(w);
        acc = acc + pessimistic_bound(k_v, b, deg_v, 1).interval(precision) *
                        CertifiedInterval::from_rational(make_rational(w, total), precision);
    }
    mean /= BigRational(total);
    r.mean_blocked = mean;
    r.mean_of_bounds = acc;
    r.bound_at_mean = pessimistic_bound(BigRational(k_v), mean, BigRational(deg_v), 1).interval(precision);
    r.violation = r.applicable && r.mean_of_bounds.certainly_lt(r.bound_at_mean);
    return r;
}

struct MonteCarloReport {
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    double mean_available = 0;                  // estimate of E[|L_c(v)|]
    std::vector<double> few_color_frequency;    // per neighbor: estimate of P(|L_c(u)| <= t)
    std::optional<BigRational> exact_available;  // |C_L(G)|/|C_L(G-v)| when countable
    std::vector<BigRational> exact_few_color;   // when enumeration is feasible

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["samples"] = samples;
        j["seed"] = seed;
        j["mean_available"] = mean_available;
        j["few_color_frequency"] = few_color_frequency;
        if (exact_available) j["exact_available"] = rational_to_json(*exact_available);
        auto ex = nlohmann::json::array();
        for (const auto& q : exact_few_color) ex.push_back(rational_to_json(q));
        j["exact_few_color"] = ex;
        return j;
    }
};

/// Estimates E[|L_c(v)|] and P(|L_c(u)| <= t) from uniform samples c of C_L(G - v).
inline MonteCarloReport monte_carlo_ratio(const Graph& g, const ListAssignment& lists, Vertex v, int t,
                                          std::size_t samples, std::uint64_t seed) {
    detail::require_vertex(g, v);
    lists.require_covers(g);
    const Vertex rm[] = {v};
    auto d = detail::delete_vertices(g, lists, rm);
    const BigInt total = count_list_colorings(d.graph, d.lists);
    if (total == 0) throw ZeroDenominatorError("G - v has no L-coloring");
    MonteCarloReport r;
    r.samples = samples;
    r.seed = seed;
    const auto nbrs = g.neighbors(v);
    r.few_color_frequency.assign(nbrs.size(), 0.0);
    double avail = 0;
    std::vector<std::size_t> low(nbrs.size(), 0);
    if (samples > 0) {
        for (const auto& c : sample_colorings(d.graph, d.lists, seed, samples)) {
            auto full = detail::lift(c, d.keep, g.order());
            avail += static_cast<double>(residual_list(g, lists, full, v).size());
            for (std::size_t i = 0; i < nbrs.size(); ++i)
                if (static_cast<int>(residual_list(g, lists, full, nbrs[i]).size()) <= t) ++low[i];
        }
        r.mean_available = avail / static_cast<double>(samples);
        for (std::size_t i = 0; i < nbrs.size(); ++i)
            r.few_color_frequency[i] = static_cast<double>(low[i]) / static_cast<double>(samples);
    }
    r.exact_available = color_count_ratio(g, lists, v);
    if (total <= kEnumerationLimit) {
        auto eb = expected_blocked(g, lists, v, t, BigRational(1));
        r.exact_few_color = eb.few_color_probability;
    }
    return r;
}

/// Exact summary of the counting-ratio ingredients at one vertex.
struct RatioReport {
    BigRational ratio;
    BigRational expected_available;
    std::vector<BigRational> few_color_probability;
    BigRational expected_blocked;
    BlockedStatus blocked_status = BlockedStatus::pass;
    BigRational blocked_bound;
    PessimisticBound estimator;  // at |B| = t deg(v)/ell

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["ratio"] = rational_to_json(ratio);
        j["expected_available"] = rational_to_json(expected_available);
        auto p = nlohmann::json::array();
        for (const auto& q : few_color_probability) p.push_back(rational_to_json(q));
        j["few_color_probability"] = p;
        j["expected_blocked"] = rational_to_json(expected_blocked);
        j["blocked_bound"] = rational_to_json(blocked_bound);
        j["blocked_status"] = std::string(to_string(blocked_status));
        j["estimator"] = estimator.to_json();
        return j;
    }
};

inline RatioReport ratio_report(const RatioExperiment& x) {
    RatioReport r;
    r.ratio = color_count_ratio(x.graph, x.lists, x.v);
    // E[|L_c(v)|] by enumeration, independently of the two counts
    const Vertex rm[] = {x.v};
    auto d = detail::delete_vertices(x.graph, x.lists, rm);
    detail::require_enumerable(d.graph, d.lists, "ratio_report");
    BigInt sum = 0, n = 0;
    for_each_list_coloring(d.graph, d.lists, [&](const PartialColoring& c) {
        sum += static_cast<long>(residual_list(x.graph, x.lists, detail::lift(c, d.keep, x.graph.order()), x.v).size());
        ++n;
        return true;
    });
    r.expected_available = make_rational(sum, n);
    auto eb = expected_blocked(x.graph, x.lists, x.v, x.t, x.ell);
    r.few_color_probability = eb.few_color_probability;
    r.expected_blocked = eb.expected;
    r.blocked_status = eb.status;
    r.blocked_bound = eb.bound;
    r.estimator = pessimistic_bound(BigRational(static_cast<long>(x.lists[x.v].size())), eb.bound,
                                    BigRational(x.graph.degree(x.v)), x.t);
    return r;
}

}  // namespace chromcert
