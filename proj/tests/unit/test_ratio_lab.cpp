#include <gtest/gtest.h>

#include "chromcert/graph6.hpp"
#include "chromcert/graph_enum.hpp"
#include "chromcert/ratio_lab.hpp"
#include "chromcert/zoo.hpp"

using namespace chromcert;

namespace {

ListAssignment lists_of(std::vector<ColorSet> ls) { return ListAssignment(std::move(ls)); }

ListAssignment random_lists(int n, int lo, int hi, int universe, Rng& rng) {
    std::vector<ColorSet> ls(n);
    for (auto& l : ls) {
        std::vector<Color> pool(universe);
        for (int i = 0; i < universe; ++i) pool[i] = i + 1;
        const long size = rng.between(lo, hi);
        for (long i = 0; i < size; ++i) {
            auto j = static_cast<std::size_t>(i) + rng.below(static_cast<std::uint64_t>(universe - i));
            std::swap(pool[static_cast<std::size_t>(i)], pool[j]);
            l.push_back(pool[static_cast<std::size_t>(i)]);
        }
    }
    return ListAssignment(std::move(ls));
}

// Path v - u - w as vertices 0 - 1 - 2.
const Graph kPath = zoo("path:3");
const ListAssignment kPathLists = lists_of({{1, 2, 3}, {1, 2}, {1, 2}});

}  // namespace

TEST(Ratio, Examples) {
    const auto c5 = zoo("c5");
    for (Vertex v = 0; v < 5; ++v) EXPECT_EQ(color_count_ratio(c5, ListAssignment::uniform(5, 3), v), make_rational(5, 4));
    EXPECT_EQ(color_count_ratio(Graph(1), lists_of({{1, 2}}), 0), 2);
    EXPECT_EQ(color_count_ratio(Graph(2, {{0, 1}}), ListAssignment::uniform(2, 2), 1), 1);
}

TEST(Ratio, ZeroDenominator) {
    EXPECT_THROW(color_count_ratio(kPath, lists_of({{1}, {1}, {1}}), 0), ZeroDenominatorError);
}

TEST(SelfReducibility, Examples) {
    const auto c5 = zoo("c5");
    auto r = self_reducibility_check(c5, ListAssignment::uniform(5, 3), 2);
    EXPECT_TRUE(r.pass);
    EXPECT_EQ(r.count, 30);
    EXPECT_EQ(r.residual_sum, 30);

    auto empty = self_reducibility_check(kPath, lists_of({{}, {1, 2}, {1, 2}}), 0);
    EXPECT_TRUE(empty.pass);
    EXPECT_EQ(empty.count, 0);

    EXPECT_TRUE(self_reducibility_check(zoo("star:3"), ListAssignment::uniform(4, 2), 0).pass);
}

TEST(FewColors, Examples) {
    auto r = few_colors_event_check(kPath, kPathLists, 0, 1, 1);
    EXPECT_EQ(r.f_size, 2);
    EXPECT_EQ(r.bound, 2);
    EXPECT_TRUE(r.pass);

    // v - u with u isolated once v is removed
    auto iso = few_colors_event_check(Graph(3, {{0, 1}}), lists_of({{1}, {1, 2, 3}, {1}}), 0, 1, 2);
    EXPECT_EQ(iso.f_size, 0);
    EXPECT_TRUE(iso.pass);

    auto c5 = few_colors_event_check(zoo("c5"), ListAssignment::uniform(5, 3), 0, 1, 1);
    EXPECT_EQ(c5.f_size, 0);
    EXPECT_TRUE(c5.pass);
}

TEST(FewColors, RequiresNeighbor) {
    EXPECT_THROW(few_colors_event_check(kPath, kPathLists, 0, 2, 1), Error);
}

TEST(ExpectedBlocked, Examples) {
    auto c5 = expected_blocked(zoo("c5"), ListAssignment::uniform(5, 3), 0, 1, make_rational(5, 4));
    EXPECT_EQ(c5.expected, 0);
    EXPECT_EQ(c5.bound, make_rational(8, 5));
    EXPECT_EQ(c5.status, BlockedStatus::pass);

    auto edge = expected_blocked(Graph(2, {{0, 1}}), lists_of({{1, 2}, {1, 2, 3}}), 0, 2, BigRational(1));
    EXPECT_EQ(edge.expected, 0);
    EXPECT_EQ(edge.bound, 2);
    EXPECT_EQ(edge.status, BlockedStatus::pass);

    auto path = expected_blocked(kPath, kPathLists, 0, 1, BigRational(1));
    EXPECT_EQ(path.expected, 1);
    EXPECT_EQ(path.bound, 1);
    EXPECT_EQ(path.status, BlockedStatus::pass);
}

TEST(ExpectedBlocked, HypothesisGating) {
    // G - v - u has 2 colorings, G - v has 2: ratio 1 < ell = 2
    auto r = expected_blocked(kPath, kPathLists, 0, 1, BigRational(2));
    EXPECT_EQ(r.status, BlockedStatus::hypothesis_not_met);
    ASSERT_EQ(r.hypothesis_ratio.size(), 1u);
    EXPECT_EQ(*r.hypothesis_ratio[0], 1);
}

TEST(Pessimistic, Examples) {
    auto a = pessimistic_bound(3, 0, 2, 1).interval(128);
    EXPECT_NEAR(a.lower_double(), 1.1905507889761495, 1e-9);
    EXPECT_LT(a.width(), 1e-30);
    EXPECT_LE(pessimistic_lower_bound(3, 0, 2, 1), a.lower());
    EXPECT_EQ(pessimistic_lower_bound(5, 0, 0, 1), 5);
    EXPECT_TRUE(pessimistic_bound(4, 4, 6, 1).clamped);
    EXPECT_EQ(pessimistic_lower_bound(4, 4, 6, 1), 0);
    EXPECT_THROW(pessimistic_bound(3, 0, 2, 0), Error);
}

TEST(Pessimistic, RationalBlockedDelegation) {
    auto q = pessimistic_bound(BigRational(272), make_rational(135, 2), BigRational(540), 1);
    EXPECT_EQ(q.coefficient, make_rational(409, 2));
    EXPECT_EQ(q.base, make_rational(1, 2));
    EXPECT_EQ(q.exponent, 2 * make_rational(945, 2) / make_rational(409, 2));
}

TEST(Pessimistic, AtMostAgreesWithInterval) {
    for (long k = 1; k <= 8; ++k)
        for (long b = 0; b < k; ++b)
            for (long d = b; d <= 8; ++d) {
                auto pb = pessimistic_bound(k, b, d, 1);
                auto iv = pb.interval(256);
                EXPECT_TRUE(pb.at_most(iv.upper()));
                if (iv.lower() > 0) {
                    EXPECT_FALSE(pb.at_most(iv.lower() - make_rational(1, 1000000)));
                }
            }
}

TEST(Pessimistic, MonotoneOnGrid) {
    auto val = [](long k, long b, long d, int t) { return pessimistic_bound(k, b, d, t).interval(128); };
    for (int t = 1; t <= 3; ++t)
        for (long k = 1; k <= 15; ++k)
            for (long d = 0; d <= 15; ++d)
                for (long b = 0; b <= std::min(k, d); ++b) {
                    auto f = val(k, b, d, t);
                    EXPECT_FALSE(val(k + 1, b, d, t).certainly_lt(f)) << k << " " << b << " " << d << " " << t;
                    EXPECT_FALSE(f.certainly_lt(val(k, b, d + 1, t))) << k << " " << b << " " << d << " " << t;
                    if (b + 1 <= d && d >= k) {
                        EXPECT_FALSE(f.certainly_lt(val(k, b + 1, d, t))) << k << " " << b << " " << d;
                    }
                }
}

TEST(Pessimistic, BlockedMonotonicityNeedsDegreeAtLeastK) {
    // below deg = k the exponent shrinks faster than the coefficient
    auto f0 = pessimistic_bound(3, 0, 1, 1).interval(128);
    auto f1 = pessimistic_bound(3, 1, 1, 1).interval(128);
    EXPECT_TRUE(f0.certainly_lt(f1));
}

TEST(Conditional, CycleExample) {
    auto r = conditional_expectation_check(zoo("c5"), ListAssignment::uniform(5, 3), 0, 1, 100);
    EXPECT_TRUE(r.pass());
    EXPECT_EQ(r.c0_count, 6u);
    EXPECT_EQ(r.unconditional, make_rational(5, 4));
    bool found = false;
    for (const auto& e : r.entries) {
        if (e.c0[2] == 1 && e.c0[3] == 2) {
            found = true;
            EXPECT_EQ(e.expectation, make_rational(5, 4));
            EXPECT_TRUE(e.pass);
        }
    }
    EXPECT_TRUE(found);
    EXPECT_TRUE(pessimistic_bound(3, 0, 2, 1).at_most(make_rational(5, 4)));
}

TEST(Conditional, StarMeetsBoundWithEquality) {
    // three leaves with lists {1,2}: E[X] = 1/4 = 2 (1/2)^3
    auto r = conditional_expectation_check(zoo("star:3"), ListAssignment::uniform(4, 2), 0, 1);
    EXPECT_TRUE(r.pass());
    EXPECT_EQ(r.unconditional, make_rational(1, 4));
    EXPECT_EQ(pessimistic_bound(2, 0, 3, 1).interval(128).lower_double(), 0.25);
}

TEST(Conditional, IsolatedVertex) {
    auto r = conditional_expectation_check(Graph(2), lists_of({{1, 2, 3}, {1}}), 0, 1);
    EXPECT_TRUE(r.pass());
    EXPECT_EQ(r.unconditional, 3);
}

TEST(Conditional, RejectsTriangles) {
    EXPECT_THROW(conditional_expectation_check(complete_graph(3), ListAssignment::uniform(3, 3), 0, 1),
                 NotTriangleFreeError);
}

TEST(Invariants, RatioEqualsExpectedAvailable) {
    Rng rng(17);
    for (int n = 1; n <= 6; ++n) {
        for (const Graph& g : connected_graphs(n)) {
            auto L = random_lists(n, 1, 3, 4, rng);
            for (Vertex v = 0; v < n; ++v) {
                const Vertex rm[] = {v};
                if (count_list_colorings(g.without(rm).first, L.restrict(g.without(rm).second)) == 0) continue;
                auto rep = ratio_report({g, L, v, 1, BigRational(1)});
                EXPECT_EQ(rep.ratio, rep.expected_available);
                for (const auto& p : rep.few_color_probability) {
                    EXPECT_GE(p, 0);
                    EXPECT_LE(p, 1);
                }
                EXPECT_TRUE(self_reducibility_check(g, L, v).pass);
            }
        }
    }
}

TEST(Invariants, FewColorsAndConditionalOnRandomGraphs) {
    Rng rng(23);
    int triangle_free = 0;
    for (int i = 0; i < 400; ++i) {
        const int n = 2 + static_cast<int>(rng.below(6));
        Graph g = random_graph(n, 0.45, rng);
        auto L = random_lists(n, 1, 3, 4, rng);
        const Vertex v = static_cast<Vertex>(rng.below(static_cast<std::uint64_t>(n)));
        for (int t = 1; t <= 2; ++t) {
            for (Vertex u : g.neighbors(v)) EXPECT_TRUE(few_colors_event_check(g, L, v, u, t).pass);
            if (is_triangle_free(g)) {
                auto r = conditional_expectation_check(g, L, v, t);
                EXPECT_TRUE(r.pass()) << encode_graph6(g);
                if (t == 1) ++triangle_free;
            }
        }
    }
    EXPECT_GT(triangle_free, 50);
}

TEST(Jensen, AverageOfBoundsDominatesBoundAtAverage) {
    Rng rng(31);
    int applicable = 0;
    for (int i = 0; i < 300; ++i) {
        const int n = 3 + static_cast<int>(rng.below(6));
        Graph g = random_graph(n, 0.5, rng);
        if (!is_triangle_free(g)) continue;
        auto L = random_lists(n, 1, 3, 4, rng);
        const Vertex v = static_cast<Vertex>(rng.below(static_cast<std::uint64_t>(n)));
        auto r = jensen_check(g, L, v);
        if (!r.applicable) continue;
        ++applicable;
        EXPECT_FALSE(r.violation);
        EXPECT_FALSE(r.mean_of_bounds.certainly_lt(r.bound_at_mean));
    }
    EXPECT_GT(applicable, 20);
}

TEST(MonteCarlo, CycleEstimates) {
    auto r = monte_carlo_ratio(zoo("c5"), ListAssignment::uniform(5, 3), 0, 1, 10000, 5);
    EXPECT_NEAR(r.mean_available, 1.25, 0.05);
    ASSERT_TRUE(r.exact_available);
    EXPECT_EQ(*r.exact_available, make_rational(5, 4));
    for (double f : r.few_color_frequency) EXPECT_EQ(f, 0.0);
    for (const auto& q : r.exact_few_color) EXPECT_EQ(q, 0);
}

TEST(MonteCarlo, IsolatedVertexIsExact) {
    auto r = monte_carlo_ratio(Graph(1), lists_of({{4, 7, 9}}), 0, 1, 100, 1);
    EXPECT_EQ(r.mean_available, 3.0);
    EXPECT_EQ(*r.exact_available, 3);
}

TEST(MonteCarlo, Deterministic) {
    auto a = monte_carlo_ratio(zoo("petersen"), ListAssignment::uniform(10, 3), 0, 1, 500, 9);
    auto b = monte_carlo_ratio(zoo("petersen"), ListAssignment::uniform(10, 3), 0, 1, 500, 9);
    EXPECT_EQ(a.to_json(), b.to_json());
}

TEST(Report, JsonUsesExactRationals) {
    auto rep = ratio_report({zoo("c5"), ListAssignment::uniform(5, 3), 0, 1, make_rational(5, 4)});
    auto j = rep.to_json();
    EXPECT_EQ(j["ratio"]["num"], "5");
    EXPECT_EQ(j["ratio"]["den"], "4");
    EXPECT_EQ(j["blocked_status"], "pass");
}
