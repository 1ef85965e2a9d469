#include <gtest/gtest.h>

#include <functional>
#include <map>

#include "chromcert/choosability.hpp"
#include "chromcert/coloring.hpp"
#include "chromcert/graph6.hpp"
#include "chromcert/graph_enum.hpp"
#include "chromcert/sampling.hpp"
#include "chromcert/zoo.hpp"

using namespace chromcert;

namespace {

ListAssignment random_lists(int n, int min_size, int max_size, int universe, Rng& rng) {
    std::vector<ColorSet> ls(n);
    for (auto& l : ls) {
        const long size = rng.between(min_size, max_size);
        std::vector<Color> pool(universe);
        for (int i = 0; i < universe; ++i) pool[i] = i + 1;
        for (long i = 0; i < size; ++i) {
            auto j = static_cast<std::size_t>(i) + rng.below(static_cast<std::uint64_t>(universe - i));
            std::swap(pool[static_cast<std::size_t>(i)], pool[j]);
            l.push_back(pool[static_cast<std::size_t>(i)]);
        }
    }
    return ListAssignment(std::move(ls));
}

/// Independent brute force: try every assignment of list colors.
bool naive_colorable(const Graph& g, const std::vector<std::uint32_t>& lists) {
    const int n = g.order();
    std::vector<int> color(n, -1);
    std::function<bool(int)> rec = [&](int v) {
        if (v == n) return true;
        for (int c = 0; c < 32; ++c) {
            if (!((lists[v] >> c) & 1u)) continue;
            bool ok = true;
            for (Vertex u : g.neighbors(v))
                if (u < v && color[u] == c) ok = false;
            if (!ok) continue;
            color[v] = c;
            if (rec(v + 1)) return true;
        }
        return false;
    };
    return rec(0);
}

/// Independent brute force: every list assignment with the given sizes over a
/// universe of sum(sizes) colors.
bool naive_choosable(const Graph& g, const std::vector<int>& sizes) {
    int universe = 0;
    for (int s : sizes) universe += s;
    std::vector<std::vector<std::uint32_t>> options(g.order());
    for (Vertex v = 0; v < g.order(); ++v)
        for (std::uint32_t m = 0; m < (1u << universe); ++m)
            if (std::popcount(m) == sizes[v]) options[v].push_back(m);
    std::vector<std::uint32_t> lists(g.order());
    std::function<bool(int)> rec = [&](int v) {
        if (v == g.order()) return naive_colorable(g, lists);
        for (auto m : options[v]) {
            lists[v] = m;
            if (!rec(v + 1)) return false;
        }
        return true;
    };
    return rec(0);
}

}  // namespace

TEST(Count, Examples) {
    EXPECT_EQ(count_list_colorings(zoo("c5"), ListAssignment::uniform(5, 3)), 30);
    EXPECT_EQ(count_list_colorings(Graph(1), ListAssignment({{1, 2}})), 2);
    EXPECT_EQ(count_list_colorings(Graph(2, {{0, 1}}), ListAssignment({{1}, {1}})), 0);
}

TEST(Count, EmptyListGivesZero) {
    EXPECT_EQ(count_list_colorings(zoo("path:3"), ListAssignment({{1}, {}, {2}})), 0);
}

TEST(Count, MatchesPlainCounterAndOtherOrders) {
    Rng rng(1);
    for (int i = 0; i < 200; ++i) {
        const int n = 1 + static_cast<int>(rng.below(9));
        Graph g = random_graph(n, 0.4, rng);
        auto L = random_lists(n, 1, 4, 5, rng);
        std::vector<Vertex> rev(n);
        for (int v = 0; v < n; ++v) rev[v] = n - 1 - v;
        const auto c = count_list_colorings(g, L);
        EXPECT_EQ(c, count_list_colorings_plain(g, L));
        EXPECT_EQ(c, count_list_colorings_plain(g, L, rev));
        BigInt enumerated = 0;
        for_each_list_coloring(g, L, [&](const PartialColoring& col) {
            EXPECT_TRUE(col.is_total() && col.is_proper(g) && col.respects(L));
            ++enumerated;
            return true;
        });
        EXPECT_EQ(c, enumerated);
    }
}

TEST(Count, ChromaticPolynomialOfCycles) {
    for (int m = 3; m <= 11; ++m) {
        std::vector<Edge> es;
        for (int i = 0; i < m; ++i) es.emplace_back(i, (i + 1) % m);
        Graph c(m, es);
        for (int k = 1; k <= 4; ++k) {
            BigInt expected = pow(BigInt(k - 1), m) + ((m % 2) ? -1 : 1) * BigInt(k - 1);
            EXPECT_EQ(count_list_colorings(c, ListAssignment::uniform(m, k)), expected) << m << " " << k;
        }
    }
}

TEST(Count, CounterConsistencyAtEveryVertex) {
    Rng rng(2);
    for (int n = 1; n <= 6; ++n) {
        for (const Graph& g : all_graphs(n)) {
            auto L = random_lists(n, 2, 3, 4, rng);
            const auto total = count_list_colorings(g, L);
            for (Vertex v = 0; v < n; ++v) {
                auto [h, keep] = g.without(v);
                BigInt sum = 0;
                for_each_list_coloring(h, L.restrict(keep), [&](const PartialColoring& c) {
                    PartialColoring full(n);
                    for (std::size_t i = 0; i < keep.size(); ++i) full.assign(keep[i], c[static_cast<Vertex>(i)]);
                    sum += static_cast<long>(residual_list(g, L, full, v).size());
                    return true;
                });
                EXPECT_EQ(total, sum);
                EXPECT_LE(total, count_list_colorings(h, L.restrict(keep)) * static_cast<long>(L[v].size()));
            }
        }
    }
}

TEST(Count, ComponentMultiplicativity) {
    Rng rng(3);
    for (int i = 0; i < 50; ++i) {
        Graph a = random_graph(1 + static_cast<int>(rng.below(6)), 0.5, rng);
        Graph b = random_graph(1 + static_cast<int>(rng.below(6)), 0.5, rng);
        auto la = random_lists(a.order(), 1, 3, 4, rng);
        auto lb = random_lists(b.order(), 1, 3, 4, rng);
        std::vector<ColorSet> both = la.lists();
        both.insert(both.end(), lb.lists().begin(), lb.lists().end());
        EXPECT_EQ(count_list_colorings(a.disjoint_union(b), ListAssignment(both)),
                  count_list_colorings(a, la) * count_list_colorings(b, lb));
    }
}

TEST(Chromatic, Examples) {
    EXPECT_EQ(chromatic_number(zoo("chvatal")), 4);
    EXPECT_EQ(chromatic_number(zoo("c7")), 3);
    EXPECT_EQ(chromatic_number(zoo("k33")), 2);
    EXPECT_EQ(chromatic_number(Graph(0)), 0);
    EXPECT_EQ(chromatic_number(Graph(3)), 1);
}

TEST(Chromatic, LeastKWithPositiveCount) {
    for (int n = 1; n <= 6; ++n) {
        for (const Graph& g : all_graphs(n)) {
            int k = 1;
            while (count_list_colorings(g, ListAssignment::uniform(n, k)) == 0) ++k;
            EXPECT_EQ(chromatic_number(g), k);
        }
    }
}

TEST(Chromatic, SizeCap) { EXPECT_THROW(chromatic_number(Graph(65)), SizeCapError); }

TEST(Colorable, Examples) {
    Graph edge(2, {{0, 1}});
    auto w = is_L_colorable(edge, ListAssignment({{1, 2}, {1}}));
    ASSERT_TRUE(w);
    EXPECT_EQ((*w)[0], 2);
    EXPECT_EQ((*w)[1], 1);
    EXPECT_FALSE(is_L_colorable(edge, ListAssignment({{1}, {1}})));
    EXPECT_FALSE(is_L_colorable(zoo("c5"), ListAssignment::uniform(5, 2)));
}

TEST(Residual, Examples) {
    Graph edge(2, {{0, 1}});
    PartialColoring c(2);
    c.assign(0, 2);
    EXPECT_EQ(residual_list(edge, ListAssignment({{1}, {1, 2, 3}}), c, 1), (ColorSet{1, 3}));
    EXPECT_EQ(residual_list(Graph(1), ListAssignment(std::vector<ColorSet>{{1}}), PartialColoring(1), 0), (ColorSet{1}));
    Graph path = zoo("path:3");  // 0 - 1 - 2
    PartialColoring d(3);
    d.assign(0, 1);
    d.assign(2, 2);
    EXPECT_TRUE(residual_list(path, ListAssignment({{1}, {1, 2}, {2}}), d, 1).empty());
}

TEST(DegreeLists, Examples) {
    auto c5 = degree_list_assignment(zoo("c5"), KSpec::half());
    for (Vertex v = 0; v < 5; ++v) EXPECT_EQ(c5[v], (ColorSet{1, 2, 3}));
    auto star = degree_list_assignment(zoo("star:3"), KSpec::half());
    EXPECT_EQ(star[0].size(), 3u);
    for (Vertex v = 1; v <= 3; ++v) EXPECT_EQ(star[v].size(), 2u);
    auto pet = degree_list_assignment(zoo("petersen"), KSpec::constant(2));
    for (Vertex v = 0; v < 10; ++v) EXPECT_EQ(pet[v], (ColorSet{1, 2}));
}

TEST(DegreeLists, RandomizedPolicy) {
    Graph g = zoo("petersen");
    auto a = degree_list_assignment(g, KSpec::half(), UniversePolicy::randomized, 7, 6);
    auto b = degree_list_assignment(g, KSpec::half(), UniversePolicy::randomized, 7, 6);
    EXPECT_EQ(a, b);
    for (Vertex v = 0; v < 10; ++v) {
        EXPECT_EQ(a[v].size(), 3u);
        for (Color c : a[v]) EXPECT_TRUE(c >= 1 && c <= 6);
    }
}

TEST(ListChromatic, Examples) {
    EXPECT_EQ(list_chromatic_number(zoo("k33"), 4), 3);
    EXPECT_EQ(list_chromatic_number(zoo("complete_bipartite:2,2"), 4), 2);
    EXPECT_EQ(list_chromatic_number(Graph(1), 4), 1);
    EXPECT_EQ(list_chromatic_number(zoo("complete_bipartite:2,4"), 4), 3);
}

TEST(ListChromatic, BadAssignmentIsAWitness) {
    auto r = check_choosable(zoo("k33"), std::vector<int>(6, 2));
    ASSERT_FALSE(r.choosable);
    ASSERT_TRUE(r.bad_assignment);
    for (Vertex v = 0; v < 6; ++v) EXPECT_EQ((*r.bad_assignment)[v].size(), 2u);
    EXPECT_FALSE(is_L_colorable(zoo("k33"), *r.bad_assignment));
}

TEST(ListChromatic, AtLeastChromaticNumber) {
    for (int n = 1; n <= 5; ++n)
        for (const Graph& g : all_graphs(n)) EXPECT_GE(list_chromatic_number(g, 4), chromatic_number(g));
}

TEST(ListChromatic, AgreesWithNaiveBruteForce) {
    Rng rng(4);
    for (int n = 1; n <= 4; ++n) {
        for (const Graph& g : all_graphs(n)) {
            for (int rep = 0; rep < 3; ++rep) {
                std::vector<int> sizes(n);
                for (int& s : sizes) s = static_cast<int>(rng.between(1, 2));
                EXPECT_EQ(check_choosable(g, sizes).choosable, naive_choosable(g, sizes)) << encode_graph6(g);
            }
        }
    }
    for (const Graph& g : all_graphs(5)) {
        std::vector<int> sizes(5, 1);
        for (int i = 0; i < 2; ++i) sizes[rng.below(5)] = 2;
        EXPECT_EQ(check_choosable(g, sizes).choosable, naive_choosable(g, sizes)) << encode_graph6(g);
    }
}

TEST(ListChromatic, SizeCap) {
    EXPECT_THROW(list_chromatic_number(zoo("clebsch"), 3), SizeCapError);
}

TEST(Sampler, TwoColoringsOfC4AreBalanced) {
    Graph c4 = zoo("complete_bipartite:2,2");
    auto samples = sample_colorings(c4, ListAssignment::uniform(4, 2), 0, 10000);
    std::map<std::vector<Color>, int> freq;
    for (const auto& s : samples) {
        EXPECT_TRUE(s.is_proper(c4));
        ++freq[s.colors()];
    }
    ASSERT_EQ(freq.size(), 2u);
    for (const auto& [col, f] : freq) {
        EXPECT_GE(f, 4700);
        EXPECT_LE(f, 5300);
    }
}

TEST(Sampler, SingleVertexIsUniform) {
    auto samples = sample_colorings(Graph(1), ListAssignment({{1, 2, 3}}), 1, 10000);
    std::map<Color, int> freq;
    for (const auto& s : samples) ++freq[s[0]];
    ASSERT_EQ(freq.size(), 3u);
    for (const auto& [c, f] : freq) EXPECT_NEAR(f / 10000.0, 1.0 / 3.0, 0.02);
}

TEST(Sampler, NoColoringIsAnError) {
    EXPECT_THROW(uniform_sample_coloring(Graph(2, {{0, 1}}), ListAssignment({{1}, {1}}), 0), NoColoringError);
}

TEST(Sampler, SeedDeterminism) {
    Graph g = zoo("petersen");
    auto L = ListAssignment::uniform(10, 3);
    EXPECT_EQ(uniform_sample_coloring(g, L, 99), uniform_sample_coloring(g, L, 99));
    EXPECT_EQ(sample_colorings(g, L, 5, 20), sample_colorings(g, L, 5, 20));
}

TEST(ListAssignmentJson, RoundTrip) {
    ListAssignment L({{1, 2}, {3}, {0, 5, 9}});
    EXPECT_EQ(ListAssignment::from_json(L.to_json(), 3), L);
    EXPECT_THROW(ListAssignment::from_json(L.to_json(), 4), Error);
}

TEST(KSpecValues, NamedMembers) {
    EXPECT_EQ(KSpec::half()(2), 3);
    EXPECT_EQ(KSpec::half()(3), 3);
    EXPECT_EQ(KSpec::bipartite_half()(3), 3);
    EXPECT_EQ(KSpec::bipartite_half()(1), 2);
    EXPECT_EQ(KSpec::three_quarter()(3), 3);
    EXPECT_EQ(KSpec::two_thirds_doubled()(4), 4);
    EXPECT_EQ(KSpec::constant(5)(100), 5);
    EXPECT_EQ(KSpec::parse("half"), KSpec::half());
    EXPECT_EQ(KSpec::parse(KSpec::constant(7).name()), KSpec::constant(7));
    for (long x = 0; x < 200; ++x) {
        EXPECT_LE(KSpec::half()(x), KSpec::half()(x + 1));
        EXPECT_GE(KSpec::three_quarter()(x), 0);
    }
}
