#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "support.hpp"

using namespace kempe;
using namespace testing_support;

namespace
{

void expect_reaches(const Graph& g, const Coloring& from, const Trace& t, const Coloring& to)
{
    Verdict v = verify_trace(g, from.with_palette(to.palette() + 1), t, to.with_palette(to.palette() + 1));
    EXPECT_TRUE(v.ok) << v.diagnostic;
}

}

TEST(AlignClass, AlreadyAligned)
{
    Graph g = complete_graph(4);
    Coloring c = oracle::enumerate(g, 4).front();
    Budget b;
    auto r = align_class(g, c, color_class(c, 1), 1, b);
    ASSERT_TRUE(r);
    EXPECT_TRUE(r->trace.empty());
    EXPECT_EQ(r->final, c);
}

TEST(AlignClass, C4SwapsTheAlternatingCycle)
{
    // e1..e4 around 0-1-2-3-0, beta = (1,2,1,2), palette 3 so each vertex
    // misses exactly color 3. Target: M = {e2, e4} in color 1.
    Graph g = cycle_graph(4);
    Coloring c = colored(g, 3, {{0, 1, 1}, {1, 2, 2}, {2, 3, 1}, {0, 3, 2}});
    EdgeSet m{g.edge_id(1, 2), g.edge_id(0, 3)};
    std::sort(m.begin(), m.end());
    EXPECT_EQ(defect(c, std::vector<char>{0, 1, 1, 0}, 1), (Defect{2, 2}));
    Budget b;
    AlignStats stats;
    auto r = align_class(g, c, m, 1, b, &stats);
    ASSERT_TRUE(r);
    ASSERT_EQ(r->trace.size(), 1u);
    EXPECT_EQ(r->trace[0].a, 1);
    EXPECT_EQ(r->trace[0].b, 2);
    EXPECT_EQ(color_class(r->final, 1), m);
}

TEST(AlignClass, Preconditions)
{
    Graph g = cycle_graph(4);
    Coloring two = colored(g, 2, {{0, 1, 1}, {1, 2, 2}, {2, 3, 1}, {0, 3, 2}});
    Budget b;
    EXPECT_THROW(align_class(g, two, {0, 3}, 1, b), regime_error);
    Coloring c = two.with_palette(3);
    EXPECT_THROW(align_class(g, c, {0, 1}, 1, b), contract_error);
}

TEST(AlignClass, EveryTargetClassOnPrism)
{
    Graph g = prism();
    auto starts = oracle::enumerate(g, 4);
    auto targets = oracle::enumerate(g, 3);
    std::mt19937_64 rng(9);
    for (int round = 0; round < 200; ++round)
    {
        const Coloring& c = starts[rng() % starts.size()];
        const Coloring& a = targets[rng() % targets.size()];
        Color col = static_cast<Color>(1 + rng() % 3);
        Budget b;
        auto r = align_class(g, c, color_class(a, col), col, b);
        ASSERT_TRUE(r);
        EXPECT_EQ(color_class(r->final, col), color_class(a, col));
        EXPECT_EQ(replay(g, c, r->trace), r->final);
    }
}

TEST(ToTarget, AlreadyEqual)
{
    Graph g = complete_graph(3);
    Coloring a = oracle::enumerate(g, 3).front();
    Budget b;
    auto t = to_target(g, a.with_palette(4), a, b);
    ASSERT_TRUE(t);
    EXPECT_TRUE(t->empty());
    auto same = to_target(g, a, a, b);
    ASSERT_TRUE(same);
    EXPECT_TRUE(same->empty());
}

TEST(ToTarget, TriangleEveryPair)
{
    Graph g = complete_graph(3);
    auto starts = oracle::enumerate(g, 4);
    auto targets = oracle::enumerate(g, 3);
    ASSERT_EQ(starts.size(), 24u);
    ASSERT_EQ(targets.size(), 6u);
    for (const Coloring& a : targets)
        for (const Coloring& c : starts)
        {
            Budget b;
            auto t = to_target(g, c, a, b);
            ASSERT_TRUE(t);
            expect_reaches(g, c, *t, a);
        }
}

TEST(ToTarget, PathThroughItsRegularization)
{
    Graph g = path_graph(3);
    auto targets = oracle::enumerate(g, 2);
    for (const Coloring& a : targets)
        for (const Coloring& c : oracle::enumerate(g, 3))
        {
            Budget b;
            auto t = to_target(g, c, a, b);
            ASSERT_TRUE(t);
            expect_reaches(g, c, *t, a);
        }
}

TEST(ToTarget, Contracts)
{
    Graph g = complete_graph(3);
    Coloring a = oracle::enumerate(g, 3).front();
    Budget b;
    EXPECT_THROW(to_target(g, a.with_palette(5), a, b), contract_error);
    Coloring partial(3, g.edge_count());
    EXPECT_THROW(to_target(g, partial, a, b), contract_error);
    Graph k4 = complete_graph(4);
    EXPECT_THROW(to_target(k4, oracle::enumerate(k4, 4).front(), Coloring(2, {1, 2, 1, 2, 1, 2}), b), contract_error);
}

TEST(ToTarget, ZeroBudgetFails)
{
    Graph g = prism();
    Coloring c = oracle::enumerate(g, 4).back();
    Coloring a = oracle::enumerate(g, 3).front();
    Budget b{0, 32, 0};
    EXPECT_FALSE(to_target(g, c, a, b));
}

TEST(ToTarget, DoesNotDependOnTargetColorNames)
{
    std::mt19937_64 rng(21);
    auto graphs = corpus::connected_graphs();
    for (int round = 0; round < 100; ++round)
    {
        const Graph& g = graphs[rng() % graphs.size()];
        int chi = oracle::chromatic_index(g);
        auto c = oracle::random_coloring(g, chi + 1, rng);
        auto a = oracle::random_coloring(g, chi, rng);
        ASSERT_TRUE(c && a);
        std::vector<Color> pi(static_cast<std::size_t>(chi) + 2);
        std::iota(pi.begin(), pi.end(), 0);
        std::shuffle(pi.begin() + 1, pi.begin() + 1 + chi, rng);
        Budget b1, b2;
        auto direct = to_target(g, rename_colors(*c, pi), rename_colors(*a, pi), b1);
        auto base = to_target(g, *c, *a, b2);
        ASSERT_TRUE(direct && base);
        EXPECT_EQ(*direct, rename_colors(*base, pi));
    }
}

TEST(ToTarget, PlanMatchesOneShotCall)
{
    Graph g = parse_graph("0 1\n1 2\n2 0\n2 3");
    auto targets = oracle::enumerate(g, 3);
    auto plan = prepare_target(g, targets[1]);
    for (const Coloring& c : oracle::enumerate(g, 4))
    {
        Budget b1, b2;
        EXPECT_EQ(to_target(plan, c, b1), to_target(g, c, targets[1], b2));
    }
}

TEST(Equivalence, SameColoring)
{
    Graph g = prism();
    Coloring c = oracle::enumerate(g, 4)[17];
    Coloring a = oracle::enumerate(g, 3).front();
    Budget b;
    auto t = equivalence(g, c, c, a, b);
    ASSERT_TRUE(t);
    EXPECT_EQ(replay(g, c, *t), c);
}

TEST(Equivalence, TriangleAllPairs)
{
    Graph g = complete_graph(3);
    auto all = oracle::enumerate(g, 4);
    Coloring a = oracle::enumerate(g, 3).front();
    for (const Coloring& c1 : all)
        for (const Coloring& c2 : all)
        {
            Budget b;
            auto t = equivalence(g, c1, c2, a, b);
            ASSERT_TRUE(t);
            EXPECT_TRUE(verify_trace(g, c1, *t, c2).ok);
        }
}

TEST(Equivalence, RandomCorpusPairs)
{
    std::mt19937_64 rng(8);
    auto graphs = corpus::connected_graphs();
    for (int round = 0; round < 200; ++round)
    {
        const Graph& g = graphs[rng() % graphs.size()];
        int chi = oracle::chromatic_index(g);
        auto c1 = oracle::random_coloring(g, chi + 1, rng);
        auto c2 = oracle::random_coloring(g, chi + 1, rng);
        auto a = oracle::random_coloring(g, chi, rng);
        Budget b;
        auto t = equivalence(g, *c1, *c2, *a, b);
        ASSERT_TRUE(t);
        EXPECT_TRUE(verify_trace(g, *c1, *t, *c2).ok);
    }
}
