#include <gtest/gtest.h>

#include <functional>

#include "support.hpp"

using namespace kempe;
using namespace testing_support;

namespace
{

// Cycle fans of every (d+1)-coloring of a d-regular graph.
void for_each_cycle(const Graph& g, const std::function<bool(const Coloring&, const Fan&)>& visit)
{
    int k = static_cast<int>(g.max_degree()) + 1;
    bool stop = false;
    oracle::for_each_coloring(g, k, [&](const std::vector<Color>& cs) {
        Coloring c(k, cs);
        for (Vertex v = 0; v < g.vertex_count() && !stop; ++v)
            for (const Incidence& inc : g.incident(v))
            {
                Fan f = build(g, c, v, inc.edge);
                if (f.shape == FanShape::Cycle && f.edges.front() == inc.edge && visit(c, f))
                {
                    stop = true;
                    break;
                }
            }
        return stop;
    });
}

void expect_inverts(const Graph& g, const Coloring& c, const Fan& f, const InversionOutcome& out)
{
    Coloring target = invert_target(g, c, f);
    EXPECT_EQ(out.final, target);
    EXPECT_EQ(replay(g, c, out.trace), target);
}

}

TEST(InvertTarget, SizeTwo)
{
    Graph g = prism();
    bool found = false;
    for_each_cycle(g, [&](const Coloring& c, const Fan& f) {
        if (f.size() != 2)
            return false;
        Coloring t = invert_target(g, c, f);
        EXPECT_EQ(t[f.edges[0]], c[f.edges[1]]);
        EXPECT_EQ(t[f.edges[1]], c[f.edges[0]]);
        found = true;
        return true;
    });
    EXPECT_TRUE(found);
}

TEST(InvertTarget, InvertOfInvertIsIdentity)
{
    for (const Graph& g : {prism(), k33()})
        for_each_cycle(g, [&](const Coloring& c, const Fan& f) {
            Coloring t = invert_target(g, c, f);
            EXPECT_TRUE(is_proper(g, t));
            Fan back = build(g, t, f.center, f.edges.back());
            EXPECT_EQ(back.shape, FanShape::Cycle);
            EXPECT_EQ(back.edges, std::vector<EdgeId>(f.edges.rbegin(), f.edges.rend()));
            EXPECT_EQ(invert_target(g, t, back), c);
            // Only fan edges change.
            for (EdgeId e = 0; e < g.edge_count(); ++e)
            {
                if (std::find(f.edges.begin(), f.edges.end(), e) == f.edges.end())
                {
                    EXPECT_EQ(t[e], c[e]);
                }
            }
            return false;
        });
}

TEST(InvertTarget, RejectsNonCycle)
{
    Graph g = k4();
    Coloring c = k4_coloring(g);
    EXPECT_THROW(invert_target(g, c, build(g, c, 0, g.edge_id(0, 1))), contract_error);
}

TEST(InvertPath, K4FullInversion)
{
    Graph g = k4();
    Coloring c = k4_coloring(g);
    Fan f = build(g, c, 0, g.edge_id(0, 1));
    InversionOutcome out = invert_path(g, c, f);
    Coloring want = c;
    want.set(g.edge_id(0, 1), 2);
    want.set(g.edge_id(0, 2), 4);
    EXPECT_EQ(out.final, want);
    EXPECT_EQ(missing_colors(g, out.final, 0), (std::vector<Color>{1}));
    EXPECT_EQ(out.trace.size(), 2u);
    EXPECT_EQ(replay(g, c, out.trace), want);
    EXPECT_TRUE(is_proper(g, out.final));
}

TEST(InvertPath, SingleEdge)
{
    Graph g = k4();
    Coloring c = k4_coloring(g);
    Fan f = build(g, c, 0, g.edge_id(0, 2));
    InversionOutcome out = invert_path(g, c, f);
    EXPECT_EQ(out.trace.size(), 1u);
    EXPECT_EQ(missing_colors(g, out.final, 0), (std::vector<Color>{2}));
}

TEST(InvertPath, UpToLastVertexIsOneSwap)
{
    Graph g = k4();
    Coloring c = k4_coloring(g);
    Fan f = build(g, c, 0, g.edge_id(0, 1));
    InversionOutcome out = invert_path(g, c, f, f.vertices.back());
    EXPECT_EQ(out.trace.size(), 1u);
    EXPECT_EQ(out.final[g.edge_id(0, 2)], 4);
    EXPECT_EQ(out.final[g.edge_id(0, 1)], 1);
}

TEST(InvertPath, Errors)
{
    Graph g = k4();
    Coloring c = k4_coloring(g);
    Fan f = build(g, c, 0, g.edge_id(0, 1));
    EXPECT_THROW(invert_path(g, c, f, Vertex{3}), contract_error);
    Coloring moved = c;
    moved.set(g.edge_id(1, 2), 4);
    moved.set(g.edge_id(1, 3), 3);
    EXPECT_THROW(invert_path(g, moved, f), contract_error);
    bool found = false;
    Graph p = prism();
    for_each_cycle(p, [&](const Coloring& x, const Fan& cyc) {
        EXPECT_THROW(invert_path(p, x, cyc), contract_error);
        found = true;
        return true;
    });
    EXPECT_TRUE(found);
}

TEST(InvertCycle, TwoCyclesUseOneSwap)
{
    std::size_t seen = 0;
    for (const Graph& g : {prism(), k33()})
        for_each_cycle(g, [&](const Coloring& c, const Fan& f) {
            if (f.size() != 2)
                return false;
            Budget b;
            auto out = invert_cycle(g, c, f, b);
            EXPECT_TRUE(out);
            if (!out)
                return true;
            EXPECT_EQ(out->strategy_used, InversionStrategy::Size2);
            EXPECT_EQ(out->trace.size(), 1u);
            expect_inverts(g, c, f, *out);
            ++seen;
            return false;
        });
    EXPECT_GT(seen, 0u);
}

TEST(InvertCycle, EveryCycleInvertsOnSmallRegularGraphs)
{
    for (const Graph& g : {prism(), k33()})
        for_each_cycle(g, [&](const Coloring& c, const Fan& f) {
            Budget b;
            auto out = invert_cycle(g, c, f, b);
            EXPECT_TRUE(out);
            if (out)
                expect_inverts(g, c, f, *out);
            return false;
        });
}

TEST(InvertCycle, LiftedThreeCyclesInvert)
{
    for (const Graph& g : {k23(), k23_plus()})
    {
        std::size_t seen = 0;
        scan_lifted_cycles(g, [&](const Graph& big, const Coloring& c, const Fan& f) {
            Budget b;
            auto out = invert_cycle(big, c, f, b);
            EXPECT_TRUE(out);
            if (out)
                expect_inverts(big, c, f, *out);
            return ++seen == 300;
        });
        EXPECT_GT(seen, 0u);
    }
}

TEST(InvertCycle, TightnessReductionOnLooseCycle)
{
    // The reduction step on its own, at a loose position, against the target.
    bool found = scan_lifted_cycles(k23_plus(), [](const Graph& big, const Coloring& c, const Fan& f) {
        auto loose = first_loose_position(big, c, f);
        if (!loose)
            return false;
        Budget b;
        bool searched = false;
        auto t = detail::tightness_reduction(big, c, f, *loose, b, false, searched);
        if (!t)
            return false;
        EXPECT_EQ(replay(big, c, *t), invert_target(big, c, f));
        EXPECT_FALSE(searched);
        return true;
    });
    EXPECT_TRUE(found);
}

TEST(InvertCycle, UnsaturatedEscapeIsPreferred)
{
    bool found = scan_lifted_cycles(k23(), [](const Graph& big, const Coloring& c, const Fan& f) {
        if (is_saturated(big, c, f))
            return false;
        Budget b;
        auto out = invert_cycle(big, c, f, b);
        EXPECT_TRUE(out);
        if (!out)
            return true;
        expect_inverts(big, c, f, *out);
        EXPECT_EQ(out->strategy_used, InversionStrategy::UnsaturatedEscape);
        return true;
    });
    EXPECT_TRUE(found);
}

TEST(InvertCycle, SaturatedLooseCycleUsesReduction)
{
    bool found = scan_lifted_cycles(k23_plus(), [](const Graph& big, const Coloring& c, const Fan& f) {
        if (!is_saturated(big, c, f))
            return false;
        Budget b;
        auto out = invert_cycle(big, c, f, b);
        EXPECT_TRUE(out);
        if (!out)
            return true;
        expect_inverts(big, c, f, *out);
        EXPECT_EQ(out->strategy_used, InversionStrategy::TightnessReduction);
        return true;
    });
    EXPECT_TRUE(found);
}

TEST(InvertCycle, K5CyclesAreNotInvertible)
{
    // K5 is 4-regular with chromatic index 5, so it is outside the regime
    // where cycles invert. Each Kempe chain of a 5-coloring is a Hamiltonian
    // path, every swap just exchanges two color names, and the search rung
    // runs dry.
    Graph g = complete_graph(5);
    auto all = oracle::enumerate(g, 5);
    Fan f = build(g, all.front(), 0, 0);
    ASSERT_EQ(f.shape, FanShape::Cycle);
    EXPECT_TRUE(is_saturated(g, all.front(), f));
    EXPECT_TRUE(is_tight(g, all.front(), f));
    Budget b;
    EXPECT_FALSE(invert_cycle(g, all.front(), f, b));
    EXPECT_GT(b.spent, 0u);
    EXPECT_FALSE(b.exhausted());
    EXPECT_EQ(oracle::shortest_trace(g, 5, all.front(), invert_target(g, all.front(), f)), std::nullopt);
}

TEST(InvertCycle, ZeroBudgetFailsWithoutWrongAnswer)
{
    bool checked = false;
    for_each_cycle(prism(), [&](const Coloring& c, const Fan& f) {
        Budget b{0, 32, 0};
        auto out = invert_cycle(prism(), c, f, b);
        EXPECT_FALSE(out);
        checked = true;
        return true;
    });
    EXPECT_TRUE(checked);
}
