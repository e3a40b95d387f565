#ifndef KEMPE_REGULARIZE_HPP
#define KEMPE_REGULARIZE_HPP

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "kempe/chain.hpp"

namespace kempe
{

struct DoublingStep
{
    /// Vertex count of the graph before this step; copy 1 of vertex x is x + this.
    std::size_t vertex_count = 0;
    /// Minimum-degree vertices joined to their copies.
    std::vector<Vertex> matched;
};

/// How the original graph sits inside its chi-regular supergraph.
///
/// Level i maps (side, x) to side * steps[i].vertex_count + x, so the
/// original vertices keep their ids at every level, and the original edges
/// are exactly the supergraph edges with both endpoints below
/// original.vertex_count().
struct Embedding
{
    Graph original;
    std::size_t chi = 0;
    std::vector<DoublingStep> steps;
    /// stages[0] is the original, stages.back() the supergraph.
    std::vector<Graph> stages;

    const Graph& supergraph() const { return stages.back(); }

    Vertex map(std::size_t level, int side, Vertex x) const
    {
        return side == 0 ? x : x + steps.at(level).vertex_count;
    }

    bool is_original_edge(const Edge& e) const { return e.v < original.vertex_count(); }
};

inline Graph double_with_matching(const Graph& g, const std::vector<Vertex>& matched)
{
    const std::size_t n = g.vertex_count();
    std::vector<Edge> edges;
    edges.reserve(2 * g.edge_count() + matched.size());
    for (const Edge& e : g.edges())
    {
        edges.push_back(e);
        edges.emplace_back(e.u + n, e.v + n);
    }
    for (Vertex x : matched)
        edges.emplace_back(x, x + n);
    return Graph(2 * n, std::move(edges));
}

/// Doubles the graph and matches minimum-degree vertices to their copies
/// until it is chi-regular; each step raises the minimum degree by one.
inline std::pair<Graph, Embedding> regularize(const Graph& g, std::size_t chi)
{
    if (chi < g.max_degree())
        throw contract_error("chi " + std::to_string(chi) + " is below the maximum degree "
            + std::to_string(g.max_degree()));
    Embedding emb;
    emb.original = g;
    emb.chi = chi;
    emb.stages.push_back(g);
    while (g.vertex_count() > 0 && emb.stages.back().min_degree() < chi)
    {
        const Graph& cur = emb.stages.back();
        DoublingStep step;
        step.vertex_count = cur.vertex_count();
        std::size_t delta = cur.min_degree();
        for (Vertex x = 0; x < cur.vertex_count(); ++x)
            if (cur.degree(x) == delta)
                step.matched.push_back(x);
        Graph next = double_with_matching(cur, step.matched);
        emb.steps.push_back(std::move(step));
        emb.stages.push_back(std::move(next));
    }
    return {emb.supergraph(), std::move(emb)};
}

/// Copies c onto both sides at each level; a matching edge takes the lowest
/// color missing at its endpoint (both endpoints miss the same colors).
inline Coloring lift_coloring(const Coloring& c, const Embedding& emb)
{
    check_fits(emb.original, c);
    Coloring cur = c;
    for (std::size_t level = 0; level < emb.steps.size(); ++level)
    {
        const Graph& below = emb.stages[level];
        const Graph& above = emb.stages[level + 1];
        const std::size_t n = emb.steps[level].vertex_count;
        Coloring next(c.palette(), above.edge_count());
        for (EdgeId e = 0; e < below.edge_count(); ++e)
        {
            const Edge& be = below.edge(e);
            next.set(above.edge_id(be.u, be.v), cur[e]);
            next.set(above.edge_id(be.u + n, be.v + n), cur[e]);
        }
        for (Vertex x : emb.steps[level].matched)
        {
            ColorMask free = missing_mask(below, cur, x);
            if (!free)
                throw contract_error("no free color for matching edge at vertex " + std::to_string(x));
            next.set(above.edge_id(x, x + n), std::countr_zero(free));
        }
        cur = std::move(next);
    }
    return cur;
}

/// Supergraph edge id of each original edge.
inline std::vector<EdgeId> original_edge_ids(const Embedding& emb)
{
    std::vector<EdgeId> ids;
    ids.reserve(emb.original.edge_count());
    for (const Edge& e : emb.original.edges())
        ids.push_back(emb.supergraph().edge_id(e.u, e.v));
    return ids;
}

inline Coloring restrict_coloring(const Coloring& super, const Embedding& emb)
{
    check_fits(emb.supergraph(), super);
    auto ids = original_edge_ids(emb);
    Coloring out(super.palette(), ids.size());
    for (EdgeId e = 0; e < ids.size(); ++e)
        out.set(e, super[ids[e]]);
    return out;
}

/// Projects a supergraph trace (starting at super_start) onto the original
/// graph: each supergraph swap becomes one swap per component of its chain's
/// intersection with the original edges.
inline Trace project_trace(const Trace& t, const Embedding& emb, const Coloring& super_start)
{
    const Graph& big = emb.supergraph();
    const Graph& g = emb.original;
    auto ids = original_edge_ids(emb);
    std::vector<EdgeId> to_base(big.edge_count(), g.edge_count());
    for (EdgeId e = 0; e < ids.size(); ++e)
        to_base[ids[e]] = e;

    Coloring up = super_start;
    Coloring down = restrict_coloring(super_start, emb);
    Trace out;
    std::vector<char> marked(g.edge_count(), 0);
    for (const SwapRecord& r : t)
    {
        Chain ch = resolve(big, up, r);
        std::vector<EdgeId> hits;
        for (EdgeId e : ch.edges)
            if (to_base[e] < g.edge_count())
            {
                hits.push_back(to_base[e]);
                marked[to_base[e]] = 1;
            }
        std::sort(hits.begin(), hits.end());
        for (EdgeId e : hits)
        {
            if (marked[e] != 1)
                continue;
            Chain piece = component_at_edge(g, down, e, ch.a, ch.b);
            for (EdgeId pe : piece.edges)
            {
                if (marked[pe] != 1)
                    throw contract_error("projected piece leaves the supergraph chain");
                marked[pe] = 2;
            }
            out.push_back(record_for(g, piece));
            swap_in_place(down, piece.edges, ch.a, ch.b);
        }
        for (EdgeId e : hits)
            marked[e] = 0;
        swap_in_place(up, ch.edges, ch.a, ch.b);
    }
    return out;
}

inline nlohmann::ordered_json embedding_json(const Embedding& emb)
{
    nlohmann::ordered_json j;
    j["chi"] = emb.chi;
    j["original_vertex_count"] = emb.original.vertex_count();
    j["vertex_count"] = emb.supergraph().vertex_count();
    j["vertex_map"] = "level i, side s, vertex x -> s * levels[i].vertex_count + x";
    auto levels = nlohmann::ordered_json::array();
    for (const DoublingStep& s : emb.steps)
    {
        nlohmann::ordered_json level;
        level["vertex_count"] = s.vertex_count;
        level["matched"] = s.matched;
        levels.push_back(level);
    }
    j["levels"] = levels;
    return j;
}

}

#endif
