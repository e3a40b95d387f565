#ifndef KEMPE_CHAIN_HPP
#define KEMPE_CHAIN_HPP

#include <algorithm>
#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "kempe/coloring.hpp"
#include "kempe/graph.hpp"

namespace kempe
{

enum class ChainShape
{
    Path,
    EvenCycle
};

/// One maximal connected component of the subgraph of edges colored a or b.
///
/// A component with no edges (a vertex anchor missing both colors) is a
/// Path whose single vertex is its only endpoint.
struct Chain
{
    Color a = 0;
    Color b = 0;
    EdgeSet edges;
    std::vector<Vertex> vertices;
    ChainShape shape = ChainShape::Path;
    std::vector<Vertex> endpoints;

    bool empty() const { return edges.empty(); }
    bool contains_vertex(Vertex v) const { return std::binary_search(vertices.begin(), vertices.end(), v); }
    bool contains_edge(EdgeId e) const { return std::binary_search(edges.begin(), edges.end(), e); }
};

class replay_error : public contract_error
{
public:
    using contract_error::contract_error;
};

namespace detail
{
    inline void check_pair(const Coloring& c, Color a, Color b)
    {
        if (a == b)
            throw contract_error("kempe chain colors must differ");
        if (a < 1 || b < 1 || a > c.palette() || b > c.palette())
            throw contract_error("kempe chain color outside palette");
    }

    // Collects the a/b component reachable from the seed vertices.
    inline Chain grow(const Graph& g, const Coloring& c, std::vector<Vertex> seeds, Color a, Color b)
    {
        Chain ch;
        ch.a = a;
        ch.b = b;
        std::vector<char> seen(g.vertex_count(), 0);
        for (Vertex s : seeds)
            seen[s] = 1;
        std::vector<Vertex> stack = seeds;
        std::vector<Vertex> seen_v = std::move(seeds);
        while (!stack.empty())
        {
            Vertex x = stack.back();
            stack.pop_back();
            for (const Incidence& inc : g.incident(x))
            {
                Color col = c[inc.edge];
                if (col != a && col != b)
                    continue;
                ch.edges.push_back(inc.edge);
                if (!seen[inc.neighbor])
                {
                    seen[inc.neighbor] = 1;
                    seen_v.push_back(inc.neighbor);
                    stack.push_back(inc.neighbor);
                }
            }
        }
        std::sort(ch.edges.begin(), ch.edges.end());
        ch.edges.erase(std::unique(ch.edges.begin(), ch.edges.end()), ch.edges.end());
        std::sort(seen_v.begin(), seen_v.end());
        ch.vertices = std::move(seen_v);

        if (ch.edges.empty())
        {
            ch.shape = ChainShape::Path;
            ch.endpoints = ch.vertices;
            return ch;
        }
        for (Vertex v : ch.vertices)
        {
            std::size_t deg = 0;
            for (const Incidence& inc : g.incident(v))
                if (c[inc.edge] == a || c[inc.edge] == b)
                    ++deg;
            if (deg == 1)
                ch.endpoints.push_back(v);
        }
        ch.shape = ch.endpoints.empty() ? ChainShape::EvenCycle : ChainShape::Path;
        return ch;
    }
}

/// K_e(a,b): the component through edge e, which must be colored a or b.
inline Chain component_at_edge(const Graph& g, const Coloring& c, EdgeId e, Color a, Color b)
{
    check_fits(g, c);
    detail::check_pair(c, a, b);
    if (c.at(e) != a && c.at(e) != b)
        throw contract_error("anchor edge " + std::to_string(g.edge(e).u) + " " + std::to_string(g.edge(e).v)
            + " is colored neither " + std::to_string(a) + " nor " + std::to_string(b));
    return detail::grow(g, c, {g.edge(e).u, g.edge(e).v}, a, b);
}

/// K_v(a,b): the component through vertex v (possibly empty).
inline Chain component_at_vertex(const Graph& g, const Coloring& c, Vertex v, Color a, Color b)
{
    check_fits(g, c);
    detail::check_pair(c, a, b);
    if (v >= g.vertex_count())
        throw contract_error("vertex " + std::to_string(v) + " not in graph");
    return detail::grow(g, c, {v}, a, b);
}

/// Exchanges a and b on the chain. The chain must be a current component
/// of c; anything else is rejected as stale.
inline Coloring swap(const Graph& g, const Coloring& c, const Chain& ch)
{
    if (ch.empty())
        return c;
    for (EdgeId e : ch.edges)
        if (e >= c.size() || (c[e] != ch.a && c[e] != ch.b))
            throw contract_error("stale chain: edge color changed");
    Chain fresh = component_at_edge(g, c, ch.edges.front(), ch.a, ch.b);
    if (fresh.edges != ch.edges)
        throw contract_error("stale chain: not a maximal component");
    Coloring out = c;
    for (EdgeId e : ch.edges)
        out.set(e, c[e] == ch.a ? ch.b : ch.a);
    return out;
}

/// Swap without the staleness check, for callers that just computed the chain.
inline void swap_in_place(Coloring& c, std::span<const EdgeId> edges, Color a, Color b)
{
    auto raw = c.raw();
    for (EdgeId e : edges)
        raw[e] = static_cast<std::uint8_t>(raw[e] == a ? b : a);
}

struct VertexAnchor
{
    Vertex vertex;
    friend bool operator==(const VertexAnchor&, const VertexAnchor&) = default;
};

using Anchor = std::variant<Edge, VertexAnchor>;

/// One Kempe swap, identified by its color pair and an element of the chain.
struct SwapRecord
{
    Color a = 0;
    Color b = 0;
    Anchor anchor;

    friend bool operator==(const SwapRecord&, const SwapRecord&) = default;
};

using Trace = std::vector<SwapRecord>;

/// Record for a chain: edge anchor at its smallest edge, or a vertex anchor
/// for an empty chain.
inline SwapRecord record_for(const Graph& g, const Chain& ch)
{
    Color lo = std::min(ch.a, ch.b), hi = std::max(ch.a, ch.b);
    if (ch.empty())
        return {lo, hi, VertexAnchor{ch.vertices.front()}};
    return {lo, hi, g.edge(ch.edges.front())};
}

inline SwapRecord edge_record(const Graph& g, EdgeId e, Color a, Color b)
{
    return {std::min(a, b), std::max(a, b), g.edge(e)};
}

/// Resolves a record against the current coloring.
inline Chain resolve(const Graph& g, const Coloring& c, const SwapRecord& r)
{
    if (r.a == r.b || r.a < 1 || r.b < 1 || r.a > c.palette() || r.b > c.palette())
        throw replay_error("swap record has invalid color pair " + std::to_string(r.a) + "," + std::to_string(r.b));
    if (const Edge* e = std::get_if<Edge>(&r.anchor))
    {
        auto id = g.find_edge(e->u, e->v);
        if (!id)
            throw replay_error("anchor edge " + std::to_string(e->u) + " " + std::to_string(e->v) + " not in graph");
        if (c[*id] != r.a && c[*id] != r.b)
            throw replay_error("anchor edge " + std::to_string(e->u) + " " + std::to_string(e->v) + " has color "
                + std::to_string(c[*id]) + ", outside pair " + std::to_string(r.a) + "," + std::to_string(r.b));
        return component_at_edge(g, c, *id, r.a, r.b);
    }
    Vertex v = std::get<VertexAnchor>(r.anchor).vertex;
    if (v >= g.vertex_count())
        throw replay_error("anchor vertex " + std::to_string(v) + " not in graph");
    return component_at_vertex(g, c, v, r.a, r.b);
}

inline void apply_record(const Graph& g, Coloring& c, const SwapRecord& r)
{
    Chain ch = resolve(g, c, r);
    swap_in_place(c, ch.edges, ch.a, ch.b);
}

/// Applies the trace in order. The optional observer sees every
/// intermediate coloring (after each record).
inline Coloring replay(const Graph& g, const Coloring& start, const Trace& t,
    const std::function<void(std::size_t, const Coloring&)>& observer = {})
{
    check_fits(g, start);
    Coloring c = start;
    for (std::size_t i = 0; i < t.size(); ++i)
    {
        apply_record(g, c, t[i]);
        if (observer)
            observer(i, c);
    }
    return c;
}

/// Swaps are involutions, so the inverse sequence is the reversed one.
inline Trace reverse(const Trace& t)
{
    return Trace(t.rbegin(), t.rend());
}

inline void append(Trace& into, const Trace& more)
{
    into.insert(into.end(), more.begin(), more.end());
}

/// Enumerates every nonempty Kempe chain of c in canonical order: color
/// pairs (a<b) ascending, then chains by smallest edge id. The callback
/// receives the pair and the chain's edges and returns false to stop. The
/// first edge is the smallest id; the rest are in discovery order.
template <typename Callback>
void for_each_chain(const Graph& g, const Coloring& c, Callback&& callback, ColorMask restrict_to = ~ColorMask{0})
{
    const std::size_t m = g.edge_count();
    std::vector<std::uint32_t> stamp(m, 0);
    std::uint32_t round = 0;
    std::vector<EdgeId> edges;
    std::vector<Vertex> stack;
    const int k = c.palette();
    for (Color a = 1; a <= k; ++a)
        for (Color b = a + 1; b <= k; ++b)
        {
            if (!(restrict_to & (color_bit(a) | color_bit(b))))
                continue;
            ++round;
            for (EdgeId start = 0; start < m; ++start)
            {
                Color sc = c[start];
                if ((sc != a && sc != b) || stamp[start] == round)
                    continue;
                edges.clear();
                stack.clear();
                stamp[start] = round;
                edges.push_back(start);
                stack.push_back(g.edge(start).u);
                stack.push_back(g.edge(start).v);
                while (!stack.empty())
                {
                    Vertex x = stack.back();
                    stack.pop_back();
                    for (const Incidence& inc : g.incident(x))
                    {
                        Color col = c[inc.edge];
                        if ((col == a || col == b) && stamp[inc.edge] != round)
                        {
                            stamp[inc.edge] = round;
                            edges.push_back(inc.edge);
                            stack.push_back(inc.neighbor);
                        }
                    }
                }
                if (!callback(a, b, std::span<const EdgeId>(edges)))
                    return;
            }
        }
}

}

#endif
