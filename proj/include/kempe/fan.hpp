#ifndef KEMPE_FAN_HPP
#define KEMPE_FAN_HPP

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "kempe/chain.hpp"
#include "kempe/coloring.hpp"
#include "kempe/graph.hpp"

namespace kempe
{

/// Fans only exist when every vertex misses exactly one color, i.e. a
/// (d+1)-coloring of a d-regular graph.
class regime_error : public contract_error
{
public:
    using contract_error::contract_error;
};

inline void require_single_missing(const Graph& g, const Coloring& c)
{
    check_total(g, c);
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (!sole_missing(g, c, v))
            throw regime_error("vertex " + std::to_string(v) + " misses "
                + std::to_string(missing_colors(g, c, v).size()) + " colors; fans need exactly one");
}

/// m(v) in the single-missing regime.
inline Color missing_color(const Graph& g, const Coloring& c, Vertex v)
{
    auto m = sole_missing(g, c, v);
    if (!m)
        throw regime_error("vertex " + std::to_string(v) + " does not miss exactly one color");
    return *m;
}

enum class FanShape
{
    Path,
    Cycle,
    Comet
};

inline const char* to_string(FanShape s)
{
    switch (s)
    {
    case FanShape::Path: return "path";
    case FanShape::Cycle: return "cycle";
    case FanShape::Comet: return "comet";
    }
    return "?";
}

/// Vizing fan (v v_1, ..., v v_k) around a center v, with the colors seen at
/// construction time: edge_colors[i] is the color of v v_{i+1} and
/// missing[i] the missing color of v_{i+1}.
struct Fan
{
    Vertex center = 0;
    Color center_missing = 0;
    std::vector<EdgeId> edges;
    std::vector<Vertex> vertices;
    std::vector<Color> edge_colors;
    std::vector<Color> missing;
    FanShape shape = FanShape::Path;
    /// Comet only: index of the edge the last vertex's missing color points to.
    std::size_t comet_back = 0;

    std::size_t size() const { return edges.size(); }

    std::optional<std::size_t> position(Vertex x) const
    {
        auto it = std::find(vertices.begin(), vertices.end(), x);
        if (it == vertices.end())
            return std::nullopt;
        return static_cast<std::size_t>(it - vertices.begin());
    }
};

/// Successor of e in D_v: the edge at v colored with the missing color of
/// e's other endpoint, if there is one and it differs from m(v).
inline std::optional<EdgeId> successor(const Graph& g, const Coloring& c, Vertex v, EdgeId e)
{
    require_single_missing(g, c);
    if (!g.edge(e).touches(v))
        throw contract_error("edge is not incident to the fan center");
    Color mu = missing_color(g, c, g.edge(e).other(v));
    if (mu == missing_color(g, c, v))
        return std::nullopt;
    return edge_with_color(g, c, v, mu);
}

/// Shape read off the defining equations of a maximal fan.
inline FanShape shape(const Fan& f)
{
    if (f.edges.empty())
        throw contract_error("empty fan");
    Color last = f.missing.back();
    if (last == f.center_missing)
        return FanShape::Path;
    if (last == f.edge_colors.front())
        return FanShape::Cycle;
    for (std::size_t j = 1; j < f.size(); ++j)
        if (last == f.edge_colors[j])
            return FanShape::Comet;
    throw contract_error("fan is not maximal");
}

/// X_v(start): follows arcs of D_v from start until a dead end (Path), a
/// return to start (Cycle), or a return to an interior edge (Comet).
inline Fan build(const Graph& g, const Coloring& c, Vertex v, EdgeId start)
{
    require_single_missing(g, c);
    if (v >= g.vertex_count() || start >= g.edge_count() || !g.edge(start).touches(v))
        throw contract_error("fan start edge is not incident to the center");
    Fan f;
    f.center = v;
    f.center_missing = missing_color(g, c, v);
    EdgeId cur = start;
    while (true)
    {
        Vertex x = g.edge(cur).other(v);
        f.edges.push_back(cur);
        f.vertices.push_back(x);
        f.edge_colors.push_back(c[cur]);
        f.missing.push_back(missing_color(g, c, x));
        Color mx = f.missing.back();
        if (mx == f.center_missing)
        {
            f.shape = FanShape::Path;
            break;
        }
        // In the regime v sees every color except m(v), so the arc exists.
        EdgeId next = *edge_with_color(g, c, v, mx);
        auto seen = std::find(f.edges.begin(), f.edges.end(), next);
        if (seen == f.edges.begin())
        {
            f.shape = FanShape::Cycle;
            break;
        }
        if (seen != f.edges.end())
        {
            f.shape = FanShape::Comet;
            f.comet_back = static_cast<std::size_t>(seen - f.edges.begin());
            break;
        }
        cur = next;
    }
    return f;
}

/// X_v(col): the fan starting at the edge of v colored col.
inline Fan build_from_color(const Graph& g, const Coloring& c, Vertex v, Color col)
{
    auto e = edge_with_color(g, c, v, col);
    if (!e)
        throw contract_error("no edge colored " + std::to_string(col) + " at vertex " + std::to_string(v));
    return build(g, c, v, *e);
}

/// beta(X): edge colors, missing colors of fan vertices and m(center).
inline ColorMask fan_colors(const Fan& f)
{
    ColorMask m = color_bit(f.center_missing);
    for (Color col : f.edge_colors)
        m |= color_bit(col);
    for (Color col : f.missing)
        m |= color_bit(col);
    return m;
}

/// M(X,col): the first fan vertex missing col.
inline std::optional<Vertex> vertex_missing(const Fan& f, Color col)
{
    for (std::size_t i = 0; i < f.size(); ++i)
        if (f.missing[i] == col)
            return f.vertices[i];
    return std::nullopt;
}

inline void require_cycle(const Fan& f, const char* what)
{
    if (f.shape != FanShape::Cycle)
        throw contract_error(std::string(what) + " is defined for cycle fans only");
}

/// Every v_i lies on K_v(m(v), m(v_i)).
inline bool is_saturated(const Graph& g, const Coloring& c, const Fan& f)
{
    require_cycle(f, "saturation");
    for (std::size_t i = 0; i < f.size(); ++i)
    {
        Chain ch = component_at_vertex(g, c, f.center, f.center_missing, f.missing[i]);
        if (!ch.contains_vertex(f.vertices[i]))
            return false;
    }
    return true;
}

/// First position i (cyclic, v_0 read as v_k) with v_i outside
/// K_{v_{i-1}}(m(v_i), m(v_{i-1})).
inline std::optional<std::size_t> first_loose_position(const Graph& g, const Coloring& c, const Fan& f)
{
    require_cycle(f, "tightness");
    const std::size_t k = f.size();
    for (std::size_t i = 0; i < k; ++i)
    {
        std::size_t p = (i + k - 1) % k;
        Chain ch = component_at_vertex(g, c, f.vertices[p], f.missing[i], f.missing[p]);
        if (!ch.contains_vertex(f.vertices[i]))
            return i;
    }
    return std::nullopt;
}

inline bool is_tight(const Graph& g, const Coloring& c, const Fan& f)
{
    return !first_loose_position(g, c, f);
}

/// Fans agreeing on which vertex misses each color they share.
inline bool entangled(const Fan& f1, const Fan& f2)
{
    ColorMask shared = fan_colors(f1) & fan_colors(f2);
    for (Color col : mask_colors(shared))
        if (vertex_missing(f1, col) != vertex_missing(f2, col))
            return false;
    return true;
}

}

#endif
