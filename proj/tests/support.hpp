#ifndef KEMPE_TESTS_SUPPORT_HPP
#define KEMPE_TESTS_SUPPORT_HPP

// Small independent re-implementations used to cross-check the library.
// They work on plain edge lists so they share no code with kempe/.

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <vector>

#include "kempe/kempe.hpp"

namespace testing_support
{

using namespace kempe;

// Coloring from (u, v, color) triples.
inline Coloring colored(const Graph& g, int palette, std::initializer_list<std::tuple<Vertex, Vertex, Color>> items)
{
    Coloring c(palette, g.edge_count());
    for (auto [u, v, col] : items)
        c.set(g.edge_id(u, v), col);
    return c;
}

// K4 on v=0, a=1, b=2, c=3 with va=1, vb=2, vc=3, ab=3, ac=4, bc=1.
inline Graph k4() { return complete_graph(4); }
inline Coloring k4_coloring(const Graph& g)
{
    return colored(g, 4, {{0, 1, 1}, {0, 2, 2}, {0, 3, 3}, {1, 2, 3}, {1, 3, 4}, {2, 3, 1}});
}

// Colors absent at x, by scanning the raw edge list.
inline std::set<Color> brute_missing(const Graph& g, const Coloring& c, Vertex x)
{
    std::set<Color> out;
    for (Color col = 1; col <= c.palette(); ++col)
        out.insert(col);
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        if (g.edge(e).u == x || g.edge(e).v == x)
            out.erase(c[e]);
    return out;
}

// Edge set of the (a, b) component through e, by repeated relaxation over
// the whole edge list.
inline std::set<EdgeId> brute_chain(const Graph& g, const Coloring& c, EdgeId e, Color a, Color b)
{
    std::set<EdgeId> in{e};
    bool grew = true;
    while (grew)
    {
        grew = false;
        for (EdgeId f = 0; f < g.edge_count(); ++f)
        {
            if (in.count(f) || (c[f] != a && c[f] != b))
                continue;
            for (EdgeId h : in)
            {
                const Edge &x = g.edge(f), &y = g.edge(h);
                if (x.u == y.u || x.u == y.v || x.v == y.u || x.v == y.v)
                {
                    in.insert(f);
                    grew = true;
                    break;
                }
            }
        }
    }
    return in;
}

inline Coloring brute_swap(const Graph& g, const Coloring& c, EdgeId e, Color a, Color b)
{
    Coloring out = c;
    for (EdgeId f : brute_chain(g, c, e, a, b))
        out.set(f, c[f] == a ? b : a);
    return out;
}

inline bool brute_proper(const Graph& g, const Coloring& c)
{
    for (EdgeId e = 0; e < g.edge_count(); ++e)
    {
        if (c[e] == 0)
            return false;
        for (EdgeId f = e + 1; f < g.edge_count(); ++f)
            if (c[e] == c[f] && (g.edge(e).touches(g.edge(f).u) || g.edge(e).touches(g.edge(f).v)))
                return false;
    }
    return true;
}

// Prism: two triangles 0-1-2 and 3-4-5 joined by 0-3, 1-4, 2-5.
inline Graph prism()
{
    return make_graph(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {0, 3}, {1, 4}, {2, 5}});
}

// K2,3 and K2,3 plus the edge 2-3. Lifted to their chi'-regular supergraphs
// they carry 3-cycle fans: unsaturated and tight for K2,3, saturated and
// loose for the other.
inline Graph k23() { return make_graph(5, {{0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}}); }
inline Graph k23_plus() { return make_graph(5, {{0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}, {2, 3}}); }

// Cycle fans of size at least 3 in the lifts of every (chi'+1)-coloring of g;
// stops when visit returns true. Returns whether it stopped.
inline bool scan_lifted_cycles(const Graph& g,
    const std::function<bool(const Graph&, const Coloring&, const Fan&)>& visit)
{
    int chi = oracle::chromatic_index(g);
    auto [big, emb] = regularize(g, static_cast<std::size_t>(chi));
    bool hit = false;
    oracle::for_each_coloring(g, chi + 1, [&](const std::vector<Color>& cs) {
        Coloring c = lift_coloring(Coloring(chi + 1, cs), emb);
        for (Vertex v = 0; v < big.vertex_count() && !hit; ++v)
            for (const Incidence& inc : big.incident(v))
            {
                Fan f = build(big, c, v, inc.edge);
                if (f.shape == FanShape::Cycle && f.size() >= 3 && visit(big, c, f))
                {
                    hit = true;
                    break;
                }
            }
        return hit;
    });
    return hit;
}

inline Graph k33()
{
    return make_graph(6, {{0, 3}, {0, 4}, {0, 5}, {1, 3}, {1, 4}, {1, 5}, {2, 3}, {2, 4}, {2, 5}});
}

}

#endif
