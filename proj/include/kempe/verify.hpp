#ifndef KEMPE_VERIFY_HPP
#define KEMPE_VERIFY_HPP

#include <optional>
#include <string>

#include "kempe/chain.hpp"

namespace kempe
{

struct Verdict
{
    bool ok = false;
    /// Records applied before the failure (all of them on success).
    std::size_t steps = 0;
    std::string diagnostic;
};

/// Replays t from start, checking properness after every swap, and compares
/// the result with expect edge by edge.
inline Verdict verify_trace(const Graph& g, const Coloring& start, const Trace& t, const Coloring& expect)
{
    Verdict v;
    check_total(g, start);
    check_total(g, expect);
    if (!is_proper(g, start))
    {
        v.diagnostic = "start coloring is not proper";
        return v;
    }
    Coloring c = start;
    for (const SwapRecord& r : t)
    {
        try
        {
            apply_record(g, c, r);
        }
        catch (const replay_error& e)
        {
            v.diagnostic = "step " + std::to_string(v.steps + 1) + ": " + e.what();
            return v;
        }
        ++v.steps;
        if (!is_proper(g, c))
        {
            v.diagnostic = "step " + std::to_string(v.steps) + ": coloring is not proper";
            return v;
        }
    }
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        if (c[e] != expect[e])
        {
            const Edge& ed = g.edge(e);
            v.diagnostic = "edge " + std::to_string(ed.u) + " " + std::to_string(ed.v) + ": replay gives "
                + std::to_string(c[e]) + ", expected " + std::to_string(expect[e]);
            return v;
        }
    v.ok = true;
    return v;
}

}

#endif
