#ifndef KEMPE_INVERSION_HPP
#define KEMPE_INVERSION_HPP

#include <optional>
#include <vector>

#include "kempe/chain.hpp"
#include "kempe/fan.hpp"
#include "kempe/search.hpp"

namespace kempe
{

enum class InversionStrategy
{
    TrivialSwaps, // path fans
    Size2,
    UnsaturatedEscape,
    TightnessReduction,
    SearchFallback
};

inline const char* to_string(InversionStrategy s)
{
    switch (s)
    {
    case InversionStrategy::TrivialSwaps: return "trivial-swaps";
    case InversionStrategy::Size2: return "size2";
    case InversionStrategy::UnsaturatedEscape: return "unsaturated-escape";
    case InversionStrategy::TightnessReduction: return "tightness-reduction";
    case InversionStrategy::SearchFallback: return "search-fallback";
    }
    return "?";
}

struct InversionOutcome
{
    Coloring final;
    Trace trace;
    InversionStrategy strategy_used = InversionStrategy::TrivialSwaps;
    /// True when the search rung ran anywhere, including nested reductions.
    bool searched = false;
};

/// Throws unless f still describes c around its center.
inline void check_fresh(const Graph& g, const Coloring& c, const Fan& f)
{
    bool ok = missing_mask(g, c, f.center) == color_bit(f.center_missing);
    for (std::size_t i = 0; ok && i < f.size(); ++i)
        ok = c.at(f.edges[i]) == f.edge_colors[i]
            && missing_mask(g, c, f.vertices[i]) == color_bit(f.missing[i]);
    if (!ok)
        throw contract_error("stale fan: coloring changed since the fan was built");
}

/// X^{-1}(beta): each fan edge v v_i takes m(v_i); nothing else changes.
inline Coloring invert_target(const Graph& g, const Coloring& c, const Fan& f)
{
    require_cycle(f, "invert target");
    check_fresh(g, c, f);
    Coloring out = c;
    for (std::size_t i = 0; i < f.size(); ++i)
        out.set(f.edges[i], f.missing[i]);
    return out;
}

/// Inverts a path fan by single-edge swaps from the last edge back to
/// up_to (inclusive), or to the first edge when up_to is absent.
inline InversionOutcome invert_path(const Graph& g, const Coloring& c, const Fan& f,
    std::optional<Vertex> up_to = std::nullopt)
{
    if (f.shape != FanShape::Path)
        throw contract_error("path inversion needs a path fan");
    check_fresh(g, c, f);
    std::size_t stop = 0;
    if (up_to)
    {
        auto pos = f.position(*up_to);
        if (!pos)
            throw contract_error("up_to vertex is not on the fan");
        stop = *pos;
    }
    InversionOutcome out{c, {}, InversionStrategy::TrivialSwaps};
    for (std::size_t i = f.size(); i-- > stop;)
    {
        // v and v_i both miss the current m(v) here, so the chain is one edge.
        Color held = out.final[f.edges[i]];
        Color free = missing_color(g, out.final, f.center);
        Chain ch = component_at_edge(g, out.final, f.edges[i], held, free);
        if (ch.edges.size() != 1)
            throw contract_error("path fan swap is not a single edge");
        out.final = swap(g, out.final, ch);
        out.trace.push_back(record_for(g, ch));
    }
    return out;
}

namespace detail
{
    inline std::optional<InversionOutcome> invert_cycle_impl(const Graph& g, const Coloring& c, const Fan& f,
        Budget& budget, bool allow_search);

    inline bool apply_charged(const Graph& g, Coloring& c, Trace& t, const SwapRecord& r, Budget& budget)
    {
        if (!budget.charge())
            return false;
        apply_record(g, c, r);
        t.push_back(r);
        return true;
    }

    // Swap K_{v_i}(m(v), m(v_i)) away from v, invert the resulting path, and
    // swap the displaced chain back through v v_i.
    inline std::optional<Trace> unsaturated_escape(const Graph& g, const Coloring& c, const Fan& f, std::size_t i,
        Budget& budget)
    {
        const std::size_t k = f.size();
        Color mv = f.center_missing, mi = f.missing[i];
        Chain away = component_at_vertex(g, c, f.vertices[i], mv, mi);
        if (away.contains_vertex(f.center) || away.empty())
            return std::nullopt;
        Coloring cur = c;
        Trace t;
        if (!apply_charged(g, cur, t, record_for(g, away), budget))
            return std::nullopt;
        Fan path = build(g, cur, f.center, f.edges[(i + 1) % k]);
        if (path.shape != FanShape::Path || path.size() != k)
            return std::nullopt;
        InversionOutcome inv = invert_path(g, cur, path);
        if (!budget.charge(inv.trace.size()))
            return std::nullopt;
        cur = inv.final;
        append(t, inv.trace);
        if (!apply_charged(g, cur, t, edge_record(g, f.edges[i], mv, mi), budget))
            return std::nullopt;
        return t;
    }

    // Loose position i with predecessor p: swap K_{v_p}(m(v_p), m(v_i)) to drop
    // v v_i from the cycle, invert the smaller cycle, swap the chain back.
    inline std::optional<Trace> tightness_reduction(const Graph& g, const Coloring& c, const Fan& f, std::size_t i,
        Budget& budget, bool allow_search, bool& searched)
    {
        const std::size_t k = f.size();
        if (k < 3)
            return std::nullopt;
        std::size_t p = (i + k - 1) % k;
        Color mp = f.missing[p], mi = f.missing[i];
        Chain loose = component_at_vertex(g, c, f.vertices[p], mp, mi);
        if (loose.contains_vertex(f.center) || loose.contains_vertex(f.vertices[i]) || loose.empty())
            return std::nullopt;
        Coloring cur = c;
        Trace t;
        if (!apply_charged(g, cur, t, record_for(g, loose), budget))
            return std::nullopt;
        Fan smaller = build(g, cur, f.center, f.edges[p]);
        if (smaller.shape != FanShape::Cycle || smaller.size() != k - 1)
            return std::nullopt;
        auto inner = invert_cycle_impl(g, cur, smaller, budget, allow_search);
        if (!inner)
            return std::nullopt;
        searched = inner->searched;
        cur = inner->final;
        append(t, inner->trace);
        if (!apply_charged(g, cur, t, edge_record(g, f.edges[p], mp, mi), budget))
            return std::nullopt;
        return t;
    }

    inline std::optional<InversionOutcome> invert_cycle_impl(const Graph& g, const Coloring& c, const Fan& f,
        Budget& budget, bool allow_search)
    {
        Coloring target = invert_target(g, c, f);
        auto accept = [&](const std::optional<Trace>& t, InversionStrategy s) -> std::optional<InversionOutcome> {
            if (!t)
                return std::nullopt;
            Coloring end = replay(g, c, *t);
            if (end != target)
                return std::nullopt;
            return InversionOutcome{std::move(end), *t, s, s == InversionStrategy::SearchFallback};
        };

        if (f.size() == 2)
        {
            Trace t;
            if (!budget.charge())
                return std::nullopt;
            t.push_back(edge_record(g, f.edges[0], f.edge_colors[0], f.edge_colors[1]));
            if (auto r = accept(t, InversionStrategy::Size2))
                return r;
        }

        for (std::size_t i = 0; i < f.size(); ++i)
        {
            Chain ch = component_at_vertex(g, c, f.center, f.center_missing, f.missing[i]);
            if (ch.contains_vertex(f.vertices[i]))
                continue;
            if (auto r = accept(unsaturated_escape(g, c, f, i, budget), InversionStrategy::UnsaturatedEscape))
                return r;
        }

        const std::size_t k = f.size();
        for (std::size_t i = 0; k >= 3 && i < k; ++i)
        {
            std::size_t p = (i + k - 1) % k;
            Chain ch = component_at_vertex(g, c, f.vertices[p], f.missing[i], f.missing[p]);
            if (ch.contains_vertex(f.vertices[i]))
                continue;
            bool searched = false;
            if (auto r = accept(tightness_reduction(g, c, f, i, budget, allow_search, searched),
                    InversionStrategy::TightnessReduction))
            {
                r->searched = searched;
                return r;
            }
        }

        if (!allow_search || budget.exhausted())
            return std::nullopt;
        return accept(search_to_target(g, c, target, budget), InversionStrategy::SearchFallback);
    }
}

/// Reaches invert_target(c, f) by Kempe swaps, trying in order: the single
/// swap of a size-2 cycle, escaping through an unsaturated vertex, reducing
/// a loose (non-tight) position to a smaller cycle, and finally a bounded
/// bidirectional search. Every rung's result is checked against the target.
/// Returns nullopt only when the search budget runs out.
inline std::optional<InversionOutcome> invert_cycle(const Graph& g, const Coloring& c, const Fan& f, Budget& budget)
{
    require_cycle(f, "cycle inversion");
    require_single_missing(g, c);
    check_fresh(g, c, f);
    return detail::invert_cycle_impl(g, c, f, budget, true);
}

/// Same ladder without the search rung; used to measure how often the
/// constructive rungs suffice.
inline std::optional<InversionOutcome> invert_cycle_constructive(const Graph& g, const Coloring& c, const Fan& f,
    Budget& budget)
{
    require_cycle(f, "cycle inversion");
    require_single_missing(g, c);
    check_fresh(g, c, f);
    return detail::invert_cycle_impl(g, c, f, budget, false);
}

}

#endif
