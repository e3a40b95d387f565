#ifndef KEMPE_TRANSFORM_HPP
#define KEMPE_TRANSFORM_HPP

#include <algorithm>
#include <optional>
#include <tuple>
#include <utility>
#include <vector>

#include "kempe/chain.hpp"
#include "kempe/fan.hpp"
#include "kempe/inversion.hpp"
#include "kempe/regularize.hpp"
#include "kempe/search.hpp"

namespace kempe
{

/// How the alignment driver made progress; diagnostic only.
struct AlignStats
{
    std::size_t single_swap = 0;
    std::size_t fan_repair = 0;
    std::size_t main_case = 0;
    std::size_t search_fallback = 0;
    /// States where neither a single swap nor a fan repair applied.
    std::size_t stuck_states = 0;
    /// Ugly edges checked in stuck states, and those with an endpoint not
    /// adjacent to a free vertex.
    std::size_t ugly_checked = 0;
    std::size_t ugly_without_free_neighbor = 0;

    std::size_t macro_steps() const { return single_swap + fan_repair + main_case + search_fallback; }

    AlignStats& operator+=(const AlignStats& o)
    {
        single_swap += o.single_swap;
        fan_repair += o.fan_repair;
        main_case += o.main_case;
        search_fallback += o.search_fallback;
        stuck_states += o.stuck_states;
        ugly_checked += o.ugly_checked;
        ugly_without_free_neighbor += o.ugly_without_free_neighbor;
        return *this;
    }
};

/// Bad and ugly counts of a coloring against a target matching and color.
struct Defect
{
    std::size_t bad = 0;
    std::size_t ugly = 0;

    friend auto operator<=>(const Defect&, const Defect&) = default;
};

struct AlignmentState
{
    Coloring working;
    std::vector<char> in_matching;
    Color target_color = 1;
    Defect counts;
    Trace trace;
};

inline Defect defect(const Coloring& c, const std::vector<char>& in_matching, Color col)
{
    Defect d;
    for (EdgeId e = 0; e < c.size(); ++e)
    {
        if (in_matching[e] && c[e] != col)
            ++d.bad;
        else if (!in_matching[e] && c[e] == col)
            ++d.ugly;
    }
    return d;
}

namespace detail
{
    struct Driver
    {
        const Graph& g;
        const std::vector<char>& in_m;
        Color col;
        Budget& budget;
        AlignStats& stats;

        Defect measure(const Coloring& c) const { return defect(c, in_m, col); }

        bool is_free(const Coloring& c, Vertex v) const { return missing_mask(g, c, v) & color_bit(col); }

        bool apply(Coloring& c, Trace& t, const SwapRecord& r) const
        {
            if (!budget.charge())
                return false;
            apply_record(g, c, r);
            t.push_back(r);
            return true;
        }

        bool absorb(Coloring& c, Trace& t, const std::optional<InversionOutcome>& inv) const
        {
            if (!inv)
                return false;
            c = inv->final;
            append(t, inv->trace);
            return true;
        }

        std::optional<InversionOutcome> invert(const Coloring& c, const Fan& f) const
        {
            return invert_cycle(g, c, f, budget);
        }

        // Best single swap on a pair involving col, if it lowers the defect.
        // Only chains through a bad or ugly edge can do that, so only those
        // are walked; ties go to the canonical order (pair, smallest edge).
        std::optional<Trace> single_swap(const Coloring& c, Defect now) const
        {
            const std::size_t m = g.edge_count();
            const std::uint8_t* color = c.raw().data();
            const char* in = in_m.data();
            std::vector<std::uint8_t> seen(m);
            std::vector<Vertex> stack;
            stack.reserve(g.vertex_count());
            std::optional<std::tuple<Defect, Color, Color, EdgeId>> best;
            for (Color other = 1; other <= c.palette(); ++other)
            {
                if (other == col)
                    continue;
                const Color a = std::min(col, other), b = std::max(col, other);
                std::fill(seen.begin(), seen.end(), 0);
                for (EdgeId start = 0; start < m; ++start)
                {
                    Color sc = color[start];
                    bool seed = in[start] ? sc == other : sc == col;
                    if (!seed || seen[start])
                        continue;
                    long bad = static_cast<long>(now.bad), ugly = static_cast<long>(now.ugly);
                    EdgeId low = start;
                    auto visit = [&](EdgeId x) {
                        seen[x] = 1;
                        low = std::min(low, x);
                        // the swap flips col and other on every chain edge
                        if (in[x])
                            bad += color[x] == col ? 1 : -1;
                        else
                            ugly += color[x] == col ? -1 : 1;
                    };
                    visit(start);
                    stack.assign({g.edge(start).u, g.edge(start).v});
                    while (!stack.empty())
                    {
                        Vertex x = stack.back();
                        stack.pop_back();
                        for (const Incidence& inc : g.incident(x))
                        {
                            Color ec = color[inc.edge];
                            if ((ec == a || ec == b) && !seen[inc.edge])
                            {
                                visit(inc.edge);
                                stack.push_back(inc.neighbor);
                            }
                        }
                    }
                    Defect d{static_cast<std::size_t>(bad), static_cast<std::size_t>(ugly)};
                    if (d < now && (!best || std::tie(d, a, b, low) < *best))
                        best = {d, a, b, low};
                }
            }
            if (!best)
                return std::nullopt;
            auto [d, a, b, e] = *best;
            return Trace{SwapRecord{a, b, g.edge(e)}};
        }

        // Turns a comet around x into a path by swapping, away from x, the
        // chain at one of the two fan vertices sharing a missing color.
        std::optional<Trace> comet_to_path(Coloring& c, const Fan& f) const
        {
            Color shared = f.missing.back();
            Vertex ends[2] = {f.vertices.back(), f.vertices[f.comet_back - 1]};
            for (Vertex end : ends)
            {
                Chain ch = component_at_vertex(g, c, end, f.center_missing, shared);
                if (ch.contains_vertex(f.center) || ch.empty())
                    continue;
                Trace t;
                if (!apply(c, t, record_for(g, ch)))
                    return std::nullopt;
                return t;
            }
            return std::nullopt;
        }

        // An ugly edge whose fan at one end is a path or comet loses col by
        // inverting that (repaired) path.
        std::optional<Trace> fan_repair(const Coloring& c, Defect now) const
        {
            for (EdgeId e = 0; e < g.edge_count(); ++e)
            {
                if (in_m[e] || c[e] != col)
                    continue;
                for (Vertex x : {g.edge(e).u, g.edge(e).v})
                {
                    Fan f = build(g, c, x, e);
                    if (f.shape == FanShape::Cycle)
                        continue;
                    Coloring cur = c;
                    Trace t;
                    if (f.shape == FanShape::Comet)
                    {
                        auto fix = comet_to_path(cur, f);
                        if (!fix)
                            continue;
                        t = *fix;
                        f = build(g, cur, x, e);
                        if (f.shape != FanShape::Path)
                            continue;
                    }
                    InversionOutcome inv = invert_path(g, cur, f);
                    if (!budget.charge(inv.trace.size()))
                        return std::nullopt;
                    append(t, inv.trace);
                    if (measure(inv.final) < now)
                        return t;
                }
            }
            return std::nullopt;
        }

        // Vertex order of a path chain walked from `from`.
        std::vector<Vertex> walk(const Chain& ch, Vertex from) const
        {
            std::vector<Vertex> order{from};
            std::vector<EdgeId> used;
            Vertex at = from;
            while (true)
            {
                std::optional<EdgeId> next;
                for (const Incidence& inc : g.incident(at))
                    if (ch.contains_edge(inc.edge) && std::find(used.begin(), used.end(), inc.edge) == used.end())
                    {
                        next = inc.edge;
                        break;
                    }
                if (!next)
                    break;
                used.push_back(*next);
                at = g.edge(*next).other(at);
                order.push_back(at);
            }
            return order;
        }

        // Once v's fan through vw holds u, inverting it (or repairing a
        // non-cycle) makes progress.
        std::optional<Trace> finish_at(const Coloring& c, Vertex u, Vertex v, EdgeId vw, Defect now) const
        {
            Fan x = build(g, c, v, vw);
            if (x.shape != FanShape::Cycle)
                return fan_repair(c, now);
            if (!x.position(u))
                return std::nullopt;
            Coloring cur = c;
            Trace t;
            if (!absorb(cur, t, invert(cur, x)))
                return std::nullopt;
            return t;
        }

        // Bad uv with u free; v's col-edge vw is ugly. Follows the case split
        // on the (c, c') chain from w, where c = beta(uv) and c' = m(w).
        std::optional<Trace> main_case(const Coloring& c, Vertex u, Vertex v, Defect now) const
        {
            EdgeId uv = g.edge_id(u, v);
            auto vw_opt = edge_with_color(g, c, v, col);
            if (!vw_opt)
                return std::nullopt;
            EdgeId vw = *vw_opt;
            Vertex w = g.edge(vw).other(v);
            Fan xv = build(g, c, v, vw);
            if (xv.shape != FanShape::Cycle)
                return std::nullopt;
            if (xv.position(u))
                return finish_at(c, u, v, vw, now);

            Color cu = c[uv];
            Color cw = missing_color(g, c, w);
            if (cw == cu)
                return std::nullopt;
            Coloring cur = c;
            Trace t;
            Chain chain = component_at_vertex(g, cur, w, cu, cw);
            if (!chain.contains_vertex(v))
            {
                if (!apply(cur, t, record_for(g, chain)))
                    return std::nullopt;
                auto rest = finish_at(cur, u, v, vw, measure(cur));
                if (!rest)
                    return std::nullopt;
                append(t, *rest);
                return t;
            }

            auto order = walk(chain, w);
            auto pos_u = std::find(order.begin(), order.end(), u);
            auto pos_v = std::find(order.begin(), order.end(), v);
            if (pos_u == order.end() || pos_v == order.end())
                return std::nullopt;

            if (pos_u < pos_v)
            {
                // u between w and v: inverting X_v(vw) closes the chain into
                // an even cycle; swap it, then X_v(uv) is a cycle through u.
                if (!absorb(cur, t, invert(cur, xv)))
                    return std::nullopt;
                Chain ring = component_at_vertex(g, cur, w, cu, cw);
                if (ring.shape != ChainShape::EvenCycle || !apply(cur, t, record_for(g, ring)))
                    return std::nullopt;
                Fan last = build(g, cur, v, uv);
                if (last.shape != FanShape::Cycle || !absorb(cur, t, invert(cur, last)))
                    return std::nullopt;
                return t;
            }

            // v between w and u.
            Fan xw = build(g, cur, w, vw);
            if (xw.shape != FanShape::Cycle)
                return std::nullopt;
            bool holds_u = xw.position(u).has_value();
            if (!absorb(cur, t, invert(cur, xw)))
                return std::nullopt;
            if (!holds_u)
            {
                // u and v are both free now.
                if (!is_free(cur, u) || !is_free(cur, v) || !apply(cur, t, edge_record(g, uv, cur[uv], col)))
                    return std::nullopt;
                return t;
            }
            auto uw = g.find_edge(u, w);
            if (!uw || cur[*uw] != col)
                return std::nullopt;
            Fan xu = build(g, cur, u, *uw);
            if (xu.shape != FanShape::Cycle || !absorb(cur, t, invert(cur, xu)))
                return std::nullopt;
            Chain ring = component_at_vertex(g, cur, w, cu, cw);
            if (ring.shape != ChainShape::EvenCycle || !apply(cur, t, record_for(g, ring)))
                return std::nullopt;
            Fan last = build(g, cur, u, uv);
            if (last.shape != FanShape::Cycle || !absorb(cur, t, invert(cur, last)))
                return std::nullopt;
            return t;
        }

        void check_stuck_state(const Coloring& c) const
        {
            ++stats.stuck_states;
            for (EdgeId e = 0; e < g.edge_count(); ++e)
            {
                if (in_m[e] || c[e] != col)
                    continue;
                ++stats.ugly_checked;
                for (Vertex x : {g.edge(e).u, g.edge(e).v})
                {
                    bool near_free = false;
                    for (const Incidence& inc : g.incident(x))
                        near_free = near_free || is_free(c, inc.neighbor);
                    if (!near_free)
                    {
                        ++stats.ugly_without_free_neighbor;
                        break;
                    }
                }
            }
        }

        using Move = std::pair<Trace, Coloring>;

        std::optional<Move> step(const Coloring& c, Defect now) const
        {
            auto accept = [&](std::optional<Trace> t, std::size_t& counter) -> std::optional<Move> {
                if (!t)
                    return std::nullopt;
                Coloring end = replay(g, c, *t);
                if (measure(end) >= now)
                    return std::nullopt;
                ++counter;
                return Move{std::move(*t), std::move(end)};
            };
            if (auto t = accept(single_swap(c, now), stats.single_swap))
            {
                if (!budget.charge())
                    return std::nullopt;
                return t;
            }
            if (auto t = accept(fan_repair(c, now), stats.fan_repair))
                return t;
            check_stuck_state(c);
            for (EdgeId e = 0; e < g.edge_count(); ++e)
            {
                if (!in_m[e] || c[e] == col)
                    continue;
                for (auto [u, v] : {std::pair{g.edge(e).u, g.edge(e).v}, std::pair{g.edge(e).v, g.edge(e).u}})
                {
                    if (!is_free(c, u) || is_free(c, v))
                        continue;
                    if (auto t = accept(main_case(c, u, v, now), stats.main_case))
                        return t;
                    if (budget.exhausted())
                        return std::nullopt;
                }
            }
            if (budget.exhausted())
                return std::nullopt;
            auto found = search_for(
                g, c, [&](const Coloring& x) { return measure(x) < now; }, budget);
            if (!found)
                return std::nullopt;
            ++stats.search_fallback;
            return Move{std::move(found->first), std::move(found->second)};
        }
    };

    inline std::vector<char> matching_mask(const Graph& g, const EdgeSet& matching)
    {
        std::vector<char> in_m(g.edge_count(), 0);
        std::vector<int> cover(g.vertex_count(), 0);
        for (EdgeId e : matching)
        {
            if (e >= g.edge_count() || in_m[e])
                throw contract_error("target matching holds an invalid or repeated edge");
            in_m[e] = 1;
            ++cover[g.edge(e).u];
            ++cover[g.edge(e).v];
        }
        if (std::any_of(cover.begin(), cover.end(), [](int x) { return x != 1; }))
            throw contract_error("target edge set is not a perfect matching");
        return in_m;
    }
}

struct AlignResult
{
    Coloring final;
    Trace trace;
};

namespace detail
{
    inline std::optional<AlignResult> align_masked(const Graph& g, const Coloring& c, const std::vector<char>& in_m,
        Color col, Budget& budget, AlignStats* stats)
    {
        AlignStats local;
        Driver driver{g, in_m, col, budget, stats ? *stats : local};
        AlignmentState state{c, in_m, col, defect(c, in_m, col), {}};
        while (state.counts.bad > 0 || state.counts.ugly > 0)
        {
            if (budget.exhausted())
                return std::nullopt;
            auto move = driver.step(state.working, state.counts);
            if (!move)
                return std::nullopt;
            state.working = std::move(move->second);
            append(state.trace, move->first);
            state.counts = defect(state.working, in_m, col);
        }
        return AlignResult{std::move(state.working), std::move(state.trace)};
    }
}

/// Drives c to the coloring whose col-class is exactly M (a perfect
/// matching). Each accepted macro-step strictly lowers (bad, ugly)
/// lexicographically; returns nullopt when the budget runs out.
///
/// Requires a (d+1)-coloring of a d-regular graph.
inline std::optional<AlignResult> align_class(const Graph& g, const Coloring& c, const EdgeSet& matching, Color col,
    Budget& budget, AlignStats* stats = nullptr)
{
    require_single_missing(g, c);
    if (!is_proper(g, c))
        throw contract_error("align_class needs a proper coloring");
    return detail::align_masked(g, c, detail::matching_mask(g, matching), col, budget, stats);
}

/// Renames colors 1..chi of alpha in order of first appearance along the
/// edge ids; color chi + 1 and 0 keep their names. rename[old] = new.
inline std::vector<Color> canonical_renaming(const Coloring& alpha)
{
    std::vector<Color> rename(static_cast<std::size_t>(alpha.palette()) + 2, 0);
    Color next = 1;
    for (EdgeId e = 0; e < alpha.size(); ++e)
        if (alpha[e] && !rename[alpha[e]])
            rename[alpha[e]] = next++;
    for (Color x = 1; x <= alpha.palette(); ++x)
        if (!rename[x])
            rename[x] = next++;
    rename[alpha.palette() + 1] = alpha.palette() + 1;
    return rename;
}

inline Coloring rename_colors(const Coloring& c, const std::vector<Color>& rename)
{
    Coloring out(c.palette(), c.size());
    for (EdgeId e = 0; e < c.size(); ++e)
        out.set(e, rename.at(c[e]));
    return out;
}

inline Trace rename_colors(const Trace& t, const std::vector<Color>& rename)
{
    Trace out;
    out.reserve(t.size());
    for (const SwapRecord& r : t)
    {
        Color a = rename.at(r.a), b = rename.at(r.b);
        out.push_back({std::min(a, b), std::max(a, b), r.anchor});
    }
    return out;
}

/// True when alpha is already named canonically.
inline bool is_canonical_target(const Coloring& alpha)
{
    auto rename = canonical_renaming(alpha);
    for (Color x = 0; x < static_cast<Color>(rename.size()); ++x)
        if (rename[x] != x)
            return false;
    return true;
}

/// Everything about a target that does not depend on the start coloring.
///
/// The work happens on the canonically renamed target, so the result does
/// not depend on how alpha names its classes: to_target(c, pi(alpha)) is
/// pi applied to to_target(pi^-1(c), alpha). The working graph is g, or its
/// chi-regular supergraph when g is not chi-regular. Class col's residual
/// keeps the edges the target colors col or higher, with colors shifted
/// down by col - 1 so its target class is color 1.
struct TargetPlan
{
    struct Stage
    {
        Graph residual;
        std::vector<EdgeId> to_full;
        std::vector<char> in_matching;
    };

    Graph graph;
    Coloring alpha;
    int chi = 0;
    /// to_canonical[x] is the working name of alpha's color x; from_canonical inverts it.
    std::vector<Color> to_canonical;
    std::vector<Color> from_canonical;
    std::optional<Embedding> embedding;
    Graph work_graph;
    Coloring work_target;
    std::vector<Stage> stages;
};

inline TargetPlan prepare_target(const Graph& g, const Coloring& alpha)
{
    check_total(g, alpha);
    if (!is_proper(g, alpha))
        throw contract_error("target coloring is not proper");
    TargetPlan plan;
    plan.graph = g;
    plan.alpha = alpha;
    plan.chi = alpha.palette();
    if (static_cast<std::size_t>(plan.chi) < g.max_degree())
        throw contract_error("target palette is below the maximum degree");
    plan.to_canonical = canonical_renaming(alpha);
    plan.from_canonical.assign(plan.to_canonical.size(), 0);
    for (Color x = 0; x < static_cast<Color>(plan.to_canonical.size()); ++x)
        plan.from_canonical[plan.to_canonical[x]] = x;
    Coloring named = rename_colors(alpha, plan.to_canonical);
    if (g.is_regular(static_cast<std::size_t>(plan.chi)))
    {
        plan.work_graph = g;
        plan.work_target = named;
    }
    else
    {
        auto [big, emb] = regularize(g, static_cast<std::size_t>(plan.chi));
        plan.work_target = lift_coloring(named, emb);
        plan.work_graph = std::move(big);
        plan.embedding = std::move(emb);
    }
    const Graph& w = plan.work_graph;
    for (Color col = 1; col <= plan.chi; ++col)
    {
        TargetPlan::Stage st;
        std::vector<Edge> edges;
        for (EdgeId e = 0; e < w.edge_count(); ++e)
            if (plan.work_target[e] >= col)
            {
                edges.push_back(w.edge(e));
                st.to_full.push_back(e);
                st.in_matching.push_back(plan.work_target[e] == col);
            }
        st.residual = Graph(w.vertex_count(), std::move(edges));
        plan.stages.push_back(std::move(st));
    }
    return plan;
}

namespace detail
{
    inline Trace shift_colors(const Trace& t, int offset)
    {
        Trace out = t;
        for (SwapRecord& r : out)
        {
            r.a += offset;
            r.b += offset;
        }
        return out;
    }

    // Aligns every class, lowest color first, each on its residual graph so
    // the classes already aligned stay frozen.
    inline std::optional<Trace> align_all(const TargetPlan& plan, const Coloring& c, Budget& budget, AlignStats* stats)
    {
        const Graph& g = plan.work_graph;
        Coloring cur = c;
        Trace total;
        for (Color col = 1; col <= plan.chi; ++col)
        {
            const TargetPlan::Stage& st = plan.stages[col - 1];
            const int offset = col - 1;
            Coloring rc(plan.chi + 1 - offset, st.residual.edge_count());
            for (EdgeId r = 0; r < st.to_full.size(); ++r)
            {
                Color wc = cur[st.to_full[r]];
                if (wc < col)
                    throw std::logic_error("aligned class was disturbed");
                rc.set(r, wc - offset);
            }
            auto aligned = align_masked(st.residual, rc, st.in_matching, 1, budget, stats);
            if (!aligned)
                return std::nullopt;
            Trace lifted = shift_colors(aligned->trace, offset);
            cur = replay(g, cur, lifted);
            append(total, lifted);
        }
        return total;
    }
}

/// Trace taking c (a (chi+1)-coloring) to the plan's target. Returns
/// nullopt when the budget runs out.
inline std::optional<Trace> to_target(const TargetPlan& plan, const Coloring& c, Budget& budget,
    AlignStats* stats = nullptr)
{
    check_total(plan.graph, c);
    if (!is_proper(plan.graph, c))
        throw contract_error("start coloring is not proper");
    if (c.palette() > plan.chi + 1)
        throw contract_error("start coloring uses more than chi + 1 colors");
    Coloring start = rename_colors(c.with_palette(plan.chi + 1), plan.to_canonical);
    std::optional<Trace> t;
    if (!plan.embedding)
        t = detail::align_all(plan, start, budget, stats);
    else
    {
        Coloring up = lift_coloring(start, *plan.embedding);
        t = detail::align_all(plan, up, budget, stats);
        if (t)
            t = project_trace(*t, *plan.embedding, up);
    }
    if (!t)
        return std::nullopt;
    return rename_colors(*t, plan.from_canonical);
}

/// Trace taking c (a (chi+1)-coloring) to alpha (a chi-coloring, chi being
/// the chromatic index). Graphs that are not chi-regular are embedded in
/// their chi-regular supergraph, aligned there, and the trace is projected
/// back. Returns nullopt when the budget runs out.
inline std::optional<Trace> to_target(const Graph& g, const Coloring& c, const Coloring& alpha, Budget& budget,
    AlignStats* stats = nullptr)
{
    return to_target(prepare_target(g, alpha), c, budget, stats);
}

/// Trace from c1 to c2 through the common target alpha.
inline std::optional<Trace> equivalence(const Graph& g, const Coloring& c1, const Coloring& c2, const Coloring& alpha,
    Budget& budget, AlignStats* stats = nullptr)
{
    auto t1 = to_target(g, c1, alpha, budget, stats);
    if (!t1)
        return std::nullopt;
    auto t2 = to_target(g, c2, alpha, budget, stats);
    if (!t2)
        return std::nullopt;
    append(*t1, reverse(*t2));
    return t1;
}

}

#endif
