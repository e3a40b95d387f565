#ifndef KEMPE_ORACLE_HPP
#define KEMPE_ORACLE_HPP

#include <algorithm>
#include <cstdint>
#include <deque>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "kempe/chain.hpp"
#include "kempe/coloring.hpp"
#include "kempe/graph.hpp"

namespace kempe::oracle
{

/// Enumeration is exhaustive, so it is only allowed on small graphs.
inline constexpr std::size_t default_edge_guard = 12;

class guard_exceeded : public contract_error
{
public:
    using contract_error::contract_error;
};

inline void check_guard(const Graph& g, int k, std::size_t guard)
{
    if (g.edge_count() > guard)
        throw guard_exceeded("graph has " + std::to_string(g.edge_count()) + " edges; oracle guard is "
            + std::to_string(guard));
    if (k < 1 || k > 15)
        throw guard_exceeded("oracle palette must be in 1..15");
}

namespace detail
{
    // Colors edges in canonical order; Choose yields candidate colors.
    template <typename Choose, typename Visit>
    bool backtrack(const Graph& g, int k, std::vector<ColorMask>& used, std::vector<Color>& colors, EdgeId e,
        Choose& choose, Visit& visit)
    {
        if (e == g.edge_count())
            return visit(colors);
        const Edge& ed = g.edge(e);
        ColorMask allowed = palette_mask(k) & ~(used[ed.u] | used[ed.v]);
        for (Color col : choose(e, allowed))
        {
            ColorMask bit = color_bit(col);
            colors[e] = col;
            used[ed.u] |= bit;
            used[ed.v] |= bit;
            bool stop = backtrack(g, k, used, colors, e + 1, choose, visit);
            used[ed.u] &= ~bit;
            used[ed.v] &= ~bit;
            if (stop)
                return true;
        }
        colors[e] = 0;
        return false;
    }
}

/// Calls visit(colors) for every proper k-coloring in lexicographic order
/// over the canonical edge order. visit returns true to stop early.
template <typename Visit>
void for_each_coloring(const Graph& g, int k, Visit&& visit)
{
    std::vector<ColorMask> used(g.vertex_count(), 0);
    std::vector<Color> colors(g.edge_count(), 0);
    auto choose = [](EdgeId, ColorMask allowed) { return mask_colors(allowed); };
    detail::backtrack(g, k, used, colors, 0, choose, visit);
}

inline std::optional<Coloring> find_coloring(const Graph& g, int k)
{
    if (k < 0 || k > max_palette)
        return std::nullopt;
    std::optional<Coloring> found;
    std::vector<ColorMask> used(g.vertex_count(), 0);
    std::vector<Color> colors(g.edge_count(), 0);
    // The first edge can take color 1 without loss of generality.
    auto choose = [](EdgeId e, ColorMask allowed) {
        auto cols = mask_colors(allowed);
        if (e == 0 && !cols.empty())
            cols.resize(1);
        return cols;
    };
    auto visit = [&](const std::vector<Color>& cs) {
        found = Coloring(k, cs);
        return true;
    };
    detail::backtrack(g, k, used, colors, 0, choose, visit);
    return found;
}

/// Smallest k admitting a proper k-edge-coloring; 0 for edgeless graphs.
inline int chromatic_index(const Graph& g)
{
    if (g.edge_count() == 0)
        return 0;
    int delta = static_cast<int>(g.max_degree());
    if (find_coloring(g, delta))
        return delta;
    if (find_coloring(g, delta + 1))
        return delta + 1;
    throw std::logic_error("no (max degree + 1)-edge-coloring found");
}

/// A uniformly shuffled backtracking search: a random proper k-coloring.
template <typename Rng>
std::optional<Coloring> random_coloring(const Graph& g, int k, Rng& rng)
{
    std::optional<Coloring> found;
    std::vector<ColorMask> used(g.vertex_count(), 0);
    std::vector<Color> colors(g.edge_count(), 0);
    auto choose = [&](EdgeId, ColorMask allowed) {
        auto cols = mask_colors(allowed);
        for (std::size_t i = cols.size(); i > 1; --i)
            std::swap(cols[i - 1], cols[rng() % i]);
        return cols;
    };
    auto visit = [&](const std::vector<Color>& cs) {
        found = Coloring(k, cs);
        return true;
    };
    detail::backtrack(g, k, used, colors, 0, choose, visit);
    return found;
}

inline std::vector<Coloring> enumerate(const Graph& g, int k, std::size_t guard = default_edge_guard)
{
    check_guard(g, k, guard);
    std::vector<Coloring> out;
    for_each_coloring(g, k, [&](const std::vector<Color>& cs) {
        out.emplace_back(k, cs);
        return false;
    });
    return out;
}

/// Colorings packed 4 bits per edge (guard keeps this within 64 bits).
using PackedColoring = std::uint64_t;

inline PackedColoring pack(const Coloring& c)
{
    PackedColoring p = 0;
    for (EdgeId e = 0; e < c.size(); ++e)
        p |= PackedColoring(c[e]) << (4 * e);
    return p;
}

inline Coloring unpack(PackedColoring p, int k, std::size_t edge_count)
{
    Coloring c(k, edge_count);
    for (EdgeId e = 0; e < edge_count; ++e)
        c.set(e, static_cast<Color>((p >> (4 * e)) & 0xF));
    return c;
}

/// Calls f(neighbor) for each coloring one Kempe swap away from c.
template <typename F>
void for_each_neighbor(const Graph& g, const Coloring& c, F&& f)
{
    PackedColoring base = pack(c);
    for_each_chain(g, c, [&](Color a, Color b, std::span<const EdgeId> edges) {
        PackedColoring flip = PackedColoring(a ^ b);
        PackedColoring p = base;
        for (EdgeId e : edges)
            p ^= flip << (4 * e);
        f(p);
        return true;
    });
}

/// Proper k-colorings (canonical order) with Kempe adjacency and the
/// partition into connected components.
struct ReconfigGraph
{
    int k = 0;
    std::vector<PackedColoring> nodes;
    std::vector<std::vector<std::uint32_t>> adjacency;
    std::vector<std::uint32_t> class_of;
    std::size_t class_count = 0;

    std::vector<std::size_t> class_sizes() const
    {
        std::vector<std::size_t> sizes(class_count, 0);
        for (auto c : class_of)
            ++sizes[c];
        return sizes;
    }
};

inline ReconfigGraph reconfig_graph(const Graph& g, int k, std::size_t guard = default_edge_guard)
{
    check_guard(g, k, guard);
    ReconfigGraph rg;
    rg.k = k;
    for_each_coloring(g, k, [&](const std::vector<Color>& cs) {
        rg.nodes.push_back(pack(Coloring(k, cs)));
        return false;
    });
    std::unordered_map<PackedColoring, std::uint32_t> index;
    index.reserve(rg.nodes.size() * 2);
    for (std::uint32_t i = 0; i < rg.nodes.size(); ++i)
        index.emplace(rg.nodes[i], i);
    rg.adjacency.resize(rg.nodes.size());
    for (std::uint32_t i = 0; i < rg.nodes.size(); ++i)
    {
        Coloring c = unpack(rg.nodes[i], k, g.edge_count());
        for_each_neighbor(g, c, [&](PackedColoring p) { rg.adjacency[i].push_back(index.at(p)); });
        std::sort(rg.adjacency[i].begin(), rg.adjacency[i].end());
    }
    constexpr std::uint32_t none = ~std::uint32_t{0};
    rg.class_of.assign(rg.nodes.size(), none);
    for (std::uint32_t s = 0; s < rg.nodes.size(); ++s)
    {
        if (rg.class_of[s] != none)
            continue;
        auto cls = static_cast<std::uint32_t>(rg.class_count++);
        std::vector<std::uint32_t> stack{s};
        rg.class_of[s] = cls;
        while (!stack.empty())
        {
            auto x = stack.back();
            stack.pop_back();
            for (auto y : rg.adjacency[x])
                if (rg.class_of[y] == none)
                {
                    rg.class_of[y] = cls;
                    stack.push_back(y);
                }
        }
    }
    return rg;
}

/// Kempe classes of proper k-colorings, each a list of indices into
/// enumerate(g, k), listed by smallest member.
inline std::vector<std::vector<std::size_t>> reconfig_classes(const Graph& g, int k,
    std::size_t guard = default_edge_guard)
{
    ReconfigGraph rg = reconfig_graph(g, k, guard);
    std::vector<std::vector<std::size_t>> classes(rg.class_count);
    for (std::size_t i = 0; i < rg.nodes.size(); ++i)
        classes[rg.class_of[i]].push_back(i);
    return classes;
}

struct ClassSummary
{
    std::size_t colorings = 0;
    std::size_t classes = 0;
};

/// Class count via union-find without storing adjacency; for corpus sweeps.
inline ClassSummary count_classes(const Graph& g, int k, std::size_t guard = default_edge_guard)
{
    check_guard(g, k, guard);
    std::vector<PackedColoring> nodes;
    for_each_coloring(g, k, [&](const std::vector<Color>& cs) {
        nodes.push_back(pack(Coloring(k, cs)));
        return false;
    });
    std::unordered_map<PackedColoring, std::uint32_t> index;
    index.reserve(nodes.size() * 2);
    for (std::uint32_t i = 0; i < nodes.size(); ++i)
        index.emplace(nodes[i], i);
    std::vector<std::uint32_t> parent(nodes.size());
    std::iota(parent.begin(), parent.end(), 0u);
    auto find = [&](std::uint32_t x) {
        while (parent[x] != x)
        {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    std::size_t classes = nodes.size();
    Coloring c(k, g.edge_count());
    for (std::uint32_t i = 0; i < nodes.size(); ++i)
    {
        auto raw = c.raw();
        for (EdgeId e = 0; e < g.edge_count(); ++e)
            raw[e] = static_cast<std::uint8_t>((nodes[i] >> (4 * e)) & 0xF);
        for_each_neighbor(g, c, [&](PackedColoring p) {
            auto a = find(i), b = find(index.at(p));
            if (a != b)
            {
                parent[std::max(a, b)] = std::min(a, b);
                --classes;
            }
        });
    }
    return {nodes.size(), classes};
}

/// Largest BFS distance between two colorings of the same class.
inline std::size_t diameter(const ReconfigGraph& rg)
{
    std::size_t best = 0;
    std::vector<std::uint32_t> dist(rg.nodes.size());
    constexpr std::uint32_t unseen = ~std::uint32_t{0};
    for (std::uint32_t s = 0; s < rg.nodes.size(); ++s)
    {
        std::fill(dist.begin(), dist.end(), unseen);
        std::deque<std::uint32_t> queue{s};
        dist[s] = 0;
        while (!queue.empty())
        {
            auto x = queue.front();
            queue.pop_front();
            best = std::max<std::size_t>(best, dist[x]);
            for (auto y : rg.adjacency[x])
                if (dist[y] == unseen)
                {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
        }
    }
    return best;
}

/// Minimum-length swap sequence from c1 to c2, lexicographically least
/// among the minimal ones under (color pair, smallest chain edge) order;
/// nullopt when the colorings lie in different classes.
inline std::optional<Trace> shortest_trace(const Graph& g, int k, const Coloring& c1, const Coloring& c2,
    std::size_t guard = default_edge_guard)
{
    check_guard(g, k, guard);
    Coloring start = c1.with_palette(k), goal = c2.with_palette(k);
    if (!is_proper(g, start) || !is_proper(g, goal))
        throw contract_error("shortest_trace needs proper colorings");
    PackedColoring target = pack(goal);
    struct Visit
    {
        std::size_t parent;
        SwapRecord record;
    };
    std::vector<PackedColoring> keys{pack(start)};
    std::vector<Visit> visits{{0, {}}};
    std::unordered_map<PackedColoring, std::size_t> seen{{keys[0], 0}};
    auto path = [&](std::size_t id) {
        Trace t;
        for (; id != 0; id = visits[id].parent)
            t.push_back(visits[id].record);
        return reverse(t);
    };
    if (keys[0] == target)
        return Trace{};
    for (std::size_t head = 0; head < keys.size(); ++head)
    {
        Coloring c = unpack(keys[head], k, g.edge_count());
        std::optional<std::size_t> hit;
        for_each_chain(g, c, [&](Color a, Color b, std::span<const EdgeId> edges) {
            PackedColoring p = keys[head];
            for (EdgeId e : edges)
                p ^= PackedColoring(a ^ b) << (4 * e);
            if (seen.count(p))
                return true;
            seen.emplace(p, keys.size());
            keys.push_back(p);
            visits.push_back({head, {a, b, g.edge(edges.front())}});
            if (p == target)
            {
                hit = keys.size() - 1;
                return false;
            }
            return true;
        });
        if (hit)
            return path(*hit);
    }
    return std::nullopt;
}

}

#endif
