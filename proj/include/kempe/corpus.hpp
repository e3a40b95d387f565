#ifndef KEMPE_CORPUS_HPP
#define KEMPE_CORPUS_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

#include "kempe/graph.hpp"

namespace kempe::corpus
{

namespace detail
{
    struct PairTable
    {
        std::size_t n;
        std::vector<std::pair<Vertex, Vertex>> pairs;
        std::vector<std::vector<std::uint8_t>> index; // index[i][j] = bit of pair {i,j}

        explicit PairTable(std::size_t n_) : n(n_), index(n_, std::vector<std::uint8_t>(n_, 0))
        {
            for (Vertex i = 0; i < n; ++i)
                for (Vertex j = i + 1; j < n; ++j)
                {
                    index[i][j] = index[j][i] = static_cast<std::uint8_t>(pairs.size());
                    pairs.emplace_back(i, j);
                }
        }
    };

    inline bool connected_spanning(const PairTable& t, std::uint32_t mask)
    {
        std::uint32_t reached = 1, frontier = 1;
        while (frontier)
        {
            std::uint32_t next = 0;
            for (std::uint32_t m = mask; m; m &= m - 1)
            {
                auto [a, b] = t.pairs[std::countr_zero(m)];
                if ((frontier >> a & 1) && !(reached >> b & 1))
                    next |= 1u << b;
                if ((frontier >> b & 1) && !(reached >> a & 1))
                    next |= 1u << a;
            }
            reached |= next;
            frontier = next;
        }
        return reached == (1u << t.n) - 1;
    }
}

/// All connected simple graphs with 2..max_vertices vertices and at most
/// max_edges edges, one per isomorphism class, each relabeled to the
/// representative with the smallest edge bitmask. Ordered by (vertices,
/// edges, bitmask), so the list is the same on every run.
inline std::vector<Graph> connected_graphs(std::size_t max_vertices = 6, std::size_t max_edges = 8)
{
    std::vector<Graph> out;
    for (std::size_t n = 2; n <= max_vertices; ++n)
    {
        detail::PairTable t(n);
        const std::size_t p = t.pairs.size();
        std::vector<Vertex> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::vector<std::vector<std::uint8_t>> relabel;
        do
        {
            std::vector<std::uint8_t> r(p);
            for (std::size_t i = 0; i < p; ++i)
                r[i] = t.index[perm[t.pairs[i].first]][perm[t.pairs[i].second]];
            relabel.push_back(std::move(r));
        } while (std::next_permutation(perm.begin(), perm.end()));

        std::set<std::pair<std::size_t, std::uint32_t>> reps;
        for (std::uint32_t mask = 1; mask < (1u << p); ++mask)
        {
            auto m = static_cast<std::size_t>(std::popcount(mask));
            if (m + 1 < n || m > max_edges)
                continue;
            if (!detail::connected_spanning(t, mask))
                continue;
            bool canonical = true;
            for (const auto& r : relabel)
            {
                std::uint32_t img = 0;
                for (std::uint32_t x = mask; x; x &= x - 1)
                    img |= 1u << r[std::countr_zero(x)];
                if (img < mask)
                {
                    canonical = false;
                    break;
                }
            }
            if (canonical)
                reps.emplace(m, mask);
        }
        for (auto [m, mask] : reps)
        {
            std::vector<Edge> edges;
            for (std::uint32_t x = mask; x; x &= x - 1)
            {
                auto [a, b] = t.pairs[std::countr_zero(x)];
                edges.emplace_back(a, b);
            }
            out.emplace_back(n, std::move(edges));
        }
    }
    return out;
}

/// Random connected graph: a random spanning tree on n vertices plus extra
/// random edges, up to max_edges in total.
template <typename Rng>
Graph random_connected_graph(Rng& rng, std::size_t min_vertices, std::size_t max_vertices, std::size_t max_edges)
{
    std::size_t n = min_vertices + rng() % (max_vertices - min_vertices + 1);
    n = std::min(n, max_edges + 1);
    std::vector<Edge> edges;
    for (Vertex v = 1; v < n; ++v)
        edges.emplace_back(v, rng() % v);
    std::size_t possible = n * (n - 1) / 2;
    std::size_t limit = std::min(max_edges, possible);
    std::size_t target = edges.size() + (limit > edges.size() ? rng() % (limit - edges.size() + 1) : 0);
    std::set<Edge> have(edges.begin(), edges.end());
    while (edges.size() < target)
    {
        Vertex a = rng() % n, b = rng() % n;
        if (a == b)
            continue;
        Edge e(a, b);
        if (have.insert(e).second)
            edges.push_back(e);
    }
    return Graph(n, std::move(edges));
}

}

#endif
