#ifndef KEMPE_SEARCH_HPP
#define KEMPE_SEARCH_HPP

#include <cstddef>
#include <deque>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "kempe/chain.hpp"

namespace kempe
{

/// Work limits shared by everything that may fall back to search.
/// Every coloring a search discovers, and every swap a constructive step
/// applies, is charged against max_states.
struct Budget
{
    std::size_t max_states = 1'000'000;
    std::size_t max_depth = 32;
    std::size_t spent = 0;

    bool charge(std::size_t n = 1)
    {
        spent += n;
        return spent <= max_states;
    }
    bool exhausted() const { return spent > max_states; }
};

namespace detail
{
    struct SearchNode
    {
        std::size_t parent;
        SwapRecord record;
        std::size_t depth;
    };

    struct SearchTree
    {
        std::vector<std::string> keys;
        std::vector<SearchNode> nodes;
        std::unordered_map<std::string, std::size_t> index;

        std::size_t add(std::string key, SearchNode node)
        {
            std::size_t id = keys.size();
            index.emplace(key, id);
            keys.push_back(std::move(key));
            nodes.push_back(node);
            return id;
        }

        // Records from the root down to id.
        Trace path_to(std::size_t id) const
        {
            Trace t;
            while (id != 0)
            {
                t.push_back(nodes[id].record);
                id = nodes[id].parent;
            }
            return reverse(t);
        }
    };

    inline Coloring from_key(const Coloring& shape, const std::string& key)
    {
        Coloring c = shape;
        auto raw = c.raw();
        for (std::size_t i = 0; i < key.size(); ++i)
            raw[i] = static_cast<std::uint8_t>(key[i]);
        return c;
    }
}

/// Bidirectional breadth-first search over single Kempe swaps from `from`
/// to exactly `to`. Expansion order is fixed, so the returned trace is
/// deterministic. Returns nullopt when the budget or depth runs out, or the
/// two colorings are not Kempe-equivalent.
inline std::optional<Trace> search_to_target(const Graph& g, const Coloring& from, const Coloring& to, Budget& budget)
{
    if (from == to)
        return Trace{};
    detail::SearchTree trees[2];
    trees[0].add(from.key(), {0, {}, 0});
    trees[1].add(to.key(), {0, {}, 0});
    std::vector<std::size_t> frontier[2] = {{0}, {0}};
    std::size_t depth[2] = {0, 0};

    while (!frontier[0].empty() && !frontier[1].empty())
    {
        if (depth[0] + depth[1] + 1 > budget.max_depth)
            return std::nullopt;
        int side = frontier[0].size() <= frontier[1].size() ? 0 : 1;
        auto& tree = trees[side];
        const auto& other = trees[1 - side];
        std::vector<std::size_t> next;
        std::optional<std::pair<std::size_t, std::size_t>> meet;
        bool out_of_budget = false;
        for (std::size_t id : frontier[side])
        {
            Coloring base = detail::from_key(from, tree.keys[id]);
            for_each_chain(g, base, [&](Color a, Color b, std::span<const EdgeId> edges) {
                Coloring child = base;
                swap_in_place(child, edges, a, b);
                std::string key = child.key();
                if (tree.index.count(key))
                    return true;
                if (!budget.charge())
                {
                    out_of_budget = true;
                    return false;
                }
                std::size_t cid = tree.add(std::move(key), {id, {a, b, g.edge(edges.front())}, depth[side] + 1});
                next.push_back(cid);
                auto hit = other.index.find(tree.keys[cid]);
                if (hit != other.index.end())
                {
                    meet = {cid, hit->second};
                    return false;
                }
                return true;
            });
            if (meet || out_of_budget)
                break;
        }
        if (meet)
        {
            auto [mine, theirs] = *meet;
            Trace a = trees[side].path_to(mine);
            Trace b = trees[1 - side].path_to(theirs);
            // a leads from this side's root to the meeting point, b from the
            // other root to it.
            if (side == 0)
            {
                append(a, reverse(b));
                return a;
            }
            append(b, reverse(a));
            return b;
        }
        if (out_of_budget)
            return std::nullopt;
        frontier[side] = std::move(next);
        ++depth[side];
    }
    return std::nullopt;
}

/// Breadth-first search from `from` for the first coloring satisfying
/// `goal`, in canonical swap order. Returns the trace and the coloring.
template <typename Goal>
std::optional<std::pair<Trace, Coloring>> search_for(const Graph& g, const Coloring& from, Goal&& goal, Budget& budget)
{
    if (goal(from))
        return std::pair{Trace{}, from};
    detail::SearchTree tree;
    tree.add(from.key(), {0, {}, 0});
    std::deque<std::size_t> queue{0};
    while (!queue.empty())
    {
        std::size_t id = queue.front();
        queue.pop_front();
        if (tree.nodes[id].depth >= budget.max_depth)
            continue;
        Coloring base = detail::from_key(from, tree.keys[id]);
        std::optional<std::size_t> found;
        bool out_of_budget = false;
        for_each_chain(g, base, [&](Color a, Color b, std::span<const EdgeId> edges) {
            Coloring child = base;
            swap_in_place(child, edges, a, b);
            std::string key = child.key();
            if (tree.index.count(key))
                return true;
            if (!budget.charge())
            {
                out_of_budget = true;
                return false;
            }
            std::size_t cid = tree.add(std::move(key), {id, {a, b, g.edge(edges.front())}, tree.nodes[id].depth + 1});
            if (goal(child))
            {
                found = cid;
                return false;
            }
            queue.push_back(cid);
            return true;
        });
        if (found)
            return std::pair{tree.path_to(*found), detail::from_key(from, tree.keys[*found])};
        if (out_of_budget)
            return std::nullopt;
    }
    return std::nullopt;
}

}

#endif
