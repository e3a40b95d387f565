#ifndef KEMPE_GRAPH_HPP
#define KEMPE_GRAPH_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kempe
{

using Vertex = std::size_t;
using EdgeId = std::size_t;

/// Thrown for malformed input files and violated input contracts.
class parse_error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

class contract_error : public std::logic_error
{
public:
    using std::logic_error::logic_error;
};

/// Undirected edge, always stored with u < v.
struct Edge
{
    Vertex u = 0;
    Vertex v = 0;

    Edge() = default;
    Edge(Vertex a, Vertex b) : u(std::min(a, b)), v(std::max(a, b)) {}

    Vertex other(Vertex x) const { return x == u ? v : u; }
    bool touches(Vertex x) const { return x == u || x == v; }

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct Incidence
{
    Vertex neighbor;
    EdgeId edge;
};

/// Finite simple undirected graph on vertices [0, vertex_count).
///
/// Edges are kept sorted by (u, v), so edge ids follow the canonical
/// lexicographic order. Incidence lists are sorted by neighbor id.
class Graph
{
public:
    Graph() = default;

    Graph(std::size_t vertex_count, std::vector<Edge> edges)
    : vertex_count_(vertex_count), edges_(std::move(edges))
    {
        for (const Edge& e : edges_)
        {
            if (e.u == e.v)
                throw contract_error("self-loop at vertex " + std::to_string(e.u));
            if (e.v >= vertex_count_)
                throw contract_error("edge endpoint " + std::to_string(e.v) + " out of range");
        }
        std::sort(edges_.begin(), edges_.end());
        auto dup = std::adjacent_find(edges_.begin(), edges_.end());
        if (dup != edges_.end())
            throw contract_error("duplicate edge " + std::to_string(dup->u) + " " + std::to_string(dup->v));

        adjacency_.assign(vertex_count_, {});
        for (EdgeId id = 0; id < edges_.size(); ++id)
        {
            adjacency_[edges_[id].u].push_back({edges_[id].v, id});
            adjacency_[edges_[id].v].push_back({edges_[id].u, id});
        }
        for (auto& list : adjacency_)
            std::sort(list.begin(), list.end(),
                [](const Incidence& a, const Incidence& b) { return a.neighbor < b.neighbor; });
    }

    std::size_t vertex_count() const { return vertex_count_; }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(EdgeId id) const { return edges_.at(id); }

    std::span<const Incidence> incident(Vertex v) const { return adjacency_.at(v); }
    std::size_t degree(Vertex v) const { return adjacency_.at(v).size(); }

    std::optional<EdgeId> find_edge(Vertex a, Vertex b) const
    {
        if (a >= vertex_count_ || b >= vertex_count_ || a == b)
            return std::nullopt;
        Edge key(a, b);
        auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
        if (it != edges_.end() && *it == key)
            return static_cast<EdgeId>(it - edges_.begin());
        return std::nullopt;
    }

    EdgeId edge_id(Vertex a, Vertex b) const
    {
        auto id = find_edge(a, b);
        if (!id)
            throw contract_error("no edge " + std::to_string(a) + " " + std::to_string(b));
        return *id;
    }

    std::size_t max_degree() const
    {
        std::size_t d = 0;
        for (const auto& list : adjacency_)
            d = std::max(d, list.size());
        return d;
    }

    std::size_t min_degree() const
    {
        if (vertex_count_ == 0)
            return 0;
        std::size_t d = std::numeric_limits<std::size_t>::max();
        for (const auto& list : adjacency_)
            d = std::min(d, list.size());
        return d;
    }

    bool is_regular(std::size_t d) const
    {
        return std::all_of(adjacency_.begin(), adjacency_.end(),
            [d](const auto& list) { return list.size() == d; });
    }

    bool is_connected() const
    {
        if (vertex_count_ == 0)
            return true;
        std::vector<char> seen(vertex_count_, 0);
        std::vector<Vertex> stack{0};
        seen[0] = 1;
        std::size_t count = 1;
        while (!stack.empty())
        {
            Vertex x = stack.back();
            stack.pop_back();
            for (const Incidence& inc : adjacency_[x])
                if (!seen[inc.neighbor])
                {
                    seen[inc.neighbor] = 1;
                    ++count;
                    stack.push_back(inc.neighbor);
                }
        }
        return count == vertex_count_;
    }

    friend bool operator==(const Graph& a, const Graph& b)
    {
        return a.vertex_count_ == b.vertex_count_ && a.edges_ == b.edges_;
    }

private:
    std::size_t vertex_count_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<Incidence>> adjacency_;
};

namespace detail
{
    inline std::string strip_comment(const std::string& line)
    {
        auto hash = line.find('#');
        return hash == std::string::npos ? line : line.substr(0, hash);
    }

    inline bool blank(const std::string& s)
    {
        return s.find_first_not_of(" \t\r\n") == std::string::npos;
    }

    // Reads unsigned decimal fields; rejects signs, junk and trailing tokens.
    inline std::vector<std::size_t> fields(const std::string& s, std::size_t lineno)
    {
        std::istringstream in(s);
        std::vector<std::size_t> out;
        std::string tok;
        while (in >> tok)
        {
            if (tok.find_first_not_of("0123456789") != std::string::npos)
                throw parse_error("line " + std::to_string(lineno) + ": bad token '" + tok + "'");
            try
            {
                out.push_back(std::stoull(tok));
            }
            catch (const std::out_of_range&)
            {
                throw parse_error("line " + std::to_string(lineno) + ": number out of range");
            }
        }
        return out;
    }
}

/// Parses the edge-list format: one "u v" per line, '#' comments, blank
/// lines, and an optional "vertices N" header for trailing isolated vertices.
inline Graph parse_graph(std::istream& in)
{
    std::vector<Edge> edges;
    std::size_t declared = 0;
    bool has_declared = false;
    std::size_t vertex_count = 0;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line))
    {
        ++lineno;
        std::string body = detail::strip_comment(line);
        if (detail::blank(body))
            continue;
        std::istringstream probe(body);
        std::string head;
        probe >> head;
        if (head == "vertices")
        {
            std::string rest;
            std::getline(probe, rest);
            auto f = detail::fields(rest, lineno);
            if (f.size() != 1)
                throw parse_error("line " + std::to_string(lineno) + ": expected 'vertices N'");
            declared = f[0];
            has_declared = true;
            continue;
        }
        auto f = detail::fields(body, lineno);
        if (f.size() != 2)
            throw parse_error("line " + std::to_string(lineno) + ": expected 'u v'");
        if (f[0] == f[1])
            throw parse_error("line " + std::to_string(lineno) + ": self-loop");
        edges.emplace_back(f[0], f[1]);
        vertex_count = std::max(vertex_count, std::max(f[0], f[1]) + 1);
    }
    if (has_declared)
    {
        if (declared < vertex_count)
            throw parse_error("vertices header smaller than largest vertex id");
        vertex_count = declared;
    }
    std::vector<Edge> sorted = edges;
    std::sort(sorted.begin(), sorted.end());
    auto dup = std::adjacent_find(sorted.begin(), sorted.end());
    if (dup != sorted.end())
        throw parse_error("duplicate edge " + std::to_string(dup->u) + " " + std::to_string(dup->v));
    return Graph(vertex_count, std::move(edges));
}

inline Graph parse_graph(const std::string& text)
{
    std::istringstream in(text);
    return parse_graph(in);
}

/// Writes the graph in the edge-list format. The header is emitted only
/// when the vertex count cannot be inferred from the edges.
inline void write_graph(std::ostream& out, const Graph& g)
{
    std::size_t inferred = 0;
    for (const Edge& e : g.edges())
        inferred = std::max(inferred, e.v + 1);
    if (inferred != g.vertex_count())
        out << "vertices " << g.vertex_count() << '\n';
    for (const Edge& e : g.edges())
        out << e.u << ' ' << e.v << '\n';
}

/// Convenience constructor used throughout tests and the corpus.
inline Graph make_graph(std::size_t vertex_count, std::initializer_list<std::pair<Vertex, Vertex>> pairs)
{
    std::vector<Edge> edges;
    for (auto [a, b] : pairs)
        edges.emplace_back(a, b);
    return Graph(vertex_count, std::move(edges));
}

inline Graph cycle_graph(std::size_t n)
{
    std::vector<Edge> edges;
    for (Vertex i = 0; i < n; ++i)
        edges.emplace_back(i, (i + 1) % n);
    return Graph(n, std::move(edges));
}

inline Graph path_graph(std::size_t n)
{
    std::vector<Edge> edges;
    for (Vertex i = 0; i + 1 < n; ++i)
        edges.emplace_back(i, i + 1);
    return Graph(n, std::move(edges));
}

inline Graph complete_graph(std::size_t n)
{
    std::vector<Edge> edges;
    for (Vertex i = 0; i < n; ++i)
        for (Vertex j = i + 1; j < n; ++j)
            edges.emplace_back(i, j);
    return Graph(n, std::move(edges));
}

}

#endif
