#ifndef KEMPE_COLORING_HPP
#define KEMPE_COLORING_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "kempe/graph.hpp"

namespace kempe
{

/// Colors are 1-based; 0 marks an unassigned edge.
using Color = int;
using ColorMask = std::uint64_t;
using EdgeSet = std::vector<EdgeId>;

inline constexpr int max_palette = 63;

constexpr ColorMask color_bit(Color c) { return ColorMask{1} << c; }

constexpr ColorMask palette_mask(int k)
{
    // bits 1..k
    return ((ColorMask{1} << k) - 1) << 1;
}

inline std::vector<Color> mask_colors(ColorMask m)
{
    std::vector<Color> out;
    while (m)
    {
        out.push_back(std::countr_zero(m));
        m &= m - 1;
    }
    return out;
}

/// Edge coloring with palette [1..palette], stored per edge id.
///
/// Equality compares assignments only: the palette is context, so a
/// k-coloring that leaves color k unused equals the same map viewed as a
/// (k-1)-coloring.
class Coloring
{
public:
    Coloring() = default;

    Coloring(int palette, std::size_t edge_count) : palette_(palette), colors_(edge_count, 0)
    {
        check_palette();
    }

    Coloring(int palette, const std::vector<Color>& colors) : palette_(palette), colors_(colors.size())
    {
        check_palette();
        for (std::size_t i = 0; i < colors.size(); ++i)
            set(i, colors[i]);
    }

    int palette() const { return palette_; }
    std::size_t size() const { return colors_.size(); }

    Color operator[](EdgeId e) const { return colors_[e]; }
    Color at(EdgeId e) const { return colors_.at(e); }

    void set(EdgeId e, Color c)
    {
        if (c < 0 || c > palette_)
            throw contract_error("color " + std::to_string(c) + " outside palette 1.." + std::to_string(palette_));
        colors_.at(e) = static_cast<std::uint8_t>(c);
    }

    Coloring with_palette(int palette) const
    {
        Coloring out = *this;
        out.palette_ = palette;
        out.check_palette();
        for (auto c : colors_)
            if (c > palette)
                throw contract_error("palette too small for coloring");
        return out;
    }

    std::span<const std::uint8_t> raw() const { return colors_; }
    std::span<std::uint8_t> raw() { return colors_; }

    /// Byte key for hash-based visited sets.
    std::string key() const { return std::string(colors_.begin(), colors_.end()); }

    std::vector<Color> values() const { return {colors_.begin(), colors_.end()}; }

    friend bool operator==(const Coloring& a, const Coloring& b) { return a.colors_ == b.colors_; }

private:
    void check_palette() const
    {
        if (palette_ < 0 || palette_ > max_palette)
            throw contract_error("palette size must be in 0.." + std::to_string(max_palette));
    }

    int palette_ = 0;
    std::vector<std::uint8_t> colors_;
};

inline void check_fits(const Graph& g, const Coloring& c)
{
    if (c.size() != g.edge_count())
        throw contract_error("coloring has " + std::to_string(c.size()) + " entries for "
            + std::to_string(g.edge_count()) + " edges");
}

inline void check_total(const Graph& g, const Coloring& c)
{
    check_fits(g, c);
    for (EdgeId e = 0; e < c.size(); ++e)
        if (c[e] == 0)
            throw contract_error("edge " + std::to_string(g.edge(e).u) + " " + std::to_string(g.edge(e).v)
                + " has no color");
}

inline ColorMask used_mask(const Graph& g, const Coloring& c, Vertex v)
{
    ColorMask m = 0;
    for (const Incidence& inc : g.incident(v))
        m |= color_bit(c[inc.edge]);
    return m & ~ColorMask{1};
}

inline ColorMask missing_mask(const Graph& g, const Coloring& c, Vertex v)
{
    return palette_mask(c.palette()) & ~used_mask(g, c, v);
}

inline std::vector<Color> missing_colors(const Graph& g, const Coloring& c, Vertex v)
{
    return mask_colors(missing_mask(g, c, v));
}

/// The unique missing color of v, if v misses exactly one color.
inline std::optional<Color> sole_missing(const Graph& g, const Coloring& c, Vertex v)
{
    ColorMask m = missing_mask(g, c, v);
    if (std::popcount(m) != 1)
        return std::nullopt;
    return std::countr_zero(m);
}

inline bool is_proper(const Graph& g, const Coloring& c)
{
    check_total(g, c);
    for (Vertex v = 0; v < g.vertex_count(); ++v)
    {
        ColorMask seen = 0;
        for (const Incidence& inc : g.incident(v))
        {
            ColorMask bit = color_bit(c[inc.edge]);
            if (seen & bit)
                return false;
            seen |= bit;
        }
    }
    return true;
}

/// The incident edge of v carrying color col, if any.
inline std::optional<EdgeId> edge_with_color(const Graph& g, const Coloring& c, Vertex v, Color col)
{
    for (const Incidence& inc : g.incident(v))
        if (c[inc.edge] == col)
            return inc.edge;
    return std::nullopt;
}

inline EdgeSet color_class(const Coloring& c, Color col)
{
    EdgeSet out;
    for (EdgeId e = 0; e < c.size(); ++e)
        if (c[e] == col)
            out.push_back(e);
    return out;
}

enum class EdgeClass
{
    Good,
    Bad,
    Ugly,
    Neutral
};

inline const char* to_string(EdgeClass k)
{
    switch (k)
    {
    case EdgeClass::Good: return "good";
    case EdgeClass::Bad: return "bad";
    case EdgeClass::Ugly: return "ugly";
    case EdgeClass::Neutral: return "neutral";
    }
    return "?";
}

/// Classifies e against the target matching M (sorted edge ids) and color.
inline EdgeClass classify_edge(const Graph& g, const Coloring& c, const EdgeSet& matching, Color target, EdgeId e)
{
    if (e >= g.edge_count())
        throw contract_error("edge id " + std::to_string(e) + " not in graph");
    bool in_m = std::binary_search(matching.begin(), matching.end(), e);
    bool colored = c.at(e) == target;
    if (in_m)
        return colored ? EdgeClass::Good : EdgeClass::Bad;
    return colored ? EdgeClass::Ugly : EdgeClass::Neutral;
}

/// Vertices missing the target color.
inline std::vector<Vertex> free_vertices(const Graph& g, const Coloring& c, Color target)
{
    std::vector<Vertex> out;
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (missing_mask(g, c, v) & color_bit(target))
            out.push_back(v);
    return out;
}

/// A set of graph elements (vertices and edges), used for stability checks.
struct ElementSet
{
    std::set<Vertex> vertices;
    std::set<EdgeId> edges;
};

/// True when every edge of X has the same color and every vertex of X the
/// same missing set in both colorings.
inline bool identical_on(const Graph& g, const Coloring& a, const Coloring& b, const ElementSet& x)
{
    for (EdgeId e : x.edges)
        if (a.at(e) != b.at(e))
            return false;
    for (Vertex v : x.vertices)
        if (missing_mask(g, a, v) != missing_mask(g, b, v))
            return false;
    return true;
}

/// Parses "u v c" lines against g. An optional "palette K" line fixes the
/// palette; otherwise it is the largest color used. Unlisted edges stay 0.
inline Coloring parse_coloring(std::istream& in, const Graph& g)
{
    std::vector<Color> colors(g.edge_count(), 0);
    std::optional<int> declared;
    int largest = 0;
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
        if (head == "palette")
        {
            std::string rest;
            std::getline(probe, rest);
            auto f = detail::fields(rest, lineno);
            if (f.size() != 1 || f[0] > static_cast<std::size_t>(max_palette))
                throw parse_error("line " + std::to_string(lineno) + ": expected 'palette K'");
            declared = static_cast<int>(f[0]);
            continue;
        }
        auto f = detail::fields(body, lineno);
        if (f.size() != 3)
            throw parse_error("line " + std::to_string(lineno) + ": expected 'u v c'");
        auto id = g.find_edge(f[0], f[1]);
        if (!id)
            throw parse_error("line " + std::to_string(lineno) + ": edge not in graph");
        if (f[2] == 0 || f[2] > static_cast<std::size_t>(max_palette))
            throw parse_error("line " + std::to_string(lineno) + ": color out of range");
        if (colors[*id] != 0)
            throw parse_error("line " + std::to_string(lineno) + ": edge colored twice");
        colors[*id] = static_cast<Color>(f[2]);
        largest = std::max(largest, colors[*id]);
    }
    int palette = declared.value_or(largest);
    if (palette < largest)
        throw parse_error("palette header smaller than largest color");
    return Coloring(palette, colors);
}

inline Coloring parse_coloring(const std::string& text, const Graph& g)
{
    std::istringstream in(text);
    return parse_coloring(in, g);
}

inline void write_coloring(std::ostream& out, const Graph& g, const Coloring& c)
{
    check_fits(g, c);
    int largest = 0;
    for (EdgeId e = 0; e < c.size(); ++e)
        largest = std::max(largest, c[e]);
    if (largest != c.palette())
        out << "palette " << c.palette() << '\n';
    for (EdgeId e = 0; e < c.size(); ++e)
        if (c[e] != 0)
            out << g.edge(e).u << ' ' << g.edge(e).v << ' ' << c[e] << '\n';
}

}

#endif
