#ifndef KEMPE_TRACE_IO_HPP
#define KEMPE_TRACE_IO_HPP

#include <istream>
#include <ostream>
#include <string>

#include "json.hpp"
#include "kempe/chain.hpp"

namespace kempe
{

// One JSON object per line:
//   {"a":1,"b":2,"anchor":{"edge":[0,1]}}
//   {"a":1,"b":2,"anchor":{"vertex":3}}

inline std::string format_record(const SwapRecord& r)
{
    nlohmann::ordered_json j;
    j["a"] = r.a;
    j["b"] = r.b;
    nlohmann::ordered_json anchor;
    if (const Edge* e = std::get_if<Edge>(&r.anchor))
        anchor["edge"] = {e->u, e->v};
    else
        anchor["vertex"] = std::get<VertexAnchor>(r.anchor).vertex;
    j["anchor"] = anchor;
    return j.dump();
}

inline void write_trace(std::ostream& out, const Trace& t)
{
    for (const SwapRecord& r : t)
        out << format_record(r) << '\n';
}

inline SwapRecord parse_record(const std::string& line, std::size_t lineno = 0)
{
    auto fail = [&](const std::string& what) {
        return parse_error("trace line " + std::to_string(lineno) + ": " + what);
    };
    nlohmann::json j;
    try
    {
        j = nlohmann::json::parse(line);
    }
    catch (const nlohmann::json::parse_error& e)
    {
        throw fail(e.what());
    }
    if (!j.is_object() || !j.contains("a") || !j.contains("b") || !j.contains("anchor"))
        throw fail("expected keys a, b, anchor");
    if (!j["a"].is_number_integer() || !j["b"].is_number_integer())
        throw fail("colors must be integers");
    SwapRecord r;
    r.a = j["a"].get<int>();
    r.b = j["b"].get<int>();
    const auto& anchor = j["anchor"];
    if (anchor.is_object() && anchor.contains("edge"))
    {
        const auto& e = anchor["edge"];
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_unsigned() || !e[1].is_number_unsigned())
            throw fail("edge anchor must be [u,v]");
        r.anchor = Edge(e[0].get<Vertex>(), e[1].get<Vertex>());
    }
    else if (anchor.is_object() && anchor.contains("vertex"))
    {
        if (!anchor["vertex"].is_number_unsigned())
            throw fail("vertex anchor must be an id");
        r.anchor = VertexAnchor{anchor["vertex"].get<Vertex>()};
    }
    else
        throw fail("anchor must hold 'edge' or 'vertex'");
    return r;
}

inline Trace parse_trace(std::istream& in)
{
    Trace t;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line))
    {
        ++lineno;
        if (line.find_first_not_of(" \t\r\n") == std::string::npos)
            continue;
        t.push_back(parse_record(line, lineno));
    }
    return t;
}

}

#endif
