#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "kempe/kempe.hpp"

namespace
{

using namespace kempe;

enum Exit
{
    ok = 0,
    usage = 1,
    budget_failure = 2,
    mismatch = 3
};

std::ifstream open_in(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw parse_error("cannot open " + path);
    return in;
}

std::ofstream open_out(const std::string& path)
{
    std::ofstream out(path);
    if (!out)
        throw parse_error("cannot write " + path);
    return out;
}

Graph load_graph(const std::string& path)
{
    auto in = open_in(path);
    return parse_graph(in);
}

Coloring load_coloring(const std::string& path, const Graph& g)
{
    auto in = open_in(path);
    return parse_coloring(in, g);
}

Trace load_trace(const std::string& path)
{
    auto in = open_in(path);
    return parse_trace(in);
}

// "-" means stdout.
template <typename Write>
void emit(const std::string& path, Write&& write)
{
    if (path.empty() || path == "-")
    {
        write(std::cout);
        return;
    }
    auto out = open_out(path);
    write(out);
}

struct Options
{
    std::string graph, coloring, from, target, trace, expect, out = "-", embedding;
    int k = 0;
    int chi = 0;
    bool random = false;
    std::uint64_t seed = 1;
    Vertex vertex = 0;
    std::vector<Vertex> edge;
    int color = 0;
    bool csv = false;
    bool stats = false;
    Budget budget;
};

int run_color(const Options& o)
{
    Graph g = load_graph(o.graph);
    int k = o.k > 0 ? o.k : oracle::chromatic_index(g);
    std::optional<Coloring> c;
    if (o.random)
    {
        std::mt19937_64 rng(o.seed);
        c = oracle::random_coloring(g, k, rng);
    }
    else
        c = oracle::find_coloring(g, k);
    if (!c)
    {
        std::cerr << "no proper " << k << "-edge-coloring\n";
        return usage;
    }
    emit(o.out, [&](std::ostream& out) { write_coloring(out, g, *c); });
    return ok;
}

int run_chromatic_index(const Options& o)
{
    Graph g = load_graph(o.graph);
    std::cout << oracle::chromatic_index(g) << '\n';
    return ok;
}

void print_fan(std::ostream& out, const Graph& g, const Fan& f)
{
    out << "center " << f.center << " missing " << f.center_missing << '\n';
    for (std::size_t i = 0; i < f.size(); ++i)
    {
        const Edge& e = g.edge(f.edges[i]);
        out << i + 1 << ' ' << e.u << ' ' << e.v << " color " << f.edge_colors[i] << " vertex " << f.vertices[i]
            << " missing " << f.missing[i] << '\n';
    }
    out << "shape " << to_string(f.shape);
    if (f.shape == FanShape::Comet)
        out << " back " << f.comet_back + 1;
    out << '\n';
}

int run_fan(const Options& o)
{
    Graph g = load_graph(o.graph);
    Coloring c = load_coloring(o.coloring, g);
    if (o.vertex >= g.vertex_count())
        throw parse_error("vertex " + std::to_string(o.vertex) + " not in graph");
    Fan f;
    if (!o.edge.empty())
    {
        if (o.edge.size() != 2)
            throw parse_error("--edge takes two vertices");
        auto id = g.find_edge(o.edge[0], o.edge[1]);
        if (!id || !g.edge(*id).touches(o.vertex))
            throw parse_error("--edge is not an edge at --vertex");
        f = build(g, c, o.vertex, *id);
    }
    else if (o.color > 0)
        f = build_from_color(g, c, o.vertex, o.color);
    else
        throw parse_error("fan needs --edge or --color");
    print_fan(std::cout, g, f);
    return ok;
}

int run_transform(const Options& o)
{
    Graph g = load_graph(o.graph);
    Coloring from = load_coloring(o.from, g);
    Coloring target = load_coloring(o.target, g);
    Budget budget = o.budget;
    AlignStats stats;
    auto t = to_target(g, from, target, budget, &stats);
    if (!t)
    {
        std::cerr << "budget exhausted after " << budget.spent << " states\n";
        return budget_failure;
    }
    emit(o.out, [&](std::ostream& out) { write_trace(out, *t); });
    if (o.stats)
        std::cerr << "swaps " << t->size() << "\nsingle_swap " << stats.single_swap << "\nfan_repair "
                  << stats.fan_repair << "\nmain_case " << stats.main_case << "\nsearch_fallback "
                  << stats.search_fallback << '\n';
    return ok;
}

int run_verify(const Options& o)
{
    Graph g = load_graph(o.graph);
    Coloring from = load_coloring(o.from, g);
    Coloring expect = load_coloring(o.expect, g);
    Trace t = load_trace(o.trace);
    // Traces may use colors beyond the start palette (e.g. chi + 1).
    int palette = std::max(from.palette(), expect.palette());
    for (const SwapRecord& r : t)
        palette = std::max({palette, r.a, r.b});
    Verdict v = verify_trace(g, from.with_palette(palette), t, expect.with_palette(palette));
    if (!v.ok)
    {
        std::cout << "mismatch: " << v.diagnostic << '\n';
        return mismatch;
    }
    std::cout << "ok " << v.steps << " swaps\n";
    return ok;
}

int run_explore(const Options& o)
{
    Graph g = load_graph(o.graph);
    auto rg = oracle::reconfig_graph(g, o.k);
    auto sizes = rg.class_sizes();
    std::size_t diam = oracle::diameter(rg);
    if (o.csv)
    {
        std::cout << "k,colorings,classes,diameter,sizes\n"
                  << o.k << ',' << rg.nodes.size() << ',' << rg.class_count << ',' << diam << ',';
        for (std::size_t i = 0; i < sizes.size(); ++i)
            std::cout << (i ? " " : "") << sizes[i];
        std::cout << '\n';
        return ok;
    }
    std::cout << "colorings " << rg.nodes.size() << "\nclasses " << rg.class_count << "\nsizes";
    for (auto s : sizes)
        std::cout << ' ' << s;
    std::cout << "\ndiameter " << diam << '\n';
    return ok;
}

int run_regularize(const Options& o)
{
    Graph g = load_graph(o.graph);
    auto chi = static_cast<std::size_t>(o.chi > 0 ? o.chi : oracle::chromatic_index(g));
    auto [big, emb] = regularize(g, chi);
    emit(o.out, [&](std::ostream& out) { write_graph(out, big); });
    if (!o.embedding.empty())
        emit(o.embedding, [&](std::ostream& out) { out << embedding_json(emb).dump(2) << '\n'; });
    return ok;
}

}

int main(int argc, char** argv)
{
    CLI::App app{"Kempe-chain edge-coloring toolkit"};
    app.require_subcommand(1);
    Options o;

    auto* color = app.add_subcommand("color", "print a proper edge coloring");
    color->add_option("--graph", o.graph)->required();
    color->add_option("-k", o.k, "palette size (default: chromatic index)");
    color->add_flag("--random", o.random, "random coloring instead of the first in canonical order");
    color->add_option("--seed", o.seed);
    color->add_option("--out", o.out);

    auto* ci = app.add_subcommand("chromatic-index", "print the chromatic index");
    ci->add_option("--graph", o.graph)->required();

    auto* fan = app.add_subcommand("fan", "print the fan at a vertex");
    fan->add_option("--graph", o.graph)->required();
    fan->add_option("--coloring", o.coloring)->required();
    fan->add_option("--vertex", o.vertex)->required();
    auto* edge = fan->add_option("--edge", o.edge, "first fan edge, as two vertices")->expected(2);
    fan->add_option("--color", o.color, "start from the edge with this color")->excludes(edge);

    auto* transform = app.add_subcommand("transform", "trace from a (chi+1)-coloring to a chi-coloring");
    transform->add_option("--graph", o.graph)->required();
    transform->add_option("--from", o.from)->required();
    transform->add_option("--target", o.target)->required();
    transform->add_option("--out", o.out);
    transform->add_option("--max-states", o.budget.max_states);
    transform->add_option("--max-depth", o.budget.max_depth);
    transform->add_flag("--stats", o.stats, "print step counts on stderr");

    auto* verify = app.add_subcommand("verify-trace", "replay a trace and compare with the expected coloring");
    verify->add_option("--graph", o.graph)->required();
    verify->add_option("--from", o.from)->required();
    verify->add_option("--trace", o.trace)->required();
    verify->add_option("--expect", o.expect)->required();

    auto* explore = app.add_subcommand("explore", "Kempe classes of all k-colorings");
    explore->add_option("--graph", o.graph)->required();
    explore->add_option("-k", o.k)->required();
    explore->add_flag("--csv", o.csv);

    auto* reg = app.add_subcommand("regularize", "embed into a chi-regular supergraph");
    reg->add_option("--graph", o.graph)->required();
    reg->add_option("--chi", o.chi, "target degree (default: chromatic index)");
    reg->add_option("--out", o.out);
    reg->add_option("--embedding", o.embedding, "JSON file describing the vertex map");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        int code = app.exit(e);
        return code == 0 ? ok : usage;
    }

    try
    {
        if (*color)
            return run_color(o);
        if (*ci)
            return run_chromatic_index(o);
        if (*fan)
            return run_fan(o);
        if (*transform)
            return run_transform(o);
        if (*verify)
            return run_verify(o);
        if (*explore)
            return run_explore(o);
        if (*reg)
            return run_regularize(o);
    }
    catch (const std::exception& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return usage;
    }
    return usage;
}
