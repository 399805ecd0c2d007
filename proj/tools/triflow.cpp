// triflow: command-line front end.
//
// Exit codes
//   solve      0 found, 1 exhausted, 2 gated, 3 input error
//   verify     0 nowhere-zero flow, 1 flow with zeros, 2 invalid, 3 parse error
//   construct  0 4-NZF, 1 the W5 exception, 2 gated, 3 input error
//   sweep      0 theorem holds on every instance, 1 falsified, 2 gated
//   gen/check/match  0 ok, 3 input error
//   any command      4 when a lemma's conclusion fails on its input

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "triflow/families.hpp"
#include "triflow/flows.hpp"
#include "triflow/graph_io.hpp"
#include "triflow/solver.hpp"
#include "triflow/sweep.hpp"

using namespace triflow;
using nlohmann::json;

namespace {

struct Globals {
    bool json = false;
    std::uint64_t budget = default_search_budget;
    unsigned jobs = 0;
    bool force = false;
};

std::string read_text(const std::string & path)
{
    if (path == "-")
        return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

json flow_json(const Flow & f)
{
    json j;
    j["k"] = f.k;
    j["kind"] = f.kind == FlowKind::integer ? "int" : "mod";
    j["values"] = f.values;
    json tau = json::array();
    for (const auto & t : f.orientation.raw())
        tau.push_back({t[0], t[1]});
    j["orientation"] = tau;
    return j;
}

int cmd_gen(const Globals & gl, const std::string & family)
{
    auto g = family_graph(family);
    if (gl.json) {
        std::cout << serialize_graph_json(g);
        return 0;
    }
    std::cout << "# " << family << '\n';
    if (family.rfind("g2t:", 0) == 0) {
        int t = g.vertex_count() / 2;
        std::cout << "# x_i -> i-1, y_i -> " << t << "+i-1 (i = 1.." << t << ")\n";
    }
    else if (family.rfind("wheel", 0) == 0 || family == "w5star") {
        std::cout << "# hub 0, rim 1.." << g.vertex_count() - 1 << "\n";
    }
    std::cout << serialize_graph(g);
    return 0;
}

int cmd_check(const Globals & gl, const std::string & path, std::vector<std::string> checks)
{
    auto g = parse_graph(read_text(path));
    if (checks.empty())
        checks = {"balanced", "triangularly-connected", "locally-connected", "eulerian-2nzf", "admissible"};
    json out = json::object();
    for (const auto & c : checks) {
        bool value = false;
        std::string detail;
        if (c == "balanced") {
            auto b = is_balanced(g);
            value = b.balanced;
            if (!value) {
                detail = "unbalanced circuit";
                for (auto e : b.unbalanced_circuit)
                    detail += " " + std::to_string(e);
            }
        }
        else if (c == "triangularly-connected") {
            value = is_connected(g) && is_triangularly_connected(g);
        }
        else if (c == "locally-connected") {
            value = is_locally_connected(g);
        }
        else if (c == "eulerian-2nzf") {
            auto r = two_nzf_eulerian(g);
            value = r.flow.has_value();
            detail = r.reason;
        }
        else if (c == "admissible") {
            if (!is_connected(g)) {
                detail = "disconnected";
            }
            else {
                auto r = is_flow_admissible(g);
                value = r.admissible;
                detail = r.reason;
            }
        }
        else {
            throw PreconditionError("unknown check '" + c + "'");
        }
        if (gl.json) {
            out[c] = {{"value", value}, {"detail", detail}};
        }
        else {
            std::cout << c << ": " << (value ? "true" : "false");
            if (!detail.empty())
                std::cout << " (" << detail << ")";
            std::cout << '\n';
        }
    }
    if (gl.json)
        std::cout << out.dump() << '\n';
    return 0;
}

int cmd_solve(const Globals & gl, const std::string & path, int k, const std::string & mode)
{
    auto g = parse_graph(read_text(path));
    if (mode != "int" && mode != "mod")
        throw PreconditionError("mode must be int or mod");
    auto r = mode == "int" ? search_int_knzf(g, k, gl.budget) : search_mod_knzf(g, k, gl.budget);
    std::cerr << to_string(r.status) << " (" << r.nodes_explored << " nodes)\n";
    if (gl.json) {
        json j{{"status", to_string(r.status)}, {"nodes", r.nodes_explored}};
        if (r.witness)
            j["flow"] = flow_json(*r.witness);
        std::cout << j.dump() << '\n';
    }
    else if (r.witness) {
        std::cout << serialize_flow(g, *r.witness);
    }
    switch (r.status) {
    case SearchStatus::found: return 0;
    case SearchStatus::exhausted: return 1;
    case SearchStatus::gated: return 2;
    }
    return 2;
}

int cmd_construct(const Globals & gl, const std::string & path)
{
    auto g = parse_graph(read_text(path));
    auto r = construct_4nzf(g, gl.budget);
    std::cerr << "route: " << to_string(r.route) << (r.detail.empty() ? "" : " (" + r.detail + ")") << '\n';
    if (gl.json) {
        json j{{"route", to_string(r.route)}, {"exception", r.is_exception}};
        if (r.flow)
            j["flow"] = flow_json(*r.flow);
        std::cout << j.dump() << '\n';
    }
    else if (r.flow) {
        std::cout << serialize_flow(g, *r.flow);
    }
    return r.is_exception ? 1 : 0;
}

int cmd_verify(const Globals & gl, const std::string & graph_path, const std::string & flow_path)
{
    SignedGraph g;
    Flow f{Orientation{}, {}, 2, FlowKind::integer};
    try {
        g = parse_graph(read_text(graph_path));
        f = parse_flow(g, read_text(flow_path));
    }
    catch (const Error & ex) {
        std::cerr << "parse error: " << ex.what() << '\n';
        return 3;
    }
    FlowVerdict v;
    try {
        v = verify_flow(g, f);
    }
    catch (const PreconditionError & ex) {
        std::cerr << "invalid: " << ex.what() << '\n';
        return 2;
    }
    int code = !v.valid() ? 2 : v.nowhere_zero ? 0 : 1;
    if (gl.json) {
        std::cout << json{{"valid", v.valid()},
                          {"nowhere_zero", v.nowhere_zero},
                          {"conservation_violations", v.conservation_violations},
                          {"bound_violations", v.bound_violations}}
                         .dump()
                  << '\n';
    }
    else {
        std::cout << (code == 0 ? "valid nowhere-zero " : code == 1 ? "valid with zeros " : "invalid ") << f.k << "-flow\n";
        for (auto x : v.conservation_violations)
            std::cout << "conservation fails at vertex " << x << '\n';
        for (auto e : v.bound_violations)
            std::cout << "value out of range on edge " << e << '\n';
    }
    return code;
}

int cmd_sweep(const Globals & gl, int n_max, const std::string & out_path)
{
    auto report = run_sweep(n_max, gl.jobs, gl.force, gl.budget);
    if (out_path.empty() || out_path == "-") {
        write_sweep_tsv(std::cout, report);
    }
    else {
        std::ofstream out(out_path);
        if (!out)
            throw Error("cannot write " + out_path);
        write_sweep_tsv(out, report);
    }
    write_sweep_summary(std::cerr, report.summary);
    for (const auto & r : report.records)
        if (r.falsifies())
            std::cerr << "FALSIFIED: n=" << r.n << " code=" << r.code << " signs=" << r.signs << " " << r.note << '\n';
    return report.summary.falsifications == 0 ? 0 : 1;
}

int cmd_match(const Globals & gl, const std::string & path, const std::string & pattern_arg)
{
    auto g = parse_graph(read_text(path));
    ConfigurationPattern p;
    auto names = catalog_names();
    if (std::find(names.begin(), names.end(), pattern_arg) != names.end())
        p = catalog_pattern(pattern_arg);
    else
        p = parse_pattern(pattern_arg, read_text(pattern_arg));
    auto emb = match_configuration(g, p);
    if (gl.json) {
        json list = json::array();
        for (const auto & e : emb)
            list.push_back({{"vertices", e.vertex_map}, {"edges", e.edge_map}});
        std::cout << json{{"pattern", p.name}, {"count", emb.size()}, {"embeddings", list}}.dump() << '\n';
        return 0;
    }
    std::cout << p.name << ": " << emb.size() << " embedding" << (emb.size() == 1 ? "" : "s") << '\n';
    for (const auto & e : emb) {
        std::cout << "vertices";
        for (auto v : e.vertex_map)
            std::cout << ' ' << v;
        std::cout << " edges";
        for (auto x : e.edge_map)
            std::cout << ' ' << x;
        std::cout << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char ** argv)
{
    CLI::App app{"Nowhere-zero flow toolkit for signed graphs"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals gl;
    app.add_flag("--json", gl.json, "JSON output");
    app.add_option("--budget", gl.budget, "Search node budget");
    app.add_option("--jobs", gl.jobs, "Sweep worker threads (0 = all cores)");
    app.add_flag("--force", gl.force, "Lift size gates");

    std::function<int()> run;

    auto * gen = app.add_subcommand("gen", "Emit a named graph");
    std::string family;
    gen->add_option("--family", family, "w5star | g2t:<t> | wheel:<n>[:<pattern>] | catalog:<name>")->required();
    gen->callback([&] { run = [&] { return cmd_gen(gl, family); }; });

    auto * check = app.add_subcommand("check", "Run structural predicates");
    std::string path;
    std::vector<std::string> checks;
    check->add_option("graph", path, "Graph file or -")->required();
    check->add_option("--checks", checks, "balanced, triangularly-connected, locally-connected, eulerian-2nzf, admissible")
        ->delimiter(',');
    check->callback([&] { run = [&] { return cmd_check(gl, path, checks); }; });

    auto * solve = app.add_subcommand("solve", "Search for a nowhere-zero k-flow");
    int k = 4;
    std::string mode = "int";
    solve->add_option("graph", path, "Graph file or -")->required();
    solve->add_option("-k", k, "Flow bound")->required()->check(CLI::Range(2, 64));
    solve->add_option("--mode", mode, "int or mod")->check(CLI::IsMember({"int", "mod"}));
    solve->callback([&] { run = [&] { return cmd_solve(gl, path, k, mode); }; });

    auto * construct = app.add_subcommand("construct", "Build a 4-NZF along the lemma pipeline");
    construct->add_option("graph", path, "Graph file or -")->required();
    construct->callback([&] { run = [&] { return cmd_construct(gl, path); }; });

    auto * verify = app.add_subcommand("verify", "Check a flow certificate");
    std::string flow_path;
    verify->add_option("graph", path, "Graph file")->required();
    verify->add_option("flow", flow_path, "Flow certificate or -")->required();
    verify->callback([&] { run = [&] { return cmd_verify(gl, path, flow_path); }; });

    auto * sweep = app.add_subcommand("sweep", "Enumerate small instances and test the 4-flow theorem");
    int n_max = 6;
    std::string out_path;
    sweep->add_option("--n-max", n_max, "Largest vertex count")->check(CLI::Range(3, 8));
    sweep->add_option("--out", out_path, "TSV report path (default stdout)");
    sweep->callback([&] { run = [&] { return cmd_sweep(gl, n_max, out_path); }; });

    auto * match = app.add_subcommand("match", "Embed a configuration pattern");
    std::string pattern;
    match->add_option("graph", path, "Graph file or -")->required();
    match->add_option("--pattern", pattern, "Catalog name or pattern file")->required();
    match->callback([&] { run = [&] { return cmd_match(gl, path, pattern); }; });

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp & e) {
        return app.exit(e);
    }
    catch (const CLI::ParseError & e) {
        app.exit(e);
        return 3;
    }

    try {
        return run();
    }
    catch (const GatedError & ex) {
        std::cerr << "gated: " << ex.what() << '\n';
        return 2;
    }
    catch (const LemmaViolation & ex) {
        std::cerr << "lemma violation: " << ex.what() << '\n';
        return 4;
    }
    catch (const std::exception & ex) {
        std::cerr << "error: " << ex.what() << '\n';
        return 3;
    }
}
