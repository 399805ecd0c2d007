#include "triflow/graph_io.hpp"

#include <charconv>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <json.hpp>

namespace triflow {

namespace {

std::vector<std::string_view> split_ws(std::string_view s)
{
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r'))
            ++i;
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r')
            ++j;
        if (j > i)
            out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

int parse_int(std::string_view tok, std::size_t line, const char * what)
{
    int value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
        throw ParseError(line, std::string("expected integer ") + what + ", got '" + std::string(tok) + "'");
    return value;
}

Sign parse_sign(std::string_view tok, std::size_t line)
{
    if (tok == "+" || tok == "+1" || tok == "1")
        return Sign::positive;
    if (tok == "-" || tok == "-1")
        return Sign::negative;
    throw ParseError(line, "sign must be + or - (got '" + std::string(tok) + "')");
}

GraphDocument parse_json(std::string_view text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    }
    catch (const nlohmann::json::parse_error & e) {
        throw ParseError(1, std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("vertices") || !j.contains("edges"))
        throw ParseError(1, "JSON graph needs \"vertices\" and \"edges\"");
    if (!j["vertices"].is_number_integer() || j["vertices"].get<int>() < 0)
        throw ParseError(1, "\"vertices\" must be a nonnegative integer");
    int n = j["vertices"].get<int>();
    std::vector<Edge> edges;
    std::size_t idx = 0;
    for (const auto & e : j["edges"]) {
        if (!e.contains("u") || !e.contains("v") || !e.contains("sign"))
            throw ParseError(1, "edge " + std::to_string(idx) + " lacks u, v or sign");
        int u = e["u"].get<int>(), v = e["v"].get<int>(), s = e["sign"].get<int>();
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw ParseError(1, "edge " + std::to_string(idx) + ": endpoint out of range");
        if (s != 1 && s != -1)
            throw ParseError(1, "edge " + std::to_string(idx) + ": sign must be +1 or -1");
        edges.push_back({u, v, s == 1 ? Sign::positive : Sign::negative});
        ++idx;
    }
    return {SignedGraph(n, std::move(edges)), {}};
}

}  // namespace

GraphDocument parse_graph_document(std::string_view text)
{
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos && text[first] == '{')
        return parse_json(text);

    GraphDocument doc;
    int n = -1;
    std::vector<Edge> edges;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        if (auto hash = line.find('#'); hash != std::string_view::npos) {
            auto body = line.substr(hash + 1);
            auto b = body.find_first_not_of(' ');
            doc.comments.emplace_back(b == std::string_view::npos ? std::string_view{} : body.substr(b));
            line = line.substr(0, hash);
        }
        auto toks = split_ws(line);
        if (toks.empty())
            continue;

        if (n < 0) {
            if (toks[0] != "v" || toks.size() != 2)
                throw ParseError(line_no, "expected 'v <vertex count>'");
            n = parse_int(toks[1], line_no, "vertex count");
            if (n < 0)
                throw ParseError(line_no, "vertex count must be nonnegative");
            continue;
        }
        if (toks[0] != "e" || toks.size() != 4)
            throw ParseError(line_no, "expected 'e <u> <v> <+|->'");
        int u = parse_int(toks[1], line_no, "endpoint");
        int v = parse_int(toks[2], line_no, "endpoint");
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw ParseError(line_no, "endpoint out of range (vertex count " + std::to_string(n) + ")");
        edges.push_back({u, v, parse_sign(toks[3], line_no)});
    }
    if (n < 0)
        throw ParseError(line_no, "missing 'v <vertex count>' line");
    doc.graph = SignedGraph(n, std::move(edges));
    return doc;
}

SignedGraph parse_graph(std::string_view text)
{
    return parse_graph_document(text).graph;
}

std::string serialize_graph(const SignedGraph & g)
{
    std::ostringstream out;
    out << "v " << g.vertex_count() << '\n';
    for (const auto & e : g.edges())
        out << "e " << e.u << ' ' << e.v << ' ' << (e.sign == Sign::positive ? '+' : '-') << '\n';
    return out.str();
}

std::string serialize_graph_json(const SignedGraph & g)
{
    nlohmann::json j;
    j["vertices"] = g.vertex_count();
    j["edges"] = nlohmann::json::array();
    for (const auto & e : g.edges())
        j["edges"].push_back({{"u", e.u}, {"v", e.v}, {"sign", to_int(e.sign)}});
    return j.dump() + "\n";
}

SignedGraph read_graph_file(const std::string & path)
{
    std::string text;
    if (path == "-") {
        text.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
    }
    else {
        std::ifstream in(path);
        if (!in)
            throw Error("cannot open " + path);
        text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    }
    return parse_graph(text);
}

}  // namespace triflow
