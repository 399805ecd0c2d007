#include "triflow/families.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <set>
#include <sstream>

#include "triflow/graph_io.hpp"

namespace triflow {

namespace detail {
// generated from catalog/*.graph
extern const std::vector<std::pair<std::string, std::string>> catalog_fixtures;
}  // namespace detail

namespace {

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

int parse_int(std::string_view s, std::string_view what)
{
    int x = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
    if (ec != std::errc{} || p != s.data() + s.size())
        throw ParseError(0, "bad " + std::string(what) + ": '" + std::string(s) + "'");
    return x;
}

std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        auto pos = s.find(sep, start);
        out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos)
            return out;
        start = pos + 1;
    }
}

bool simple(const SignedGraph & g)
{
    std::set<std::pair<int, int>> seen;
    for (const auto & e : g.edges()) {
        if (e.is_loop() || !seen.insert(std::minmax(e.u, e.v)).second)
            return false;
    }
    return true;
}

std::vector<std::vector<char>> adjacency(const SignedGraph & g)
{
    std::vector<std::vector<char>> a(idx(g.vertex_count()), std::vector<char>(idx(g.vertex_count()), 0));
    for (const auto & e : g.edges())
        a[idx(e.u)][idx(e.v)] = a[idx(e.v)][idx(e.u)] = 1;
    return a;
}

/// Vertex classes by a cheap isomorphism invariant, in invariant order.
std::vector<std::vector<int>> vertex_classes(const std::vector<std::vector<char>> & a)
{
    const int n = static_cast<int>(a.size());
    std::vector<int> deg(idx(n), 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            deg[idx(i)] += a[idx(i)][idx(j)];
    std::map<std::vector<int>, std::vector<int>> by;
    for (int i = 0; i < n; ++i) {
        std::vector<int> key{deg[idx(i)]};
        int tri = 0;
        std::vector<int> nd;
        for (int j = 0; j < n; ++j) {
            if (!a[idx(i)][idx(j)])
                continue;
            nd.push_back(deg[idx(j)]);
            for (int l = j + 1; l < n; ++l)
                tri += a[idx(i)][idx(l)] && a[idx(j)][idx(l)];
        }
        std::sort(nd.begin(), nd.end());
        key.push_back(tri);
        key.insert(key.end(), nd.begin(), nd.end());
        by[key].push_back(i);
    }
    std::vector<std::vector<int>> out;
    for (auto & [k, v] : by)
        out.push_back(v);
    return out;
}

/// Calls f(order) for every vertex order that keeps classes in place;
/// order[p] is the vertex put at position p.
void for_each_order(std::vector<std::vector<int>> classes, const std::function<void(const std::vector<int> &)> & f)
{
    std::vector<int> order;
    std::function<void(std::size_t)> rec = [&](std::size_t c) {
        if (c == classes.size()) {
            f(order);
            return;
        }
        auto & cls = classes[c];
        std::sort(cls.begin(), cls.end());
        do {
            order.insert(order.end(), cls.begin(), cls.end());
            rec(c + 1);
            order.resize(order.size() - cls.size());
        } while (std::next_permutation(cls.begin(), cls.end()));
    };
    rec(0);
}

std::uint64_t code_of(const std::vector<std::vector<char>> & a, const std::vector<int> & order)
{
    std::uint64_t code = 0;
    const std::size_t n = order.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            code = (code << 1) | static_cast<std::uint64_t>(a[idx(order[i])][idx(order[j])]);
    return code;
}

SignedGraph from_code(int n, std::uint64_t code)
{
    std::vector<Edge> edges;
    int bits = n * (n - 1) / 2;
    int b = bits - 1;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, --b)
            if ((code >> b) & 1U)
                edges.push_back({i, j, Sign::positive});
    return SignedGraph(n, std::move(edges));
}

}  // namespace

SignedGraph wheel(int n, std::string_view pattern)
{
    if (n < 3)
        throw PreconditionError("wheel needs n >= 3");
    std::string signs;
    if (pattern == "pos")
        signs.assign(idx(2 * n), '+');
    else if (pattern == "negrim")
        signs = std::string(idx(n), '-') + std::string(idx(n), '+');
    else if (pattern == "negspokes")
        signs = std::string(idx(n), '+') + std::string(idx(n), '-');
    else if (pattern == "onenegspoke")
        signs = std::string(idx(n), '+') + "-" + std::string(idx(n - 1), '+');
    else if (pattern == "onenegrim")
        signs = "-" + std::string(idx(2 * n - 1), '+');
    else
        signs = pattern;
    if (signs.size() != idx(2 * n) || signs.find_first_not_of("+-") != std::string::npos)
        throw PreconditionError("wheel pattern must be a name or " + std::to_string(2 * n) + " characters of +/-");
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i)
        edges.push_back({1 + i, 1 + (i + 1) % n, signs[idx(i)] == '-' ? Sign::negative : Sign::positive});
    for (int i = 0; i < n; ++i)
        edges.push_back({0, 1 + i, signs[idx(n + i)] == '-' ? Sign::negative : Sign::positive});
    return SignedGraph(n + 1, std::move(edges));
}

SignedGraph w5_star() { return wheel(5, "negrim"); }

SignedGraph g2t(int t)
{
    if (t < 4)
        throw PreconditionError("g2t needs t >= 4");
    auto x = [t](int i) { return (i - 1) % t; };
    auto y = [t](int i) { return t + (i - 1) % t; };
    std::vector<Edge> edges;
    for (int i = 1; i <= t; ++i)
        edges.push_back({x(i), x(i + 1), i == 1 ? Sign::negative : Sign::positive});
    for (int i = 1; i <= t; ++i)
        edges.push_back({y(i), y(i + 1), i == 1 ? Sign::negative : Sign::positive});
    for (int i = 1; i <= t; ++i) {
        edges.push_back({y(i), x(i), Sign::negative});
        edges.push_back({y(i), x(i + 1), i == 1 ? Sign::positive : Sign::negative});
    }
    return SignedGraph(2 * t, std::move(edges));
}

SignedGraph family_graph(std::string_view family)
{
    auto parts = split(family, ':');
    if (parts[0] == "w5star" && parts.size() == 1)
        return w5_star();
    if (parts[0] == "g2t" && parts.size() == 2)
        return g2t(parse_int(parts[1], "t"));
    if (parts[0] == "wheel" && (parts.size() == 2 || parts.size() == 3))
        return wheel(parse_int(parts[1], "n"), parts.size() == 3 ? parts[2] : "pos");
    if (parts[0] == "catalog" && parts.size() == 2)
        return catalog_graph(parts[1]);
    throw PreconditionError("unknown family '" + std::string(family) + "'");
}

std::vector<SignedGraph> signature_representatives(const SignedGraph & underlying, bool reduce_automorphisms)
{
    if (!is_connected(underlying))
        throw PreconditionError("signature_representatives: graph is disconnected");
    const int n = underlying.vertex_count();
    const int m = underlying.edge_count();
    if (n == 0)
        return {underlying};
    std::vector<char> tree(idx(m), 0), seen(idx(n), 0);
    std::vector<int> queue{0};
    if (n > 0)
        seen[0] = 1;
    for (std::size_t h = 0; h < queue.size(); ++h)
        for (const auto & inc : underlying.incidences(queue[h]))
            if (!seen[idx(inc.neighbour)]) {
                seen[idx(inc.neighbour)] = 1;
                tree[idx(inc.edge)] = 1;
                queue.push_back(inc.neighbour);
            }
    EdgeSet cotree;
    for (EdgeId e = 0; e < m; ++e)
        if (!tree[idx(e)])
            cotree.push_back(e);
    if (cotree.size() > 24)
        throw GatedError("signature_representatives: cotree too large");

    std::vector<SignedGraph> out;
    const std::uint64_t total = std::uint64_t{1} << cotree.size();
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        std::vector<Sign> signs(idx(m), Sign::positive);
        for (std::size_t i = 0; i < cotree.size(); ++i)
            if ((mask >> i) & 1U)
                signs[idx(cotree[i])] = Sign::negative;
        out.push_back(underlying.with_signs(signs));
    }
    if (!reduce_automorphisms)
        return out;
    if (!simple(underlying))
        throw PreconditionError("automorphism reduction needs a simple graph");

    auto a = adjacency(underlying);
    std::map<std::pair<int, int>, EdgeId> edge_of;
    for (EdgeId e = 0; e < m; ++e)
        edge_of[std::minmax(underlying.edge(e).u, underlying.edge(e).v)] = e;
    std::vector<std::vector<EdgeId>> autos;
    auto classes = vertex_classes(a);
    std::vector<int> flat;
    for (const auto & c : classes)
        flat.insert(flat.end(), c.begin(), c.end());
    for_each_order(classes, [&](const std::vector<int> & order) {
        std::vector<int> p(idx(n));
        for (int i = 0; i < n; ++i)
            p[idx(flat[idx(i)])] = order[idx(i)];
        std::vector<EdgeId> emap(idx(m));
        for (EdgeId e = 0; e < m; ++e) {
            auto it = edge_of.find(std::minmax(p[idx(underlying.edge(e).u)], p[idx(underlying.edge(e).v)]));
            if (it == edge_of.end())
                return;
            emap[idx(e)] = it->second;
        }
        autos.push_back(std::move(emap));
    });

    std::vector<SignedGraph> kept;
    for (const auto & g : out) {
        bool dup = false;
        for (const auto & emap : autos) {
            std::vector<Sign> signs(idx(m));
            for (EdgeId e = 0; e < m; ++e)
                signs[idx(emap[idx(e)])] = g.sign(e);
            auto image = underlying.with_signs(signs);
            for (const auto & k : kept)
                if (signature_equivalent(image, k)) {
                    dup = true;
                    break;
                }
            if (dup)
                break;
        }
        if (!dup)
            kept.push_back(g);
    }
    return kept;
}

std::uint64_t canonical_code(const SignedGraph & g)
{
    if (!simple(g) || g.vertex_count() > 11)
        throw PreconditionError("canonical_code: simple graphs with at most 11 vertices only");
    auto a = adjacency(g);
    std::uint64_t best = 0;
    for_each_order(vertex_classes(a), [&](const std::vector<int> & order) { best = std::max(best, code_of(a, order)); });
    return best;
}

namespace {

/// Connected graphs level by level: add a vertex joined to a nonempty subset.
std::vector<std::set<std::uint64_t>> connected_levels(int n_max)
{
    std::vector<std::set<std::uint64_t>> levels(idx(std::max(n_max, 1) + 1));
    levels[1] = {0};
    for (int n = 2; n <= n_max; ++n)
        for (auto code : levels[idx(n - 1)]) {
            auto base = from_code(n - 1, code);
            for (std::uint32_t subset = 1; subset < (1U << (n - 1)); ++subset) {
                std::vector<Edge> edges(base.edges().begin(), base.edges().end());
                for (int i = 0; i < n - 1; ++i)
                    if ((subset >> i) & 1U)
                        edges.push_back({i, n - 1, Sign::positive});
                levels[idx(n)].insert(canonical_code(SignedGraph(n, std::move(edges))));
            }
        }
    return levels;
}

}  // namespace

std::vector<SignedGraph> connected_underlying(int n)
{
    if (n < 1 || n > enumeration_hard_limit)
        throw PreconditionError("connected_underlying: 1 <= n <= 8");
    auto levels = connected_levels(n);
    std::vector<SignedGraph> out;
    for (auto code : levels[idx(n)])
        out.push_back(from_code(n, code));
    return out;
}

std::vector<SignedGraph> triangularly_connected_underlying(int n_max, bool force)
{
    if (n_max > enumeration_hard_limit)
        throw GatedError("enumeration stops at " + std::to_string(enumeration_hard_limit) + " vertices");
    if (n_max > enumeration_gate && !force)
        throw GatedError("enumeration above " + std::to_string(enumeration_gate) + " vertices needs --force");
    auto levels = connected_levels(n_max);
    std::vector<std::tuple<int, int, std::uint64_t>> keys;
    for (int n = 3; n <= n_max; ++n)
        for (auto code : levels[idx(n)]) {
            auto g = from_code(n, code);
            if (is_triangularly_connected(g))
                keys.emplace_back(n, g.edge_count(), code);
        }
    std::sort(keys.begin(), keys.end());
    std::vector<SignedGraph> out;
    for (auto [n, m, code] : keys)
        out.push_back(from_code(n, code));
    return out;
}

void enumerate_triangularly_connected(int n_max, const std::function<void(const Instance &)> & sink, bool force)
{
    for (const auto & u : triangularly_connected_underlying(n_max, force)) {
        auto code = canonical_code(u);
        int s = 0;
        for (auto & g : signature_representatives(u))
            sink(Instance{std::move(g), code, s++});
    }
}

std::vector<Instance> enumerate_triangularly_connected(int n_max, bool force)
{
    std::vector<Instance> out;
    enumerate_triangularly_connected(n_max, [&](const Instance & i) { out.push_back(i); }, force);
    return out;
}

std::vector<std::string> catalog_names()
{
    std::vector<std::string> out;
    for (const auto & [name, text] : detail::catalog_fixtures)
        out.push_back(name);
    return out;
}

std::string catalog_text(std::string_view name)
{
    for (const auto & [n, text] : detail::catalog_fixtures)
        if (n == name)
            return text;
    throw PreconditionError("no catalog entry '" + std::string(name) + "'");
}

SignedGraph catalog_graph(std::string_view name) { return parse_graph(catalog_text(name)); }

ConfigurationPattern catalog_pattern(std::string_view name) { return parse_pattern(std::string(name), catalog_text(name)); }

ConfigurationPattern parse_pattern(std::string name, std::string_view text)
{
    auto doc = parse_graph_document(text);
    if (doc.graph.vertex_count() > 8)
        throw PreconditionError("patterns are limited to 8 vertices");
    ConfigurationPattern p;
    p.name = std::move(name);
    std::vector<Edge> edges(doc.graph.edges().begin(), doc.graph.edges().end());
    for (auto & e : edges)
        e.sign = Sign::positive;
    p.underlying = SignedGraph(doc.graph.vertex_count(), std::move(edges));
    for (const auto & c : doc.comments) {
        std::istringstream in(c);
        std::string word;
        if (!(in >> word) || word != "cycle")
            continue;
        CycleRequirement req;
        std::vector<std::string> tokens;
        while (in >> word)
            tokens.push_back(word);
        if (tokens.size() < 2 || (tokens.back() != "balanced" && tokens.back() != "unbalanced"))
            throw ParseError(0, "pattern " + p.name + ": bad cycle line '" + c + "'");
        req.balanced = tokens.back() == "balanced";
        tokens.pop_back();
        for (const auto & t : tokens) {
            int e = parse_int(t, "cycle edge");
            if (!p.underlying.has_edge(e))
                throw ParseError(0, "pattern " + p.name + ": cycle edge " + t + " out of range");
            req.cycle.push_back(e);
        }
        p.cycle_basis_balance.push_back(std::move(req));
    }
    if (p.cycle_basis_balance.empty())
        return pattern_from_signed(p.name, doc.graph);
    return p;
}

}  // namespace triflow
