#include "triflow/topology.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <set>

namespace triflow {

namespace {

struct Budget {
    std::uint64_t left;
    const char * what;

    void tick()
    {
        if (left == 0)
            throw GatedError(std::string(what) + ": node budget exhausted");
        --left;
    }
};

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

int negatives_in(const SignedGraph & g, const EdgeSet & edges)
{
    int c = 0;
    for (auto e : edges)
        c += g.is_negative(e) ? 1 : 0;
    return c;
}

/// Simple adjacency between distinct vertices, ignoring loops.
std::vector<std::vector<char>> adjacency_matrix(const SignedGraph & g)
{
    std::vector<std::vector<char>> adj(idx(g.vertex_count()), std::vector<char>(idx(g.vertex_count()), 0));
    for (const auto & e : g.edges())
        if (!e.is_loop())
            adj[idx(e.u)][idx(e.v)] = adj[idx(e.v)][idx(e.u)] = 1;
    return adj;
}

}  // namespace

int Triangle::shared_edges(const Triangle & other) const noexcept
{
    int c = 0;
    for (auto e : edges)
        c += other.contains(e) ? 1 : 0;
    return c;
}

std::vector<Triangle> triangles(const SignedGraph & g)
{
    const int n = g.vertex_count();
    // edges between each unordered pair a < b
    std::map<std::pair<VertexId, VertexId>, EdgeSet> between;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const auto & ed = g.edge(e);
        if (ed.is_loop())
            continue;
        between[{std::min(ed.u, ed.v), std::max(ed.u, ed.v)}].push_back(e);
    }
    std::vector<std::vector<VertexId>> higher(idx(n));
    for (const auto & [key, _] : between)
        higher[idx(key.first)].push_back(key.second);

    std::vector<Triangle> out;
    for (VertexId a = 0; a < n; ++a) {
        const auto & na = higher[idx(a)];
        for (std::size_t i = 0; i < na.size(); ++i)
            for (std::size_t j = i + 1; j < na.size(); ++j) {
                VertexId b = na[i], c = na[j];
                auto bc = between.find({b, c});
                if (bc == between.end())
                    continue;
                for (auto eab : between.at({a, b}))
                    for (auto eac : between.at({a, c}))
                        for (auto ebc : bc->second) {
                            Triangle t;
                            t.vertices = {a, b, c};
                            t.edges = {eab, eac, ebc};
                            std::sort(t.edges.begin(), t.edges.end());
                            t.balanced = (negatives_in(g, {eab, eac, ebc}) % 2) == 0;
                            out.push_back(t);
                        }
            }
    }
    std::sort(out.begin(), out.end(), [](const Triangle & x, const Triangle & y) { return x.edges < y.edges; });
    return out;
}

bool is_valid_triangle_path(const TrianglePath & path)
{
    for (std::size_t i = 0; i < path.size(); ++i)
        for (std::size_t j = i + 1; j < path.size(); ++j) {
            if (path[i] == path[j])
                return false;
            int shared = path[i].shared_edges(path[j]);
            if (j == i + 1 && shared != 1)
                return false;
            if (j > i + 1 && shared != 0)
                return false;
        }
    return true;
}

bool are_parallel(const SignedGraph & g, EdgeId e, EdgeId f)
{
    const auto & a = g.edge(e);
    const auto & b = g.edge(f);
    return (a.u == b.u && a.v == b.v) || (a.u == b.v && a.v == b.u);
}

namespace {

std::optional<TrianglePath> triangle_path_search(const SignedGraph & g, const std::vector<Triangle> & tris, EdgeId e,
    EdgeId f, Budget & budget)
{
    const std::size_t t = tris.size();
    std::vector<std::vector<std::size_t>> step(t);  // share exactly one edge
    for (std::size_t i = 0; i < t; ++i)
        for (std::size_t j = i + 1; j < t; ++j)
            if (tris[i].shared_edges(tris[j]) == 1) {
                step[i].push_back(j);
                step[j].push_back(i);
            }

    // A shortest path in the one-shared-edge graph can only break the
    // non-consecutive condition through triangles sharing two edges, so try
    // it first and validate.
    std::vector<int> dist(t, -1), prev(t, -1);
    std::queue<std::size_t> q;
    for (std::size_t i = 0; i < t; ++i)
        if (tris[i].contains(e)) {
            dist[i] = 0;
            q.push(i);
        }
    while (!q.empty()) {
        auto x = q.front();
        q.pop();
        budget.tick();
        if (tris[x].contains(f)) {
            TrianglePath path;
            for (int c = static_cast<int>(x); c != -1; c = prev[idx(c)])
                path.push_back(tris[idx(c)]);
            std::reverse(path.begin(), path.end());
            if (is_valid_triangle_path(path))
                return path;
            break;
        }
        for (auto y : step[x])
            if (dist[y] == -1) {
                dist[y] = dist[x] + 1;
                prev[y] = static_cast<int>(x);
                q.push(y);
            }
    }
    bool reachable = false;
    for (std::size_t i = 0; i < t; ++i)
        reachable = reachable || (dist[i] != -1 && tris[i].contains(f));
    if (!reachable)
        return std::nullopt;

    // exhaustive constrained DFS
    std::vector<int> edge_use(idx(g.edge_count()), 0);
    std::vector<char> on_path(t, 0);
    std::vector<std::size_t> stack;
    std::function<bool(std::size_t)> dfs = [&](std::size_t cur) -> bool {
        budget.tick();
        if (tris[cur].contains(f))
            return true;
        for (auto nxt : step[cur]) {
            if (on_path[nxt])
                continue;
            // nxt may share only with cur, not with anything earlier
            bool clash = false;
            for (auto ed : tris[nxt].edges)
                if (edge_use[idx(ed)] > (tris[cur].contains(ed) ? 1 : 0))
                    clash = true;
            if (clash)
                continue;
            on_path[nxt] = 1;
            for (auto ed : tris[nxt].edges)
                ++edge_use[idx(ed)];
            stack.push_back(nxt);
            if (dfs(nxt))
                return true;
            stack.pop_back();
            for (auto ed : tris[nxt].edges)
                --edge_use[idx(ed)];
            on_path[nxt] = 0;
        }
        return false;
    };
    for (std::size_t s = 0; s < t; ++s) {
        if (!tris[s].contains(e))
            continue;
        on_path[s] = 1;
        for (auto ed : tris[s].edges)
            ++edge_use[idx(ed)];
        stack = {s};
        if (dfs(s)) {
            TrianglePath path;
            for (auto i : stack)
                path.push_back(tris[i]);
            return path;
        }
        for (auto ed : tris[s].edges)
            --edge_use[idx(ed)];
        on_path[s] = 0;
    }
    return std::nullopt;
}

}  // namespace

std::optional<TrianglePath> find_triangle_path(const SignedGraph & g, EdgeId e, EdgeId f, std::uint64_t budget)
{
    if (!g.has_edge(e) || !g.has_edge(f))
        throw PreconditionError("find_triangle_path: edge out of range");
    if (e == f || are_parallel(g, e, f))
        throw PreconditionError("find_triangle_path: edges are equal or parallel");
    Budget b{budget, "find_triangle_path"};
    return triangle_path_search(g, triangles(g), e, f, b);
}

namespace {

bool has_nonparallel_partner(const SignedGraph & g, EdgeId e)
{
    for (EdgeId f = 0; f < g.edge_count(); ++f)
        if (f != e && !are_parallel(g, e, f))
            return true;
    return false;
}

}  // namespace

bool is_triangularly_connected(const SignedGraph & g)
{
    if (!is_connected(g))
        throw PreconditionError("is_triangularly_connected: graph is disconnected");
    auto tris = triangles(g);
    std::vector<std::vector<std::size_t>> by_edge(idx(g.edge_count()));
    for (std::size_t i = 0; i < tris.size(); ++i)
        for (auto e : tris[i].edges)
            by_edge[idx(e)].push_back(i);

    bool any_partner = false;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        if (!has_nonparallel_partner(g, e))
            continue;
        any_partner = true;
        if (by_edge[idx(e)].empty())
            return false;
    }
    if (!any_partner)
        return true;

    // union of triangles through shared edges
    std::vector<std::size_t> parent(tris.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    for (const auto & list : by_edge)
        for (std::size_t i = 1; i < list.size(); ++i)
            parent[find(list[i])] = find(list[0]);
    for (std::size_t i = 1; i < tris.size(); ++i)
        if (find(i) != find(0))
            return false;
    return true;
}

bool is_triangularly_connected_exact(const SignedGraph & g, std::uint64_t budget)
{
    if (!is_connected(g))
        throw PreconditionError("is_triangularly_connected_exact: graph is disconnected");
    auto tris = triangles(g);
    Budget b{budget, "is_triangularly_connected_exact"};
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        for (EdgeId f = e + 1; f < g.edge_count(); ++f) {
            if (are_parallel(g, e, f))
                continue;
            if (!triangle_path_search(g, tris, e, f, b))
                return false;
        }
    return true;
}

bool is_locally_connected(const SignedGraph & g)
{
    auto adj = adjacency_matrix(g);
    const int n = g.vertex_count();
    for (VertexId v = 0; v < n; ++v) {
        std::vector<VertexId> nb;
        for (VertexId w = 0; w < n; ++w)
            if (adj[idx(v)][idx(w)])
                nb.push_back(w);
        if (nb.size() <= 1)
            continue;
        std::vector<char> seen(nb.size(), 0);
        std::vector<std::size_t> stack{0};
        seen[0] = 1;
        std::size_t reached = 1;
        while (!stack.empty()) {
            auto i = stack.back();
            stack.pop_back();
            for (std::size_t j = 0; j < nb.size(); ++j)
                if (!seen[j] && adj[idx(nb[i])][idx(nb[j])]) {
                    seen[j] = 1;
                    ++reached;
                    stack.push_back(j);
                }
        }
        if (reached != nb.size())
            return false;
    }
    return true;
}

bool is_circuit(const SignedGraph & g, const EdgeSet & edges)
{
    if (edges.empty())
        return false;
    std::set<EdgeId> distinct(edges.begin(), edges.end());
    if (distinct.size() != edges.size())
        return false;
    std::map<VertexId, int> deg;
    for (auto e : edges) {
        if (!g.has_edge(e))
            return false;
        ++deg[g.edge(e).u];
        ++deg[g.edge(e).v];
    }
    for (const auto & [v, d] : deg)
        if (d != 2)
            return false;
    // connected: the walk from the first edge must use every edge
    std::set<EdgeId> used;
    VertexId start = g.edge(edges[0]).u;
    VertexId cur = start;
    EdgeId last = -1;
    for (std::size_t step = 0; step < edges.size(); ++step) {
        EdgeId next = -1;
        for (auto e : edges)
            if (!used.count(e) && e != last && (g.edge(e).u == cur || g.edge(e).v == cur)) {
                next = e;
                break;
            }
        if (next == -1)
            return false;
        used.insert(next);
        last = next;
        cur = g.edge(next).other(cur);
    }
    return cur == start && used.size() == edges.size();
}

Circuit circuit_walk(const SignedGraph & g, const EdgeSet & edges, std::optional<VertexId> start)
{
    if (!is_circuit(g, edges))
        throw PreconditionError("edge set is not a circuit");
    Circuit c;
    VertexId s = start.value_or(g.edge(edges[0]).u);
    bool touches = false;
    for (auto e : edges)
        touches = touches || g.edge(e).u == s || g.edge(e).v == s;
    if (!touches)
        throw PreconditionError("circuit does not pass through vertex " + std::to_string(s));
    std::set<EdgeId> used;
    VertexId cur = s;
    for (std::size_t step = 0; step < edges.size(); ++step) {
        EdgeId next = -1;
        for (auto e : edges)
            if (!used.count(e) && (g.edge(e).u == cur || g.edge(e).v == cur)) {
                next = e;
                break;
            }
        used.insert(next);
        c.vertices.push_back(cur);
        c.edges.push_back(next);
        cur = g.edge(next).other(cur);
    }
    return c;
}

bool is_balanced_edge_set(const SignedGraph & g, const EdgeSet & edges)
{
    return negatives_in(g, edges) % 2 == 0;
}

std::vector<Circuit> enumerate_circuits(const SignedGraph & g, int max_length, std::uint64_t budget)
{
    Budget b{budget, "enumerate_circuits"};
    std::vector<Circuit> out;
    const int limit = max_length <= 0 ? g.edge_count() : max_length;
    std::vector<char> visited(idx(g.vertex_count()), 0);
    EdgeSet path_edges;
    VertexSet path_vertices;

    for (EdgeId first = 0; first < g.edge_count(); ++first) {
        const auto & e = g.edge(first);
        if (e.is_loop()) {
            out.push_back({{first}, {e.u}});
            continue;
        }
        if (limit < 2)
            continue;
        // simple paths e.v -> e.u through edges with larger ids
        VertexId target = e.u;
        path_edges = {first};
        path_vertices = {e.u, e.v};
        visited[idx(e.v)] = 1;
        std::function<void(VertexId)> dfs = [&](VertexId cur) {
            b.tick();
            for (const auto & inc : g.incidences(cur)) {
                if (inc.edge <= first || g.edge(inc.edge).is_loop())
                    continue;
                VertexId nxt = inc.neighbour;
                if (nxt == target) {
                    Circuit c;
                    c.edges = path_edges;
                    c.edges.push_back(inc.edge);
                    c.vertices = path_vertices;
                    out.push_back(std::move(c));
                    continue;
                }
                if (visited[idx(nxt)] || static_cast<int>(path_edges.size()) + 1 >= limit)
                    continue;
                visited[idx(nxt)] = 1;
                path_edges.push_back(inc.edge);
                path_vertices.push_back(nxt);
                dfs(nxt);
                path_vertices.pop_back();
                path_edges.pop_back();
                visited[idx(nxt)] = 0;
            }
        };
        dfs(e.v);
        visited[idx(e.v)] = 0;
    }
    return out;
}

std::string to_string(CircuitKind k)
{
    switch (k) {
    case CircuitKind::balanced_circuit: return "balanced_circuit";
    case CircuitKind::short_barbell: return "short_barbell";
    case CircuitKind::long_barbell: return "long_barbell";
    }
    return "?";
}

EdgeSet SignedCircuit::edges() const
{
    EdgeSet all = circuit1;
    all.insert(all.end(), circuit2.begin(), circuit2.end());
    all.insert(all.end(), path.begin(), path.end());
    return all;
}

namespace {

std::set<VertexId> vertex_set_of(const SignedGraph & g, const EdgeSet & edges)
{
    std::set<VertexId> vs;
    for (auto e : edges) {
        vs.insert(g.edge(e).u);
        vs.insert(g.edge(e).v);
    }
    return vs;
}

/// Vertex sequence of a simple path given as an edge sequence, or empty.
VertexSet path_vertices(const SignedGraph & g, const EdgeSet & path, VertexId start)
{
    VertexSet vs{start};
    std::set<VertexId> seen{start};
    VertexId cur = start;
    for (auto e : path) {
        const auto & ed = g.edge(e);
        if (ed.is_loop() || (ed.u != cur && ed.v != cur))
            return {};
        cur = ed.other(cur);
        if (!seen.insert(cur).second)
            return {};
        vs.push_back(cur);
    }
    return vs;
}

}  // namespace

void validate_signed_circuit(const SignedGraph & g, const SignedCircuit & c)
{
    auto all = c.edges();
    for (auto e : all)
        if (!g.has_edge(e))
            throw PreconditionError("signed circuit: edge " + std::to_string(e) + " out of range");
    if (std::set<EdgeId>(all.begin(), all.end()).size() != all.size())
        throw PreconditionError("signed circuit: repeated edge");
    if (!is_circuit(g, c.circuit1))
        throw PreconditionError("signed circuit: first part is not a circuit");

    switch (c.kind) {
    case CircuitKind::balanced_circuit:
        if (!c.circuit2.empty() || !c.path.empty())
            throw PreconditionError("balanced circuit: unexpected second part");
        if (!is_balanced_edge_set(g, c.circuit1))
            throw PreconditionError("balanced circuit: odd number of negative edges");
        return;
    case CircuitKind::short_barbell:
    case CircuitKind::long_barbell: {
        if (!is_circuit(g, c.circuit2))
            throw PreconditionError("barbell: second part is not a circuit");
        if (is_balanced_edge_set(g, c.circuit1) || is_balanced_edge_set(g, c.circuit2))
            throw PreconditionError("barbell: circuits must be unbalanced");
        auto v1 = vertex_set_of(g, c.circuit1);
        auto v2 = vertex_set_of(g, c.circuit2);
        std::vector<VertexId> common;
        std::set_intersection(v1.begin(), v1.end(), v2.begin(), v2.end(), std::back_inserter(common));
        if (c.kind == CircuitKind::short_barbell) {
            if (!c.path.empty())
                throw PreconditionError("short barbell: unexpected path");
            if (common.size() != 1)
                throw PreconditionError("short barbell: circuits must meet in exactly one vertex");
            return;
        }
        if (!common.empty())
            throw PreconditionError("long barbell: circuits must be vertex-disjoint");
        if (c.path.empty())
            throw PreconditionError("long barbell: path needs at least one edge");
        const auto & first = g.edge(c.path.front());
        for (VertexId s : {first.u, first.v}) {
            if (!v1.count(s))
                continue;
            auto pv = path_vertices(g, c.path, s);
            if (pv.empty() || !v2.count(pv.back()))
                continue;
            bool interior_ok = true;
            for (std::size_t i = 1; i + 1 < pv.size(); ++i)
                interior_ok = interior_ok && !v1.count(pv[i]) && !v2.count(pv[i]);
            if (interior_ok)
                return;
        }
        throw PreconditionError("long barbell: path must run from circuit1 to circuit2 meeting them only at its ends");
    }
    }
}

namespace {

/// Shortest balanced circuit through non-loop edge e, by iterative deepening.
std::optional<EdgeSet> balanced_circuit_through(const SignedGraph & g, EdgeId e, Budget & b)
{
    const auto & ed = g.edge(e);
    const VertexId target = ed.u;
    const int want_parity = ed.sign == Sign::negative ? 1 : 0;
    std::vector<char> visited(idx(g.vertex_count()), 0);
    EdgeSet path;
    std::function<bool(VertexId, int, int)> dfs = [&](VertexId cur, int parity, int room) -> bool {
        b.tick();
        for (const auto & inc : g.incidences(cur)) {
            if (inc.edge == e || g.edge(inc.edge).is_loop())
                continue;
            int p = parity ^ (g.is_negative(inc.edge) ? 1 : 0);
            if (inc.neighbour == target) {
                if (p == want_parity) {
                    path.push_back(inc.edge);
                    return true;
                }
                continue;
            }
            if (visited[idx(inc.neighbour)] || room <= 1)
                continue;
            visited[idx(inc.neighbour)] = 1;
            path.push_back(inc.edge);
            if (dfs(inc.neighbour, p, room - 1))
                return true;
            path.pop_back();
            visited[idx(inc.neighbour)] = 0;
        }
        return false;
    };
    for (int room = 1; room < std::max(2, g.vertex_count()); ++room) {
        std::fill(visited.begin(), visited.end(), 0);
        visited[idx(ed.v)] = 1;
        path.clear();
        if (dfs(ed.v, 0, room)) {
            EdgeSet c{e};
            c.insert(c.end(), path.begin(), path.end());
            return c;
        }
    }
    return std::nullopt;
}

/// Shortest path from V(C1) to V(C2) whose interior avoids both circuits.
std::optional<EdgeSet> connecting_path(const SignedGraph & g, const std::vector<char> & in1, const std::vector<char> & in2)
{
    const auto n = idx(g.vertex_count());
    std::vector<EdgeId> via(n, -1);
    std::vector<char> seen(n, 0);
    std::queue<VertexId> q;
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        if (in1[idx(v)]) {
            seen[idx(v)] = 1;
            q.push(v);
        }
    while (!q.empty()) {
        auto x = q.front();
        q.pop();
        for (const auto & inc : g.incidences(x)) {
            auto y = inc.neighbour;
            if (seen[idx(y)] || g.edge(inc.edge).is_loop())
                continue;
            seen[idx(y)] = 1;
            via[idx(y)] = inc.edge;
            if (in2[idx(y)]) {
                EdgeSet path;
                for (VertexId c = y; !in1[idx(c)]; c = g.edge(via[idx(c)]).other(c))
                    path.push_back(via[idx(c)]);
                std::reverse(path.begin(), path.end());
                return path;
            }
            q.push(y);
        }
    }
    return std::nullopt;
}

/// A path from V(C1) to V(C2) through edge e with interior avoiding both.
std::optional<EdgeSet> connecting_path_through(const SignedGraph & g, const std::vector<char> & in1,
    const std::vector<char> & in2, EdgeId e, Budget & b)
{
    std::vector<char> visited(idx(g.vertex_count()), 0);
    EdgeSet path;
    bool used_e = false;
    std::function<bool(VertexId)> dfs = [&](VertexId cur) -> bool {
        b.tick();
        for (const auto & inc : g.incidences(cur)) {
            auto y = inc.neighbour;
            if (g.edge(inc.edge).is_loop() || visited[idx(y)] || in1[idx(y)])
                continue;
            bool via_e = inc.edge == e;
            if (in2[idx(y)]) {
                if (used_e || via_e) {
                    path.push_back(inc.edge);
                    return true;
                }
                continue;
            }
            visited[idx(y)] = 1;
            path.push_back(inc.edge);
            used_e = used_e || via_e;
            if (dfs(y))
                return true;
            if (via_e)
                used_e = false;
            path.pop_back();
            visited[idx(y)] = 0;
        }
        return false;
    };
    for (VertexId s = 0; s < g.vertex_count(); ++s) {
        if (!in1[idx(s)])
            continue;
        path.clear();
        used_e = false;
        if (dfs(s))
            return path;
    }
    return std::nullopt;
}

}  // namespace

std::optional<SignedCircuit> find_signed_circuit_through(const SignedGraph & g, EdgeId e, std::uint64_t budget)
{
    if (!g.has_edge(e))
        throw PreconditionError("find_signed_circuit_through: edge out of range");
    Budget b{budget, "find_signed_circuit_through"};
    const auto & ed = g.edge(e);

    if (ed.is_loop()) {
        if (ed.sign == Sign::positive)
            return SignedCircuit{CircuitKind::balanced_circuit, {e}, {}, {}};
    }
    else if (auto c = balanced_circuit_through(g, e, b)) {
        return SignedCircuit{CircuitKind::balanced_circuit, *c, {}, {}};
    }

    auto all = enumerate_circuits(g, 0, b.left);
    std::vector<const Circuit *> unbalanced;
    for (const auto & c : all)
        if (!is_balanced_edge_set(g, c.edges))
            unbalanced.push_back(&c);
    std::stable_sort(unbalanced.begin(), unbalanced.end(),
        [](const Circuit * x, const Circuit * y) { return x->edges.size() < y->edges.size(); });

    const auto n = idx(g.vertex_count());
    std::vector<std::vector<char>> members;
    members.reserve(unbalanced.size());
    for (auto * c : unbalanced) {
        std::vector<char> in(n, 0);
        for (auto v : c->vertices)
            in[idx(v)] = 1;
        members.push_back(std::move(in));
    }
    auto contains_edge = [&](std::size_t i) {
        return std::find(unbalanced[i]->edges.begin(), unbalanced[i]->edges.end(), e) != unbalanced[i]->edges.end();
    };
    auto common_vertices = [&](std::size_t i, std::size_t j) {
        int c = 0;
        for (auto v : unbalanced[j]->vertices)
            c += members[i][idx(v)];
        return c;
    };

    // short barbell
    std::optional<SignedCircuit> best;
    std::size_t best_size = 0;
    for (std::size_t i = 0; i < unbalanced.size(); ++i) {
        if (!contains_edge(i))
            continue;
        for (std::size_t j = 0; j < unbalanced.size(); ++j) {
            if (i == j || common_vertices(i, j) != 1)
                continue;
            b.tick();
            auto size = unbalanced[i]->edges.size() + unbalanced[j]->edges.size();
            if (!best || size < best_size) {
                best = SignedCircuit{CircuitKind::short_barbell, unbalanced[i]->edges, unbalanced[j]->edges, {}};
                best_size = size;
            }
        }
    }
    if (best)
        return best;

    // long barbell
    for (std::size_t i = 0; i < unbalanced.size(); ++i)
        for (std::size_t j = 0; j < unbalanced.size(); ++j) {
            if (i == j || common_vertices(i, j) != 0)
                continue;
            b.tick();
            bool on_circuits = contains_edge(i) || contains_edge(j);
            std::optional<EdgeSet> path;
            if (on_circuits) {
                if (!contains_edge(i))
                    continue;  // the (j, i) ordering covers it
                path = connecting_path(g, members[i], members[j]);
            }
            else {
                if (i > j)
                    continue;
                path = connecting_path_through(g, members[i], members[j], e, b);
            }
            if (path)
                return SignedCircuit{CircuitKind::long_barbell, unbalanced[i]->edges, unbalanced[j]->edges, *path};
        }
    return std::nullopt;
}

ThreeCutStructure three_cut_structure(const SignedGraph & g, const VertexSet & u, std::optional<VertexSet> w)
{
    auto cut = w ? edge_cut(g, u, std::span<const VertexId>(*w)) : edge_cut(g, u);
    if (cut.edges.size() != 3)
        throw PreconditionError("three_cut_structure: cut has " + std::to_string(cut.edges.size()) + " edges, need 3");
    if (!is_triangularly_connected(g))
        throw PreconditionError("three_cut_structure: graph is not triangularly connected");

    ThreeCutStructure out;
    out.cut = cut.edges;
    std::map<VertexId, int> deg;
    for (auto e : cut.edges) {
        ++deg[g.edge(e).u];
        ++deg[g.edge(e).v];
    }
    for (const auto & [v, d] : deg)
        if (d == 3) {
            out.kind = ThreeCutStructure::Kind::common_vertex;
            out.vertex = v;
            return out;
        }
    if (deg.size() == 4) {
        std::vector<VertexId> ends;
        for (const auto & [v, d] : deg)
            if (d == 1)
                ends.push_back(v);
        if (ends.size() == 2) {
            // walk the three cut edges from one end
            std::array<VertexId, 4> order{};
            order[0] = ends[0];
            std::set<EdgeId> used;
            bool ok = true;
            for (int i = 1; i < 4 && ok; ++i) {
                ok = false;
                for (auto e : cut.edges)
                    if (!used.count(e) && (g.edge(e).u == order[idx(i - 1)] || g.edge(e).v == order[idx(i - 1)])) {
                        used.insert(e);
                        order[idx(i)] = g.edge(e).other(order[idx(i - 1)]);
                        ok = true;
                        break;
                    }
            }
            if (ok) {
                auto adj = adjacency_matrix(g);
                int adjacent = 0;
                std::array<VertexId, 2> missing{-1, -1};
                for (int i = 0; i < 4; ++i)
                    for (int j = i + 1; j < 4; ++j) {
                        if (adj[idx(order[idx(i)])][idx(order[idx(j)])])
                            ++adjacent;
                        else
                            missing = {order[idx(i)], order[idx(j)]};
                    }
                if (adjacent == 5) {
                    out.kind = ThreeCutStructure::Kind::path_case;
                    out.path = order;
                    out.missing = missing;
                    return out;
                }
            }
        }
    }
    throw LemmaViolation("three_cut_structure: cut edges neither share a vertex nor span a K4 minus an edge");
}

std::optional<BridgeChain> bridge_chain(const SignedGraph & g)
{
    if (!is_connected(g))
        throw PreconditionError("bridge_chain: graph is disconnected");
    auto br = bridges(g);
    BridgeChain chain;
    if (br.empty()) {
        VertexSet all(idx(g.vertex_count()));
        std::iota(all.begin(), all.end(), 0);
        chain.pieces.push_back(std::move(all));
        return chain;
    }
    auto rest = delete_edges(g, br);
    int piece_count = 0;
    auto piece_of = components(rest.graph, &piece_count);
    std::vector<std::vector<EdgeId>> touching(idx(piece_count));
    for (auto b : br) {
        touching[idx(piece_of[idx(g.edge(b).u)])].push_back(b);
        touching[idx(piece_of[idx(g.edge(b).v)])].push_back(b);
    }
    int start = -1;
    for (int p = 0; p < piece_count; ++p) {
        if (touching[idx(p)].size() > 2)
            return std::nullopt;
        if (touching[idx(p)].size() == 1 && start == -1)
            start = p;  // pieces are numbered by smallest vertex
    }

    std::vector<int> order{start};
    std::vector<char> used(idx(g.edge_count()), 0);
    for (int cur = start;;) {
        EdgeId next = -1;
        for (auto b : touching[idx(cur)])
            if (!used[idx(b)])
                next = b;
        if (next == -1)
            break;
        used[idx(next)] = 1;
        chain.bridges.push_back(next);
        int a = piece_of[idx(g.edge(next).u)], c = piece_of[idx(g.edge(next).v)];
        cur = a == cur ? c : a;
        order.push_back(cur);
    }
    for (int p : order) {
        VertexSet vs;
        for (VertexId v = 0; v < g.vertex_count(); ++v)
            if (piece_of[idx(v)] == p)
                vs.push_back(v);
        chain.pieces.push_back(std::move(vs));
    }

    // thread a path: bridge, walk inside the piece, next bridge, ...
    auto inside = [&](VertexId from, VertexId to) {
        std::vector<EdgeId> via(idx(g.vertex_count()), -1);
        std::vector<char> seen(idx(g.vertex_count()), 0);
        std::queue<VertexId> q;
        q.push(from);
        seen[idx(from)] = 1;
        while (!q.empty()) {
            auto x = q.front();
            q.pop();
            for (const auto & inc : rest.graph.incidences(x))
                if (!seen[idx(inc.neighbour)]) {
                    seen[idx(inc.neighbour)] = 1;
                    via[idx(inc.neighbour)] = rest.edge_map[idx(inc.edge)];
                    q.push(inc.neighbour);
                }
        }
        EdgeSet p;
        for (VertexId c = to; c != from; c = g.edge(via[idx(c)]).other(c))
            p.push_back(via[idx(c)]);
        std::reverse(p.begin(), p.end());
        return p;
    };
    for (std::size_t i = 0; i < chain.bridges.size(); ++i) {
        if (i > 0) {
            const auto & prev = g.edge(chain.bridges[i - 1]);
            const auto & next = g.edge(chain.bridges[i]);
            int piece = order[i];
            VertexId entry = piece_of[idx(prev.u)] == piece ? prev.u : prev.v;
            VertexId exit = piece_of[idx(next.u)] == piece ? next.u : next.v;
            auto walk = inside(entry, exit);
            chain.path.insert(chain.path.end(), walk.begin(), walk.end());
        }
        chain.path.push_back(chain.bridges[i]);
    }
    return chain;
}

ComponentBridgeVerdict bridges_in_component(const SignedGraph & g, const Subgraph & component)
{
    (void)g;
    auto chain = bridge_chain(component.graph);
    if (!chain)
        throw LemmaViolation("bridges of a component do not lie on one path");
    ComponentBridgeVerdict v;
    v.vertices = component.vertex_map;
    for (auto b : chain->bridges)
        v.bridges.push_back(component.edge_map[idx(b)]);
    for (auto e : chain->path)
        v.path.push_back(component.edge_map[idx(e)]);
    std::sort(v.bridges.begin(), v.bridges.end());
    return v;
}

std::vector<ComponentBridgeVerdict> bridges_on_one_path(const SignedGraph & g, const EdgeSet & e0)
{
    if (e0.size() > 4)
        throw PreconditionError("bridges_on_one_path: more than 4 removed edges");
    if (g.min_degree() < 3)
        throw PreconditionError("bridges_on_one_path: minimum degree below 3");
    if (!is_triangularly_connected(g))
        throw PreconditionError("bridges_on_one_path: graph is not triangularly connected");
    auto rest = delete_edges(g, e0);
    int count = 0;
    auto comp = components(rest.graph, &count);
    std::vector<ComponentBridgeVerdict> out;
    for (int c = 0; c < count; ++c) {
        VertexSet vs;
        for (VertexId v = 0; v < g.vertex_count(); ++v)
            if (comp[idx(v)] == c)
                vs.push_back(v);
        auto sub = restrict_to_vertices(rest.graph, vs);
        if (sub.graph.edge_count() == 0)
            continue;
        if (sub.graph.min_degree() < 2)
            throw PreconditionError("bridges_on_one_path: a component of G - E0 has a vertex of degree 1");
        for (auto & e : sub.edge_map)
            e = rest.edge_map[idx(e)];
        out.push_back(bridges_in_component(g, sub));
    }
    return out;
}

EdgeSet symmetric_difference(const std::vector<EdgeSet> & parts)
{
    std::map<EdgeId, int> count;
    for (const auto & p : parts)
        for (auto e : p)
            ++count[e];
    EdgeSet out;
    for (const auto & [e, c] : count)
        if (c % 2 == 1)
            out.push_back(e);
    return out;
}

ConfigurationPattern pattern_from_signed(std::string name, const SignedGraph & g)
{
    ConfigurationPattern p;
    p.name = std::move(name);
    p.underlying = g;
    const auto n = idx(g.vertex_count());
    std::vector<EdgeId> parent_edge(n, -1);
    std::vector<int> depth(n, -1);
    std::vector<char> tree(idx(g.edge_count()), 0);
    for (VertexId r = 0; r < g.vertex_count(); ++r) {
        if (depth[idx(r)] != -1)
            continue;
        depth[idx(r)] = 0;
        std::queue<VertexId> q;
        q.push(r);
        while (!q.empty()) {
            auto x = q.front();
            q.pop();
            for (const auto & inc : g.incidences(x))
                if (depth[idx(inc.neighbour)] == -1) {
                    depth[idx(inc.neighbour)] = depth[idx(x)] + 1;
                    parent_edge[idx(inc.neighbour)] = inc.edge;
                    tree[idx(inc.edge)] = 1;
                    q.push(inc.neighbour);
                }
        }
    }
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        if (tree[idx(e)])
            continue;
        EdgeSet cycle{e};
        VertexId a = g.edge(e).u, b = g.edge(e).v;
        while (a != b) {
            if (depth[idx(a)] >= depth[idx(b)]) {
                cycle.push_back(parent_edge[idx(a)]);
                a = g.edge(parent_edge[idx(a)]).other(a);
            }
            else {
                cycle.push_back(parent_edge[idx(b)]);
                b = g.edge(parent_edge[idx(b)]).other(b);
            }
        }
        std::sort(cycle.begin(), cycle.end());
        p.cycle_basis_balance.push_back({cycle, is_balanced_edge_set(g, cycle)});
    }
    return p;
}

std::vector<Embedding> match_configuration(const SignedGraph & g, const ConfigurationPattern & pattern)
{
    const auto & p = pattern.underlying;
    const int pn = p.vertex_count();
    const int gn = g.vertex_count();
    std::vector<Embedding> out;
    if (pn > gn || p.edge_count() > g.edge_count())
        return out;

    // graph edges between each ordered vertex pair (loops on the diagonal)
    std::vector<std::vector<EdgeSet>> between(idx(gn), std::vector<EdgeSet>(idx(gn)));
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const auto & ed = g.edge(e);
        between[idx(ed.u)][idx(ed.v)].push_back(e);
        if (!ed.is_loop())
            between[idx(ed.v)][idx(ed.u)].push_back(e);
    }

    // pattern vertex order: BFS from the highest degree vertex of each component
    std::vector<VertexId> order;
    std::vector<char> placed(idx(pn), 0);
    while (static_cast<int>(order.size()) < pn) {
        VertexId root = -1;
        for (VertexId v = 0; v < pn; ++v)
            if (!placed[idx(v)] && (root == -1 || p.degree(v) > p.degree(root)))
                root = v;
        placed[idx(root)] = 1;
        std::size_t head = order.size();
        order.push_back(root);
        while (head < order.size()) {
            auto x = order[head++];
            for (const auto & inc : p.incidences(x))
                if (!placed[idx(inc.neighbour)]) {
                    placed[idx(inc.neighbour)] = 1;
                    order.push_back(inc.neighbour);
                }
        }
    }

    std::vector<VertexId> map(idx(pn), -1);
    std::vector<char> taken(idx(gn), 0);
    std::vector<EdgeId> edge_map(idx(p.edge_count()), -1);
    std::vector<char> edge_taken(idx(g.edge_count()), 0);

    auto cycles_ok = [&] {
        for (const auto & req : pattern.cycle_basis_balance) {
            int neg = 0;
            for (auto pe : req.cycle)
                neg += g.is_negative(edge_map[idx(pe)]) ? 1 : 0;
            if ((neg % 2 == 0) != req.balanced)
                return false;
        }
        return true;
    };

    std::function<bool(int)> assign_edges = [&](int pe) -> bool {
        if (pe == p.edge_count())
            return cycles_ok();
        const auto & ed = p.edge(pe);
        for (auto ge : between[idx(map[idx(ed.u)])][idx(map[idx(ed.v)])]) {
            if (edge_taken[idx(ge)])
                continue;
            edge_taken[idx(ge)] = 1;
            edge_map[idx(pe)] = ge;
            bool ok = assign_edges(pe + 1);
            edge_taken[idx(ge)] = 0;
            if (ok)
                return true;
        }
        return false;
    };

    std::function<void(std::size_t)> assign_vertex = [&](std::size_t k) {
        if (k == order.size()) {
            if (assign_edges(0)) {
                Embedding emb;
                emb.vertex_map = map;
                emb.edge_map = edge_map;
                out.push_back(std::move(emb));
            }
            return;
        }
        VertexId pv = order[k];
        for (VertexId gv = 0; gv < gn; ++gv) {
            if (taken[idx(gv)] || g.degree(gv) < p.degree(pv))
                continue;
            bool ok = true;
            for (const auto & inc : p.incidences(pv)) {
                VertexId other = inc.neighbour == pv ? gv : map[idx(inc.neighbour)];
                if (inc.neighbour != pv && other == -1)
                    continue;
                if (between[idx(gv)][idx(other)].empty()) {
                    ok = false;
                    break;
                }
            }
            if (!ok)
                continue;
            taken[idx(gv)] = 1;
            map[idx(pv)] = gv;
            assign_vertex(k + 1);
            map[idx(pv)] = -1;
            taken[idx(gv)] = 0;
        }
    };
    assign_vertex(0);
    std::sort(out.begin(), out.end(), [](const Embedding & a, const Embedding & b) { return a.vertex_map < b.vertex_map; });
    return out;
}

}  // namespace triflow
