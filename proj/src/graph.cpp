#include "triflow/graph.hpp"

#include <algorithm>
#include <queue>
#include <string>

namespace triflow {

SignedGraph::SignedGraph(int vertex_count, std::vector<Edge> edges)
    : vertex_count_(vertex_count), edges_(std::move(edges))
{
    if (vertex_count_ < 0)
        throw PreconditionError("negative vertex count");
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        const auto & e = edges_[i];
        if (!has_vertex(e.u) || !has_vertex(e.v))
            throw PreconditionError("edge " + std::to_string(i) + ": endpoint out of range");
        if (e.sign != Sign::positive && e.sign != Sign::negative)
            throw PreconditionError("edge " + std::to_string(i) + ": sign must be +1 or -1");
    }

    std::vector<std::size_t> count(static_cast<std::size_t>(vertex_count_) + 1, 0);
    for (const auto & e : edges_) {
        ++count[static_cast<std::size_t>(e.u)];
        ++count[static_cast<std::size_t>(e.v)];
    }
    offsets_.assign(count.size(), 0);
    for (std::size_t v = 0; v + 1 < count.size(); ++v)
        offsets_[v + 1] = offsets_[v] + count[v];
    incidence_store_.resize(offsets_.back());
    std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        const auto & e = edges_[i];
        const auto id = static_cast<EdgeId>(i);
        incidence_store_[fill[static_cast<std::size_t>(e.u)]++] = {id, End::first, e.v};
        incidence_store_[fill[static_cast<std::size_t>(e.v)]++] = {id, End::second, e.u};
    }
}

std::span<const Incidence> SignedGraph::incidences(VertexId v) const
{
    if (!has_vertex(v))
        throw PreconditionError("vertex " + std::to_string(v) + " out of range");
    const auto b = offsets_[static_cast<std::size_t>(v)];
    const auto e = offsets_[static_cast<std::size_t>(v) + 1];
    return std::span<const Incidence>(incidence_store_).subspan(b, e - b);
}

int SignedGraph::negative_count() const noexcept
{
    return static_cast<int>(std::count_if(edges_.begin(), edges_.end(),
        [](const Edge & e) { return e.sign == Sign::negative; }));
}

int SignedGraph::min_degree() const noexcept
{
    int best = 0;
    for (VertexId v = 0; v < vertex_count_; ++v) {
        int d = degree(v);
        if (v == 0 || d < best)
            best = d;
    }
    return best;
}

bool SignedGraph::same_underlying(const SignedGraph & other) const noexcept
{
    if (vertex_count_ != other.vertex_count_ || edges_.size() != other.edges_.size())
        return false;
    for (std::size_t i = 0; i < edges_.size(); ++i)
        if (edges_[i].u != other.edges_[i].u || edges_[i].v != other.edges_[i].v)
            return false;
    return true;
}

SignedGraph SignedGraph::with_sign(EdgeId e, Sign s) const
{
    auto copy = edges_;
    copy.at(static_cast<std::size_t>(e)).sign = s;
    return SignedGraph(vertex_count_, std::move(copy));
}

SignedGraph SignedGraph::with_signs(std::span<const Sign> signs) const
{
    if (signs.size() != edges_.size())
        throw PreconditionError("signature length does not match edge count");
    auto copy = edges_;
    for (std::size_t i = 0; i < copy.size(); ++i)
        copy[i].sign = signs[i];
    return SignedGraph(vertex_count_, std::move(copy));
}

Orientation::Orientation(const SignedGraph & g, std::vector<std::array<std::int8_t, 2>> tau)
    : tau_(std::move(tau))
{
    validate(g);
}

void Orientation::validate(const SignedGraph & g) const
{
    if (tau_.size() != static_cast<std::size_t>(g.edge_count()))
        throw PreconditionError("orientation covers " + std::to_string(tau_.size()) + " edges, graph has "
                                + std::to_string(g.edge_count()));
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const auto & t = tau_[static_cast<std::size_t>(e)];
        if ((t[0] != 1 && t[0] != -1) || (t[1] != 1 && t[1] != -1))
            throw PreconditionError("edge " + std::to_string(e) + ": tau must be +1 or -1");
        if (t[0] * t[1] != -to_int(g.sign(e)))
            throw PreconditionError("edge " + std::to_string(e) + ": orientation inconsistent with sign");
    }
}

bool Orientation::agrees_on(const Orientation & other, EdgeId e) const
{
    return tau_.at(static_cast<std::size_t>(e))[0] == other.tau_.at(static_cast<std::size_t>(e))[0];
}

Orientation Orientation::reversed(EdgeId e) const
{
    Orientation copy = *this;
    auto & t = copy.tau_.at(static_cast<std::size_t>(e));
    t[0] = static_cast<std::int8_t>(-t[0]);
    t[1] = static_cast<std::int8_t>(-t[1]);
    return copy;
}

Orientation default_orientation(const SignedGraph & g)
{
    std::vector<std::array<std::int8_t, 2>> tau;
    tau.reserve(static_cast<std::size_t>(g.edge_count()));
    for (const auto & e : g.edges())
        tau.push_back(e.sign == Sign::positive ? std::array<std::int8_t, 2>{1, -1} : std::array<std::int8_t, 2>{1, 1});
    return Orientation(g, std::move(tau));
}

int incidence_coefficient(const SignedGraph & g, const Orientation & tau, EdgeId e, VertexId v)
{
    const auto & ed = g.edge(e);
    int c = 0;
    if (ed.u == v)
        c += tau.tau(e, End::first);
    if (ed.v == v)
        c += tau.tau(e, End::second);
    return c;
}

namespace {

std::vector<char> membership(const SignedGraph & g, std::span<const VertexId> vs)
{
    std::vector<char> in(static_cast<std::size_t>(g.vertex_count()), 0);
    for (auto v : vs) {
        if (!g.has_vertex(v))
            throw PreconditionError("vertex " + std::to_string(v) + " out of range");
        in[static_cast<std::size_t>(v)] = 1;
    }
    return in;
}

}  // namespace

SignedGraph switch_at(const SignedGraph & g, std::span<const VertexId> u)
{
    auto in = membership(g, u);
    std::vector<Edge> edges(g.edges().begin(), g.edges().end());
    for (auto & e : edges)
        if (in[static_cast<std::size_t>(e.u)] != in[static_cast<std::size_t>(e.v)])
            e.sign = flipped(e.sign);
    return SignedGraph(g.vertex_count(), std::move(edges));
}

BalanceResult is_balanced(const SignedGraph & g)
{
    const auto n = static_cast<std::size_t>(g.vertex_count());
    std::vector<int> state(n, 0);  // 0 unseen, else +1 / -1
    std::vector<EdgeId> parent_edge(n, -1);
    std::vector<int> depth(n, 0);

    auto path_to = [&](VertexId from, VertexId to_ancestor) {
        EdgeSet path;
        while (from != to_ancestor) {
            auto pe = parent_edge[static_cast<std::size_t>(from)];
            path.push_back(pe);
            from = g.edge(pe).other(from);
        }
        return path;
    };

    for (VertexId root = 0; root < g.vertex_count(); ++root) {
        if (state[static_cast<std::size_t>(root)] != 0)
            continue;
        state[static_cast<std::size_t>(root)] = 1;
        std::queue<VertexId> q;
        q.push(root);
        while (!q.empty()) {
            auto x = q.front();
            q.pop();
            for (const auto & inc : g.incidences(x)) {
                const auto & e = g.edge(inc.edge);
                auto y = inc.neighbour;
                int want = state[static_cast<std::size_t>(x)] * to_int(e.sign);
                if (state[static_cast<std::size_t>(y)] == 0) {
                    state[static_cast<std::size_t>(y)] = want;
                    parent_edge[static_cast<std::size_t>(y)] = inc.edge;
                    depth[static_cast<std::size_t>(y)] = depth[static_cast<std::size_t>(x)] + 1;
                    q.push(y);
                }
                else if (state[static_cast<std::size_t>(y)] != want) {
                    BalanceResult r;
                    if (e.is_loop()) {
                        r.unbalanced_circuit = {inc.edge};
                        return r;
                    }
                    // climb to the lowest common ancestor
                    VertexId a = x, b = y;
                    while (depth[static_cast<std::size_t>(a)] > depth[static_cast<std::size_t>(b)])
                        a = g.edge(parent_edge[static_cast<std::size_t>(a)]).other(a);
                    while (depth[static_cast<std::size_t>(b)] > depth[static_cast<std::size_t>(a)])
                        b = g.edge(parent_edge[static_cast<std::size_t>(b)]).other(b);
                    while (a != b) {
                        a = g.edge(parent_edge[static_cast<std::size_t>(a)]).other(a);
                        b = g.edge(parent_edge[static_cast<std::size_t>(b)]).other(b);
                    }
                    auto left = path_to(x, a);
                    auto right = path_to(y, a);
                    std::reverse(left.begin(), left.end());
                    // walk: lca -> ... -> x, edge, y -> ... -> lca
                    r.unbalanced_circuit = left;
                    r.unbalanced_circuit.push_back(inc.edge);
                    r.unbalanced_circuit.insert(r.unbalanced_circuit.end(), right.begin(), right.end());
                    return r;
                }
            }
        }
    }
    BalanceResult r;
    r.balanced = true;
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        if (state[static_cast<std::size_t>(v)] < 0)
            r.switch_set.push_back(v);
    return r;
}

std::optional<VertexSet> signature_equivalent(const SignedGraph & a, const SignedGraph & b)
{
    if (!a.same_underlying(b))
        throw PreconditionError("signature_equivalent: underlying graphs differ");
    // a and b are equivalent iff the product signature is balanced; its
    // balancing switch set carries a onto b.
    std::vector<Sign> product;
    product.reserve(static_cast<std::size_t>(a.edge_count()));
    for (EdgeId e = 0; e < a.edge_count(); ++e)
        product.push_back(a.sign(e) * b.sign(e));
    auto r = is_balanced(a.with_signs(product));
    if (!r.balanced)
        return std::nullopt;
    return r.switch_set;
}

SignedGraph flip_edge(const SignedGraph & g, EdgeId e)
{
    return g.with_sign(e, flipped(g.sign(e)));
}

std::optional<EdgeId> single_negative_witness(const SignedGraph & g)
{
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        if (is_balanced(flip_edge(g, e)).balanced)
            return e;
    return std::nullopt;
}

NearBalance equivalent_to_at_most_one_negative(const SignedGraph & g)
{
    if (!is_connected(g))
        throw PreconditionError("equivalent_to_at_most_one_negative: graph is disconnected");
    if (is_balanced(g).balanced)
        return {true, std::nullopt};
    if (auto w = single_negative_witness(g))
        return {true, w};
    return {false, std::nullopt};
}

EdgeSet bridges(const SignedGraph & g)
{
    const auto n = static_cast<std::size_t>(g.vertex_count());
    std::vector<int> disc(n, -1), low(n, 0);
    EdgeSet out;
    int timer = 0;

    struct Frame {
        VertexId v;
        EdgeId via;
        std::size_t next;
    };

    for (VertexId root = 0; root < g.vertex_count(); ++root) {
        if (disc[static_cast<std::size_t>(root)] != -1)
            continue;
        std::vector<Frame> stack{{root, -1, 0}};
        disc[static_cast<std::size_t>(root)] = low[static_cast<std::size_t>(root)] = timer++;
        while (!stack.empty()) {
            auto & f = stack.back();
            auto inc = g.incidences(f.v);
            if (f.next < inc.size()) {
                const auto & i = inc[f.next++];
                if (i.edge == f.via || g.edge(i.edge).is_loop())
                    continue;
                auto w = static_cast<std::size_t>(i.neighbour);
                if (disc[w] == -1) {
                    disc[w] = low[w] = timer++;
                    stack.push_back({i.neighbour, i.edge, 0});
                }
                else {
                    low[static_cast<std::size_t>(f.v)] = std::min(low[static_cast<std::size_t>(f.v)], disc[w]);
                }
            }
            else {
                Frame done = f;
                stack.pop_back();
                if (!stack.empty()) {
                    auto p = static_cast<std::size_t>(stack.back().v);
                    low[p] = std::min(low[p], low[static_cast<std::size_t>(done.v)]);
                    if (low[static_cast<std::size_t>(done.v)] > disc[p])
                        out.push_back(done.via);
                }
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

EdgeCut edge_cut(const SignedGraph & g, std::span<const VertexId> u, std::optional<std::span<const VertexId>> w)
{
    auto in_u = membership(g, u);
    std::vector<char> in_w;
    if (w) {
        in_w = membership(g, *w);
        for (std::size_t i = 0; i < in_u.size(); ++i)
            if (in_u[i] && in_w[i])
                throw PreconditionError("edge_cut: vertex sets overlap at " + std::to_string(i));
    }
    else {
        in_w.resize(in_u.size());
        for (std::size_t i = 0; i < in_u.size(); ++i)
            in_w[i] = !in_u[i];
    }
    EdgeCut cut;
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        if (in_u[static_cast<std::size_t>(v)])
            cut.side.push_back(v);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        auto a = static_cast<std::size_t>(g.edge(e).u), b = static_cast<std::size_t>(g.edge(e).v);
        if ((in_u[a] && in_w[b]) || (in_u[b] && in_w[a]))
            cut.edges.push_back(e);
    }
    return cut;
}

Subgraph restrict_to_edges(const SignedGraph & g, std::span<const EdgeId> edges)
{
    std::vector<char> keep(static_cast<std::size_t>(g.edge_count()), 0);
    for (auto e : edges) {
        if (!g.has_edge(e))
            throw PreconditionError("edge " + std::to_string(e) + " out of range");
        keep[static_cast<std::size_t>(e)] = 1;
    }
    std::vector<int> vmap(static_cast<std::size_t>(g.vertex_count()), -1);
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        if (keep[static_cast<std::size_t>(e)]) {
            vmap[static_cast<std::size_t>(g.edge(e).u)] = 0;
            vmap[static_cast<std::size_t>(g.edge(e).v)] = 0;
        }
    Subgraph s;
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        if (vmap[static_cast<std::size_t>(v)] == 0) {
            vmap[static_cast<std::size_t>(v)] = static_cast<int>(s.vertex_map.size());
            s.vertex_map.push_back(v);
        }
    std::vector<Edge> out;
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        if (keep[static_cast<std::size_t>(e)]) {
            const auto & ed = g.edge(e);
            out.push_back({vmap[static_cast<std::size_t>(ed.u)], vmap[static_cast<std::size_t>(ed.v)], ed.sign});
            s.edge_map.push_back(e);
        }
    s.graph = SignedGraph(static_cast<int>(s.vertex_map.size()), std::move(out));
    return s;
}

Subgraph restrict_to_vertices(const SignedGraph & g, std::span<const VertexId> vertices)
{
    auto in = membership(g, vertices);
    std::vector<int> vmap(static_cast<std::size_t>(g.vertex_count()), -1);
    Subgraph s;
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        if (in[static_cast<std::size_t>(v)]) {
            vmap[static_cast<std::size_t>(v)] = static_cast<int>(s.vertex_map.size());
            s.vertex_map.push_back(v);
        }
    std::vector<Edge> out;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const auto & ed = g.edge(e);
        if (in[static_cast<std::size_t>(ed.u)] && in[static_cast<std::size_t>(ed.v)]) {
            out.push_back({vmap[static_cast<std::size_t>(ed.u)], vmap[static_cast<std::size_t>(ed.v)], ed.sign});
            s.edge_map.push_back(e);
        }
    }
    s.graph = SignedGraph(static_cast<int>(s.vertex_map.size()), std::move(out));
    return s;
}

Subgraph delete_edges(const SignedGraph & g, std::span<const EdgeId> edges)
{
    std::vector<char> drop(static_cast<std::size_t>(g.edge_count()), 0);
    for (auto e : edges) {
        if (!g.has_edge(e))
            throw PreconditionError("edge " + std::to_string(e) + " out of range");
        drop[static_cast<std::size_t>(e)] = 1;
    }
    Subgraph s;
    std::vector<Edge> out;
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        if (!drop[static_cast<std::size_t>(e)]) {
            out.push_back(g.edge(e));
            s.edge_map.push_back(e);
        }
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        s.vertex_map.push_back(v);
    s.graph = SignedGraph(g.vertex_count(), std::move(out));
    return s;
}

std::vector<int> components(const SignedGraph & g, int * count)
{
    std::vector<int> comp(static_cast<std::size_t>(g.vertex_count()), -1);
    int c = 0;
    for (VertexId s = 0; s < g.vertex_count(); ++s) {
        if (comp[static_cast<std::size_t>(s)] != -1)
            continue;
        std::vector<VertexId> stack{s};
        comp[static_cast<std::size_t>(s)] = c;
        while (!stack.empty()) {
            auto x = stack.back();
            stack.pop_back();
            for (const auto & inc : g.incidences(x))
                if (comp[static_cast<std::size_t>(inc.neighbour)] == -1) {
                    comp[static_cast<std::size_t>(inc.neighbour)] = c;
                    stack.push_back(inc.neighbour);
                }
        }
        ++c;
    }
    if (count)
        *count = c;
    return comp;
}

bool is_connected(const SignedGraph & g)
{
    int c = 0;
    components(g, &c);
    return c <= 1;
}

bool all_degrees_even(const SignedGraph & g)
{
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        if (g.degree(v) % 2 != 0)
            return false;
    return true;
}

}  // namespace triflow
