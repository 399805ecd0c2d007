#include "triflow/flows.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <set>
#include <sstream>

#include "triflow/solver.hpp"

namespace triflow {

namespace {

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

bool contains(const EdgeSet & s, EdgeId e) { return std::find(s.begin(), s.end(), e) != s.end(); }

/// tau of the half-edge of non-loop edge e sitting at w.
int tau_at(const SignedGraph & g, const Orientation & tau, EdgeId e, VertexId w)
{
    return tau.tau(e, g.edge(e).u == w ? End::first : End::second);
}

/// Net contribution at v of the edges in `edges` under `values`.
long long contribution(const SignedGraph & g, const Orientation & tau, const std::vector<int> & values,
    const EdgeSet & edges, VertexId v)
{
    long long s = 0;
    for (auto e : edges)
        s += static_cast<long long>(incidence_coefficient(g, tau, e, v)) * values[idx(e)];
    return s;
}

/// Values along a circuit walk, first edge = start, conserving at every
/// inner transition.
void propagate_walk(const SignedGraph & g, const Orientation & tau, const Circuit & walk, int start,
    std::vector<int> & values)
{
    values[idx(walk.edges[0])] = start;
    for (std::size_t i = 1; i < walk.edges.size(); ++i) {
        VertexId w = walk.vertices[i];
        EdgeId prev = walk.edges[i - 1], next = walk.edges[i];
        values[idx(next)] = -tau_at(g, tau, prev, w) * tau_at(g, tau, next, w) * values[idx(prev)];
    }
}

void require_modular3(const Flow & phi, const char * who)
{
    if (phi.kind != FlowKind::modular || phi.k != 3)
        throw PreconditionError(std::string(who) + ": expected a Z3-flow");
}

void require_valid(const SignedGraph & g, const Flow & f, const char * who)
{
    if (!verify_flow(g, f).valid())
        throw PreconditionError(std::string(who) + ": input is not a flow");
}

Triangle triangle_of(const SignedGraph & g, const EdgeSet & edges)
{
    if (edges.size() != 3 || !is_circuit(g, edges))
        throw PreconditionError("not a triangle");
    auto w = circuit_walk(g, edges);
    Triangle t;
    t.vertices = {w.vertices[0], w.vertices[1], w.vertices[2]};
    t.edges = {edges[0], edges[1], edges[2]};
    std::sort(t.edges.begin(), t.edges.end());
    t.balanced = is_balanced_edge_set(g, edges);
    return t;
}

}  // namespace

int mod(long long a, int k)
{
    long long r = a % k;
    return static_cast<int>(r < 0 ? r + k : r);
}

FlowVerdict verify_flow(const SignedGraph & g, const Flow & f)
{
    f.orientation.validate(g);
    if (f.values.size() != idx(g.edge_count()))
        throw PreconditionError("flow has " + std::to_string(f.values.size()) + " values, graph has "
                                + std::to_string(g.edge_count()) + " edges");
    if (f.k < 2)
        throw PreconditionError("flow bound must be at least 2");
    FlowVerdict verdict;
    verdict.nowhere_zero = true;
    std::vector<long long> sum(idx(g.vertex_count()), 0);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        int x = f.value(e);
        bool in_range = f.kind == FlowKind::integer ? (x > -f.k && x < f.k) : (x >= 0 && x < f.k);
        if (!in_range)
            verdict.bound_violations.push_back(e);
        if ((f.kind == FlowKind::integer ? x : mod(x, f.k)) == 0)
            verdict.nowhere_zero = false;
        const auto & ed = g.edge(e);
        sum[idx(ed.u)] += static_cast<long long>(f.orientation.tau(e, End::first)) * x;
        sum[idx(ed.v)] += static_cast<long long>(f.orientation.tau(e, End::second)) * x;
    }
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        bool ok = f.kind == FlowKind::integer ? sum[idx(v)] == 0 : mod(sum[idx(v)], f.k) == 0;
        if (!ok)
            verdict.conservation_violations.push_back(v);
    }
    return verdict;
}

SupportReport support_report(const Flow & f)
{
    SupportReport r;
    for (std::size_t e = 0; e < f.values.size(); ++e) {
        int x = f.kind == FlowKind::integer ? f.values[e] : mod(f.values[e], f.k);
        if (x == 0) {
            r.zero_set.push_back(static_cast<EdgeId>(e));
            continue;
        }
        r.support.push_back(static_cast<EdgeId>(e));
        r.by_magnitude[f.kind == FlowKind::integer ? std::abs(x) : x].push_back(static_cast<EdgeId>(e));
    }
    return r;
}

EdgeSet zero_set(const Flow & f)
{
    return support_report(f).zero_set;
}

Flow zero_flow(const SignedGraph & g, int k, FlowKind kind)
{
    return {default_orientation(g), std::vector<int>(idx(g.edge_count()), 0), k, kind};
}

Flow reoriented(const Flow & f, const Orientation & target)
{
    if (target.edge_count() != f.values.size())
        throw PreconditionError("reoriented: orientation size mismatch");
    Flow out = f;
    out.orientation = target;
    for (std::size_t e = 0; e < f.values.size(); ++e)
        if (!f.orientation.agrees_on(target, static_cast<EdgeId>(e)))
            out.values[e] = f.kind == FlowKind::integer ? -f.values[e] : mod(-f.values[e], f.k);
    return out;
}

Flow to_default(const SignedGraph & g, const Flow & f)
{
    return reoriented(f, default_orientation(g));
}

Flow reduce_mod(const Flow & f, int k)
{
    Flow out = f;
    out.k = k;
    out.kind = FlowKind::modular;
    for (auto & x : out.values)
        x = mod(x, k);
    return out;
}

Flow combine(const SignedGraph & g, const Flow & f, const Flow & h, int a, int b)
{
    if (f.values.size() != idx(g.edge_count()) || h.values.size() != idx(g.edge_count()))
        throw PreconditionError("combine: flows do not match the graph");
    if (f.kind != h.kind || (f.kind == FlowKind::modular && f.k != h.k))
        throw PreconditionError("combine: flows live in different groups");
    auto aligned = reoriented(h, f.orientation);
    Flow out = f;
    int top = 0;
    for (std::size_t e = 0; e < f.values.size(); ++e) {
        long long x = static_cast<long long>(a) * f.values[e] + static_cast<long long>(b) * aligned.values[e];
        if (f.kind == FlowKind::modular) {
            out.values[e] = mod(x, f.k);
        }
        else {
            out.values[e] = static_cast<int>(x);
            top = std::max(top, static_cast<int>(std::llabs(x)));
        }
    }
    if (f.kind == FlowKind::integer)
        out.k = std::max(2, top + 1);
    return out;
}

std::vector<int> closed_trail_values(const SignedGraph & g, const EdgeSet & edges, VertexId start)
{
    std::vector<int> values(idx(g.edge_count()), 0);
    if (edges.empty())
        return values;
    std::vector<std::vector<HalfEdge>> adj(idx(g.vertex_count()));
    for (auto e : edges) {
        adj[idx(g.edge(e).u)].push_back({e, End::first});
        adj[idx(g.edge(e).v)].push_back({e, End::second});
    }
    for (const auto & a : adj)
        if (a.size() % 2)
            throw PreconditionError("edges do not form one closed trail");
    std::vector<char> used(idx(g.edge_count()), 0);
    std::vector<std::size_t> ptr(idx(g.vertex_count()), 0);
    struct Frame {
        VertexId v;
        std::optional<HalfEdge> via;  // half-edge we left the previous vertex by
    };
    std::vector<Frame> stack{{start, std::nullopt}};
    std::vector<HalfEdge> trail;
    while (!stack.empty()) {
        VertexId v = stack.back().v;
        auto & p = ptr[idx(v)];
        while (p < adj[idx(v)].size() && used[idx(adj[idx(v)][p].edge)])
            ++p;
        if (p < adj[idx(v)].size()) {
            auto h = adj[idx(v)][p];
            used[idx(h.edge)] = 1;
            stack.push_back({g.edge(h.edge).at(opposite(h.end)), h});
        }
        else {
            if (stack.back().via)
                trail.push_back(*stack.back().via);
            stack.pop_back();
        }
    }
    if (trail.size() != edges.size())
        throw PreconditionError("edges do not form one closed trail");
    std::reverse(trail.begin(), trail.end());

    auto tau = default_orientation(g);
    values[idx(trail[0].edge)] = 1;
    for (std::size_t i = 1; i < trail.size(); ++i) {
        const auto & prev = trail[i - 1];
        const auto & next = trail[i];
        int tau_in = tau.tau(prev.edge, opposite(prev.end));
        int tau_out = tau.tau(next.edge, next.end);
        values[idx(next.edge)] = -tau_in * tau_out * values[idx(prev.edge)];
    }
    return values;
}

Flow balanced_circuit_flow(const SignedGraph & g, const EdgeSet & circuit)
{
    if (!is_circuit(g, circuit))
        throw PreconditionError("balanced_circuit_flow: not a circuit");
    if (!is_balanced_edge_set(g, circuit))
        throw PreconditionError("balanced_circuit_flow: circuit is unbalanced");
    auto f = zero_flow(g, 2);
    propagate_walk(g, f.orientation, circuit_walk(g, circuit), 1, f.values);
    return f;
}

Flow circuit_flow(const SignedGraph & g, const SignedCircuit & c)
{
    validate_signed_circuit(g, c);
    if (c.kind == CircuitKind::balanced_circuit)
        return balanced_circuit_flow(g, c.circuit1);

    auto f = zero_flow(g, 2);
    const auto & tau = f.orientation;
    if (c.kind == CircuitKind::short_barbell) {
        std::set<VertexId> v1;
        for (auto e : c.circuit1) {
            v1.insert(g.edge(e).u);
            v1.insert(g.edge(e).v);
        }
        VertexId x = -1;
        for (auto e : c.circuit2)
            for (VertexId w : {g.edge(e).u, g.edge(e).v})
                if (v1.count(w))
                    x = w;
        propagate_walk(g, tau, circuit_walk(g, c.circuit1, x), 1, f.values);
        propagate_walk(g, tau, circuit_walk(g, c.circuit2, x), 1, f.values);
        auto s1 = contribution(g, tau, f.values, c.circuit1, x);
        auto s2 = contribution(g, tau, f.values, c.circuit2, x);
        if (s1 + s2 != 0)
            for (auto e : c.circuit2)
                f.values[idx(e)] = -f.values[idx(e)];
        return f;
    }

    // long barbell: find the path's end on circuit1
    std::set<VertexId> v1;
    for (auto e : c.circuit1) {
        v1.insert(g.edge(e).u);
        v1.insert(g.edge(e).v);
    }
    const auto & p0 = g.edge(c.path.front());
    VertexId x1 = v1.count(p0.u) ? p0.u : p0.v;
    VertexSet pv{x1};
    for (auto e : c.path)
        pv.push_back(g.edge(e).other(pv.back()));
    VertexId x2 = pv.back();

    propagate_walk(g, tau, circuit_walk(g, c.circuit1, x1), 1, f.values);
    auto s1 = contribution(g, tau, f.values, c.circuit1, x1);
    f.values[idx(c.path[0])] = static_cast<int>(-s1 * tau_at(g, tau, c.path[0], x1));
    for (std::size_t i = 1; i < c.path.size(); ++i) {
        VertexId w = pv[i];
        f.values[idx(c.path[i])] = -tau_at(g, tau, c.path[i - 1], w) * tau_at(g, tau, c.path[i], w) * f.values[idx(c.path[i - 1])];
    }
    long long t = static_cast<long long>(tau_at(g, tau, c.path.back(), x2)) * f.values[idx(c.path.back())];
    propagate_walk(g, tau, circuit_walk(g, c.circuit2, x2), 1, f.values);
    auto s2 = contribution(g, tau, f.values, c.circuit2, x2);
    if (s2 + t != 0)
        for (auto e : c.circuit2)
            f.values[idx(e)] = -f.values[idx(e)];
    f.k = 3;
    return f;
}

Extension extend_over_circuit(const SignedGraph & g, const Flow & f1, const EdgeSet & circuit, const Flow & circuit_2flow)
{
    const int k = f1.k;
    if (f1.kind != FlowKind::integer || k < 3)
        throw PreconditionError("extend_over_circuit: need an integer k-flow with k >= 3");
    if (!is_circuit(g, circuit) || !is_balanced_edge_set(g, circuit))
        throw PreconditionError("extend_over_circuit: C is not a balanced circuit");
    require_valid(g, f1, "extend_over_circuit");
    auto h = reoriented(circuit_2flow, f1.orientation);
    if (!verify_flow(g, h).valid())
        throw PreconditionError("extend_over_circuit: g is not a flow");
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        bool on = contains(circuit, e);
        if ((on && std::abs(h.value(e)) != 1) || (!on && h.value(e) != 0))
            throw PreconditionError("extend_over_circuit: g must be a 2-flow with support E(C)");
    }
    int on_support = 0;
    bool half_used = false;
    std::set<int> forbidden;
    for (auto e : circuit) {
        int x = f1.value(e);
        if (2 * std::abs(x) > k)
            throw PreconditionError("extend_over_circuit: |f1(e)| exceeds k/2 on C");
        if (x != 0) {
            ++on_support;
            forbidden.insert(x * h.value(e));
        }
        if (k % 2 == 0 && 2 * std::abs(x) == k)
            half_used = true;
    }
    if (on_support > k - 2)
        throw PreconditionError("extend_over_circuit: |supp(f1) on C| exceeds k - 2");

    int alpha = 0;
    if (k % 2 == 0 && !half_used) {
        alpha = k / 2;
    }
    else {
        int top = k % 2 == 0 ? k / 2 - 1 : k / 2;
        for (int a = 1; a <= top && alpha == 0; ++a)
            for (int s : {a, -a})
                if (!forbidden.count(s)) {
                    alpha = s;
                    break;
                }
    }
    if (alpha == 0)
        throw LemmaViolation("extend_over_circuit: no admissible alpha");

    Extension out{f1, alpha};
    for (auto e : circuit)
        out.flow.values[idx(e)] = f1.value(e) - alpha * h.value(e);
    auto verdict = verify_flow(g, out.flow);
    if (!verdict.valid())
        throw LemmaViolation("extend_over_circuit: result is not a k-flow");
    for (auto e : circuit)
        if (out.flow.value(e) == 0)
            throw LemmaViolation("extend_over_circuit: zero left on C");
    return out;
}

Adjustment adjust_short_circuit(const SignedGraph & g, const Flow & phi, const EdgeSet & circuit)
{
    require_modular3(phi, "adjust_short_circuit");
    if (circuit.size() < 2 || circuit.size() > 4)
        throw PreconditionError("adjust_short_circuit: circuit length must be 2..4");
    if (!is_circuit(g, circuit) || !is_balanced_edge_set(g, circuit))
        throw PreconditionError("adjust_short_circuit: C is not a balanced circuit");
    auto chi = reoriented(balanced_circuit_flow(g, circuit), phi.orientation);
    const int len = static_cast<int>(circuit.size());
    for (int alpha = 0; alpha < 3; ++alpha) {
        int zeros = 0;
        for (auto e : circuit)
            zeros += mod(phi.value(e) - alpha * chi.value(e), 3) == 0 ? 1 : 0;
        if (zeros != 0 && zeros != len - 2)
            continue;
        Adjustment out{phi, alpha};
        for (auto e : circuit)
            out.flow.values[idx(e)] = mod(phi.value(e) - alpha * chi.value(e), 3);
        return out;
    }
    throw LemmaViolation("adjust_short_circuit: no alpha reaches the target zero count");
}

Flow shift_zeros(const SignedGraph & g, const Flow & phi, const TrianglePath & h, EdgeId e0)
{
    require_modular3(phi, "shift_zeros");
    if (h.empty() || !is_valid_triangle_path(h))
        throw PreconditionError("shift_zeros: H is not a triangle-path");
    bool has_e0 = false;
    for (const auto & t : h) {
        if (!t.balanced)
            throw PreconditionError("shift_zeros: every triangle must be balanced");
        has_e0 = has_e0 || t.contains(e0);
    }
    if (!has_e0)
        throw PreconditionError("shift_zeros: e0 is not on the path");

    const std::size_t m = h.size();
    std::vector<Flow> chi;
    for (const auto & t : h)
        chi.push_back(reoriented(balanced_circuit_flow(g, {t.edges[0], t.edges[1], t.edges[2]}), phi.orientation));
    // edges settled once triangle i is chosen
    std::vector<EdgeSet> settled(m);
    std::set<EdgeId> all;
    for (const auto & t : h)
        all.insert(t.edges.begin(), t.edges.end());
    for (auto e : all) {
        std::size_t last = 0;
        for (std::size_t i = 0; i < m; ++i)
            if (h[i].contains(e))
                last = i;
        if (e != e0)
            settled[last].push_back(e);
    }

    std::vector<int> alpha(m, 0);
    std::set<std::pair<std::size_t, int>> dead;
    auto value_now = [&](EdgeId e) {
        long long x = phi.value(e);
        for (std::size_t i = 0; i < m; ++i)
            if (h[i].contains(e))
                x += static_cast<long long>(alpha[i]) * chi[i].value(e);
        return mod(x, 3);
    };
    std::function<bool(std::size_t)> choose = [&](std::size_t i) -> bool {
        if (i == m)
            return true;
        for (int a : {0, 1, 2}) {
            if (dead.count({i, a}))
                continue;
            alpha[i] = a;
            bool ok = true;
            for (auto e : settled[i])
                ok = ok && value_now(e) != 0;
            if (!ok)
                continue;
            // what follows depends on alpha[i] alone
            if (choose(i + 1))
                return true;
            dead.insert({i, a});
        }
        alpha[i] = 0;
        return false;
    };
    if (!choose(0))
        throw LemmaViolation("shift_zeros: no coefficient vector clears the path");
    Flow out = phi;
    for (auto e : all)
        out.values[idx(e)] = value_now(e);
    return out;
}

TwoFlowOutcome two_nzf_eulerian(const SignedGraph & g)
{
    TwoFlowOutcome out;
    int count = 0;
    auto comp = components(g, &count);
    std::vector<EdgeSet> comp_edges(idx(count));
    std::vector<int> comp_neg(idx(count), 0);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        int c = comp[idx(g.edge(e).u)];
        comp_edges[idx(c)].push_back(e);
        comp_neg[idx(c)] += g.is_negative(e) ? 1 : 0;
    }
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        if (g.degree(v) % 2 != 0) {
            out.failing_component = comp[idx(v)];
            out.reason = "vertex " + std::to_string(v) + " has odd degree";
            return out;
        }
    for (int c = 0; c < count; ++c)
        if (comp_neg[idx(c)] % 2 != 0) {
            out.failing_component = c;
            out.reason = "component " + std::to_string(c) + " has " + std::to_string(comp_neg[idx(c)])
                         + " negative edges";
            return out;
        }
    auto f = zero_flow(g, 2);
    for (int c = 0; c < count; ++c) {
        if (comp_edges[idx(c)].empty())
            continue;
        auto vals = closed_trail_values(g, comp_edges[idx(c)], g.edge(comp_edges[idx(c)][0]).u);
        for (auto e : comp_edges[idx(c)])
            f.values[idx(e)] = vals[idx(e)];
    }
    if (!verify_flow(g, f).valid_nowhere_zero())
        throw LemmaViolation("two_nzf_eulerian: trail flow fails conservation");
    out.flow = std::move(f);
    return out;
}

Flow three_nzf_prescribed(const SignedGraph & g, EdgeId e, int i, std::uint64_t budget)
{
    if (!g.has_edge(e))
        throw PreconditionError("three_nzf_prescribed: edge out of range");
    if (i != 1 && i != 2)
        throw PreconditionError("three_nzf_prescribed: value must be 1 or 2");
    if (!bridges(g).empty())
        throw PreconditionError("three_nzf_prescribed: graph has a bridge");
    SearchOptions opts;
    if (budget != 0)
        opts.budget = budget;
    opts.domains.assign(idx(g.edge_count()), {1, -1, 2, -2});
    opts.domains[idx(e)] = {i, -i};
    auto res = search_int_knzf(g, 3, opts);
    if (res.status == SearchStatus::gated)
        throw GatedError("three_nzf_prescribed: search budget exhausted");
    if (res.status == SearchStatus::exhausted)
        throw PreconditionError("three_nzf_prescribed: no 3-NZF with |f(e)| = " + std::to_string(i)
                                + " (graph has no Z3-NZF)");
    Flow f = *res.witness;
    if (f.value(e) != i)
        for (auto & x : f.values)
            x = -x;
    return f;
}

namespace {

/// Integer 3-NZF of a connected graph whose bridges lie on one path.
std::vector<int> int3_for_component(const SignedGraph & h)
{
    std::vector<int> out(idx(h.edge_count()), 0);
    if (h.edge_count() == 0)
        return out;
    auto chain = bridge_chain(h);
    if (!chain)
        throw PreconditionError("mod3_to_int3_bridge_path: bridges do not lie on one path");
    if (chain->bridges.empty())
        return three_nzf_prescribed(h, 0, 1).values;

    auto tau = default_orientation(h);
    const auto & pieces = chain->pieces;
    const EdgeId e1 = chain->bridges.front();
    const EdgeId e2 = chain->bridges.back();
    std::set<VertexId> first(pieces.front().begin(), pieces.front().end());
    std::set<VertexId> last(pieces.back().begin(), pieces.back().end());
    VertexId u1 = first.count(h.edge(e1).u) ? h.edge(e1).u : h.edge(e1).v;
    VertexId u2 = last.count(h.edge(e2).u) ? h.edge(e2).u : h.edge(e2).v;
    VertexId v1 = h.edge(e1).other(u1);
    VertexId v2 = h.edge(e2).other(u2);

    // a leaf piece plus a negative loop standing in for its bridge
    auto leaf = [&](const VertexSet & piece, VertexId at, EdgeId bridge) {
        auto sub = restrict_to_vertices(h, piece);
        std::vector<Edge> edges(sub.graph.edges().begin(), sub.graph.edges().end());
        VertexId local = static_cast<VertexId>(std::find(sub.vertex_map.begin(), sub.vertex_map.end(), at) - sub.vertex_map.begin());
        edges.push_back({local, local, Sign::negative});
        SignedGraph with_loop(sub.graph.vertex_count(), std::move(edges));
        EdgeId loop = with_loop.edge_count() - 1;
        auto f = three_nzf_prescribed(with_loop, loop, 1);
        int t = tau_at(h, tau, bridge, at);
        for (EdgeId e = 0; e < sub.graph.edge_count(); ++e)
            out[idx(sub.edge_map[idx(e)])] = t * f.value(e);
    };
    leaf(pieces.front(), u1, e1);
    leaf(pieces.back(), u2, e2);
    out[idx(e1)] = 2;
    out[idx(e2)] = 2;

    if (e1 != e2) {
        VertexSet middle;
        for (std::size_t i = 1; i + 1 < pieces.size(); ++i)
            middle.insert(middle.end(), pieces[i].begin(), pieces[i].end());
        std::sort(middle.begin(), middle.end());
        auto sub = restrict_to_vertices(h, middle);
        auto local = [&](VertexId v) {
            return static_cast<VertexId>(std::find(sub.vertex_map.begin(), sub.vertex_map.end(), v) - sub.vertex_map.begin());
        };
        int s1 = tau_at(h, tau, e1, v1);
        int s2 = tau_at(h, tau, e2, v2);
        std::vector<Edge> edges(sub.graph.edges().begin(), sub.graph.edges().end());
        edges.push_back({local(v1), local(v2), s1 * s2 == 1 ? Sign::negative : Sign::positive});
        SignedGraph closed(sub.graph.vertex_count(), std::move(edges));
        EdgeId e3 = closed.edge_count() - 1;
        auto f = three_nzf_prescribed(closed, e3, 2);
        for (EdgeId e = 0; e < sub.graph.edge_count(); ++e)
            out[idx(sub.edge_map[idx(e)])] = s1 * f.value(e);
    }
    return out;
}

}  // namespace

Flow mod3_to_int3_bridge_path(const SignedGraph & g, const Flow & phi)
{
    require_modular3(phi, "mod3_to_int3_bridge_path");
    if (!verify_flow(g, phi).valid_nowhere_zero())
        throw PreconditionError("mod3_to_int3_bridge_path: phi is not a Z3-NZF");
    auto f = zero_flow(g, 3);
    int count = 0;
    auto comp = components(g, &count);
    for (int c = 0; c < count; ++c) {
        VertexSet vs;
        for (VertexId v = 0; v < g.vertex_count(); ++v)
            if (comp[idx(v)] == c)
                vs.push_back(v);
        auto sub = restrict_to_vertices(g, vs);
        auto vals = int3_for_component(sub.graph);
        for (EdgeId e = 0; e < sub.graph.edge_count(); ++e)
            f.values[idx(sub.edge_map[idx(e)])] = vals[idx(e)];
    }
    if (!verify_flow(g, f).valid_nowhere_zero())
        throw LemmaViolation("mod3_to_int3_bridge_path: merged flow is not a 3-NZF");
    return f;
}

Flow mod3_to_int3_small_zeroset(const SignedGraph & g, const Flow & phi)
{
    require_modular3(phi, "mod3_to_int3_small_zeroset");
    require_valid(g, phi, "mod3_to_int3_small_zeroset");
    auto zeros = zero_set(phi);
    if (zeros.size() > 4)
        throw PreconditionError("mod3_to_int3_small_zeroset: more than 4 zero edges");
    if (!is_connected(g) || !is_triangularly_connected(g))
        throw PreconditionError("mod3_to_int3_small_zeroset: graph is not triangularly connected");
    auto rest = delete_edges(g, zeros);
    auto phi_default = to_default(g, phi);
    Flow sub_phi{default_orientation(rest.graph), {}, 3, FlowKind::modular};
    for (auto e : rest.edge_map)
        sub_phi.values.push_back(phi_default.value(e));
    auto sub_f = mod3_to_int3_bridge_path(rest.graph, sub_phi);
    auto f = zero_flow(g, 3);
    for (EdgeId e = 0; e < rest.graph.edge_count(); ++e)
        f.values[idx(rest.edge_map[idx(e)])] = sub_f.value(e);
    auto verdict = verify_flow(g, f);
    if (!verdict.valid() || zero_set(f) != zeros)
        throw LemmaViolation("mod3_to_int3_small_zeroset: support not preserved");
    return f;
}

Flow four_nzf_from_z3_circuits(const SignedGraph & g, const Flow & phi, std::vector<EdgeSet> circuits)
{
    require_modular3(phi, "four_nzf_from_z3_circuits");
    require_valid(g, phi, "four_nzf_from_z3_circuits");
    if (circuits.size() > 2 || (circuits.empty() && !zero_set(phi).empty()))
        throw PreconditionError("four_nzf_from_z3_circuits: need one or two circuits");
    for (const auto & c : circuits)
        if (c.size() < 2 || c.size() > 4 || !is_circuit(g, c) || !is_balanced_edge_set(g, c))
            throw PreconditionError("four_nzf_from_z3_circuits: circuits must be balanced with 2..4 edges");
    for (auto e : zero_set(phi)) {
        bool covered = false;
        for (const auto & c : circuits)
            covered = covered || contains(c, e);
        if (!covered)
            throw PreconditionError("four_nzf_from_z3_circuits: zero edge " + std::to_string(e) + " lies off the circuits");
    }

    Flow cur = phi;
    if (circuits.size() == 2) {
        EdgeSet shared;
        for (auto e : circuits[0])
            if (contains(circuits[1], e))
                shared.push_back(e);
        if (shared.size() > 1)
            throw PreconditionError("four_nzf_from_z3_circuits: circuits share more than one edge");
        if (shared.size() == 1) {
            if (circuits[0].size() != 3)
                std::swap(circuits[0], circuits[1]);
            if (circuits[0].size() != 3)
                throw PreconditionError("four_nzf_from_z3_circuits: overlapping circuits need a triangle");
            cur = shift_zeros(g, cur, {triangle_of(g, circuits[0])}, shared[0]);
            circuits.erase(circuits.begin());
        }
    }

    for (const auto & c : circuits)
        cur = adjust_short_circuit(g, cur, c).flow;
    auto f = mod3_to_int3_small_zeroset(g, cur);
    f.k = 4;
    for (const auto & c : circuits) {
        bool has_zero = false;
        for (auto e : c)
            has_zero = has_zero || f.value(e) == 0;
        if (has_zero)
            f = extend_over_circuit(g, f, c, balanced_circuit_flow(g, c)).flow;
    }
    if (!verify_flow(g, f).valid_nowhere_zero())
        throw LemmaViolation("four_nzf_from_z3_circuits: result is not a 4-NZF");
    return f;
}

std::string serialize_flow(const SignedGraph & g, const Flow & f)
{
    std::ostringstream out;
    out << "flow " << f.k << ' ' << (f.kind == FlowKind::integer ? "int" : "mod") << '\n';
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        out << "f " << e << ' ' << f.orientation.tau(e, End::first) << ' ' << f.orientation.tau(e, End::second) << ' '
            << f.value(e) << '\n';
    return out.str();
}

Flow parse_flow(const SignedGraph & g, std::string_view text)
{
    auto to_int = [](std::string_view tok, std::size_t line) {
        int x = 0;
        auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), x);
        if (ec != std::errc() || p != tok.data() + tok.size())
            throw ParseError(line, "expected integer, got '" + std::string(tok) + "'");
        return x;
    };
    Flow f;
    bool header = false;
    std::vector<std::array<std::int8_t, 2>> tau(idx(g.edge_count()), {0, 0});
    std::vector<char> seen(idx(g.edge_count()), 0);
    f.values.assign(idx(g.edge_count()), 0);
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.resize(hash);
        std::istringstream ls(line);
        std::vector<std::string> toks;
        for (std::string t; ls >> t;)
            toks.push_back(t);
        if (toks.empty())
            continue;
        if (!header) {
            if (toks.size() != 3 || toks[0] != "flow" || (toks[2] != "int" && toks[2] != "mod"))
                throw ParseError(line_no, "expected 'flow <k> <int|mod>'");
            f.k = to_int(toks[1], line_no);
            if (f.k < 2)
                throw ParseError(line_no, "k must be at least 2");
            f.kind = toks[2] == "int" ? FlowKind::integer : FlowKind::modular;
            header = true;
            continue;
        }
        if (toks.size() != 5 || toks[0] != "f")
            throw ParseError(line_no, "expected 'f <edge_id> <tau_u> <tau_v> <value>'");
        int e = to_int(toks[1], line_no);
        if (!g.has_edge(e))
            throw ParseError(line_no, "edge id " + toks[1] + " out of range");
        if (seen[idx(e)])
            throw ParseError(line_no, "edge " + toks[1] + " listed twice");
        seen[idx(e)] = 1;
        int a = to_int(toks[2], line_no), b = to_int(toks[3], line_no);
        if ((a != 1 && a != -1) || (b != 1 && b != -1))
            throw ParseError(line_no, "tau must be 1 or -1");
        tau[idx(e)] = {static_cast<std::int8_t>(a), static_cast<std::int8_t>(b)};
        f.values[idx(e)] = to_int(toks[4], line_no);
    }
    if (!header)
        throw ParseError(line_no, "missing 'flow <k> <int|mod>' header");
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        if (!seen[idx(e)])
            throw ParseError(line_no, "no value for edge " + std::to_string(e));
    f.orientation = Orientation(g, std::move(tau));
    return f;
}

}  // namespace triflow
