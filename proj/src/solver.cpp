#include "triflow/solver.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <unordered_set>

#include "triflow/families.hpp"

namespace triflow {

namespace {

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

struct OutOfBudget {};

/// Static edge order: close vertices as early as possible.
std::vector<EdgeId> closing_order(const SignedGraph & g)
{
    const int m = g.edge_count();
    std::vector<int> remaining(idx(g.vertex_count()), 0);
    for (EdgeId e = 0; e < m; ++e) {
        ++remaining[idx(g.edge(e).u)];
        if (!g.edge(e).is_loop())
            ++remaining[idx(g.edge(e).v)];
    }
    std::vector<char> touched(idx(g.vertex_count()), 0), used(idx(m), 0);
    std::vector<EdgeId> order;
    for (int step = 0; step < m; ++step) {
        EdgeId best = -1;
        std::array<int, 3> best_key{};
        for (EdgeId e = 0; e < m; ++e) {
            if (used[idx(e)])
                continue;
            const auto & ed = g.edge(e);
            int closes = 0, seen = 0, rest = 0;
            for (VertexId w : {ed.u, ed.v}) {
                closes += remaining[idx(w)] == 1 ? 1 : 0;
                seen += touched[idx(w)] ? 1 : 0;
                rest += remaining[idx(w)];
                if (ed.is_loop())
                    break;
            }
            std::array<int, 3> key{closes, seen, -rest};
            if (best == -1 || key > best_key) {
                best = e;
                best_key = key;
            }
        }
        used[idx(best)] = 1;
        order.push_back(best);
        const auto & ed = g.edge(best);
        --remaining[idx(ed.u)];
        if (!ed.is_loop())
            --remaining[idx(ed.v)];
        touched[idx(ed.u)] = touched[idx(ed.v)] = 1;
    }
    return order;
}

class FlowSearch {
public:
    FlowSearch(const SignedGraph & g, int k, bool modular, const SearchOptions & opts)
        : g_(g), k_(k), modular_(modular), budget_(opts.budget)
    {
        const int m = g.edge_count();
        const int n = g.vertex_count();
        order_ = closing_order(g);
        auto tau = default_orientation(g);

        domains_.resize(idx(m));
        bool symmetric = true;
        for (int p = 0; p < m; ++p) {
            EdgeId e = order_[idx(p)];
            std::vector<int> dom;
            if (!opts.domains.empty()) {
                dom = opts.domains.at(idx(e));
            }
            else if (modular) {
                for (int x = 1; x < k; ++x)
                    dom.push_back(x);
            }
            else {
                for (int x = 1; x < k; ++x) {
                    dom.push_back(x);
                    dom.push_back(-x);
                }
            }
            std::set<int> s;
            for (int x : dom)
                s.insert(modular ? mod(x, k) : x);
            for (int x : s)
                symmetric = symmetric && s.count(modular ? mod(-x, k) : -x);
            domains_[idx(p)] = std::move(dom);
        }
        if (symmetric && m > 0) {
            // -f is a flow whenever f is
            auto & first = domains_[0];
            std::vector<int> kept;
            for (int x : first)
                if (modular ? 2 * mod(x, k) <= k && mod(x, k) != 0 : x > 0)
                    kept.push_back(x);
            if (!kept.empty())
                first = std::move(kept);
        }

        ends_.resize(idx(m));
        std::vector<int> last_pos(idx(n), -1), first_pos(idx(n), m);
        for (int p = 0; p < m; ++p) {
            EdgeId e = order_[idx(p)];
            const auto & ed = g.edge(e);
            auto & info = ends_[idx(p)];
            info.count = 0;
            auto add = [&](VertexId w, int c) {
                for (int i = 0; i < info.count; ++i)
                    if (info.v[i] == w) {
                        info.c[i] += c;
                        return;
                    }
                info.v[info.count] = w;
                info.c[info.count] = c;
                ++info.count;
            };
            add(ed.u, tau.tau(e, End::first));
            add(ed.v, tau.tau(e, End::second));
            for (VertexId w : {ed.u, ed.v}) {
                last_pos[idx(w)] = std::max(last_pos[idx(w)], p);
                first_pos[idx(w)] = std::min(first_pos[idx(w)], p);
            }
        }
        closes_.resize(idx(m));
        frontier_.resize(idx(m));
        for (VertexId w = 0; w < n; ++w) {
            if (last_pos[idx(w)] < 0)
                continue;
            closes_[idx(last_pos[idx(w)])].push_back(w);
            for (int p = first_pos[idx(w)]; p < last_pos[idx(w)]; ++p)
                frontier_[idx(p)].push_back(w);
        }

        if (!modular) {
            // capacity left at each endpoint after position p
            std::vector<long long> cap(idx(n), 0);
            cap_after_.assign(idx(m), {0, 0});
            for (int p = m - 1; p >= 0; --p) {
                const auto & info = ends_[idx(p)];
                for (int i = 0; i < info.count; ++i)
                    cap_after_[idx(p)][idx(i)] = cap[idx(info.v[i])];
                int top = 0;
                for (int x : domains_[idx(p)])
                    top = std::max(top, std::abs(x));
                for (int i = 0; i < info.count; ++i)
                    cap[idx(info.v[i])] += static_cast<long long>(std::abs(info.c[i])) * top;
            }
        }
        sums_.assign(idx(n), 0);
        values_.assign(idx(m), 0);
    }

    SearchOutcome run()
    {
        SearchOutcome out;
        const int m = g_.edge_count();
        bool found = false;
        try {
            found = m == 0 || dfs(0);
            out.status = found ? SearchStatus::found : SearchStatus::exhausted;
        }
        catch (const OutOfBudget &) {
            out.status = SearchStatus::gated;
        }
        out.nodes_explored = nodes_;
        if (found) {
            Flow f{default_orientation(g_), std::vector<int>(idx(m), 0), k_, modular_ ? FlowKind::modular : FlowKind::integer};
            for (int p = 0; p < m; ++p)
                f.values[idx(order_[idx(p)])] = modular_ ? mod(values_[idx(p)], k_) : values_[idx(p)];
            auto verdict = verify_flow(g_, f);
            if (!verdict.valid())
                throw LemmaViolation("search produced an invalid flow");
            out.witness = std::move(f);
        }
        return out;
    }

private:
    struct Ends {
        int count = 0;
        std::array<VertexId, 2> v{};
        std::array<int, 2> c{};
    };

    bool zero(long long s) const { return modular_ ? s % k_ == 0 : s == 0; }

    std::string key(int p) const
    {
        std::string s;
        s.reserve(4 + 2 * frontier_[idx(p)].size());
        s.append(reinterpret_cast<const char *>(&p), sizeof p);
        for (auto w : frontier_[idx(p)]) {
            auto x = static_cast<std::int16_t>(modular_ ? mod(sums_[idx(w)], k_) : sums_[idx(w)]);
            s.append(reinterpret_cast<const char *>(&x), sizeof x);
        }
        return s;
    }

    bool dfs(int p)
    {
        const int m = g_.edge_count();
        const auto & info = ends_[idx(p)];
        for (int x : domains_[idx(p)]) {
            if (++nodes_ > budget_)
                throw OutOfBudget{};
            for (int i = 0; i < info.count; ++i)
                sums_[idx(info.v[i])] += static_cast<long long>(info.c[i]) * x;
            bool ok = true;
            for (auto w : closes_[idx(p)])
                ok = ok && zero(sums_[idx(w)]);
            if (ok && !modular_)
                for (int i = 0; i < info.count; ++i)
                    ok = ok && std::llabs(sums_[idx(info.v[i])]) <= cap_after_[idx(p)][idx(i)];
            if (ok) {
                values_[idx(p)] = x;
                if (p + 1 == m)
                    return true;
                auto k = key(p);
                if (!failed_.count(k)) {
                    if (dfs(p + 1))
                        return true;
                    if (failed_.size() < memo_cap)
                        failed_.insert(std::move(k));
                }
            }
            for (int i = 0; i < info.count; ++i)
                sums_[idx(info.v[i])] -= static_cast<long long>(info.c[i]) * x;
        }
        return false;
    }

    static constexpr std::size_t memo_cap = 20'000'000;

    const SignedGraph & g_;
    int k_;
    bool modular_;
    std::uint64_t budget_;
    std::uint64_t nodes_ = 0;
    std::vector<EdgeId> order_;
    std::vector<std::vector<int>> domains_;
    std::vector<Ends> ends_;
    std::vector<std::vector<VertexId>> closes_;
    std::vector<std::vector<VertexId>> frontier_;
    std::vector<std::array<long long, 2>> cap_after_;
    std::vector<long long> sums_;
    std::vector<int> values_;
    std::unordered_set<std::string> failed_;
};

}  // namespace

std::string to_string(SearchStatus s)
{
    switch (s) {
    case SearchStatus::found: return "found";
    case SearchStatus::exhausted: return "exhausted";
    case SearchStatus::gated: return "gated";
    }
    return "?";
}

SearchOutcome search_int_knzf(const SignedGraph & g, int k, const SearchOptions & opts)
{
    if (k < 2)
        throw PreconditionError("k must be at least 2");
    if (!opts.domains.empty() && opts.domains.size() != idx(g.edge_count()))
        throw PreconditionError("one domain per edge required");
    return FlowSearch(g, k, false, opts).run();
}

SearchOutcome search_int_knzf(const SignedGraph & g, int k, std::uint64_t budget)
{
    SearchOptions opts;
    opts.budget = budget;
    return search_int_knzf(g, k, opts);
}

SearchOutcome search_mod_knzf(const SignedGraph & g, int k, const SearchOptions & opts)
{
    if (k < 2)
        throw PreconditionError("k must be at least 2");
    if (!opts.domains.empty() && opts.domains.size() != idx(g.edge_count()))
        throw PreconditionError("one domain per edge required");
    return FlowSearch(g, k, true, opts).run();
}

SearchOutcome search_mod_knzf(const SignedGraph & g, int k, std::uint64_t budget)
{
    SearchOptions opts;
    opts.budget = budget;
    return search_mod_knzf(g, k, opts);
}

AdmissibilityReport is_flow_admissible(const SignedGraph & g)
{
    if (!is_connected(g))
        throw PreconditionError("is_flow_admissible: graph is disconnected");
    AdmissibilityReport r;

    for (EdgeId e = 0; e < g.edge_count() && !r.single_negative; ++e)
        if (is_balanced(flip_edge(g, e)).balanced)
            r.single_negative = e;
    if (!r.single_negative)
        for (auto b : bridges(g)) {
            auto rest = delete_edges(g, std::vector<EdgeId>{b});
            int count = 0;
            auto comp = components(rest.graph, &count);
            for (int c = 0; c < count && !r.bad_bridge; ++c) {
                VertexSet vs;
                for (VertexId v = 0; v < g.vertex_count(); ++v)
                    if (comp[idx(v)] == c)
                        vs.push_back(v);
                if (is_balanced(restrict_to_vertices(rest.graph, vs).graph).balanced)
                    r.bad_bridge = b;
            }
            if (r.bad_bridge)
                break;
        }
    r.condition2 = !r.single_negative && !r.bad_bridge;

    r.condition3 = true;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        auto c = find_signed_circuit_through(g, e);
        if (!c) {
            r.condition3 = false;
            r.uncovered_edge = e;
            r.circuits.clear();
            break;
        }
        r.circuits.push_back(std::move(*c));
    }

    if (r.condition2 != r.condition3)
        throw LemmaViolation("admissibility conditions disagree (single-negative/bridge test says "
                             + std::string(r.condition2 ? "admissible" : "not admissible") + ")");
    r.admissible = r.condition2;
    if (r.single_negative)
        r.reason = "equivalent to one negative edge (edge " + std::to_string(*r.single_negative) + ")";
    else if (r.bad_bridge)
        r.reason = "bridge " + std::to_string(*r.bad_bridge) + " leaves a balanced component";
    return r;
}

ClosureTrace phi2_closure(const SignedGraph & g, const EdgeSet & seed, std::uint64_t budget)
{
    ClosureTrace t;
    t.seed = seed;
    std::vector<char> in(idx(g.edge_count()), 0);
    int have = 0;
    for (auto e : seed) {
        if (!g.has_edge(e))
            throw PreconditionError("phi2_closure: edge out of range");
        if (!in[idx(e)]) {
            in[idx(e)] = 1;
            ++have;
        }
    }
    for (int limit : {3, 4, 0}) {
        if (have == g.edge_count())
            break;
        auto all = enumerate_circuits(g, limit, budget);
        std::vector<EdgeSet> balanced;
        for (auto & c : all)
            if (is_balanced_edge_set(g, c.edges)) {
                std::sort(c.edges.begin(), c.edges.end());
                balanced.push_back(c.edges);
            }
        std::stable_sort(balanced.begin(), balanced.end(), [](const EdgeSet & a, const EdgeSet & b) {
            return a.size() != b.size() ? a.size() < b.size() : a < b;
        });
        bool progress = true;
        while (progress && have < g.edge_count()) {
            progress = false;
            for (const auto & c : balanced) {
                EdgeSet fresh;
                for (auto e : c)
                    if (!in[idx(e)])
                        fresh.push_back(e);
                if (fresh.empty() || fresh.size() > 2)
                    continue;
                for (auto e : fresh)
                    in[idx(e)] = 1;
                have += static_cast<int>(fresh.size());
                t.steps.push_back({c, fresh});
                progress = true;
                break;
            }
        }
    }
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        if (in[idx(e)])
            t.closure.push_back(e);
    t.complete = have == g.edge_count();
    return t;
}

SignedGraph split_private_pairs(const SignedGraph & g)
{
    SignedGraph cur = g;
    for (;;) {
        auto tris = triangles(cur);
        std::vector<int> count(idx(cur.edge_count()), 0);
        for (const auto & t : tris)
            for (auto e : t.edges)
                ++count[idx(e)];
        bool changed = false;
        for (const auto & t : tris) {
            for (VertexId u : t.vertices) {
                EdgeSet at;
                for (auto e : t.edges)
                    if (cur.edge(e).u == u || cur.edge(e).v == u)
                        at.push_back(e);
                if (at.size() != 2 || count[idx(at[0])] != 1 || count[idx(at[1])] != 1 || cur.degree(u) <= 2)
                    continue;
                std::vector<Edge> edges(cur.edges().begin(), cur.edges().end());
                VertexId fresh = cur.vertex_count();
                for (auto e : at) {
                    auto & ed = edges[idx(e)];
                    if (ed.u == u)
                        ed.u = fresh;
                    else
                        ed.v = fresh;
                }
                cur = SignedGraph(fresh + 1, std::move(edges));
                changed = true;
                break;
            }
            if (changed)
                break;
        }
        if (!changed)
            return cur;
    }
}

AnchorResult z3_anchor_flow(const SignedGraph & g, const Triangle & t, std::uint64_t budget)
{
    for (auto e : t.edges)
        if (!g.has_edge(e))
            throw PreconditionError("z3_anchor_flow: triangle edge out of range");
    EdgeSet te{t.edges[0], t.edges[1], t.edges[2]};
    if (!is_circuit(g, te))
        throw PreconditionError("z3_anchor_flow: T is not a triangle of g");
    if (!is_connected(g) || !is_triangularly_connected(g))
        throw PreconditionError("z3_anchor_flow: graph is not triangularly connected");
    bool t_balanced = is_balanced_edge_set(g, te);
    if (t_balanced)
        for (const auto & other : triangles(g))
            if (!other.balanced)
                throw PreconditionError("z3_anchor_flow: T must be unbalanced when g has an unbalanced triangle");

    AnchorResult r;
    r.split_graph = split_private_pairs(g);
    const auto & h = r.split_graph;
    r.trace = phi2_closure(h, te);
    std::vector<int> values(idx(h.edge_count()), 0);
    if (r.trace.complete) {
        for (auto it = r.trace.steps.rbegin(); it != r.trace.steps.rend(); ++it) {
            auto chi = balanced_circuit_flow(h, it->circuit);
            int alpha = -1;
            for (int a : {1, 2, 0}) {
                bool ok = true;
                for (auto e : it->new_edges)
                    ok = ok && mod(values[idx(e)] + a * chi.value(e), 3) != 0;
                if (ok) {
                    alpha = a;
                    break;
                }
            }
            if (alpha < 0)
                throw LemmaViolation("z3_anchor_flow: no coefficient for a closure step");
            for (auto e : it->circuit)
                values[idx(e)] = mod(values[idx(e)] + alpha * chi.value(e), 3);
        }
    }
    else {
        r.closure_stalled = true;
        if (h.edge_count() > 24)
            throw GatedError("z3_anchor_flow: closure stalled and the graph is above the 24-edge search gate");
        SearchOptions opts;
        opts.budget = budget;
        opts.domains.assign(idx(h.edge_count()), {1, 2});
        for (auto e : te)
            opts.domains[idx(e)] = {1, 2, 0};
        auto res = search_mod_knzf(h, 3, opts);
        if (res.status == SearchStatus::gated)
            throw GatedError("z3_anchor_flow: search budget exhausted");
        if (res.status == SearchStatus::exhausted)
            throw LemmaViolation("z3_anchor_flow: no Z3-flow with zeros inside T");
        r.used_search = true;
        values = res.witness->values;
    }
    r.flow = Flow{default_orientation(g), values, 3, FlowKind::modular};
    auto verdict = verify_flow(g, r.flow);
    if (!verdict.valid())
        throw LemmaViolation("z3_anchor_flow: extracted values fail conservation");
    for (auto e : zero_set(r.flow))
        if (!t.contains(e))
            throw LemmaViolation("z3_anchor_flow: zero outside T");
    return r;
}

std::string to_string(ConstructRoute r)
{
    switch (r) {
    case ConstructRoute::exception: return "exception";
    case ConstructRoute::direct: return "direct";
    case ConstructRoute::circuits: return "circuits";
    case ConstructRoute::repaired: return "repaired";
    case ConstructRoute::search: return "search";
    }
    return "?";
}

bool is_w5_star(const SignedGraph & g)
{
    if (g.vertex_count() != 6 || g.edge_count() != 10)
        return false;
    static const auto pattern = pattern_from_signed("W5star", w5_star());
    return !match_configuration(g, pattern).empty();
}

namespace {

bool covers(const std::vector<EdgeSet> & cs, const EdgeSet & zeros)
{
    for (auto e : zeros) {
        bool hit = false;
        for (const auto & c : cs)
            hit = hit || std::find(c.begin(), c.end(), e) != c.end();
        if (!hit)
            return false;
    }
    return true;
}

int shared_edges(const EdgeSet & a, const EdgeSet & b)
{
    int s = 0;
    for (auto e : a)
        s += std::find(b.begin(), b.end(), e) != b.end() ? 1 : 0;
    return s;
}

/// Finish a Z3-flow whose zeros fit one of the circuit lemmas.
std::optional<Flow> finish(const SignedGraph & g, const Flow & phi, const std::vector<EdgeSet> & short_balanced, bool & direct)
{
    auto zeros = zero_set(phi);
    direct = zeros.empty();
    if (zeros.empty()) {
        try {
            auto f = mod3_to_int3_small_zeroset(g, phi);
            f.k = 4;
            return f;
        }
        catch (const Error &) {
            return std::nullopt;
        }
    }
    if (zeros.size() > 8)
        return std::nullopt;
    auto attempt = [&](std::vector<EdgeSet> cs) -> std::optional<Flow> {
        try {
            return four_nzf_from_z3_circuits(g, phi, std::move(cs));
        }
        catch (const Error &) {
            return std::nullopt;
        }
    };
    for (const auto & c : short_balanced)
        if (covers({c}, zeros))
            if (auto f = attempt({c}))
                return f;
    for (std::size_t i = 0; i < short_balanced.size(); ++i)
        for (std::size_t j = i + 1; j < short_balanced.size(); ++j) {
            const auto & a = short_balanced[i];
            const auto & b = short_balanced[j];
            int s = shared_edges(a, b);
            if (s > 1 || (s == 1 && a.size() != 3 && b.size() != 3))
                continue;
            if (!covers({a, b}, zeros))
                continue;
            if (auto f = attempt({a, b}))
                return f;
        }
    return std::nullopt;
}

}  // namespace

ConstructResult construct_4nzf(const SignedGraph & g, std::uint64_t budget)
{
    if (!is_connected(g) || !is_triangularly_connected(g))
        throw PreconditionError("construct_4nzf: graph is not triangularly connected");
    if (!is_flow_admissible(g).admissible)
        throw PreconditionError("construct_4nzf: graph is not flow-admissible");
    ConstructResult r;
    if (is_w5_star(g)) {
        r.route = ConstructRoute::exception;
        r.is_exception = true;
        r.detail = "negative-rim 5-wheel: 5-NZF but no 4-NZF";
        return r;
    }

    auto tris = triangles(g);
    if (!tris.empty()) {
        const Triangle * anchor = &tris[0];
        for (const auto & t : tris)
            if (!t.balanced) {
                anchor = &t;
                break;
            }
        try {
            auto a = z3_anchor_flow(g, *anchor, budget);
            std::vector<EdgeSet> short_balanced;
            for (auto & c : enumerate_circuits(g, 4))
                if (c.edges.size() >= 2 && is_balanced_edge_set(g, c.edges)) {
                    std::sort(c.edges.begin(), c.edges.end());
                    short_balanced.push_back(c.edges);
                }
            bool direct = false;
            if (auto f = finish(g, a.flow, short_balanced, direct)) {
                r.flow = std::move(f);
                r.route = direct ? ConstructRoute::direct : ConstructRoute::circuits;
                r.detail = a.closure_stalled ? "closure stalled; anchor from search" : "";
                return r;
            }

            // perturb by signed-circuit flows through the zero edges
            std::vector<Flow> moves;
            std::set<EdgeSet> seen;
            for (auto z : zero_set(a.flow)) {
                for (const auto & c : short_balanced)
                    if (std::find(c.begin(), c.end(), z) != c.end() && seen.insert(c).second)
                        moves.push_back(reduce_mod(balanced_circuit_flow(g, c), 3));
                if (auto sc = find_signed_circuit_through(g, z)) {
                    auto es = sc->edges();
                    std::sort(es.begin(), es.end());
                    if (seen.insert(es).second)
                        moves.push_back(reduce_mod(circuit_flow(g, *sc), 3));
                }
            }
            std::vector<Flow> frontier{a.flow};
            for (int depth = 0; depth < 2; ++depth) {
                std::vector<Flow> next;
                for (const auto & phi : frontier)
                    for (const auto & mv : moves)
                        for (int beta : {1, 2}) {
                            auto phi1 = combine(g, phi, mv, 1, beta);
                            if (auto f = finish(g, phi1, short_balanced, direct)) {
                                r.flow = std::move(f);
                                r.route = ConstructRoute::repaired;
                                return r;
                            }
                            next.push_back(std::move(phi1));
                        }
                frontier = std::move(next);
            }
        }
        catch (const GatedError &) {
        }
        catch (const LemmaViolation & ex) {
            r.detail = ex.what();
        }
    }

    auto res = search_int_knzf(g, 4, budget);
    if (res.status == SearchStatus::gated)
        throw GatedError("construct_4nzf: fallback search ran out of budget");
    if (res.status == SearchStatus::exhausted)
        throw LemmaViolation("construct_4nzf: no 4-NZF on an admissible triangularly connected graph "
                             "that is not the negative-rim 5-wheel");
    r.flow = std::move(res.witness);
    r.route = ConstructRoute::search;
    return r;
}

namespace {

bool connected_edge_set(const SignedGraph & g, const EdgeSet & edges)
{
    if (edges.empty())
        return false;
    std::vector<int> parent(idx(g.vertex_count()));
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[idx(x)] == x ? x : parent[idx(x)] = find(parent[idx(x)]); };
    for (auto e : edges)
        parent[idx(find(g.edge(e).u))] = find(g.edge(e).v);
    int root = find(g.edge(edges[0]).u);
    for (auto e : edges)
        if (find(g.edge(e).u) != root)
            return false;
    return true;
}

}  // namespace

DecompositionOutcome eulerian_3nzf_decomposition(const SignedGraph & g, bool force)
{
    if (!all_degrees_even(g))
        throw PreconditionError("eulerian_3nzf_decomposition: graph is not eulerian");
    if (g.negative_count() % 2 == 0)
        throw PreconditionError("eulerian_3nzf_decomposition: number of negative edges must be odd");
    if (!is_flow_admissible(g).admissible)
        throw PreconditionError("eulerian_3nzf_decomposition: graph is not flow-admissible");
    if (g.edge_count() > eulerian_decomposition_gate && !force)
        throw GatedError("eulerian_3nzf_decomposition: more than 20 edges (use force)");

    const int m = g.edge_count();
    const int n = g.vertex_count();
    auto order = closing_order(g);
    std::vector<int> last_pos(idx(n), -1);
    for (int p = 0; p < m; ++p) {
        last_pos[idx(g.edge(order[idx(p)]).u)] = p;
        last_pos[idx(g.edge(order[idx(p)]).v)] = p;
    }
    std::vector<std::vector<VertexId>> closes(idx(m));
    for (VertexId v = 0; v < n; ++v)
        if (last_pos[idx(v)] >= 0)
            closes[idx(last_pos[idx(v)])].push_back(v);

    DecompositionOutcome out;
    std::vector<int> colour(idx(m), -1);
    std::vector<std::array<int, 3>> parity(idx(n), {0, 0, 0});

    auto leaf = [&]() -> std::optional<EulerianDecomposition> {
        EulerianDecomposition d;
        for (int p = 0; p < m; ++p)
            d.classes[idx(colour[idx(p)])].push_back(order[idx(p)]);
        for (auto & c : d.classes) {
            std::sort(c.begin(), c.end());
            int neg = 0;
            for (auto e : c)
                neg += g.is_negative(e) ? 1 : 0;
            if (neg % 2 == 0 || !connected_edge_set(g, c))
                return std::nullopt;
        }
        std::vector<int> seen(idx(n), 0);
        for (int c = 0; c < 3; ++c)
            for (auto e : d.classes[idx(c)]) {
                seen[idx(g.edge(e).u)] |= 1 << c;
                seen[idx(g.edge(e).v)] |= 1 << c;
            }
        for (VertexId v = 0; v < n; ++v)
            if (seen[idx(v)] == 7) {
                d.common_vertex = v;
                return d;
            }
        return std::nullopt;
    };

    std::function<std::optional<EulerianDecomposition>(int, int)> dfs = [&](int p, int used) -> std::optional<EulerianDecomposition> {
        if (p == m)
            return used == 3 ? leaf() : std::nullopt;
        // every class must still be able to appear
        if (used + (m - p) < 3)
            return std::nullopt;
        EdgeId e = order[idx(p)];
        const auto & ed = g.edge(e);
        for (int c = 0; c < std::min(3, used + 1); ++c) {
            ++out.nodes_explored;
            colour[idx(p)] = c;
            if (!ed.is_loop()) {
                parity[idx(ed.u)][idx(c)] ^= 1;
                parity[idx(ed.v)][idx(c)] ^= 1;
            }
            bool ok = true;
            for (auto v : closes[idx(p)])
                ok = ok && parity[idx(v)][0] == 0 && parity[idx(v)][1] == 0 && parity[idx(v)][2] == 0;
            std::optional<EulerianDecomposition> got;
            if (ok)
                got = dfs(p + 1, std::max(used, c + 1));
            if (!ed.is_loop()) {
                parity[idx(ed.u)][idx(c)] ^= 1;
                parity[idx(ed.v)][idx(c)] ^= 1;
            }
            if (got)
                return got;
        }
        colour[idx(p)] = -1;
        return std::nullopt;
    };
    out.decomposition = dfs(0, 0);
    return out;
}

Flow flow_from_decomposition(const SignedGraph & g, const EulerianDecomposition & d)
{
    auto tau = default_orientation(g);
    std::array<std::vector<int>, 3> parts;
    std::array<long long, 3> s{};
    for (int i = 0; i < 3; ++i) {
        parts[idx(i)] = closed_trail_values(g, d.classes[idx(i)], d.common_vertex);
        for (auto e : d.classes[idx(i)])
            s[idx(i)] += static_cast<long long>(incidence_coefficient(g, tau, e, d.common_vertex)) * parts[idx(i)][idx(e)];
        if (std::llabs(s[idx(i)]) != 2)
            throw PreconditionError("flow_from_decomposition: class " + std::to_string(i) + " is not an odd eulerian subgraph");
    }
    std::array<long long, 3> w{1, s[0] / s[1], -2 * s[0] / s[2]};
    Flow f{tau, std::vector<int>(idx(g.edge_count()), 0), 3, FlowKind::integer};
    for (int i = 0; i < 3; ++i)
        for (auto e : d.classes[idx(i)])
            f.values[idx(e)] = static_cast<int>(w[idx(i)] * parts[idx(i)][idx(e)]);
    if (!verify_flow(g, f).valid_nowhere_zero())
        throw LemmaViolation("flow_from_decomposition: assembled values are not a 3-NZF");
    return f;
}

}  // namespace triflow
