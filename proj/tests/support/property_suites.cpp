#include "support/property_suites.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "support/oracles.hpp"
#include "triflow/flows.hpp"
#include "triflow/solver.hpp"

namespace suites {

using namespace triflow;
using oracle::ix;

namespace {

int pick(std::mt19937_64 & rng, int lo, int hi)
{
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

bool coin(std::mt19937_64 & rng, double p) { return std::bernoulli_distribution(p)(rng); }

SignedGraph random_graph(std::mt19937_64 & rng, int n, double p, double neg, double parallel)
{
    for (;;) {
        std::vector<Edge> es;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (coin(rng, p)) {
                    es.push_back({u, v, coin(rng, neg) ? Sign::negative : Sign::positive});
                    if (coin(rng, parallel))
                        es.push_back({u, v, coin(rng, 0.5) ? Sign::negative : Sign::positive});
                }
        std::shuffle(es.begin(), es.end(), rng);
        SignedGraph g(n, es);
        if (g.edge_count() > 0 && is_connected(g))
            return g;
    }
}

Flow random_z3_flow(const SignedGraph & g, std::mt19937_64 & rng)
{
    auto phi = zero_flow(g, 3, FlowKind::modular);
    int terms = pick(rng, 1, 4);
    for (int i = 0; i < terms; ++i) {
        auto c = find_signed_circuit_through(g, pick(rng, 0, g.edge_count() - 1));
        if (!c)
            continue;
        phi = combine(g, phi, reduce_mod(circuit_flow(g, *c), 3), 1, pick(rng, 0, 2));
    }
    return phi;
}

// phi - beta * chi with beta chosen to vanish on e
Flow zero_out(const SignedGraph & g, const Flow & phi, const Flow & chi, EdgeId e)
{
    int beta = mod(phi.value(e) * chi.value(e), 3);
    return combine(g, phi, chi, 1, -beta);
}

std::vector<EdgeSet> balanced_circuits(const SignedGraph & g, int max_len, std::size_t min_size)
{
    std::vector<EdgeSet> out;
    for (const auto & c : enumerate_circuits(g, max_len))
        if (c.edges.size() >= min_size && is_balanced_edge_set(g, c.edges))
            out.push_back(c.edges);
    return out;
}

EdgeSet support_of(const Flow & f) { return support_report(f).support; }

struct Recorder {
    SuiteResult & r;
    void fail(const std::string & why)
    {
        ++r.failures;
        if (r.first_failure.empty())
            r.first_failure = "case " + std::to_string(r.cases) + ": " + why;
    }
};

}  // namespace

SuiteResult extend_over_circuit_suite(std::uint64_t seed, int cases)
{
    SuiteResult r{"extend_over_circuit", 0, 0, {}};
    Recorder rec{r};
    std::mt19937_64 rng(seed);
    for (long attempts = 0; r.cases < cases && attempts < 200L * cases; ++attempts) {
        auto g = random_graph(rng, pick(rng, 4, 7), 0.55, 0.3, 0.05);
        auto cs = balanced_circuits(g, 6, 2);
        if (cs.empty())
            continue;
        const auto & c = cs[ix(pick(rng, 0, static_cast<int>(cs.size()) - 1))];
        int k = pick(rng, 3, 6);
        auto f1 = zero_flow(g, k);
        for (int j = pick(rng, 0, 2); j > 0; --j) {
            const auto & d = cs[ix(pick(rng, 0, static_cast<int>(cs.size()) - 1))];
            int a = pick(rng, 1, k / 2) * (coin(rng, 0.5) ? 1 : -1);
            f1 = combine(g, f1, balanced_circuit_flow(g, d), 1, a);
        }
        f1.k = k;
        bool ok = true;
        int on_c = 0;
        for (auto x : f1.values)
            ok = ok && std::abs(x) <= k - 1;
        for (auto e : c) {
            on_c += f1.value(e) != 0;
            ok = ok && 2 * std::abs(f1.value(e)) <= k;
        }
        if (!ok || on_c > k - 2)
            continue;

        ++r.cases;
        try {
            auto chi = balanced_circuit_flow(g, c);
            if (coin(rng, 0.5))
                chi = combine(g, zero_flow(g, 2), chi, 0, -1);
            auto res = extend_over_circuit(g, f1, c, chi);
            auto f2 = to_default(g, res.flow);
            if (!verify_flow(g, res.flow).valid())
                rec.fail("result is not a flow");
            int top = 0;
            for (auto x : f2.values)
                top = std::max(top, std::abs(x));
            if (top > k - 1)
                rec.fail("value " + std::to_string(top) + " exceeds k - 1 = " + std::to_string(k - 1));
            EdgeSet want = support_of(f1);
            want.insert(want.end(), c.begin(), c.end());
            std::sort(want.begin(), want.end());
            want.erase(std::unique(want.begin(), want.end()), want.end());
            if (support_of(f2) != want)
                rec.fail("support is not supp(f1) + E(C)");
            for (EdgeId e = 0; e < g.edge_count(); ++e)
                if (f2.value(e) != f1.value(e) - res.alpha * chi.value(e))
                    rec.fail("result is not f1 - alpha * g");
        }
        catch (const std::exception & ex) {
            rec.fail(ex.what());
        }
    }
    return r;
}

SuiteResult adjust_short_circuit_suite(std::uint64_t seed, int cases)
{
    SuiteResult r{"adjust_short_circuit", 0, 0, {}};
    Recorder rec{r};
    std::mt19937_64 rng(seed);
    for (long attempts = 0; r.cases < cases && attempts < 200L * cases; ++attempts) {
        auto g = random_graph(rng, pick(rng, 3, 7), 0.6, 0.3, 0.15);
        auto cs = balanced_circuits(g, 4, 2);
        if (cs.empty())
            continue;
        const auto & c = cs[ix(pick(rng, 0, static_cast<int>(cs.size()) - 1))];
        auto chi = reduce_mod(balanced_circuit_flow(g, c), 3);
        auto phi = random_z3_flow(g, rng);
        if (coin(rng, 0.6))
            phi = zero_out(g, phi, chi, c[ix(pick(rng, 0, static_cast<int>(c.size()) - 1))]);

        ++r.cases;
        try {
            auto res = adjust_short_circuit(g, phi, c);
            auto out = to_default(g, res.flow);
            if (!verify_flow(g, res.flow).valid())
                rec.fail("result is not a Z3-flow");
            int zeros = 0;
            for (auto e : c)
                zeros += out.value(e) == 0;
            int len = static_cast<int>(c.size());
            if (zeros != 0 && zeros != len - 2)
                rec.fail(std::to_string(zeros) + " zeros on a circuit of length " + std::to_string(len));
            for (EdgeId e = 0; e < g.edge_count(); ++e) {
                if (out.value(e) != mod(phi.value(e) - res.alpha * chi.value(e), 3))
                    rec.fail("result is not phi - alpha * chi");
                if (std::find(c.begin(), c.end(), e) == c.end() && out.value(e) != phi.value(e))
                    rec.fail("value changed off the circuit");
            }
        }
        catch (const std::exception & ex) {
            rec.fail(ex.what());
        }
    }
    return r;
}

SuiteResult shift_zeros_suite(std::uint64_t seed, int cases)
{
    SuiteResult r{"shift_zeros", 0, 0, {}};
    Recorder rec{r};
    std::mt19937_64 rng(seed);
    for (long attempts = 0; r.cases < cases && attempts < 200L * cases; ++attempts) {
        auto g = random_graph(rng, pick(rng, 4, 7), 0.7, 0.15, 0.05);
        std::vector<Triangle> bal;
        for (const auto & t : triangles(g))
            if (t.balanced)
                bal.push_back(t);
        if (bal.empty())
            continue;
        TrianglePath h{bal[ix(pick(rng, 0, static_cast<int>(bal.size()) - 1))]};
        for (int want = pick(rng, 1, 5); static_cast<int>(h.size()) < want;) {
            std::vector<Triangle> next;
            for (const auto & t : bal) {
                auto cand = h;
                cand.push_back(t);
                if (is_valid_triangle_path(cand))
                    next.push_back(t);
            }
            if (next.empty())
                break;
            h.push_back(next[ix(pick(rng, 0, static_cast<int>(next.size()) - 1))]);
        }
        std::set<EdgeId> on;
        for (const auto & t : h)
            on.insert(t.edges.begin(), t.edges.end());
        auto phi = random_z3_flow(g, rng);
        for (const auto & t : h)
            if (coin(rng, 0.5)) {
                auto chi = reduce_mod(balanced_circuit_flow(g, {t.edges.begin(), t.edges.end()}), 3);
                phi = zero_out(g, phi, chi, t.edges[ix(pick(rng, 0, 2))]);
            }
        std::vector<EdgeId> path_edges(on.begin(), on.end());
        EdgeId e0 = path_edges[ix(pick(rng, 0, static_cast<int>(path_edges.size()) - 1))];

        ++r.cases;
        try {
            auto out = to_default(g, shift_zeros(g, phi, h, e0));
            if (!verify_flow(g, out).valid())
                rec.fail("result is not a Z3-flow");
            for (EdgeId e = 0; e < g.edge_count(); ++e) {
                if (!on.count(e) && out.value(e) != phi.value(e))
                    rec.fail("value changed off the path at edge " + std::to_string(e));
                if (on.count(e) && e != e0 && out.value(e) == 0)
                    rec.fail("zero left on the path at edge " + std::to_string(e));
            }
        }
        catch (const std::exception & ex) {
            rec.fail(ex.what());
        }
    }
    return r;
}

SuiteResult long_barbell_suite(std::uint64_t seed, int cases)
{
    SuiteResult r{"long_barbell", 0, 0, {}};
    Recorder rec{r};
    std::mt19937_64 rng(seed);
    while (r.cases < cases) {
        // role: 1 circuit1, 2 circuit2, 3 path, 0 extra
        std::vector<std::pair<Edge, int>> es;
        int n = 0;
        auto cycle = [&](int len, int role) {
            int base = n;
            n += len;
            std::vector<Sign> signs(ix(len), Sign::positive);
            for (auto & s : signs)
                s = coin(rng, 0.5) ? Sign::negative : Sign::positive;
            if (std::count(signs.begin(), signs.end(), Sign::negative) % 2 == 0)
                signs[0] = flipped(signs[0]);
            for (int i = 0; i < len; ++i)
                es.push_back({{base + i, base + (i + 1) % len, signs[ix(i)]}, role});
            return base;
        };
        int a = pick(rng, 1, 4), b = pick(rng, 1, 4), p = pick(rng, 1, 4);
        int c1 = cycle(a, 1);
        int c2 = cycle(b, 2);
        VertexId from = c1 + pick(rng, 0, a - 1), to = c2 + pick(rng, 0, b - 1);
        VertexId cur = from;
        for (int i = 0; i < p; ++i) {
            VertexId nxt = i + 1 == p ? to : n++;
            es.push_back({{cur, nxt, coin(rng, 0.5) ? Sign::negative : Sign::positive}, 3});
            cur = nxt;
        }
        for (int extra = pick(rng, 0, 3); extra > 0; --extra)
            es.push_back({{pick(rng, 0, n - 1), pick(rng, 0, n - 1), coin(rng, 0.5) ? Sign::negative : Sign::positive}, 0});
        std::shuffle(es.begin(), es.end(), rng);
        std::vector<int> perm(ix(n));
        for (int i = 0; i < n; ++i)
            perm[ix(i)] = i;
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<Edge> edges;
        SignedCircuit c;
        c.kind = CircuitKind::long_barbell;
        for (std::size_t i = 0; i < es.size(); ++i) {
            auto e = es[i].first;
            edges.push_back({perm[ix(e.u)], perm[ix(e.v)], e.sign});
            auto id = static_cast<EdgeId>(i);
            if (es[i].second == 1)
                c.circuit1.push_back(id);
            if (es[i].second == 2)
                c.circuit2.push_back(id);
        }
        // path in order from circuit1 to circuit2
        VertexId at = perm[ix(from)];
        std::vector<char> used(es.size(), 0);
        for (int i = 0; i < p; ++i)
            for (std::size_t j = 0; j < es.size(); ++j)
                if (es[j].second == 3 && !used[j] && (edges[j].u == at || edges[j].v == at)) {
                    used[j] = 1;
                    c.path.push_back(static_cast<EdgeId>(j));
                    at = edges[j].other(at);
                    break;
                }
        SignedGraph g = oracle::random_switch(SignedGraph(n, edges), rng);

        ++r.cases;
        try {
            validate_signed_circuit(g, c);
            auto f = circuit_flow(g, c);
            if (!verify_flow(g, f).valid())
                rec.fail("barbell values are not a flow");
            for (EdgeId e = 0; e < g.edge_count(); ++e) {
                int role = es[ix(e)].second;
                int want = role == 3 ? 2 : role == 0 ? 0 : 1;
                if (std::abs(f.value(e)) != want)
                    rec.fail("edge " + std::to_string(e) + " has |value| " + std::to_string(std::abs(f.value(e)))
                        + ", expected " + std::to_string(want));
            }
        }
        catch (const std::exception & ex) {
            rec.fail(ex.what());
        }
    }
    return r;
}

SuiteResult mod3_to_int3_suite(std::uint64_t seed, int cases)
{
    SuiteResult r{"mod3_to_int3", 0, 0, {}};
    Recorder rec{r};
    std::mt19937_64 rng(seed);
    for (long attempts = 0; r.cases < cases && attempts < 200L * cases; ++attempts) {
        auto g = random_graph(rng, pick(rng, 4, 8), 0.65, 0.3, 0.0);
        if (g.min_degree() < 3 || !is_triangularly_connected(g))
            continue;
        int m = g.edge_count();
        SearchOptions opts;
        opts.budget = 2'000'000;
        opts.domains.assign(ix(m), {1, 2});
        for (int z = pick(rng, 0, 4); z > 0; --z)
            opts.domains[ix(pick(rng, 0, m - 1))] = {0, 1, 2};
        auto s = search_mod_knzf(g, 3, opts);
        if (!s.witness)
            continue;
        const auto & phi = *s.witness;
        auto zs = zero_set(phi);
        std::vector<int> deg(ix(g.vertex_count()));
        for (VertexId v = 0; v < g.vertex_count(); ++v)
            deg[ix(v)] = g.degree(v);
        for (auto e : zs) {
            --deg[ix(g.edge(e).u)];
            --deg[ix(g.edge(e).v)];
        }
        if (std::any_of(deg.begin(), deg.end(), [](int d) { return d == 1; }))
            continue;

        ++r.cases;
        try {
            auto f = mod3_to_int3_small_zeroset(g, phi);
            if (f.kind != FlowKind::integer || f.k != 3)
                rec.fail("result is not an integer 3-flow");
            if (!verify_flow(g, f).valid())
                rec.fail("result is not a flow");
            if (!oracle::conserves(g, to_default(g, f).values))
                rec.fail("oracle conservation check failed");
            if (support_of(f) != support_of(phi))
                rec.fail("support changed");
        }
        catch (const std::exception & ex) {
            rec.fail(ex.what());
        }
    }
    return r;
}

std::vector<SuiteResult> run_all(int cases)
{
    return {
        extend_over_circuit_suite(0x5eed0001, cases),
        adjust_short_circuit_suite(0x5eed0002, cases),
        shift_zeros_suite(0x5eed0003, cases),
        long_barbell_suite(0x5eed0004, cases),
        mod3_to_int3_suite(0x5eed0005, cases),
    };
}

}  // namespace suites
