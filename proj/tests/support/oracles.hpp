#pragma once

// Brute-force references. Deliberately naive: no shared code paths with the
// library beyond the graph container.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "triflow/graph.hpp"

namespace oracle {

using triflow::Edge;
using triflow::EdgeId;
using triflow::EdgeSet;
using triflow::Sign;
using triflow::SignedGraph;
using triflow::VertexId;

inline std::size_t ix(int i) { return static_cast<std::size_t>(i); }

inline SignedGraph make(int n, std::vector<std::tuple<int, int, char>> es)
{
    std::vector<Edge> edges;
    for (auto [u, v, s] : es)
        edges.push_back({u, v, s == '-' ? Sign::negative : Sign::positive});
    return SignedGraph(n, std::move(edges));
}

inline int negatives_after_switch(const SignedGraph & g, std::uint32_t mask)
{
    int neg = 0;
    for (const auto & e : g.edges()) {
        bool flip = !e.is_loop() && (((mask >> e.u) ^ (mask >> e.v)) & 1U);
        neg += (e.sign == Sign::negative) != flip;
    }
    return neg;
}

/// min over all 2^n switchings of the negative count is 0.
inline bool balanced(const SignedGraph & g)
{
    for (std::uint32_t mask = 0; mask < (1U << g.vertex_count()); ++mask)
        if (negatives_after_switch(g, mask) == 0)
            return true;
    return false;
}

inline bool equivalent(const SignedGraph & a, const SignedGraph & b)
{
    for (std::uint32_t mask = 0; mask < (1U << a.vertex_count()); ++mask) {
        bool same = true;
        for (EdgeId e = 0; e < a.edge_count() && same; ++e) {
            const auto & x = a.edge(e);
            bool flip = !x.is_loop() && (((mask >> x.u) ^ (mask >> x.v)) & 1U);
            same = (x.sign == Sign::negative) != flip == (b.edge(e).sign == Sign::negative);
        }
        if (same)
            return true;
    }
    return false;
}

inline bool connected_on(const SignedGraph & g, const std::vector<char> & alive_edge, bool all_vertices)
{
    int n = g.vertex_count();
    std::vector<int> p(ix(n));
    std::iota(p.begin(), p.end(), 0);
    std::function<int(int)> f = [&](int x) { return p[ix(x)] == x ? x : p[ix(x)] = f(p[ix(x)]); };
    std::vector<char> touched(ix(n), 0);
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        if (alive_edge[ix(e)]) {
            p[ix(f(g.edge(e).u))] = f(g.edge(e).v);
            touched[ix(g.edge(e).u)] = touched[ix(g.edge(e).v)] = 1;
        }
    int root = -1;
    for (int v = 0; v < n; ++v) {
        if (!all_vertices && !touched[ix(v)])
            continue;
        if (root < 0)
            root = f(v);
        else if (f(v) != root)
            return false;
    }
    return true;
}

inline EdgeSet bridges(const SignedGraph & g)
{
    EdgeSet out;
    std::vector<char> alive(ix(g.edge_count()), 1);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        alive[ix(e)] = 0;
        // e is a bridge iff its ends fall apart
        int n = g.vertex_count();
        std::vector<int> p(ix(n));
        std::iota(p.begin(), p.end(), 0);
        std::function<int(int)> f = [&](int x) { return p[ix(x)] == x ? x : p[ix(x)] = f(p[ix(x)]); };
        for (EdgeId d = 0; d < g.edge_count(); ++d)
            if (alive[ix(d)])
                p[ix(f(g.edge(d).u))] = f(g.edge(d).v);
        if (f(g.edge(e).u) != f(g.edge(e).v))
            out.push_back(e);
        alive[ix(e)] = 1;
    }
    return out;
}

/// Triples of edges forming a triangle on three distinct vertices.
inline std::set<std::vector<EdgeId>> triangles(const SignedGraph & g)
{
    std::set<std::vector<EdgeId>> out;
    int m = g.edge_count();
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b)
            for (int c = b + 1; c < m; ++c) {
                std::map<VertexId, int> deg;
                bool loop = false;
                for (int e : {a, b, c}) {
                    loop = loop || g.edge(e).is_loop();
                    ++deg[g.edge(e).u];
                    ++deg[g.edge(e).v];
                }
                if (loop || deg.size() != 3)
                    continue;
                bool ok = true;
                for (auto [v, d] : deg)
                    ok = ok && d == 2;
                if (ok)
                    out.insert({a, b, c});
            }
    return out;
}

inline std::vector<int> degrees_in(const SignedGraph & g, const std::vector<EdgeId> & s)
{
    std::vector<int> d(ix(g.vertex_count()), 0);
    for (auto e : s) {
        ++d[ix(g.edge(e).u)];
        ++d[ix(g.edge(e).v)];
    }
    return d;
}

inline int negatives_in(const SignedGraph & g, const std::vector<EdgeId> & s)
{
    int n = 0;
    for (auto e : s)
        n += g.is_negative(e);
    return n;
}

/// Is the edge set a signed circuit (balanced circuit, short or long barbell)?
inline bool is_signed_circuit(const SignedGraph & g, const std::vector<EdgeId> & s)
{
    if (s.empty())
        return false;
    std::vector<char> alive(ix(g.edge_count()), 0);
    for (auto e : s)
        alive[ix(e)] = 1;
    if (!connected_on(g, alive, false))
        return false;
    auto d = degrees_in(g, s);
    int verts = 0, deg3 = 0, deg4 = 0, other = 0;
    for (int x : d) {
        if (x == 0)
            continue;
        ++verts;
        deg3 += x == 3;
        deg4 += x == 4;
        other += x != 2 && x != 3 && x != 4;
    }
    if (other)
        return false;
    int cyclomatic = static_cast<int>(s.size()) - verts + 1;
    if (cyclomatic == 1)
        return deg3 == 0 && deg4 == 0 && negatives_in(g, s) % 2 == 0;
    if (cyclomatic != 2)
        return false;
    // two cycles: split off the bridges (long barbell) or at the degree-4 vertex
    std::vector<EdgeId> cyc_edges;
    if (deg4 == 1 && deg3 == 0) {
        VertexId hub = static_cast<VertexId>(std::find(d.begin(), d.end(), 4) - d.begin());
        // walk each cycle from the hub
        std::set<EdgeId> left(s.begin(), s.end());
        std::vector<std::vector<EdgeId>> cycles;
        while (!left.empty()) {
            EdgeId start = -1;
            for (auto e : left)
                if (g.edge(e).u == hub || g.edge(e).v == hub) {
                    start = e;
                    break;
                }
            if (start < 0)
                return false;
            std::vector<EdgeId> cyc{start};
            left.erase(start);
            VertexId at = g.edge(start).other(hub);
            if (g.edge(start).is_loop())
                at = hub;
            while (at != hub) {
                EdgeId nx = -1;
                for (auto e : left)
                    if (g.edge(e).u == at || g.edge(e).v == at) {
                        nx = e;
                        break;
                    }
                if (nx < 0)
                    return false;
                left.erase(nx);
                cyc.push_back(nx);
                at = g.edge(nx).other(at);
            }
            cycles.push_back(cyc);
        }
        return cycles.size() == 2 && negatives_in(g, cycles[0]) % 2 == 1 && negatives_in(g, cycles[1]) % 2 == 1;
    }
    if (deg3 == 2 && deg4 == 0) {
        SignedGraph sub(g.vertex_count(), [&] {
            std::vector<Edge> es;
            for (auto e : s)
                es.push_back(g.edge(e));
            return es;
        }());
        auto br = oracle::bridges(sub);
        std::vector<char> nb(ix(sub.edge_count()), 1);
        for (auto b : br)
            nb[ix(b)] = 0;
        if (br.empty())
            return false;  // theta graph
        // remaining edges form the two cycles; each must be odd
        std::vector<int> p(ix(g.vertex_count()));
        std::iota(p.begin(), p.end(), 0);
        std::function<int(int)> f = [&](int x) { return p[ix(x)] == x ? x : p[ix(x)] = f(p[ix(x)]); };
        for (EdgeId e = 0; e < sub.edge_count(); ++e)
            if (nb[ix(e)])
                p[ix(f(sub.edge(e).u))] = f(sub.edge(e).v);
        std::map<int, int> neg;
        for (EdgeId e = 0; e < sub.edge_count(); ++e)
            if (nb[ix(e)])
                neg[f(sub.edge(e).u)] += sub.is_negative(e);
        if (neg.size() != 2)
            return false;
        for (auto [r, c] : neg)
            if (c % 2 == 0)
                return false;
        return true;
    }
    return false;
}

/// Some signed circuit through e, by subset enumeration (m <= 16).
inline bool signed_circuit_through(const SignedGraph & g, EdgeId e)
{
    int m = g.edge_count();
    for (std::uint32_t mask = 0; mask < (1U << m); ++mask) {
        if (!((mask >> e) & 1U))
            continue;
        std::vector<EdgeId> s;
        for (int i = 0; i < m; ++i)
            if ((mask >> i) & 1U)
                s.push_back(i);
        if (is_signed_circuit(g, s))
            return true;
    }
    return false;
}

/// Default-orientation coefficient, computed from signs directly.
inline int coef(const SignedGraph & g, EdgeId e, VertexId v)
{
    const auto & x = g.edge(e);
    int c = 0;
    if (x.u == v)
        c += 1;
    if (x.v == v)
        c += x.sign == Sign::negative ? 1 : -1;
    return c;
}

/// Plain backtracking over edge ids in order; vertex sums checked once all
/// incident edges are set. Values in {+-1..+-(k-1)}, or residues 1..k-1.
inline bool has_knzf(const SignedGraph & g, int k, bool modular)
{
    int m = g.edge_count(), n = g.vertex_count();
    std::vector<int> last(ix(n), -1);
    for (EdgeId e = 0; e < m; ++e) {
        last[ix(g.edge(e).u)] = std::max(last[ix(g.edge(e).u)], e);
        last[ix(g.edge(e).v)] = std::max(last[ix(g.edge(e).v)], e);
    }
    std::vector<long long> sum(ix(n), 0);
    std::vector<int> vals;
    for (int x = 1; x < k; ++x) {
        vals.push_back(x);
        if (!modular)
            vals.push_back(-x);
    }
    std::function<bool(int)> rec = [&](int e) {
        if (e == m)
            return true;
        const auto & x = g.edge(e);
        for (int val : vals) {
            sum[ix(x.u)] += coef(g, e, x.u) * val;
            if (x.v != x.u)
                sum[ix(x.v)] += coef(g, e, x.v) * val;
            bool ok = true;
            for (VertexId w : {x.u, x.v})
                if (last[ix(w)] == e)
                    ok = ok && (modular ? sum[ix(w)] % k == 0 : sum[ix(w)] == 0);
            if (ok && rec(e + 1))
                return true;
            sum[ix(x.u)] -= coef(g, e, x.u) * val;
            if (x.v != x.u)
                sum[ix(x.v)] -= coef(g, e, x.v) * val;
        }
        return false;
    };
    return rec(0);
}

/// Conservation of default-orientation values, recomputed here.
inline bool conserves(const SignedGraph & g, const std::vector<int> & values, int modulus = 0)
{
    std::vector<long long> sum(ix(g.vertex_count()), 0);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const auto & x = g.edge(e);
        sum[ix(x.u)] += coef(g, e, x.u) * values[ix(e)];
        if (x.v != x.u)
            sum[ix(x.v)] += coef(g, e, x.v) * values[ix(e)];
    }
    for (auto s : sum)
        if (modulus ? s % modulus != 0 : s != 0)
            return false;
    return true;
}

inline SignedGraph random_switch(const SignedGraph & g, std::mt19937_64 & rng)
{
    std::vector<VertexId> u;
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        if (rng() & 1U)
            u.push_back(v);
    std::vector<Edge> es(g.edges().begin(), g.edges().end());
    for (auto & e : es) {
        bool a = std::find(u.begin(), u.end(), e.u) != u.end();
        bool b = std::find(u.begin(), u.end(), e.v) != u.end();
        if (!e.is_loop() && a != b)
            e.sign = e.sign == Sign::negative ? Sign::positive : Sign::negative;
    }
    return SignedGraph(g.vertex_count(), std::move(es));
}

}  // namespace oracle
