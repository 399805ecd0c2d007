#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "triflow/errors.hpp"

namespace triflow {

using VertexId = int;
using EdgeId = int;
using VertexSet = std::vector<VertexId>;
using EdgeSet = std::vector<EdgeId>;

enum class Sign : std::int8_t { negative = -1, positive = 1 };

constexpr int to_int(Sign s) noexcept { return static_cast<int>(s); }
constexpr Sign flipped(Sign s) noexcept { return s == Sign::positive ? Sign::negative : Sign::positive; }
constexpr Sign operator*(Sign a, Sign b) noexcept { return a == b ? Sign::positive : Sign::negative; }

/// Which endpoint slot of an edge a half-edge sits at.
enum class End : std::uint8_t { first = 0, second = 1 };

constexpr End opposite(End e) noexcept { return e == End::first ? End::second : End::first; }

struct Edge {
    VertexId u = 0;
    VertexId v = 0;
    Sign sign = Sign::positive;

    bool is_loop() const noexcept { return u == v; }
    VertexId at(End end) const noexcept { return end == End::first ? u : v; }
    VertexId other(VertexId w) const noexcept { return w == u ? v : u; }

    friend bool operator==(const Edge &, const Edge &) = default;
};

struct HalfEdge {
    EdgeId edge = 0;
    End end = End::first;

    friend bool operator==(const HalfEdge &, const HalfEdge &) = default;
};

/// One half-edge seen from its vertex. A loop yields two incidences at the
/// same vertex.
struct Incidence {
    EdgeId edge;
    End end;
    VertexId neighbour;
};

/// Finite signed multigraph with dense vertex and edge ids. Immutable once
/// built; loops and parallel edges are allowed.
class SignedGraph {
public:
    SignedGraph() = default;
    explicit SignedGraph(int vertex_count, std::vector<Edge> edges = {});

    int vertex_count() const noexcept { return vertex_count_; }
    int edge_count() const noexcept { return static_cast<int>(edges_.size()); }

    const Edge & edge(EdgeId e) const { return edges_.at(static_cast<std::size_t>(e)); }
    std::span<const Edge> edges() const noexcept { return edges_; }
    Sign sign(EdgeId e) const { return edge(e).sign; }
    bool is_negative(EdgeId e) const { return edge(e).sign == Sign::negative; }

    std::span<const Incidence> incidences(VertexId v) const;

    /// Number of half-edges at v (a loop counts twice).
    int degree(VertexId v) const { return static_cast<int>(incidences(v).size()); }
    int negative_count() const noexcept;
    int min_degree() const noexcept;

    bool has_vertex(VertexId v) const noexcept { return v >= 0 && v < vertex_count_; }
    bool has_edge(EdgeId e) const noexcept { return e >= 0 && e < edge_count(); }

    /// Same underlying graph, same edge ids.
    bool same_underlying(const SignedGraph & other) const noexcept;

    SignedGraph with_sign(EdgeId e, Sign s) const;
    SignedGraph with_signs(std::span<const Sign> signs) const;

    friend bool operator==(const SignedGraph & a, const SignedGraph & b) {
        return a.vertex_count_ == b.vertex_count_ && a.edges_ == b.edges_;
    }

private:
    int vertex_count_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::size_t> offsets_;
    std::vector<Incidence> incidence_store_;
};

/// Half-edge orientation: tau(h) = +1 points away from the vertex of h.
/// Every edge satisfies tau(h) * tau(h^) = -sign(e).
class Orientation {
public:
    Orientation() = default;
    Orientation(const SignedGraph & g, std::vector<std::array<std::int8_t, 2>> tau);

    int tau(HalfEdge h) const { return tau_.at(static_cast<std::size_t>(h.edge))[static_cast<std::size_t>(h.end)]; }
    int tau(EdgeId e, End end) const { return tau({e, end}); }
    std::size_t edge_count() const noexcept { return tau_.size(); }

    /// True when edge e carries the same direction in both orientations; the
    /// only alternative for a valid orientation is the fully reversed edge.
    bool agrees_on(const Orientation & other, EdgeId e) const;

    /// Checks the product rule against g. Throws PreconditionError on mismatch.
    void validate(const SignedGraph & g) const;

    /// Reverse both half-edges of e.
    Orientation reversed(EdgeId e) const;

    std::span<const std::array<std::int8_t, 2>> raw() const noexcept { return tau_; }

    friend bool operator==(const Orientation &, const Orientation &) = default;

private:
    std::vector<std::array<std::int8_t, 2>> tau_;
};

/// Positive edges point first -> second; negative edges are extroverted.
Orientation default_orientation(const SignedGraph & g);

/// Contribution coefficient of edge e at vertex v under tau: the sum of tau
/// over the half-edges of e at v (0, +-1, or +-2 for a loop).
int incidence_coefficient(const SignedGraph & g, const Orientation & tau, EdgeId e, VertexId v);

struct EdgeCut {
    VertexSet side;
    EdgeSet edges;
};

/// A subgraph with maps back to the parent's ids.
struct Subgraph {
    SignedGraph graph;
    std::vector<VertexId> vertex_map;  // sub vertex -> parent vertex
    std::vector<EdgeId> edge_map;      // sub edge -> parent edge
};

struct BalanceResult {
    bool balanced = false;
    VertexSet switch_set;          // when balanced: switching here makes every edge positive
    EdgeSet unbalanced_circuit;    // when unbalanced: ordered edges of an unbalanced circuit
};

/// Flip the sign of every non-loop edge with exactly one end in `u`.
SignedGraph switch_at(const SignedGraph & g, std::span<const VertexId> u);

BalanceResult is_balanced(const SignedGraph & g);

/// Some U with switch_at(a, U) == b, or nullopt. Throws PreconditionError
/// when the underlying graphs differ.
std::optional<VertexSet> signature_equivalent(const SignedGraph & a, const SignedGraph & b);

struct NearBalance {
    bool holds = false;
    std::optional<EdgeId> witness;  // empty with holds == true means already balanced
};

/// Balanced, or balanced after flipping a single edge. Requires g connected.
NearBalance equivalent_to_at_most_one_negative(const SignedGraph & g);

/// Some edge whose flip balances g (equivalence to exactly one negative edge).
std::optional<EdgeId> single_negative_witness(const SignedGraph & g);

EdgeSet bridges(const SignedGraph & g);

/// delta(U, W); pass std::nullopt for W to mean the complement of U.
EdgeCut edge_cut(const SignedGraph & g, std::span<const VertexId> u, std::optional<std::span<const VertexId>> w = std::nullopt);

/// Edge-induced subgraph on the touched vertices, in ascending parent order.
Subgraph restrict_to_edges(const SignedGraph & g, std::span<const EdgeId> edges);
/// Vertex-induced subgraph.
Subgraph restrict_to_vertices(const SignedGraph & g, std::span<const VertexId> vertices);
/// Delete edges, keeping every vertex and the relative edge order.
Subgraph delete_edges(const SignedGraph & g, std::span<const EdgeId> edges);

/// Component index per vertex, numbered in order of first vertex.
std::vector<int> components(const SignedGraph & g, int * count = nullptr);
bool is_connected(const SignedGraph & g);

/// Every vertex has even degree (loops count twice).
bool all_degrees_even(const SignedGraph & g);

/// Flip the sign of one edge.
SignedGraph flip_edge(const SignedGraph & g, EdgeId e);

}  // namespace triflow
