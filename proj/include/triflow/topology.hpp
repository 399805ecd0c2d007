#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "triflow/graph.hpp"

namespace triflow {

inline constexpr std::uint64_t default_topology_budget = 50'000'000;

/// Three distinct vertices joined pairwise by three distinct edges. Two
/// triangles on the same vertices through different parallel edges are
/// different triangles; identity is the (sorted) edge triple.
struct Triangle {
    std::array<VertexId, 3> vertices{};
    std::array<EdgeId, 3> edges{};
    bool balanced = true;

    bool contains(EdgeId e) const noexcept { return edges[0] == e || edges[1] == e || edges[2] == e; }
    int shared_edges(const Triangle & other) const noexcept;

    friend bool operator==(const Triangle & a, const Triangle & b) noexcept { return a.edges == b.edges; }
};

using TrianglePath = std::vector<Triangle>;

std::vector<Triangle> triangles(const SignedGraph & g);

/// Distinct triangles; consecutive ones share exactly one edge; any two that
/// are further apart share none.
bool is_valid_triangle_path(const TrianglePath & path);

/// Exact search: triangle-path with e in the first triangle and f in the last.
/// Throws PreconditionError when e and f are equal or parallel.
std::optional<TrianglePath> find_triangle_path(const SignedGraph & g, EdgeId e, EdgeId f,
    std::uint64_t budget = default_topology_budget);

bool are_parallel(const SignedGraph & g, EdgeId e, EdgeId f);

/// Fast tier: every edge with a nonparallel partner lies in a triangle and the
/// triangles, linked when they share an edge, form one connected family.
/// Throws PreconditionError when g is disconnected.
bool is_triangularly_connected(const SignedGraph & g);

/// Exact tier: a triangle-path between every pair of nonparallel edges.
bool is_triangularly_connected_exact(const SignedGraph & g, std::uint64_t budget = default_topology_budget);

bool is_locally_connected(const SignedGraph & g);

/// A circuit as a closed walk: vertices[i] --edges[i]-- vertices[(i+1) % len].
struct Circuit {
    EdgeSet edges;
    VertexSet vertices;
};

/// Recover the closed walk of an edge sequence, starting at `start` when
/// given. Throws PreconditionError if the edges are not a circuit.
Circuit circuit_walk(const SignedGraph & g, const EdgeSet & edges, std::optional<VertexId> start = std::nullopt);

bool is_circuit(const SignedGraph & g, const EdgeSet & edges);
bool is_balanced_edge_set(const SignedGraph & g, const EdgeSet & edges);

/// All circuits with at most max_length edges (0 = no limit), each once,
/// loops included. Throws GatedError when the DFS runs past the budget.
std::vector<Circuit> enumerate_circuits(const SignedGraph & g, int max_length = 0,
    std::uint64_t budget = default_topology_budget);

enum class CircuitKind { balanced_circuit, short_barbell, long_barbell };

std::string to_string(CircuitKind k);

/// A balanced circuit, or two unbalanced circuits meeting at one vertex, or
/// two vertex-disjoint unbalanced circuits plus a path joining them. For the
/// long barbell, `path` starts on circuit1 and ends on circuit2.
struct SignedCircuit {
    CircuitKind kind = CircuitKind::balanced_circuit;
    EdgeSet circuit1;
    EdgeSet circuit2;
    EdgeSet path;

    EdgeSet edges() const;
};

/// Throws PreconditionError describing the first broken requirement.
void validate_signed_circuit(const SignedGraph & g, const SignedCircuit & c);

/// Search order: balanced circuit, short barbell, long barbell, each
/// smallest first. Throws GatedError past the budget.
std::optional<SignedCircuit> find_signed_circuit_through(const SignedGraph & g, EdgeId e,
    std::uint64_t budget = default_topology_budget);

struct ThreeCutStructure {
    enum class Kind { common_vertex, path_case };
    Kind kind = Kind::common_vertex;
    VertexId vertex = -1;                 // common_vertex
    std::array<VertexId, 4> path{};       // path_case, in path order
    std::array<VertexId, 2> missing{};    // path_case: the only nonadjacent pair
    EdgeSet cut;
};

/// Classify a 3-edge cut of a triangularly connected graph. Pass nullopt for
/// w to use the complement of u. Throws PreconditionError when the cut does
/// not have exactly 3 edges or g is not triangularly connected, and
/// LemmaViolation when neither shape applies.
ThreeCutStructure three_cut_structure(const SignedGraph & g, const VertexSet & u, std::optional<VertexSet> w = std::nullopt);

/// 2-edge-connected pieces of a connected graph strung along its bridges.
/// pieces[i] and pieces[i+1] are joined by bridges[i].
struct BridgeChain {
    std::vector<VertexSet> pieces;
    EdgeSet bridges;
    EdgeSet path;  // a path through every bridge, in order
};

/// nullopt when the bridges of connected g cannot all lie on one path.
std::optional<BridgeChain> bridge_chain(const SignedGraph & g);

struct ComponentBridgeVerdict {
    VertexSet vertices;  // ids in the parent graph
    EdgeSet bridges;
    EdgeSet path;
};

/// For every nontrivial component of g - e0, a path holding all its bridges.
ComponentBridgeVerdict bridges_in_component(const SignedGraph & g, const Subgraph & component);
std::vector<ComponentBridgeVerdict> bridges_on_one_path(const SignedGraph & g, const EdgeSet & e0);

/// Edges occurring in an odd number of the parts, ascending.
EdgeSet symmetric_difference(const std::vector<EdgeSet> & parts);

struct CycleRequirement {
    EdgeSet cycle;   // pattern edge ids
    bool balanced = true;
};

/// A configuration is an unsigned pattern plus the balance of each cycle of a
/// cycle basis, so matching does not depend on the chosen signature.
struct ConfigurationPattern {
    std::string name;
    SignedGraph underlying;
    std::vector<CycleRequirement> cycle_basis_balance;
};

/// Fundamental cycles of a spanning forest, balance read off the signs.
ConfigurationPattern pattern_from_signed(std::string name, const SignedGraph & g);

struct Embedding {
    std::vector<VertexId> vertex_map;  // pattern vertex -> graph vertex
    std::vector<EdgeId> edge_map;      // pattern edge -> graph edge
};

/// Every injective vertex map carrying pattern edges onto graph edges with
/// matching cycle balance; one embedding per vertex map, sorted.
std::vector<Embedding> match_configuration(const SignedGraph & g, const ConfigurationPattern & pattern);

}  // namespace triflow
