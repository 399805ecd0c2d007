#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "triflow/flows.hpp"
#include "triflow/graph.hpp"
#include "triflow/topology.hpp"

namespace triflow {

inline constexpr std::uint64_t default_search_budget = 1'000'000'000;

enum class SearchStatus { found, exhausted, gated };

std::string to_string(SearchStatus s);

struct SearchOutcome {
    SearchStatus status = SearchStatus::gated;
    std::optional<Flow> witness;
    std::uint64_t nodes_explored = 0;
};

struct SearchOptions {
    std::uint64_t budget = default_search_budget;
    /// Allowed values per edge under the default orientation (residues for
    /// modular search). Empty means every nonzero value.
    std::vector<std::vector<int>> domains;
};

/// Nowhere-zero integer k-flow by backtracking with conservation propagation.
SearchOutcome search_int_knzf(const SignedGraph & g, int k, const SearchOptions & opts = {});
SearchOutcome search_int_knzf(const SignedGraph & g, int k, std::uint64_t budget);

/// Nowhere-zero Z_k-flow. Domains, when given, may include 0.
SearchOutcome search_mod_knzf(const SignedGraph & g, int k, const SearchOptions & opts = {});
SearchOutcome search_mod_knzf(const SignedGraph & g, int k, std::uint64_t budget);

struct AdmissibilityReport {
    bool admissible = false;
    bool condition2 = false;
    bool condition3 = false;
    std::optional<EdgeId> single_negative;  // flipping it balances g
    std::optional<EdgeId> bad_bridge;       // g - bridge has a balanced component
    std::optional<EdgeId> uncovered_edge;   // lies in no signed circuit
    std::vector<SignedCircuit> circuits;    // one per edge when condition 3 holds
    std::string reason;
};

/// Bouchet's characterization, both forms. Throws LemmaViolation if they
/// disagree and PreconditionError if g is disconnected.
AdmissibilityReport is_flow_admissible(const SignedGraph & g);

struct ClosureStep {
    EdgeSet circuit;
    EdgeSet new_edges;
};

struct ClosureTrace {
    EdgeSet seed;
    std::vector<ClosureStep> steps;
    EdgeSet closure;     // ascending
    bool complete = false;
};

/// Greedy saturation by balanced circuits with one or two new edges,
/// shortest circuits first.
ClosureTrace phi2_closure(const SignedGraph & g, const EdgeSet & seed, std::uint64_t budget = default_topology_budget);

struct AnchorResult {
    Flow flow;                 // modular, k = 3, default orientation of g
    SignedGraph split_graph;   // same edge ids; split copies appended as new vertices
    ClosureTrace trace;        // on split_graph
    bool closure_stalled = false;
    bool used_search = false;
};

/// Z3-flow with zeros inside E(T) and equal values on the two private edges
/// of any triangle that is the only triangle containing them.
AnchorResult z3_anchor_flow(const SignedGraph & g, const Triangle & t, std::uint64_t budget = default_search_budget);

/// The vertex-splitting preprocessing on its own.
SignedGraph split_private_pairs(const SignedGraph & g);

enum class ConstructRoute { exception, direct, circuits, repaired, search };

std::string to_string(ConstructRoute r);

struct ConstructResult {
    std::optional<Flow> flow;  // empty exactly when g is the exception
    ConstructRoute route = ConstructRoute::search;
    bool is_exception = false;
    std::string detail;
};

/// 4-NZF of an admissible triangularly connected g, or the exception report
/// when g is the negative-rim 5-wheel up to switching and isomorphism.
ConstructResult construct_4nzf(const SignedGraph & g, std::uint64_t budget = default_search_budget);

bool is_w5_star(const SignedGraph & g);

struct EulerianDecomposition {
    std::array<EdgeSet, 3> classes;
    VertexId common_vertex = -1;
};

struct DecompositionOutcome {
    std::optional<EulerianDecomposition> decomposition;
    std::uint64_t nodes_explored = 0;
};

inline constexpr int eulerian_decomposition_gate = 20;

/// Three connected eulerian subgraphs with odd negatives sharing a vertex.
/// Throws GatedError above 20 edges unless force is set.
DecompositionOutcome eulerian_3nzf_decomposition(const SignedGraph & g, bool force = false);

/// 3-NZF assembled from a decomposition, values +-1 and +-2.
Flow flow_from_decomposition(const SignedGraph & g, const EulerianDecomposition & d);

}  // namespace triflow
