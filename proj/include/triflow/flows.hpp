#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "triflow/graph.hpp"
#include "triflow/topology.hpp"

namespace triflow {

enum class FlowKind { integer, modular };

/// Edge values under an orientation. Integer flows respect |f(e)| <= k-1;
/// modular flows store residues in [0, k).
struct Flow {
    Orientation orientation;
    std::vector<int> values;
    int k = 2;
    FlowKind kind = FlowKind::integer;

    int value(EdgeId e) const { return values.at(static_cast<std::size_t>(e)); }
};

struct FlowVerdict {
    std::vector<VertexId> conservation_violations;
    std::vector<EdgeId> bound_violations;
    bool nowhere_zero = false;

    bool valid() const noexcept { return conservation_violations.empty() && bound_violations.empty(); }
    bool valid_nowhere_zero() const noexcept { return valid() && nowhere_zero; }
};

/// Throws PreconditionError when the orientation does not fit g.
FlowVerdict verify_flow(const SignedGraph & g, const Flow & f);

struct SupportReport {
    EdgeSet support;
    EdgeSet zero_set;
    std::map<int, EdgeSet> by_magnitude;  // t -> edges with f = +-t (residue t for modular flows)
};

SupportReport support_report(const Flow & f);
EdgeSet zero_set(const Flow & f);

int mod(long long a, int k);

Flow zero_flow(const SignedGraph & g, int k, FlowKind kind = FlowKind::integer);

/// The same flow expressed under `target`: values negate on reversed edges.
Flow reoriented(const Flow & f, const Orientation & target);
Flow to_default(const SignedGraph & g, const Flow & f);

/// Residues mod k of an integer flow, same orientation.
Flow reduce_mod(const Flow & f, int k);

/// a*f + b*h after aligning h to f's orientation. Integer results get
/// k = max |value| + 1 (at least 2); modular results keep the modulus.
Flow combine(const SignedGraph & g, const Flow & f, const Flow & h, int a, int b);

/// The flow of a signed circuit under the default orientation: +-1 on
/// circuits, +-2 on the path of a long barbell.
Flow circuit_flow(const SignedGraph & g, const SignedCircuit & c);

/// +-1 values along a closed eulerian trail through `edges` from `start`,
/// default orientation, 0 elsewhere. Conservation holds at every vertex
/// except possibly `start`. Throws PreconditionError if the edges do not form
/// one closed trail.
std::vector<int> closed_trail_values(const SignedGraph & g, const EdgeSet & edges, VertexId start);

/// 2-flow with support exactly the balanced circuit `circuit`.
Flow balanced_circuit_flow(const SignedGraph & g, const EdgeSet & circuit);

struct Extension {
    Flow flow;
    int alpha = 0;
};

/// f2 = f1 - alpha * g with supp(f2) = supp(f1) + E(C), for a balanced
/// circuit C and a 2-flow g supported on it.
Extension extend_over_circuit(const SignedGraph & g, const Flow & f1, const EdgeSet & circuit, const Flow & circuit_2flow);

struct Adjustment {
    Flow flow;
    int alpha = 0;
};

/// phi - alpha * chi(C) over Z3 leaving |zeros on C| in {0, |C| - 2}.
Adjustment adjust_short_circuit(const SignedGraph & g, const Flow & phi, const EdgeSet & circuit);

/// Z3-flow equal to phi off E(H), nonzero on E(H) - {e0}.
Flow shift_zeros(const SignedGraph & g, const Flow & phi, const TrianglePath & h, EdgeId e0);

struct TwoFlowOutcome {
    std::optional<Flow> flow;
    int failing_component = -1;
    std::string reason;
};

/// A 2-NZF iff every component is eulerian with an even number of negative edges.
TwoFlowOutcome two_nzf_eulerian(const SignedGraph & g);

/// 3-NZF with |f(e)| = i (i in {1, 2}); the returned flow has f(e) = i under
/// its orientation. Search-backed.
Flow three_nzf_prescribed(const SignedGraph & g, EdgeId e, int i, std::uint64_t budget = 0);

/// Integer 3-NZF from a Z3-NZF when every component's bridges lie on one path.
Flow mod3_to_int3_bridge_path(const SignedGraph & g, const Flow & phi);

/// Integer 3-flow with supp(f) = supp(phi) for a Z3-flow with at most 4 zeros.
Flow mod3_to_int3_small_zeroset(const SignedGraph & g, const Flow & phi);

/// 4-NZF from a Z3-flow whose zeros lie on one or two balanced circuits of
/// length at most 4 (edge-disjoint, or a triangle and a circuit sharing one edge).
Flow four_nzf_from_z3_circuits(const SignedGraph & g, const Flow & phi, std::vector<EdgeSet> circuits);

/// Certificate text:
///
///     flow <k> <int|mod>
///     f <edge_id> <tau_u> <tau_v> <value>
std::string serialize_flow(const SignedGraph & g, const Flow & f);
Flow parse_flow(const SignedGraph & g, std::string_view text);

}  // namespace triflow
