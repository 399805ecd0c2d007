#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "triflow/graph.hpp"
#include "triflow/topology.hpp"

namespace triflow {

/// Hub 0 with rim 1..5; rim edges negative, spokes positive.
SignedGraph w5_star();

/// x_i -> i-1 and y_i -> t+i-1. Edge order: x-cycle, y-cycle, then y_i x_i,
/// y_i x_{i+1} for each i. Negative: x1x2, y1y2 and every spoke but y1x2.
SignedGraph g2t(int t);

/// Hub 0, rim 1..n. Rim edges (1+i, 1+(i+1)%n) come first, then spokes (0, 1+i).
/// pattern: "pos", "negrim", "negspokes", "onenegspoke", "onenegrim", or 2n
/// characters of +/- (rim then spokes).
SignedGraph wheel(int n, std::string_view pattern = "pos");

/// "w5star", "g2t:<t>", "wheel:<n>[:<pattern>]", "catalog:<name>".
SignedGraph family_graph(std::string_view family);

/// Spanning tree positive, one graph per cotree sign pattern (pattern bits in
/// cotree edge-id order). With reduce_automorphisms, patterns equivalent under
/// an automorphism of the underlying simple graph are dropped.
std::vector<SignedGraph> signature_representatives(const SignedGraph & underlying, bool reduce_automorphisms = false);

/// Largest upper-triangle adjacency code over vertex orders; simple graphs with
/// at most 11 vertices.
std::uint64_t canonical_code(const SignedGraph & simple);

inline constexpr int enumeration_gate = 7;
inline constexpr int enumeration_hard_limit = 8;

/// Every connected simple graph on exactly n vertices (n <= 8), canonically
/// labelled, sorted by code.
std::vector<SignedGraph> connected_underlying(int n);

/// Connected simple graphs on 3..n_max vertices passing the triangular
/// connectivity check, canonically labelled, sorted by (n, m, code).
std::vector<SignedGraph> triangularly_connected_underlying(int n_max, bool force = false);

struct Instance {
    SignedGraph graph;
    std::uint64_t code = 0;
    int signature = 0;
};

/// Every underlying graph paired with every signature representative.
void enumerate_triangularly_connected(int n_max, const std::function<void(const Instance &)> & sink, bool force = false);
std::vector<Instance> enumerate_triangularly_connected(int n_max, bool force = false);

std::vector<std::string> catalog_names();
std::string catalog_text(std::string_view name);
SignedGraph catalog_graph(std::string_view name);
/// Cycle-basis balance taken from the fixture's `# cycle` lines.
ConfigurationPattern catalog_pattern(std::string_view name);

/// Pattern text in graph format. `# cycle <edge ids> <balanced|unbalanced>`
/// lines give the balance requirements; without any, they are read off the
/// signs. At most 8 vertices.
ConfigurationPattern parse_pattern(std::string name, std::string_view text);

}  // namespace triflow
