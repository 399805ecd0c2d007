#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "triflow/graph.hpp"

namespace triflow {

/// Parsed graph text plus the comment bodies (text after '#') in file order.
struct GraphDocument {
    SignedGraph graph;
    std::vector<std::string> comments;
};

/// Line format:
///
///     v <n>
///     e <u> <v> <+|->      one line per edge, in edge-id order
///     # comment
///
/// A document whose first non-space character is '{' is read as JSON:
/// {"vertices": n, "edges": [{"u": .., "v": .., "sign": +-1}, ..]}.
GraphDocument parse_graph_document(std::string_view text);
SignedGraph parse_graph(std::string_view text);

std::string serialize_graph(const SignedGraph & g);
std::string serialize_graph_json(const SignedGraph & g);

SignedGraph read_graph_file(const std::string & path);

}  // namespace triflow
