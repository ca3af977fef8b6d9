#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "isolab/graph.hpp"

namespace isolab {

inline constexpr std::size_t kGraph6MaxNodes = 65535;

/// Decodes one graph6 line (an optional ">>graph6<<" header and a trailing
/// newline are accepted). Features are the baseline all-ones column.
/// Throws ParseError naming the offending byte offset.
Graph parse_graph6(std::string_view text);

/// Encodes n and the edge set; features are not representable in graph6.
/// Throws ResourceError when n exceeds kGraph6MaxNodes.
std::string write_graph6(const Graph& g);

// Edge-list text block:
//
//   n d
//   u v          (one line per edge, two unsigned integers)
//   x_1 .. x_d   (optional: exactly n feature rows)
//
// An edge line is a line with exactly two tokens made only of digits; the
// first line that is not an edge line starts the feature block. The writer
// always prints feature values with a decimal point or exponent, so a
// written block reads back unambiguously even when d = 2.

/// Parses one block. `first_line` offsets reported line numbers when the
/// block sits inside a larger file. Throws ParseError naming the line.
Graph parse_edge_list(std::string_view text, std::size_t first_line = 1);

/// Canonical block: header, edges sorted with u < v, all n feature rows in
/// shortest round-trip decimal form. Ends with a newline.
std::string write_edge_list(const Graph& g);

/// Splits a multi-graph edge-list file on blank lines and parses each block.
std::vector<Graph> parse_edge_list_file(std::string_view text);

}  // namespace isolab
