#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "blowup/graph.hpp"

namespace blowup {

/// Edge-list text: a line `n <order>` followed by one `u v` line per edge,
/// 0-indexed with u < v. Blank lines and `#` comments are ignored.
Graph parse_edge_list(std::string_view text);
std::string write_edge_list(const Graph& g);

/// graph6: order header (1, 4 or 8 bytes) followed by the upper triangle,
/// column by column, packed big-endian into 6-bit groups offset by 63.
/// An optional `>>graph6<<` prefix is accepted on input.
Graph parse_graph6(std::string_view text);
std::string write_graph6(const Graph& g);

/// Accepts either format, deciding by content.
Graph parse_graph(std::string_view text);
Graph read_graph_file(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace blowup
