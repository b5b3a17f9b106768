#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "dines/graph.hpp"

namespace dines {

enum class EdgeListFormat {
  /// `src<TAB>dst<TAB>sign`, sign in {1, -1}; ids used as-is. An optional
  /// `# nodes: N` header fixes the node count.
  Canonical,
  /// `src,dst,rating,time`; rating > 0 is positive, anything else negative.
  BitcoinCsv,
  /// `src dst weight [...]`, whitespace separated; weight 0 (neutral) dropped.
  Triple,
};

std::optional<EdgeListFormat> parse_edge_list_format(std::string_view name);

struct IngestReport {
  std::size_t records = 0;
  std::size_t self_loops_dropped = 0;
  std::size_t duplicates_collapsed = 0;
  std::size_t neutral_dropped = 0;
};

struct LoadedGraph {
  SignedDigraph graph;
  /// original_ids[i] is the raw id of node i. Identity for canonical input.
  std::vector<std::int64_t> original_ids;
  IngestReport report;
};

/// Parses an edge list. Raw formats have their ids remapped to 0..n-1 in
/// ascending raw-id order. Self-loops are dropped; for repeated (src, dst)
/// pairs the last record's sign wins and the edge keeps its first position.
LoadedGraph read_edge_list(std::istream& in, EdgeListFormat format);
LoadedGraph load_edge_list(const std::filesystem::path& path, EdgeListFormat format);

void write_edge_list(std::ostream& out, std::size_t node_count, std::span<const SignedEdge> edges);
void save_edge_list(const std::filesystem::path& path, std::size_t node_count,
                    std::span<const SignedEdge> edges);

}  // namespace dines
