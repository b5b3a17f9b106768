#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <unordered_map>

#include "dines/edge_list.hpp"
#include "dines/error.hpp"

namespace dines {
namespace {

struct RawRecord {
  std::int64_t src;
  std::int64_t dst;
  int sign;
};

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_fields(std::string_view line, bool comma) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (comma) {
      const auto j = line.find(',', i);
      out.push_back(trim(line.substr(i, j == std::string_view::npos ? line.size() - i : j - i)));
      if (j == std::string_view::npos) break;
      i = j + 1;
    } else {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
      if (i >= line.size()) break;
      auto j = i;
      while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
      out.push_back(line.substr(i, j - i));
      i = j;
    }
  }
  return out;
}

std::int64_t parse_id(std::string_view field, std::size_t line_no) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw ParseError("invalid node id '" + std::string(field) + "'", line_no);
  }
  return v;
}

double parse_weight(std::string_view field, std::size_t line_no) {
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double v = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw ParseError("invalid weight '" + std::string(field) + "'", line_no);
  }
  return v;
}

}  // namespace

std::optional<EdgeListFormat> parse_edge_list_format(std::string_view name) {
  if (name == "canonical" || name == "tsv") return EdgeListFormat::Canonical;
  if (name == "bitcoin-csv") return EdgeListFormat::BitcoinCsv;
  if (name == "triple-tsv" || name == "triple") return EdgeListFormat::Triple;
  return std::nullopt;
}

LoadedGraph read_edge_list(std::istream& in, EdgeListFormat format) {
  std::vector<RawRecord> records;
  std::size_t declared_nodes = 0;
  IngestReport report;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto text = trim(line);
    if (text.empty()) continue;
    if (text.front() == '#' || text.front() == '%') {
      constexpr std::string_view kNodes = "# nodes:";
      if (format == EdgeListFormat::Canonical && text.starts_with(kNodes)) {
        declared_nodes = static_cast<std::size_t>(parse_id(trim(text.substr(kNodes.size())), line_no));
      }
      continue;
    }
    const auto fields = split_fields(text, format == EdgeListFormat::BitcoinCsv);
    if (fields.size() < 3 || (format == EdgeListFormat::Canonical && fields.size() != 3)) {
      throw ParseError("expected src, dst and sign fields", line_no);
    }
    RawRecord r{parse_id(fields[0], line_no), parse_id(fields[1], line_no), 0};
    const double w = parse_weight(fields[2], line_no);
    ++report.records;
    switch (format) {
      case EdgeListFormat::Canonical:
        if (w != 1.0 && w != -1.0) throw ParseError("sign must be 1 or -1", line_no);
        if (r.src < 0 || r.dst < 0) throw ParseError("negative node id", line_no);
        r.sign = w > 0 ? 1 : -1;
        break;
      case EdgeListFormat::BitcoinCsv:
        r.sign = w > 0 ? 1 : -1;
        break;
      case EdgeListFormat::Triple:
        if (w == 0.0) {
          ++report.neutral_dropped;
          continue;
        }
        r.sign = w > 0 ? 1 : -1;
        break;
    }
    if (r.src == r.dst) {
      ++report.self_loops_dropped;
      continue;
    }
    records.push_back(r);
  }
  if (records.empty()) throw ParseError("no edge records", line_no);

  LoadedGraph out;
  std::size_t n = 0;
  std::unordered_map<std::int64_t, std::uint32_t> remap;
  if (format == EdgeListFormat::Canonical) {
    std::int64_t max_id = 0;
    for (const auto& r : records) max_id = std::max({max_id, r.src, r.dst});
    n = std::max<std::size_t>(declared_nodes, static_cast<std::size_t>(max_id) + 1);
    out.original_ids.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.original_ids[i] = static_cast<std::int64_t>(i);
  } else {
    std::vector<std::int64_t> ids;
    ids.reserve(records.size() * 2);
    for (const auto& r : records) {
      ids.push_back(r.src);
      ids.push_back(r.dst);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    n = ids.size();
    remap.reserve(n * 2);
    for (std::size_t i = 0; i < n; ++i) remap[ids[i]] = static_cast<std::uint32_t>(i);
    out.original_ids = std::move(ids);
  }

  const bool identity = format == EdgeListFormat::Canonical;
  auto node_of = [&](std::int64_t id) {
    return identity ? static_cast<std::uint32_t>(id) : remap.at(id);
  };
  std::vector<SignedEdge> edges;
  edges.reserve(records.size());
  std::unordered_map<std::uint64_t, std::size_t> position;
  position.reserve(records.size() * 2);
  for (const auto& r : records) {
    const SignedEdge e{node_of(r.src), node_of(r.dst), static_cast<std::int8_t>(r.sign)};
    const auto key = (std::uint64_t{e.src} << 32) | e.dst;
    auto [it, inserted] = position.try_emplace(key, edges.size());
    if (inserted) {
      edges.push_back(e);
    } else {
      edges[it->second].sign = e.sign;
      ++report.duplicates_collapsed;
    }
  }
  out.graph = SignedDigraph::from_edges(n, std::move(edges));
  out.report = report;
  return out;
}

LoadedGraph load_edge_list(const std::filesystem::path& path, EdgeListFormat format) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open edge list " + path.string());
  return read_edge_list(in, format);
}

void write_edge_list(std::ostream& out, std::size_t node_count, std::span<const SignedEdge> edges) {
  out << "# nodes: " << node_count << '\n';
  for (const auto& e : edges) out << e.src << '\t' << e.dst << '\t' << int{e.sign} << '\n';
}

void save_edge_list(const std::filesystem::path& path, std::size_t node_count,
                    std::span<const SignedEdge> edges) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path.string());
  write_edge_list(out, node_count, edges);
}

}  // namespace dines
