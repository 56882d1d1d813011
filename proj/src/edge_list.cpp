#include "normsim/edge_list.hpp"

#include <charconv>
#include <optional>
#include <set>
#include <vector>

#include "normsim/csv.hpp"

namespace normsim {
namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (pos < line.size()) {
    const std::size_t next = line.find(' ', pos);
    const std::size_t end = next == std::string_view::npos ? line.size() : next;
    if (end > pos) fields.push_back(line.substr(pos, end - pos));
    pos = end + 1;
  }
  return fields;
}

template <typename T>
std::optional<T> parse_number(std::string_view field) {
  T value{};
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size()) return std::nullopt;
  return value;
}

}  // namespace

std::string write_edge_list(const Graph& g) {
  std::string out = "nodes " + std::to_string(g.node_count()) + "\n";
  for (NodeId v = 0; v < g.node_count(); ++v) {
    out += "attr " + std::to_string(v) + " " + format_attribute(g.attribute(v)) + "\n";
  }
  for (const Edge& e : g.edges()) {
    out += std::to_string(e.source) + " " + std::to_string(e.sink) + "\n";
  }
  return out;
}

Graph parse_edge_list(std::string_view text) {
  std::optional<std::size_t> node_count;
  std::vector<std::optional<double>> attributes;
  std::vector<Edge> edges;
  std::set<Edge> seen;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::size_t end = nl == std::string_view::npos ? text.size() : nl;
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;

    const auto fields = split_fields(line);
    if (fields.empty()) continue;

    if (!node_count) {
      if (fields.size() != 2 || fields[0] != "nodes") {
        throw EdgeListError(line_no, "expected header 'nodes <n>'");
      }
      node_count = parse_number<std::size_t>(fields[1]);
      if (!node_count) throw EdgeListError(line_no, "bad node count");
      attributes.assign(*node_count, std::nullopt);
      continue;
    }

    if (fields[0] == "attr") {
      if (fields.size() != 3) throw EdgeListError(line_no, "expected 'attr <id> <value>'");
      const auto id = parse_number<std::size_t>(fields[1]);
      const auto value = parse_number<double>(fields[2]);
      if (!id || !value) throw EdgeListError(line_no, "malformed attribute line");
      if (*id >= *node_count) throw EdgeListError(line_no, "node id out of range");
      if (attributes[*id]) throw EdgeListError(line_no, "duplicate attribute for node");
      if (!(*value >= 0.0 && *value <= 1.0)) {
        throw EdgeListError(line_no, "attribute outside [0, 1]");
      }
      attributes[*id] = *value;
      continue;
    }

    if (fields.size() != 2) throw EdgeListError(line_no, "expected '<source> <sink>'");
    const auto src = parse_number<std::size_t>(fields[0]);
    const auto dst = parse_number<std::size_t>(fields[1]);
    if (!src || !dst) throw EdgeListError(line_no, "malformed edge line");
    if (*src >= *node_count || *dst >= *node_count) {
      throw EdgeListError(line_no, "node id out of range");
    }
    if (*src == *dst) throw EdgeListError(line_no, "self-loop");
    const Edge e{*src, *dst};
    if (!seen.insert(e).second) throw EdgeListError(line_no, "duplicate edge");
    edges.push_back(e);
  }

  if (!node_count) throw EdgeListError(line_no, "missing 'nodes' header");
  std::vector<double> values(*node_count);
  for (std::size_t v = 0; v < *node_count; ++v) {
    if (!attributes[v]) {
      throw EdgeListError(line_no, "missing attribute for node " + std::to_string(v));
    }
    values[v] = *attributes[v];
  }
  return Graph(*node_count, std::move(edges), std::move(values));
}

void save_edge_list(const Graph& g, const std::filesystem::path& path) {
  write_text_file(path, write_edge_list(g));
}

Graph load_edge_list(const std::filesystem::path& path) {
  return parse_edge_list(read_text_file(path));
}

}  // namespace normsim
