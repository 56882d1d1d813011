#pragma once

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "normsim/graph.hpp"

namespace normsim {

// Text interchange format (.edges):
//
//   nodes <n>
//   attr <id> <value>     one line per node
//   <source> <sink>       one line per directed edge
//
// Space-separated fields, LF line endings.
class EdgeListError : public std::runtime_error {
 public:
  EdgeListError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

std::string write_edge_list(const Graph& g);

// Throws EdgeListError naming the first offending line.
Graph parse_edge_list(std::string_view text);

void save_edge_list(const Graph& g, const std::filesystem::path& path);
Graph load_edge_list(const std::filesystem::path& path);

}  // namespace normsim
