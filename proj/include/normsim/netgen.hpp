#pragma once

#include <cstddef>
#include <cstdint>

#include "normsim/graph.hpp"

namespace normsim {

struct NetworkGenConfig {
  std::size_t target_nodes = 100;
  double link_density = 0.7;  // probability that a step adds an edge
  double homophily = 0.5;     // attribute radius a sink may lie within
  std::uint64_t seed = 1;

  friend bool operator==(const NetworkGenConfig&, const NetworkGenConfig&) = default;
};

// Throws std::invalid_argument naming the offending field.
void validate(const NetworkGenConfig& cfg);

// Edge count the generator keeps adding edges towards once every node exists:
// round(n * ld / (1 - ld)).
std::size_t target_edge_count(const NetworkGenConfig& cfg);

// Grows a directed friendship network one step at a time. A step either adds
// a node (attribute drawn uniformly on a 1e-6 grid in [0, 1]) or, with
// probability link_density, links a uniformly chosen source to a sink picked
// among attribute-similar nodes with probability proportional to
// in-degree + 1. Rejects link_density == 1.
Graph generate_network(const NetworkGenConfig& cfg);

// Every ordered pair (i, j), i != j; all attributes 0.5. Rejects n == 0.
Graph complete_digraph(std::size_t n);

}  // namespace normsim
