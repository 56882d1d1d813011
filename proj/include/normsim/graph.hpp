#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace normsim {

using NodeId = std::size_t;

struct Edge {
  NodeId source;
  NodeId sink;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Immutable directed graph with one homophily attribute per node.
//
// Edges are kept in lexicographic order. The undirected projection (the
// neighbourhood used by centralities, voting and cascades) is precomputed:
// j is a neighbour of i when (i, j) or (j, i) is an edge.
class Graph {
 public:
  Graph() = default;

  // Throws GraphError on self-loops, duplicate edges, out-of-range
  // endpoints, or attributes outside [0, 1].
  Graph(std::size_t node_count, std::vector<Edge> edges,
        std::vector<double> attributes);

  std::size_t node_count() const { return attributes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<double>& attributes() const { return attributes_; }
  double attribute(NodeId v) const { return attributes_[v]; }

  // Sorted, distinct neighbours of v in the undirected projection.
  std::span<const NodeId> neighbors(NodeId v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  std::size_t degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }

  std::size_t out_degree(NodeId v) const { return out_degree_[v]; }
  std::size_t in_degree(NodeId v) const { return in_degree_[v]; }

  bool has_edge(NodeId source, NodeId sink) const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.edges_ == b.edges_ && a.attributes_ == b.attributes_;
  }

 private:
  std::vector<Edge> edges_;
  std::vector<double> attributes_;
  std::vector<std::size_t> offsets_{0};
  std::vector<NodeId> adjacency_;
  std::vector<std::size_t> out_degree_;
  std::vector<std::size_t> in_degree_;
};

}  // namespace normsim
