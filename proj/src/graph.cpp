#include "normsim/graph.hpp"

#include <algorithm>
#include <cmath>

namespace normsim {

Graph::Graph(std::size_t node_count, std::vector<Edge> edges,
             std::vector<double> attributes)
    : edges_(std::move(edges)), attributes_(std::move(attributes)) {
  if (attributes_.size() != node_count) {
    throw GraphError("expected " + std::to_string(node_count) +
                     " node attributes, got " +
                     std::to_string(attributes_.size()));
  }
  for (std::size_t v = 0; v < node_count; ++v) {
    const double a = attributes_[v];
    if (!(a >= 0.0 && a <= 1.0)) {
      throw GraphError("attribute of node " + std::to_string(v) +
                       " outside [0, 1]");
    }
  }

  std::sort(edges_.begin(), edges_.end());
  for (std::size_t k = 0; k < edges_.size(); ++k) {
    const Edge& e = edges_[k];
    if (e.source >= node_count || e.sink >= node_count) {
      throw GraphError("edge (" + std::to_string(e.source) + ", " +
                       std::to_string(e.sink) + ") has an endpoint outside [0, " +
                       std::to_string(node_count) + ")");
    }
    if (e.source == e.sink) {
      throw GraphError("self-loop on node " + std::to_string(e.source));
    }
    if (k > 0 && edges_[k - 1] == e) {
      throw GraphError("duplicate edge (" + std::to_string(e.source) + ", " +
                       std::to_string(e.sink) + ")");
    }
  }

  out_degree_.assign(node_count, 0);
  in_degree_.assign(node_count, 0);
  std::vector<std::vector<NodeId>> adj(node_count);
  for (const Edge& e : edges_) {
    ++out_degree_[e.source];
    ++in_degree_[e.sink];
    adj[e.source].push_back(e.sink);
    adj[e.sink].push_back(e.source);
  }
  offsets_.assign(node_count + 1, 0);
  for (std::size_t v = 0; v < node_count; ++v) {
    auto& list = adj[v];
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    offsets_[v + 1] = offsets_[v] + list.size();
  }
  adjacency_.reserve(offsets_.back());
  for (const auto& list : adj) {
    adjacency_.insert(adjacency_.end(), list.begin(), list.end());
  }
}

bool Graph::has_edge(NodeId source, NodeId sink) const {
  return std::binary_search(edges_.begin(), edges_.end(), Edge{source, sink});
}

}  // namespace normsim
