#include "normsim/netgen.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "normsim/random.hpp"

namespace normsim {
namespace {

constexpr std::uint64_t kAttributeGrid = 1'000'000;

class NetworkBuilder {
 public:
  NetworkBuilder(const NetworkGenConfig& cfg, Rng& rng) : cfg_(cfg), rng_(rng) {}

  void add_node() {
    attributes_.push_back(static_cast<double>(rng_.index(kAttributeGrid + 1)) /
                          static_cast<double>(kAttributeGrid));
    linked_.emplace_back();
    for (auto& row : linked_) row.resize(attributes_.size(), false);
    in_degree_.push_back(0);
  }

  // Returns false when the chosen source has no admissible sink.
  bool try_add_edge() {
    const std::size_t n = attributes_.size();
    const NodeId source = rng_.index(n);
    candidates_.clear();
    double total = 0.0;
    for (NodeId j = 0; j < n; ++j) {
      if (j == source || linked_[source][j]) continue;
      if (std::abs(attributes_[source] - attributes_[j]) > cfg_.homophily) {
        continue;
      }
      candidates_.push_back(j);
      total += static_cast<double>(in_degree_[j] + 1);
    }
    if (candidates_.empty()) return false;

    double pick = rng_.uniform() * total;
    NodeId sink = candidates_.back();
    for (NodeId j : candidates_) {
      pick -= static_cast<double>(in_degree_[j] + 1);
      if (pick < 0.0) {
        sink = j;
        break;
      }
    }
    linked_[source][sink] = true;
    ++in_degree_[sink];
    edges_.push_back({source, sink});
    return true;
  }

  std::size_t node_count() const { return attributes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  Graph build() && {
    const std::size_t n = attributes_.size();
    return Graph(n, std::move(edges_), std::move(attributes_));
  }

 private:
  const NetworkGenConfig& cfg_;
  Rng& rng_;
  std::vector<double> attributes_;
  std::vector<std::vector<bool>> linked_;
  std::vector<std::size_t> in_degree_;
  std::vector<Edge> edges_;
  std::vector<NodeId> candidates_;
};

}  // namespace

void validate(const NetworkGenConfig& cfg) {
  if (cfg.target_nodes < 1) {
    throw std::invalid_argument("netgen.nodes must be at least 1");
  }
  if (!(cfg.link_density >= 0.0 && cfg.link_density < 1.0)) {
    throw std::invalid_argument(
        "netgen.link_density must lie in [0, 1); at 1 no node is ever added");
  }
  if (!(cfg.homophily >= 0.0 && cfg.homophily <= 1.0)) {
    throw std::invalid_argument("netgen.homophily must lie in [0, 1]");
  }
}

std::size_t target_edge_count(const NetworkGenConfig& cfg) {
  const double n = static_cast<double>(cfg.target_nodes);
  return static_cast<std::size_t>(
      std::llround(n * cfg.link_density / (1.0 - cfg.link_density)));
}

Graph generate_network(const NetworkGenConfig& cfg) {
  validate(cfg);
  Rng rng(cfg.seed);
  NetworkBuilder builder(cfg, rng);

  builder.add_node();
  while (builder.node_count() < cfg.target_nodes) {
    // r in (0, 1] so that link_density == 0 never links.
    const double r = 1.0 - rng.uniform();
    if (r <= cfg.link_density) {
      builder.try_add_edge();
    } else {
      builder.add_node();
    }
  }

  const std::size_t wanted = target_edge_count(cfg);
  const std::size_t stall_limit = 10 * cfg.target_nodes;
  std::size_t stalled = 0;
  while (builder.edge_count() < wanted && stalled < stall_limit) {
    stalled = builder.try_add_edge() ? 0 : stalled + 1;
  }
  return std::move(builder).build();
}

Graph complete_digraph(std::size_t n) {
  if (n == 0) throw std::invalid_argument("complete graph needs at least one node");
  std::vector<Edge> edges;
  edges.reserve(n * (n - 1));
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = 0; j < n; ++j) {
      if (i != j) edges.push_back({i, j});
    }
  }
  return Graph(n, std::move(edges), std::vector<double>(n, 0.5));
}

}  // namespace normsim
