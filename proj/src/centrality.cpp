#include "normsim/centrality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace normsim {
namespace {

constexpr std::size_t kUnreached = std::numeric_limits<std::size_t>::max();

// BFS distances from source; returns visit order.
void bfs(const Graph& g, NodeId source, std::vector<std::size_t>& dist,
         std::vector<NodeId>& order) {
  dist.assign(g.node_count(), kUnreached);
  order.clear();
  dist[source] = 0;
  order.push_back(source);
  for (std::size_t head = 0; head < order.size(); ++head) {
    const NodeId v = order[head];
    for (NodeId w : g.neighbors(v)) {
      if (dist[w] == kUnreached) {
        dist[w] = dist[v] + 1;
        order.push_back(w);
      }
    }
  }
}

}  // namespace

std::string_view to_string(CentralityKind kind) {
  switch (kind) {
    case CentralityKind::degree: return "degree";
    case CentralityKind::closeness: return "closeness";
    case CentralityKind::betweenness: return "betweenness";
  }
  return "unknown";
}

CentralityKind centrality_from_string(std::string_view name) {
  if (name == "degree") return CentralityKind::degree;
  if (name == "closeness") return CentralityKind::closeness;
  if (name == "betweenness") return CentralityKind::betweenness;
  throw std::invalid_argument("unknown centrality '" + std::string(name) +
                              "' (expected degree, closeness or betweenness)");
}

std::string_view to_string(Slice slice) {
  switch (slice) {
    case Slice::top: return "top";
    case Slice::middle: return "middle";
    case Slice::bottom: return "bottom";
  }
  return "unknown";
}

CentralityScores degree_centrality(const Graph& g) {
  CentralityScores out{CentralityKind::degree, std::vector<double>(g.node_count())};
  for (NodeId v = 0; v < g.node_count(); ++v) {
    out.values[v] = static_cast<double>(g.degree(v));
  }
  return out;
}

CentralityScores closeness_centrality(const Graph& g) {
  CentralityScores out{CentralityKind::closeness, std::vector<double>(g.node_count())};
  std::vector<std::size_t> dist;
  std::vector<NodeId> order;
  for (NodeId s = 0; s < g.node_count(); ++s) {
    bfs(g, s, dist, order);
    double sum = 0.0;
    for (NodeId v : order) {
      if (v != s) sum += 1.0 / static_cast<double>(dist[v]);
    }
    out.values[s] = sum;
  }
  return out;
}

CentralityScores betweenness_centrality(const Graph& g) {
  const std::size_t n = g.node_count();
  CentralityScores out{CentralityKind::betweenness, std::vector<double>(n, 0.0)};

  std::vector<std::size_t> dist;
  std::vector<NodeId> order;
  std::vector<double> sigma(n);
  std::vector<double> delta(n);
  for (NodeId s = 0; s < n; ++s) {
    bfs(g, s, dist, order);
    std::fill(sigma.begin(), sigma.end(), 0.0);
    sigma[s] = 1.0;
    for (NodeId v : order) {
      for (NodeId w : g.neighbors(v)) {
        if (dist[w] == dist[v] + 1) sigma[w] += sigma[v];
      }
    }
    std::fill(delta.begin(), delta.end(), 0.0);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const NodeId w = *it;
      for (NodeId v : g.neighbors(w)) {
        if (dist[v] != kUnreached && dist[v] + 1 == dist[w]) {
          delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
        }
      }
      if (w != s) out.values[w] += delta[w];
    }
  }
  // Each unordered pair was counted from both endpoints.
  for (double& v : out.values) v /= 2.0;
  return out;
}

CentralityScores compute_centrality(const Graph& g, CentralityKind kind) {
  switch (kind) {
    case CentralityKind::degree: return degree_centrality(g);
    case CentralityKind::closeness: return closeness_centrality(g);
    case CentralityKind::betweenness: return betweenness_centrality(g);
  }
  throw std::invalid_argument("unknown centrality kind");
}

InfluenceWeights neighbor_weights(const Graph& g, NodeId focal,
                                  const CentralityScores& scores) {
  if (focal >= g.node_count()) throw std::out_of_range("focal node out of range");
  if (scores.values.size() != g.node_count()) {
    throw std::invalid_argument("centrality scores do not cover the graph");
  }
  const auto nbrs = g.neighbors(focal);
  InfluenceWeights out{focal, std::vector<double>(nbrs.size())};
  if (nbrs.empty()) return out;

  double total = 0.0;
  for (NodeId k : nbrs) total += scores.values[k];
  if (total > 0.0) {
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      out.weights[i] = scores.values[nbrs[i]] / total;
    }
  } else {
    std::fill(out.weights.begin(), out.weights.end(),
              1.0 / static_cast<double>(nbrs.size()));
  }
  return out;
}

std::vector<NodeId> rank_nodes(const CentralityScores& scores) {
  std::vector<NodeId> order(scores.values.size());
  std::iota(order.begin(), order.end(), NodeId{0});
  std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
    return scores.values[a] > scores.values[b];
  });
  return order;
}

std::vector<NodeId> rank_slice(const CentralityScores& scores, Slice slice,
                               double fraction) {
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw std::invalid_argument("slice fraction must lie in (0, 1]");
  }
  const std::size_t n = scores.values.size();
  const auto m = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(n)));
  if (m == 0) {
    throw std::invalid_argument("slice would be empty: round(" + std::to_string(fraction) +
                                " * " + std::to_string(n) + ") = 0");
  }
  std::size_t begin = 0;
  switch (slice) {
    case Slice::top: begin = 0; break;
    case Slice::middle: begin = (n - m) / 2; break;
    case Slice::bottom: begin = n - m; break;
  }
  const auto ranked = rank_nodes(scores);
  return {ranked.begin() + static_cast<std::ptrdiff_t>(begin),
          ranked.begin() + static_cast<std::ptrdiff_t>(begin + m)};
}

}  // namespace normsim
