#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "normsim/graph.hpp"

namespace normsim {

enum class CentralityKind { degree, closeness, betweenness };

std::string_view to_string(CentralityKind kind);
// Throws std::invalid_argument for unknown names.
CentralityKind centrality_from_string(std::string_view name);

struct CentralityScores {
  CentralityKind kind = CentralityKind::degree;
  std::vector<double> values;
};

// All measures work on the undirected projection of the graph.

// Number of distinct neighbours.
CentralityScores degree_centrality(const Graph& g);

// Harmonic closeness: sum over j != i of 1 / d(i, j), unreachable nodes
// contributing zero.
CentralityScores closeness_centrality(const Graph& g);

// Unnormalised betweenness over unordered pairs {s, t} (Brandes).
CentralityScores betweenness_centrality(const Graph& g);

CentralityScores compute_centrality(const Graph& g, CentralityKind kind);

// Normalised vote weights a node gives its neighbours, aligned with
// Graph::neighbors(focal).
struct InfluenceWeights {
  NodeId focal = 0;
  std::vector<double> weights;
};

// weight(j) = C_j / sum of C_k over the focal node's neighbours. Falls back to
// uniform weights when every neighbour scores zero; empty for isolated nodes.
InfluenceWeights neighbor_weights(const Graph& g, NodeId focal,
                                  const CentralityScores& scores);

enum class Slice { top, middle, bottom };

std::string_view to_string(Slice slice);

// Nodes ranked by score descending, ties by ascending id.
std::vector<NodeId> rank_nodes(const CentralityScores& scores);

// Rank window of size m = round(fraction * n): top [0, m), bottom [n - m, n),
// middle centred at floor((n - m) / 2). Returned ids are in rank order.
// Throws std::invalid_argument if fraction is outside (0, 1] or m == 0
// ("slice would be empty").
std::vector<NodeId> rank_slice(const CentralityScores& scores, Slice slice,
                               double fraction = 0.1);

}  // namespace normsim
