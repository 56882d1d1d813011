#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "normsim/centrality.hpp"
#include "normsim/graph.hpp"
#include "normsim/normgame.hpp"
#include "normsim/random.hpp"

namespace normsim {

// How an incumbent node aggregates its neighbours' flips.
enum class CascadeInfluence {
  uniform,   // plain fraction of flipped neighbours
  weighted,  // neighbour weights proportional to `centrality`
};

std::string_view to_string(CascadeInfluence influence);
CascadeInfluence cascade_influence_from_string(std::string_view name);

struct CascadeConfig {
  double threshold = 0.1;
  double shock_probability = 0.0003;
  std::size_t max_iterations = 50'000;
  double emergence_fraction = 0.9;
  std::uint64_t seed = 1;
  CascadeInfluence influence = CascadeInfluence::uniform;
  CentralityKind centrality = CentralityKind::degree;

  friend bool operator==(const CascadeConfig&, const CascadeConfig&) = default;
};

void validate(const CascadeConfig& cfg);

// A node is flipped when its shock parity is odd or it has adopted the new
// behaviour through the cascade. Adoption is permanent for the run; shocks
// toggle the parity and therefore revert only nodes that have not adopted.
struct CascadeState {
  std::vector<std::uint8_t> shocked;
  std::vector<std::uint8_t> adopted;
  std::size_t iteration = 0;

  explicit CascadeState(std::size_t node_count = 0)
      : shocked(node_count, 0), adopted(node_count, 0) {}

  std::size_t size() const { return shocked.size(); }
  bool flipped(NodeId v) const { return shocked[v] != 0 || adopted[v] != 0; }
  std::size_t flipped_count() const;

  friend bool operator==(const CascadeState&, const CascadeState&) = default;
};

// Negates the node's payoffs: toggles its shock parity.
CascadeState apply_shock(CascadeState state, NodeId node);

// Synchronous threshold update without shocks: every incumbent node whose
// flipped-neighbour fraction is positive and at least the threshold adopts.
// Isolated nodes never adopt.
class ThresholdRule {
 public:
  ThresholdRule(const Graph& g, const CascadeConfig& cfg);

  CascadeState apply(CascadeState state) const;

 private:
  const Graph& graph_;
  double threshold_;
  std::vector<InfluenceWeights> weights_;  // empty for uniform influence
};

CascadeState threshold_update(const Graph& g, const CascadeConfig& cfg,
                              CascadeState state);

// Pre-drawn shock for one iteration. Drawing does not depend on the cascade
// state, so one schedule can be replayed under different thresholds.
struct ShockDraw {
  bool fires = false;
  NodeId node = 0;
};

class ShockSchedule {
 public:
  ShockSchedule(std::uint64_t seed, double probability, std::size_t node_count);
  ShockDraw next();

 private:
  Rng rng_;
  double probability_;
  std::size_t node_count_;
};

// threshold_update followed by the iteration's shock, if any.
CascadeState cascade_step(const ThresholdRule& rule, CascadeState state,
                          const ShockDraw& shock);
CascadeState cascade_step(const Graph& g, const CascadeConfig& cfg,
                          CascadeState state, const ShockDraw& shock);

// Starts all-incumbent and steps until the flipped fraction reaches
// cfg.emergence_fraction or cfg.max_iterations pass. The shock schedule is
// seeded from cfg.seed only.
EmergenceResult run_cascade(const Graph& g, const CascadeConfig& cfg);

}  // namespace normsim
