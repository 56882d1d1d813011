#include "normsim/cascade.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace normsim {

std::string_view to_string(CascadeInfluence influence) {
  return influence == CascadeInfluence::uniform ? "uniform" : "weighted";
}

CascadeInfluence cascade_influence_from_string(std::string_view name) {
  if (name == "uniform") return CascadeInfluence::uniform;
  if (name == "weighted") return CascadeInfluence::weighted;
  throw std::invalid_argument("unknown cascade influence '" + std::string(name) +
                              "' (expected uniform or weighted)");
}

void validate(const CascadeConfig& cfg) {
  if (!(cfg.threshold >= 0.0 && cfg.threshold <= 1.0)) {
    throw std::invalid_argument("cascade.threshold must lie in [0, 1]");
  }
  if (!(cfg.shock_probability >= 0.0 && cfg.shock_probability <= 1.0)) {
    throw std::invalid_argument("cascade.shock_probability must lie in [0, 1]");
  }
  if (cfg.max_iterations < 1) {
    throw std::invalid_argument("cascade.max_iterations must be at least 1");
  }
  if (!(cfg.emergence_fraction > 0.0 && cfg.emergence_fraction <= 1.0)) {
    throw std::invalid_argument("cascade.emergence_fraction must lie in (0, 1]");
  }
}

std::size_t CascadeState::flipped_count() const {
  std::size_t count = 0;
  for (std::size_t v = 0; v < size(); ++v) count += flipped(v) ? 1 : 0;
  return count;
}

CascadeState apply_shock(CascadeState state, NodeId node) {
  if (node >= state.size()) throw std::out_of_range("shocked node out of range");
  state.shocked[node] ^= 1;
  return state;
}

ThresholdRule::ThresholdRule(const Graph& g, const CascadeConfig& cfg)
    : graph_(g), threshold_(cfg.threshold) {
  if (cfg.influence == CascadeInfluence::weighted) {
    const auto scores = compute_centrality(g, cfg.centrality);
    weights_.reserve(g.node_count());
    for (NodeId v = 0; v < g.node_count(); ++v) {
      weights_.push_back(neighbor_weights(g, v, scores));
    }
  }
}

CascadeState ThresholdRule::apply(CascadeState state) const {
  const std::size_t n = graph_.node_count();
  if (state.size() != n) throw std::invalid_argument("cascade state does not match graph");

  std::vector<NodeId> adopting;
  for (NodeId v = 0; v < n; ++v) {
    if (state.flipped(v)) continue;
    const auto nbrs = graph_.neighbors(v);
    if (nbrs.empty()) continue;
    double pressure = 0.0;
    if (weights_.empty()) {
      std::size_t on = 0;
      for (NodeId j : nbrs) on += state.flipped(j) ? 1 : 0;
      pressure = static_cast<double>(on) / static_cast<double>(nbrs.size());
    } else {
      for (std::size_t k = 0; k < nbrs.size(); ++k) {
        if (state.flipped(nbrs[k])) pressure += weights_[v].weights[k];
      }
    }
    if (pressure > 0.0 && pressure >= threshold_) adopting.push_back(v);
  }
  for (NodeId v : adopting) state.adopted[v] = 1;
  return state;
}

CascadeState threshold_update(const Graph& g, const CascadeConfig& cfg,
                              CascadeState state) {
  return ThresholdRule(g, cfg).apply(std::move(state));
}

ShockSchedule::ShockSchedule(std::uint64_t seed, double probability,
                             std::size_t node_count)
    : rng_(seed), probability_(probability), node_count_(node_count) {}

ShockDraw ShockSchedule::next() {
  ShockDraw draw;
  draw.fires = rng_.bernoulli(probability_);
  draw.node = rng_.index(node_count_);
  return draw;
}

CascadeState cascade_step(const ThresholdRule& rule, CascadeState state,
                          const ShockDraw& shock) {
  state = rule.apply(std::move(state));
  if (shock.fires) state = apply_shock(std::move(state), shock.node);
  ++state.iteration;
  return state;
}

CascadeState cascade_step(const Graph& g, const CascadeConfig& cfg,
                          CascadeState state, const ShockDraw& shock) {
  return cascade_step(ThresholdRule(g, cfg), std::move(state), shock);
}

EmergenceResult run_cascade(const Graph& g, const CascadeConfig& cfg) {
  validate(cfg);
  const std::size_t n = g.node_count();
  if (n == 0) throw std::invalid_argument("cascade needs a non-empty graph");

  const ThresholdRule rule(g, cfg);
  ShockSchedule shocks(cfg.seed, cfg.shock_probability, n);
  CascadeState state(n);
  double fraction = 0.0;
  for (std::size_t it = 1; it <= cfg.max_iterations; ++it) {
    state = cascade_step(rule, std::move(state), shocks.next());
    fraction = static_cast<double>(state.flipped_count()) / static_cast<double>(n);
    if (fraction >= cfg.emergence_fraction) return {true, it, fraction};
  }
  return {false, cfg.max_iterations, fraction};
}

}  // namespace normsim
