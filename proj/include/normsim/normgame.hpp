#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "normsim/centrality.hpp"
#include "normsim/graph.hpp"
#include "normsim/random.hpp"

namespace normsim {

enum class Side : std::uint8_t { left, right };
enum class Lane : std::uint8_t { up, down };

constexpr Side opposite(Side s) { return s == Side::left ? Side::right : Side::left; }
std::string_view to_string(Side side);
Side side_from_string(std::string_view name);

struct PayoffMatrix {
  double coordinate = 1.0;
  double miscoordinate = -1.0;

  friend bool operator==(const PayoffMatrix&, const PayoffMatrix&) = default;
};

void validate(const PayoffMatrix& p);

// Symmetric coordination game: matching sides earn `coordinate` each,
// mismatched sides earn `miscoordinate` each.
std::pair<double, double> stage_game(Side a, Side b, const PayoffMatrix& p);

struct AgentState {
  NodeId id = 0;
  // Indexed by utility_index(lane, side): Up-Left, Up-Right, Down-Left, Down-Right.
  std::array<double, 4> utilities{};
  bool fixed = false;
  Side assigned_side = Side::left;
  unsigned games_per_encounter = 1;
  unsigned speed = 1;
  Side last_action = Side::left;

  double utility(Lane lane, Side side) const;
  // Mean of Up-s and Down-s.
  double side_utility(Side side) const;

  friend bool operator==(const AgentState&, const AgentState&) = default;
};

constexpr std::size_t utility_index(Lane lane, Side side) {
  return static_cast<std::size_t>(lane) * 2 + static_cast<std::size_t>(side);
}

// Free agent whose learned utilities and last action favour `norm`.
AgentState make_conforming_agent(NodeId id, Side norm, const PayoffMatrix& p);
// Agent holding `side` forever, utilities set as if it had fully learned it.
AgentState make_fixed_agent(NodeId id, Side side, const PayoffMatrix& p);

// utilities[lane, side] <- (1 - alpha) * old + alpha * payoff. Fixed agents
// are returned unchanged.
AgentState update_utility(AgentState a, Lane lane, Side side, double payoff,
                          double alpha);

enum class DecisionMode : std::uint8_t {
  // The heavier side of the weighted vote wins; ties go to own utilities.
  majority,
  // Right is played with probability
  //   vote_weight * (right vote share) + (1 - vote_weight) * own lean,
  // where own lean maps the mean utility gap onto [0, 1] (0.5 when indifferent).
  proportional,
};

std::string_view to_string(DecisionMode mode);
DecisionMode decision_mode_from_string(std::string_view name);

struct DecisionRule {
  DecisionMode mode = DecisionMode::majority;
  double vote_weight = 0.9;
  // coordinate - miscoordinate payoff; scales the own-utility lean.
  double utility_span = 2.0;
};

// Fixed agents always play their assigned side. Otherwise exploration
// (probability epsilon) picks a uniform side, and then `rule` applies to the
// vote over neighbours' last actions. An agent with no neighbours goes to the
// side with the higher mean own utility, then to a coin flip.
Side choose_action(const AgentState& a, std::span<const Side> neighbor_actions,
                   const InfluenceWeights& w, double epsilon, const DecisionRule& rule,
                   Rng& rng);
// Majority rule.
Side choose_action(const AgentState& a, std::span<const Side> neighbor_actions,
                   const InfluenceWeights& w, double epsilon, Rng& rng);

struct NormSimConfig {
  PayoffMatrix payoffs;
  CentralityKind centrality = CentralityKind::degree;
  // false: every neighbour votes with weight 1 / degree (plain majority).
  bool weighted_voting = true;
  double learning_rate = 0.3;
  double exploration = 0.05;
  DecisionMode decision = DecisionMode::proportional;
  double vote_weight = 0.9;
  double emergence_fraction = 0.9;
  std::size_t max_iterations = 50'000;
  std::uint64_t seed = 1;
  Side incumbent_norm = Side::left;
  Side target_norm = Side::right;

  friend bool operator==(const NormSimConfig&, const NormSimConfig&) = default;
};

void validate(const NormSimConfig& cfg);

struct EmergenceResult {
  bool emerged = false;
  std::size_t iterations = 0;
  double final_fraction = 0.0;

  friend bool operator==(const EmergenceResult&, const EmergenceResult&) = default;
};

// Fraction of non-fixed agents whose last action is `target`. Throws
// std::invalid_argument when every agent is fixed.
double emergence_fraction(std::span<const AgentState> agents, Side target);

// Plays the coordination game on `g` until the fraction of free agents on
// cfg.target_norm reaches cfg.emergence_fraction (measured after each full
// iteration) or cfg.max_iterations pass. `agents` must align with the graph's
// nodes and is evolved in place.
//
// One iteration visits every agent once in a fresh random order; an agent
// acts `speed` times per visit. An act pairs the agent with a uniformly drawn
// neighbour; both pick a side with choose_action and play
// max(games_per_encounter) stage games, each in a random lane, learning from
// every payoff. An agent without neighbours instead plays once against the
// last action of a uniformly drawn other agent, and only it learns.
EmergenceResult run_norm_simulation(const Graph& g, const NormSimConfig& cfg,
                                    std::vector<AgentState>& agents);

}  // namespace normsim
