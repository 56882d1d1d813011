#include "normsim/normgame.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace normsim {
namespace {

// Votes closer than this (relative) count as tied; exact rational ties such
// as 0.2 + 0.3 vs 0.5 otherwise depend on summation order.
constexpr double kTieTolerance = 1e-12;

bool nearly_equal(double a, double b) {
  return std::abs(a - b) <= kTieTolerance * std::max({1.0, std::abs(a), std::abs(b)});
}

Side own_preference(const AgentState& a, Rng& rng) {
  const double ul = a.side_utility(Side::left);
  const double ur = a.side_utility(Side::right);
  if (ul != ur) return ul > ur ? Side::left : Side::right;
  return rng.index(2) == 0 ? Side::left : Side::right;
}

Side decide(const AgentState& a, bool has_neighbors, double vote_left,
            double vote_right, double epsilon, const DecisionRule& rule, Rng& rng) {
  if (a.fixed) return a.assigned_side;
  if (rng.bernoulli(epsilon)) return rng.index(2) == 0 ? Side::left : Side::right;
  if (!has_neighbors) return own_preference(a, rng);
  if (rule.mode == DecisionMode::majority) {
    if (!nearly_equal(vote_left, vote_right)) {
      return vote_left > vote_right ? Side::left : Side::right;
    }
    return own_preference(a, rng);
  }
  const double lean =
      (a.side_utility(Side::right) - a.side_utility(Side::left)) / rule.utility_span;
  const double own = std::clamp(0.5 + 0.5 * lean, 0.0, 1.0);
  const double total = vote_left + vote_right;
  const double share = total > 0.0 ? vote_right / total : 0.5;
  const double p_right = rule.vote_weight * share + (1.0 - rule.vote_weight) * own;
  return rng.uniform() < p_right ? Side::right : Side::left;
}

}  // namespace

std::string_view to_string(Side side) {
  return side == Side::left ? "left" : "right";
}

Side side_from_string(std::string_view name) {
  if (name == "left") return Side::left;
  if (name == "right") return Side::right;
  throw std::invalid_argument("unknown side '" + std::string(name) +
                              "' (expected left or right)");
}

std::string_view to_string(DecisionMode mode) {
  return mode == DecisionMode::majority ? "majority" : "proportional";
}

DecisionMode decision_mode_from_string(std::string_view name) {
  if (name == "majority") return DecisionMode::majority;
  if (name == "proportional") return DecisionMode::proportional;
  throw std::invalid_argument("unknown decision mode '" + std::string(name) +
                              "' (expected majority or proportional)");
}

void validate(const PayoffMatrix& p) {
  if (!std::isfinite(p.coordinate) || !std::isfinite(p.miscoordinate)) {
    throw std::invalid_argument("payoffs must be finite");
  }
  if (!(p.coordinate > p.miscoordinate)) {
    throw std::invalid_argument("coordinate payoff must exceed miscoordinate payoff");
  }
}

std::pair<double, double> stage_game(Side a, Side b, const PayoffMatrix& p) {
  const double v = a == b ? p.coordinate : p.miscoordinate;
  return {v, v};
}

double AgentState::utility(Lane lane, Side side) const {
  return utilities[utility_index(lane, side)];
}

double AgentState::side_utility(Side side) const {
  return 0.5 * (utility(Lane::up, side) + utility(Lane::down, side));
}

AgentState make_conforming_agent(NodeId id, Side norm, const PayoffMatrix& p) {
  AgentState a;
  a.id = id;
  for (Lane lane : {Lane::up, Lane::down}) {
    a.utilities[utility_index(lane, norm)] = p.coordinate;
    a.utilities[utility_index(lane, opposite(norm))] = p.miscoordinate;
  }
  a.last_action = norm;
  return a;
}

AgentState make_fixed_agent(NodeId id, Side side, const PayoffMatrix& p) {
  AgentState a = make_conforming_agent(id, side, p);
  a.fixed = true;
  a.assigned_side = side;
  return a;
}

AgentState update_utility(AgentState a, Lane lane, Side side, double payoff,
                          double alpha) {
  if (a.fixed) return a;
  double& u = a.utilities[utility_index(lane, side)];
  u = (1.0 - alpha) * u + alpha * payoff;
  return a;
}

Side choose_action(const AgentState& a, std::span<const Side> neighbor_actions,
                   const InfluenceWeights& w, double epsilon, Rng& rng) {
  return choose_action(a, neighbor_actions, w, epsilon, DecisionRule{}, rng);
}

Side choose_action(const AgentState& a, std::span<const Side> neighbor_actions,
                   const InfluenceWeights& w, double epsilon, const DecisionRule& rule,
                   Rng& rng) {
  if (neighbor_actions.size() != w.weights.size()) {
    throw std::invalid_argument("influence weights do not align with neighbours");
  }
  double vote_left = 0.0;
  double vote_right = 0.0;
  for (std::size_t k = 0; k < neighbor_actions.size(); ++k) {
    (neighbor_actions[k] == Side::left ? vote_left : vote_right) += w.weights[k];
  }
  return decide(a, !neighbor_actions.empty(), vote_left, vote_right, epsilon, rule, rng);
}

void validate(const NormSimConfig& cfg) {
  validate(cfg.payoffs);
  if (!(cfg.learning_rate > 0.0 && cfg.learning_rate <= 1.0)) {
    throw std::invalid_argument("sim.learning_rate must lie in (0, 1]");
  }
  if (!(cfg.exploration >= 0.0 && cfg.exploration <= 1.0)) {
    throw std::invalid_argument("sim.epsilon must lie in [0, 1]");
  }
  if (!(cfg.emergence_fraction > 0.0 && cfg.emergence_fraction <= 1.0)) {
    throw std::invalid_argument("sim.emergence_fraction must lie in (0, 1]");
  }
  if (cfg.max_iterations < 1) {
    throw std::invalid_argument("sim.max_iterations must be at least 1");
  }
  if (!(cfg.vote_weight >= 0.0 && cfg.vote_weight <= 1.0)) {
    throw std::invalid_argument("sim.vote_weight must lie in [0, 1]");
  }
  if (cfg.incumbent_norm == cfg.target_norm) {
    throw std::invalid_argument("incumbent and target norms must differ");
  }
}

double emergence_fraction(std::span<const AgentState> agents, Side target) {
  std::size_t free = 0;
  std::size_t on_target = 0;
  for (const auto& a : agents) {
    if (a.fixed) continue;
    ++free;
    if (a.last_action == target) ++on_target;
  }
  if (free == 0) throw std::invalid_argument("no free agents to measure");
  return static_cast<double>(on_target) / static_cast<double>(free);
}

EmergenceResult run_norm_simulation(const Graph& g, const NormSimConfig& cfg,
                                    std::vector<AgentState>& agents) {
  validate(cfg);
  const std::size_t n = g.node_count();
  if (n == 0) throw std::invalid_argument("simulation needs a non-empty graph");
  if (agents.size() != n) {
    throw std::invalid_argument("agent list does not match the graph's node count");
  }
  if (std::none_of(agents.begin(), agents.end(), [](const AgentState& a) { return !a.fixed; })) {
    throw std::invalid_argument("simulation needs at least one free agent");
  }
  for (const auto& a : agents) {
    if (a.games_per_encounter < 1 || a.speed < 1) {
      throw std::invalid_argument("games_per_encounter and speed must be at least 1");
    }
  }

  std::vector<InfluenceWeights> weights(n);
  const CentralityScores scores =
      cfg.weighted_voting ? compute_centrality(g, cfg.centrality)
                          : CentralityScores{cfg.centrality, std::vector<double>(n, 1.0)};
  for (NodeId v = 0; v < n; ++v) weights[v] = neighbor_weights(g, v, scores);

  const DecisionRule rule{cfg.decision, cfg.vote_weight,
                          cfg.payoffs.coordinate - cfg.payoffs.miscoordinate};
  Rng rng(cfg.seed);
  auto vote = [&](NodeId v) {
    const auto nbrs = g.neighbors(v);
    const auto& w = weights[v].weights;
    double left = 0.0;
    double right = 0.0;
    for (std::size_t k = 0; k < nbrs.size(); ++k) {
      (agents[nbrs[k]].last_action == Side::left ? left : right) += w[k];
    }
    return decide(agents[v], !nbrs.empty(), left, right, cfg.exploration, rule, rng);
  };

  auto lane_draw = [&] { return rng.index(2) == 0 ? Lane::up : Lane::down; };

  auto act = [&](NodeId focal) {
    const auto nbrs = g.neighbors(focal);
    if (nbrs.empty()) {
      // Isolated drivers meet a random car on the road, learn from it, and
      // leave no trace on it.
      if (agents[focal].fixed || n < 2) return;
      const Side mine = vote(focal);
      NodeId seen = rng.index(n - 1);
      if (seen >= focal) ++seen;
      const auto payoff = stage_game(mine, agents[seen].last_action, cfg.payoffs).first;
      agents[focal] =
          update_utility(agents[focal], lane_draw(), mine, payoff, cfg.learning_rate);
      agents[focal].last_action = mine;
      return;
    }
    const Side mine = vote(focal);
    const NodeId other = nbrs[rng.index(nbrs.size())];
    const Side theirs = vote(other);
    const unsigned games =
        std::max(agents[focal].games_per_encounter, agents[other].games_per_encounter);
    for (unsigned k = 0; k < games; ++k) {
      const auto [pay_mine, pay_theirs] = stage_game(mine, theirs, cfg.payoffs);
      const Lane lane = lane_draw();
      agents[focal] = update_utility(agents[focal], lane, mine, pay_mine, cfg.learning_rate);
      agents[other] = update_utility(agents[other], lane, theirs, pay_theirs, cfg.learning_rate);
    }
    if (!agents[focal].fixed) agents[focal].last_action = mine;
    if (!agents[other].fixed) agents[other].last_action = theirs;
  };

  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), NodeId{0});
  double fraction = emergence_fraction(agents, cfg.target_norm);
  for (std::size_t iteration = 1; iteration <= cfg.max_iterations; ++iteration) {
    rng.shuffle(order);
    for (NodeId v : order) {
      for (unsigned k = 0; k < agents[v].speed; ++k) act(v);
    }
    fraction = emergence_fraction(agents, cfg.target_norm);
    if (fraction >= cfg.emergence_fraction) return {true, iteration, fraction};
  }
  return {false, cfg.max_iterations, fraction};
}

}  // namespace normsim
