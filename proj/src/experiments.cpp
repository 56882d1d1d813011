#include "normsim/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "normsim/centrality.hpp"
#include "normsim/random.hpp"

namespace normsim {
namespace {

constexpr std::array kCentralities{CentralityKind::degree, CentralityKind::betweenness,
                                   CentralityKind::closeness};
constexpr std::array kSlices{Slice::top, Slice::middle, Slice::bottom};

// Runs job(i) for i in [0, count) on up to `workers` threads; result i lands
// in slot i.
template <typename T>
std::vector<T> run_indexed(std::size_t count, std::size_t workers,
                           const std::function<T(std::size_t)>& job) {
  std::vector<T> out(count);
  workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(count, 1));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = job(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          out[i] = job(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = count;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

// per_rep[r][c] is condition c of replication r.
ExperimentResult collect(ExperimentKind kind, const ExperimentSpec& spec,
                         const std::vector<std::string>& conditions,
                         const std::vector<std::vector<EmergenceResult>>& per_rep) {
  ExperimentResult out;
  out.kind = kind;
  for (std::size_t c = 0; c < conditions.size(); ++c) {
    std::vector<std::size_t> iterations;
    std::vector<bool> emerged;
    for (std::size_t r = 0; r < per_rep.size(); ++r) {
      const EmergenceResult& res = per_rep[r][c];
      out.runs.push_back({conditions[c], r, replication_seed(spec, r), res});
      iterations.push_back(res.iterations);
      emerged.push_back(res.emerged);
    }
    out.summaries.push_back(summarize(iterations, emerged, conditions[c]));
  }
  return out;
}

NetworkGenConfig network_config(const ExperimentSpec& spec, std::size_t r) {
  NetworkGenConfig cfg = spec.netgen;
  cfg.target_nodes = spec.population;
  cfg.seed = replication_seed(spec, r);
  return cfg;
}

std::vector<AgentState> incumbent_population(std::size_t n, const NormSimConfig& sim) {
  std::vector<AgentState> agents;
  agents.reserve(n);
  for (NodeId v = 0; v < n; ++v) {
    agents.push_back(make_conforming_agent(v, sim.incumbent_norm, sim.payoffs));
  }
  return agents;
}

EmergenceResult seeded_run(const Graph& g, const NormSimConfig& sim,
                           const std::vector<NodeId>& seeds) {
  std::vector<AgentState> agents = incumbent_population(g.node_count(), sim);
  for (NodeId v : seeds) agents[v] = make_fixed_agent(v, sim.target_norm, sim.payoffs);
  return run_norm_simulation(g, sim, agents);
}

EmergenceResult top_seeded_run(const Graph& g, NormSimConfig sim, CentralityKind kind,
                               double fraction) {
  sim.centrality = kind;
  const auto seeds = rank_slice(compute_centrality(g, kind), Slice::top, fraction);
  return seeded_run(g, sim, seeds);
}

void require_kind(const ExperimentSpec& spec, ExperimentKind kind) {
  validate(spec);
  if (spec.kind != kind) {
    throw std::invalid_argument("experiment kind is " + std::string(to_string(spec.kind)) +
                                ", expected " + std::string(to_string(kind)));
  }
}

// The base network plus the stickiness study's fixed agents, each linked to
// round(mean degree) distinct random original nodes.
Graph with_extra_agents(const Graph& base, std::size_t extras, std::uint64_t seed) {
  const std::size_t n = base.node_count();
  const auto mean_degree = static_cast<std::size_t>(
      std::lround(2.0 * static_cast<double>(base.edge_count()) / static_cast<double>(n)));
  const std::size_t links = std::min(mean_degree, n);
  std::vector<Edge> edges = base.edges();
  std::vector<double> attributes = base.attributes();
  Rng rng(seed ^ 0x5851f42d4c957f2dULL);
  std::vector<NodeId> pool(n);
  for (std::size_t e = 0; e < extras; ++e) {
    const NodeId id = n + e;
    attributes.push_back(0.5);
    std::iota(pool.begin(), pool.end(), NodeId{0});
    rng.shuffle(pool);
    for (std::size_t k = 0; k < links; ++k) edges.push_back({id, pool[k]});
  }
  return Graph(n + extras, std::move(edges), std::move(attributes));
}

std::string optional_real(const std::optional<double>& v) {
  return v ? format_real(*v) : std::string();
}

}  // namespace

std::string_view to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::key_few: return "key_few";
    case ExperimentKind::stickiness: return "stickiness";
    case ExperimentKind::context_sweep: return "context_sweep";
    case ExperimentKind::clique_compare: return "clique_compare";
  }
  return "unknown";
}

ExperimentKind experiment_kind_from_string(std::string_view name) {
  for (auto kind : {ExperimentKind::key_few, ExperimentKind::stickiness,
                    ExperimentKind::context_sweep, ExperimentKind::clique_compare}) {
    if (name == to_string(kind)) return kind;
  }
  throw std::invalid_argument("unknown experiment kind '" + std::string(name) + "'");
}

void validate(const ExperimentSpec& spec) {
  if (spec.replications < 1) throw std::invalid_argument("replications must be at least 1");
  if (spec.population < 1) throw std::invalid_argument("population must be at least 1");
  const bool sliced =
      spec.kind == ExperimentKind::key_few || spec.kind == ExperimentKind::clique_compare;
  if (sliced && spec.population < 10) {
    throw std::invalid_argument("population " + std::to_string(spec.population) +
                                " is below 10: slice would be empty");
  }
  if (!(spec.slice_fraction > 0.0 && spec.slice_fraction <= 1.0)) {
    throw std::invalid_argument("slice_fraction must lie in (0, 1]");
  }
  if (spec.kind == ExperimentKind::context_sweep && spec.sweep_values.empty()) {
    throw std::invalid_argument("sweep_values must not be empty");
  }
  for (double phi : spec.sweep_values) {
    if (!(phi >= 0.0 && phi <= 1.0)) {
      throw std::invalid_argument("sweep values must lie in [0, 1]");
    }
  }
  if (spec.kind == ExperimentKind::stickiness && spec.sticky_agents == 0) {
    throw std::invalid_argument("sticky_agents must be at least 1");
  }
  if (spec.sticky_games < 1 || spec.sticky_speed < 1) {
    throw std::invalid_argument("sticky_games and sticky_speed must be at least 1");
  }
  NetworkGenConfig net = spec.netgen;
  net.target_nodes = spec.population;
  validate(net);
  validate(spec.sim);
  validate(spec.cascade);
}

RunSummary summarize(const std::vector<std::size_t>& iterations,
                     const std::vector<bool>& emerged, std::string label) {
  if (iterations.empty()) throw std::invalid_argument("cannot summarize zero runs");
  if (iterations.size() != emerged.size()) {
    throw std::invalid_argument("iteration counts and emergence flags differ in length");
  }
  RunSummary s;
  s.label = std::move(label);
  s.replication_count = iterations.size();
  std::vector<double> kept;
  for (std::size_t i = 0; i < iterations.size(); ++i) {
    if (emerged[i]) kept.push_back(static_cast<double>(iterations[i]));
  }
  s.emergence_rate = static_cast<double>(kept.size()) / static_cast<double>(iterations.size());
  if (kept.empty()) return s;
  const double mean = std::accumulate(kept.begin(), kept.end(), 0.0) / kept.size();
  double ss = 0.0;
  for (double x : kept) ss += (x - mean) * (x - mean);
  s.mean_iterations = mean;
  s.stddev_iterations = kept.size() > 1 ? std::sqrt(ss / (kept.size() - 1)) : 0.0;
  return s;
}

std::vector<double> ExperimentResult::iterations(std::string_view condition) const {
  std::vector<double> out;
  for (const auto& run : runs) {
    if (run.condition == condition) out.push_back(static_cast<double>(run.result.iterations));
  }
  if (out.empty()) {
    throw std::invalid_argument("no runs for condition '" + std::string(condition) + "'");
  }
  return out;
}

const RunSummary& ExperimentResult::summary(std::string_view condition) const {
  for (const auto& s : summaries) {
    if (s.label == condition) return s;
  }
  throw std::invalid_argument("no summary for condition '" + std::string(condition) + "'");
}

std::uint64_t replication_seed(const ExperimentSpec& spec, std::size_t replication) {
  return spec.base_seed + replication;
}

ExperimentResult key_few_experiment(const ExperimentSpec& spec, std::size_t workers) {
  require_kind(spec, ExperimentKind::key_few);
  std::vector<std::string> conditions;
  for (auto kind : kCentralities) {
    for (auto slice : kSlices) {
      conditions.push_back(std::string(to_string(kind)) + "_" + std::string(to_string(slice)));
    }
  }
  auto per_rep = run_indexed<std::vector<EmergenceResult>>(
      spec.replications, workers, [&](std::size_t r) {
        const Graph g = generate_network(network_config(spec, r));
        std::vector<EmergenceResult> row;
        for (auto kind : kCentralities) {
          const CentralityScores scores = compute_centrality(g, kind);
          NormSimConfig sim = spec.sim;
          sim.centrality = kind;
          sim.seed = replication_seed(spec, r);
          for (auto slice : kSlices) {
            row.push_back(seeded_run(g, sim, rank_slice(scores, slice, spec.slice_fraction)));
          }
        }
        return row;
      });
  return collect(ExperimentKind::key_few, spec, conditions, per_rep);
}

ExperimentResult stickiness_experiment(const ExperimentSpec& spec, std::size_t workers) {
  require_kind(spec, ExperimentKind::stickiness);
  const std::vector<std::string> conditions{"baseline", "double_game", "fast_driver"};
  auto per_rep = run_indexed<std::vector<EmergenceResult>>(
      spec.replications, workers, [&](std::size_t r) {
        const std::uint64_t seed = replication_seed(spec, r);
        const Graph base = generate_network(network_config(spec, r));
        const std::size_t n = base.node_count();
        const std::size_t extras = spec.sticky_agents + spec.control_agents;
        const Graph g = with_extra_agents(base, extras, seed);
        NormSimConfig sim = spec.sim;
        sim.seed = seed;
        std::vector<EmergenceResult> row;
        for (std::size_t c = 0; c < conditions.size(); ++c) {
          std::vector<AgentState> agents = incumbent_population(n, sim);
          for (std::size_t e = 0; e < extras; ++e) {
            const bool sticky = e < spec.sticky_agents;
            AgentState a = make_fixed_agent(
                n + e, sticky ? sim.target_norm : sim.incumbent_norm, sim.payoffs);
            if (sticky && c == 1) a.games_per_encounter = spec.sticky_games;
            if (sticky && c == 2) a.speed = spec.sticky_speed;
            agents.push_back(a);
          }
          row.push_back(run_norm_simulation(g, sim, agents));
        }
        return row;
      });
  return collect(ExperimentKind::stickiness, spec, conditions, per_rep);
}

ExperimentResult context_threshold_sweep(const ExperimentSpec& spec, std::size_t workers) {
  require_kind(spec, ExperimentKind::context_sweep);
  std::vector<std::string> conditions;
  for (double phi : spec.sweep_values) conditions.push_back(format_real(phi));
  auto per_rep = run_indexed<std::vector<EmergenceResult>>(
      spec.replications, workers, [&](std::size_t r) {
        const Graph g = generate_network(network_config(spec, r));
        std::vector<EmergenceResult> row;
        for (double phi : spec.sweep_values) {
          CascadeConfig cfg = spec.cascade;
          cfg.threshold = phi;
          cfg.seed = replication_seed(spec, r);
          row.push_back(run_cascade(g, cfg));
        }
        return row;
      });
  return collect(ExperimentKind::context_sweep, spec, conditions, per_rep);
}

ExperimentResult clique_vs_powerlaw(const ExperimentSpec& spec, std::size_t workers) {
  require_kind(spec, ExperimentKind::clique_compare);
  const std::vector<std::string> conditions{"powerlaw", "clique"};
  const Graph clique = complete_digraph(spec.population);
  auto per_rep = run_indexed<std::vector<EmergenceResult>>(
      spec.replications, workers, [&](std::size_t r) {
        const Graph g = generate_network(network_config(spec, r));
        NormSimConfig sim = spec.sim;
        sim.seed = replication_seed(spec, r);
        return std::vector<EmergenceResult>{
            top_seeded_run(g, sim, CentralityKind::degree, spec.slice_fraction),
            top_seeded_run(clique, sim, CentralityKind::degree, spec.slice_fraction)};
      });
  return collect(ExperimentKind::clique_compare, spec, conditions, per_rep);
}

ExperimentResult run_experiment(const ExperimentSpec& spec, std::size_t workers) {
  switch (spec.kind) {
    case ExperimentKind::key_few: return key_few_experiment(spec, workers);
    case ExperimentKind::stickiness: return stickiness_experiment(spec, workers);
    case ExperimentKind::context_sweep: return context_threshold_sweep(spec, workers);
    case ExperimentKind::clique_compare: return clique_vs_powerlaw(spec, workers);
  }
  throw std::invalid_argument("unknown experiment kind");
}

SignTest sign_test_less(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("sign test needs paired samples");
  SignTest t;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) {
      ++t.wins;
    } else if (a[i] > b[i]) {
      ++t.losses;
    } else {
      ++t.ties;
    }
  }
  const std::size_t n = t.wins + t.losses;
  if (n == 0) return t;
  // P(X >= wins) for X ~ Binomial(n, 1/2).
  double p = 0.0;
  for (std::size_t k = t.wins; k <= n; ++k) {
    p += std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) -
                  static_cast<double>(n) * std::log(2.0));
  }
  t.p_value = std::min(p, 1.0);
  return t;
}

CsvTable runs_table(const ExperimentResult& result) {
  CsvTable table({"experiment", "condition", "replication", "seed", "emerged", "iterations",
                  "final_fraction"});
  const std::string name(to_string(result.kind));
  for (const auto& run : result.runs) {
    table.add_row({name, run.condition, std::to_string(run.replication),
                   std::to_string(run.seed), run.result.emerged ? "1" : "0",
                   std::to_string(run.result.iterations),
                   format_real(run.result.final_fraction)});
  }
  return table;
}

CsvTable summary_table(const ExperimentResult& result) {
  CsvTable table({"experiment", "condition", "mean_iterations", "stddev_iterations",
                  "emergence_rate", "n"});
  const std::string name(to_string(result.kind));
  for (const auto& s : result.summaries) {
    table.add_row({name, s.label, optional_real(s.mean_iterations),
                   optional_real(s.stddev_iterations), format_real(s.emergence_rate),
                   std::to_string(s.replication_count)});
  }
  return table;
}

std::vector<PlotFile> plot_data(const ExperimentResult& result) {
  if (result.summaries.empty()) throw std::invalid_argument("no summaries to plot");
  const std::vector<std::string> header{"x", "condition", "value"};
  std::vector<PlotFile> files;
  auto bars = [&](std::string name, const std::vector<std::string>& labels) {
    CsvTable t(header);
    for (const auto& label : labels) {
      t.add_row({label, "mean_iterations", optional_real(result.summary(label).mean_iterations)});
    }
    files.push_back({std::move(name), std::move(t)});
  };
  switch (result.kind) {
    case ExperimentKind::key_few: {
      const char* figures[] = {"fig2_degree.csv", "fig3_betweenness.csv", "fig4_closeness.csv"};
      for (std::size_t i = 0; i < kCentralities.size(); ++i) {
        const std::string kind(to_string(kCentralities[i]));
        CsvTable t(header);
        for (auto slice : kSlices) {
          const std::string label = kind + "_" + std::string(to_string(slice));
          t.add_row({std::string(to_string(slice)), kind,
                     optional_real(result.summary(label).mean_iterations)});
        }
        files.push_back({figures[i], std::move(t)});
      }
      break;
    }
    case ExperimentKind::stickiness:
      bars("fig5_double_game.csv", {"baseline", "double_game"});
      bars("fig6_fast_driver.csv", {"baseline", "fast_driver"});
      break;
    case ExperimentKind::context_sweep: {
      CsvTable t(header);
      for (const auto& s : result.summaries) {
        t.add_row({s.label, "emergence_rate", format_real(s.emergence_rate)});
      }
      files.push_back({"fig7_context.csv", std::move(t)});
      break;
    }
    case ExperimentKind::clique_compare:
      bars("fig8_clique.csv", {"powerlaw", "clique"});
      break;
  }
  return files;
}

}  // namespace normsim
