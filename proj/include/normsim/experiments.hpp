#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "normsim/cascade.hpp"
#include "normsim/csv.hpp"
#include "normsim/netgen.hpp"
#include "normsim/normgame.hpp"

namespace normsim {

enum class ExperimentKind { key_few, stickiness, context_sweep, clique_compare };

std::string_view to_string(ExperimentKind kind);
ExperimentKind experiment_kind_from_string(std::string_view name);

struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::key_few;
  std::size_t replications = 20;
  std::size_t population = 100;
  std::uint64_t base_seed = 1;
  // target_nodes and seed are set per replication from population/base_seed.
  NetworkGenConfig netgen;
  // seed and centrality are set per run.
  NormSimConfig sim;
  // seed and threshold are set per run.
  CascadeConfig cascade;
  std::vector<double> sweep_values{0.02, 0.05, 0.1, 0.15, 0.2};
  double slice_fraction = 0.1;
  // Extra fixed agents of the stickiness study: the sticky group holds
  // sim.target_norm, the control group sim.incumbent_norm.
  std::size_t sticky_agents = 2;
  std::size_t control_agents = 2;
  unsigned sticky_games = 2;
  unsigned sticky_speed = 2;

  friend bool operator==(const ExperimentSpec&, const ExperimentSpec&) = default;
};

// Throws std::invalid_argument. Slice experiments need population >= 10.
void validate(const ExperimentSpec& spec);

struct RunRecord {
  std::string condition;
  std::size_t replication = 0;
  std::uint64_t seed = 0;
  EmergenceResult result;
};

struct RunSummary {
  std::string label;
  // Over emerged runs only; absent when none emerged.
  std::optional<double> mean_iterations;
  std::optional<double> stddev_iterations;
  double emergence_rate = 0.0;
  std::size_t replication_count = 0;
};

// Sample standard deviation (0 for a single emerged run). Throws
// std::invalid_argument on empty or mismatched input.
RunSummary summarize(const std::vector<std::size_t>& iterations,
                     const std::vector<bool>& emerged, std::string label);

struct ExperimentResult {
  ExperimentKind kind = ExperimentKind::key_few;
  // Sorted by condition order, then replication.
  std::vector<RunRecord> runs;
  std::vector<RunSummary> summaries;

  // Iteration counts of one condition in replication order. Censored runs
  // count as max_iterations.
  std::vector<double> iterations(std::string_view condition) const;
  const RunSummary& summary(std::string_view condition) const;
};

// Conditions are "<centrality>_<slice>" for all three centralities.
ExperimentResult key_few_experiment(const ExperimentSpec& spec, std::size_t workers = 1);
// Conditions: baseline, double_game, fast_driver.
ExperimentResult stickiness_experiment(const ExperimentSpec& spec, std::size_t workers = 1);
// One condition per threshold, labelled with format_real(phi). Each
// replication replays the same network and shock schedule under every
// threshold.
ExperimentResult context_threshold_sweep(const ExperimentSpec& spec, std::size_t workers = 1);
// Conditions: powerlaw, clique. Top degree slice seeded on both.
ExperimentResult clique_vs_powerlaw(const ExperimentSpec& spec, std::size_t workers = 1);

ExperimentResult run_experiment(const ExperimentSpec& spec, std::size_t workers = 1);

// Replication r uses seed base_seed + r throughout.
std::uint64_t replication_seed(const ExperimentSpec& spec, std::size_t replication);

struct SignTest {
  std::size_t wins = 0;
  std::size_t losses = 0;
  std::size_t ties = 0;
  double p_value = 1.0;
};

// One-sided paired sign test of "a is smaller than b". Ties are dropped.
SignTest sign_test_less(const std::vector<double>& a, const std::vector<double>& b);

// experiment,condition,replication,seed,emerged,iterations,final_fraction
CsvTable runs_table(const ExperimentResult& result);
// experiment,condition,mean_iterations,stddev_iterations,emergence_rate,n
CsvTable summary_table(const ExperimentResult& result);

struct PlotFile {
  std::string name;
  CsvTable table;
};

// x,condition,value tables, one per figure analogue. Throws
// std::invalid_argument when there are no summaries.
std::vector<PlotFile> plot_data(const ExperimentResult& result);

}  // namespace normsim
