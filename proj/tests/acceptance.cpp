// Acceptance criteria, one PASS/FAIL line each. With a criterion number as
// the only argument, runs just that criterion; exit status 1 if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "normsim/cascade.hpp"
#include "normsim/centrality.hpp"
#include "normsim/experiments.hpp"
#include "normsim/netgen.hpp"
#include "normsim/random.hpp"
#include "oracles.hpp"

using namespace normsim;

namespace {

constexpr double kAlpha = 0.05;
constexpr std::size_t kReplications = 20;
constexpr std::size_t kContextRuns = 100;
constexpr double kContextLow = 0.01;
constexpr double kContextHigh = 0.15;
constexpr double kWeightSumTolerance = 1e-9;
constexpr double kRescaleTolerance = 1e-12;
constexpr double kOracleTolerance = 1e-9;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::size_t workers() { return std::max(1u, std::thread::hardware_concurrency()); }

ExperimentSpec spec_for(ExperimentKind kind) {
  ExperimentSpec s;
  s.kind = kind;
  s.replications = kReplications;
  s.population = 100;
  return s;
}

double mean_of(const std::vector<double>& v) {
  double t = 0.0;
  for (double x : v) t += x;
  return t / static_cast<double>(v.size());
}

std::string fmt(double v) { return format_real(v); }

// Iteration means here include censored runs at the cap so that slow
// conditions are not flattered by dropping them.
struct SliceMeans {
  double top, middle, bottom;
  SignTest top_vs_bottom;
  std::size_t censored;
};

const std::vector<SliceMeans>& key_few_means() {
  static const std::vector<SliceMeans> means = [] {
    const auto r = key_few_experiment(spec_for(ExperimentKind::key_few), workers());
    std::vector<SliceMeans> out;
    for (auto kind : {CentralityKind::degree, CentralityKind::betweenness,
                      CentralityKind::closeness}) {
      const std::string k(to_string(kind));
      const auto top = r.iterations(k + "_top");
      const auto mid = r.iterations(k + "_middle");
      const auto bot = r.iterations(k + "_bottom");
      std::size_t censored = 0;
      for (const auto& run : r.runs) censored += run.result.emerged ? 0 : 1;
      out.push_back({mean_of(top), mean_of(mid), mean_of(bot), sign_test_less(top, bot),
                     censored});
    }
    return out;
  }();
  return means;
}

const char* kCentralityNames[] = {"degree", "betweenness", "closeness"};

Outcome key_few_ordering() {
  Outcome o{true, ""};
  const auto& m = key_few_means();
  for (std::size_t i = 0; i < m.size(); ++i) {
    const bool ordered = m[i].top < m[i].middle && m[i].middle < m[i].bottom;
    const bool significant = m[i].top_vs_bottom.p_value < kAlpha;
    o.pass = o.pass && ordered && significant;
    o.detail += std::string(i ? "; " : "") + kCentralityNames[i] + " " + fmt(m[i].top) + "/" +
                fmt(m[i].middle) + "/" + fmt(m[i].bottom) + " p=" +
                fmt(m[i].top_vs_bottom.p_value);
  }
  o.detail += "; censored " + std::to_string(m.front().censored);
  return o;
}

Outcome gap_asymmetry() {
  const auto& m = key_few_means();
  int holds = 0;
  std::string detail;
  for (std::size_t i = 0; i < m.size(); ++i) {
    const double upper = m[i].middle - m[i].top;
    const double lower = m[i].bottom - m[i].middle;
    if (upper > lower) ++holds;
    detail += std::string(i ? "; " : "") + kCentralityNames[i] + " " + fmt(upper) + " vs " +
              fmt(lower);
  }
  return {holds >= 2, std::to_string(holds) + "/3 hold (" + detail + ")"};
}

Outcome stickiness_speedup() {
  const auto r = stickiness_experiment(spec_for(ExperimentKind::stickiness), workers());
  const auto base = r.iterations("baseline");
  const auto dbl = r.iterations("double_game");
  const auto fast = r.iterations("fast_driver");
  const auto t_double = sign_test_less(dbl, base);
  const auto t_fast = sign_test_less(fast, base);
  const bool pass = mean_of(dbl) < mean_of(base) && mean_of(fast) < mean_of(base) &&
                    t_double.p_value < kAlpha && t_fast.p_value < kAlpha;
  return {pass, "baseline " + fmt(mean_of(base)) + ", double_game " + fmt(mean_of(dbl)) +
                    " (wins " + std::to_string(t_double.wins) + "/20, p=" +
                    fmt(t_double.p_value) + "), fast_driver " + fmt(mean_of(fast)) + " (wins " +
                    std::to_string(t_fast.wins) + "/20, p=" + fmt(t_fast.p_value) + ")"};
}

Outcome context_anchor() {
  ExperimentSpec spec = spec_for(ExperimentKind::context_sweep);
  spec.replications = kContextRuns;
  spec.sweep_values = {0.02, 0.05, 0.1, 0.15, 0.2, 0.5, 1.0};
  const auto r = context_threshold_sweep(spec, workers());
  const double anchor = r.summaries.front().emergence_rate;
  bool monotone = true;
  std::string rates;
  for (std::size_t k = 0; k < r.summaries.size(); ++k) {
    if (k > 0 && r.summaries[k].emergence_rate > r.summaries[k - 1].emergence_rate) {
      monotone = false;
    }
    rates += std::string(k ? " " : "") + r.summaries[k].label + ":" +
             fmt(r.summaries[k].emergence_rate);
  }
  // Replayed schedules: per replication, emergence under a larger threshold
  // implies emergence no later under every smaller one.
  const std::size_t n = spec.replications;
  for (std::size_t k = 1; k < spec.sweep_values.size(); ++k) {
    for (std::size_t rep = 0; rep < n; ++rep) {
      const auto& lo = r.runs[(k - 1) * n + rep].result;
      const auto& hi = r.runs[k * n + rep].result;
      if (hi.emerged && (!lo.emerged || lo.iterations > hi.iterations)) monotone = false;
    }
  }
  const bool in_band = anchor >= kContextLow && anchor <= kContextHigh;
  return {in_band && monotone, "rate at 0.02 = " + fmt(anchor) + " over " + std::to_string(n) +
                                   " runs; monotone " + (monotone ? "yes" : "no") + " (" +
                                   rates + ")"};
}

Outcome clique_speedup() {
  const auto r = clique_vs_powerlaw(spec_for(ExperimentKind::clique_compare), workers());
  const auto clique = r.iterations("clique");
  const auto power = r.iterations("powerlaw");
  const auto t = sign_test_less(clique, power);
  const std::size_t edges = complete_digraph(100).edge_count();
  const bool pass = mean_of(clique) < mean_of(power) && t.p_value < kAlpha && edges == 9900;
  return {pass, "clique " + fmt(mean_of(clique)) + " vs power-law " + fmt(mean_of(power)) +
                    " (wins " + std::to_string(t.wins) + "/20, p=" + fmt(t.p_value) +
                    "), clique edges " + std::to_string(edges)};
}

Graph random_graph(std::size_t n, double p, Rng& rng, bool directed) {
  std::vector<Edge> edges;
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = directed ? 0 : i + 1; j < n; ++j) {
      if (i != j && rng.bernoulli(p)) edges.push_back({i, j});
    }
  }
  return Graph(n, edges, std::vector<double>(n, 0.5));
}

Outcome oracle_equivalence() {
  Rng rng(20240601);
  std::vector<Graph> graphs;
  for (std::size_t n = 1; n <= 12; ++n) {
    for (double p : {0.1, 0.25, 0.4, 0.7}) {
      graphs.push_back(random_graph(n, p, rng, n % 2 == 0));
    }
  }
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    NetworkGenConfig cfg;
    cfg.target_nodes = 6 + seed % 7;
    cfg.seed = seed;
    graphs.push_back(generate_network(cfg));
  }
  std::size_t betweenness_bad = 0;
  std::size_t closure_bad = 0;
  std::size_t closures = 0;
  for (const Graph& g : graphs) {
    const auto fast = betweenness_centrality(g).values;
    const auto slow = oracle::brute_force_betweenness(g);
    for (NodeId v = 0; v < g.node_count(); ++v) {
      if (std::abs(fast[v] - slow[v]) > kOracleTolerance) ++betweenness_bad;
    }
    const std::size_t n = g.node_count();
    for (int trial = 0; trial < 4; ++trial) {
      const std::uint32_t seeds = static_cast<std::uint32_t>(rng.next() & ((1u << n) - 1));
      for (double phi : {0.0, 0.1, 0.3, 0.5, 1.0}) {
        CascadeConfig cfg;
        cfg.threshold = phi;
        const ThresholdRule rule(g, cfg);
        CascadeState s(n);
        for (NodeId v = 0; v < n; ++v) {
          if (seeds >> v & 1u) s = apply_shock(s, v);
        }
        for (;;) {
          CascadeState next = cascade_step(rule, s, ShockDraw{});
          if (next.adopted == s.adopted) break;
          s = std::move(next);
        }
        std::uint32_t mask = 0;
        for (NodeId v = 0; v < n; ++v) {
          if (s.flipped(v)) mask |= 1u << v;
        }
        if (mask != oracle::closure_by_enumeration(g, seeds, phi)) ++closure_bad;
        ++closures;
      }
    }
  }
  return {betweenness_bad == 0 && closure_bad == 0,
          std::to_string(graphs.size()) + " graphs, betweenness mismatches " +
              std::to_string(betweenness_bad) + ", closure mismatches " +
              std::to_string(closure_bad) + "/" + std::to_string(closures)};
}

Outcome weight_properties() {
  double worst_sum = 0.0;
  double worst_drift = 0.0;
  bool slices_stable = true;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    NetworkGenConfig cfg;
    cfg.seed = seed;
    const Graph g = generate_network(cfg);
    for (auto kind : {CentralityKind::degree, CentralityKind::closeness,
                      CentralityKind::betweenness}) {
      const auto scores = compute_centrality(g, kind);
      for (double lambda : {1e-6, 0.37, 3.0, 1e6}) {
        CentralityScores scaled = scores;
        for (double& v : scaled.values) v *= lambda;
        for (NodeId v = 0; v < g.node_count(); ++v) {
          const auto w = neighbor_weights(g, v, scores).weights;
          const auto ws = neighbor_weights(g, v, scaled).weights;
          if (w.empty()) continue;
          double sum = 0.0;
          for (std::size_t k = 0; k < w.size(); ++k) {
            sum += w[k];
            worst_drift = std::max(worst_drift, std::abs(w[k] - ws[k]));
          }
          worst_sum = std::max(worst_sum, std::abs(sum - 1.0));
        }
        for (auto slice : {Slice::top, Slice::middle, Slice::bottom}) {
          if (rank_slice(scores, slice) != rank_slice(scaled, slice)) slices_stable = false;
        }
      }
    }
  }
  return {worst_sum <= kWeightSumTolerance && worst_drift <= kRescaleTolerance && slices_stable,
          "max |sum - 1| " + fmt(worst_sum) + ", max rescale drift " + fmt(worst_drift) +
              ", slices " + (slices_stable ? "stable" : "changed")};
}

Outcome determinism() {
  std::size_t checked = 0;
  std::size_t differing = 0;
  for (auto kind : {ExperimentKind::key_few, ExperimentKind::stickiness,
                    ExperimentKind::context_sweep, ExperimentKind::clique_compare}) {
    const ExperimentSpec spec = spec_for(kind);
    const auto serial = run_experiment(spec, 1);
    const auto rerun = run_experiment(spec, 1);
    const auto parallel = run_experiment(spec, std::max<std::size_t>(workers(), 4));
    auto bytes = [](const ExperimentResult& r) {
      std::string all = runs_table(r).str() + summary_table(r).str();
      for (const auto& p : plot_data(r)) all += p.table.str();
      return all;
    };
    const std::string reference = bytes(serial);
    differing += reference != bytes(rerun);
    differing += reference != bytes(parallel);
    checked += 2;
  }
  return {differing == 0, std::to_string(checked - differing) + "/" + std::to_string(checked) +
                              " reruns byte-identical (serial and multi-worker)"};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {1, "key-few ordering", key_few_ordering},
      {2, "gap asymmetry", gap_asymmetry},
      {3, "stickiness speedup", stickiness_speedup},
      {4, "context anchor", context_anchor},
      {5, "clique speedup", clique_speedup},
      {6, "oracle equivalence", oracle_equivalence},
      {7, "influence weight properties", weight_properties},
      {8, "determinism", determinism},
  };
  int only = 0;
  if (argc > 1) only = std::atoi(argv[1]);

  int failures = 0;
  for (const auto& c : criteria) {
    if (only != 0 && c.id != only) continue;
    const auto start = std::chrono::steady_clock::now();
    const Outcome o = c.run();
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %d %-28s %s  %s [%.1fs]\n", c.id, c.name, o.pass ? "PASS" : "FAIL",
                o.detail.c_str(), secs);
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
