#include <doctest.h>

#include "normsim/cascade.hpp"
#include "normsim/netgen.hpp"
#include "normsim/random.hpp"
#include "oracles.hpp"

using namespace normsim;

namespace {

CascadeConfig with_threshold(double phi) {
  CascadeConfig c;
  c.threshold = phi;
  return c;
}

const ShockDraw kNoShock{};

std::uint32_t mask_of(const CascadeState& s) {
  std::uint32_t m = 0;
  for (NodeId v = 0; v < s.size(); ++v) {
    if (s.flipped(v)) m |= 1u << v;
  }
  return m;
}

CascadeState seeded(std::size_t n, std::uint32_t seeds) {
  CascadeState s(n);
  for (NodeId v = 0; v < n; ++v) {
    if (seeds >> v & 1u) s = apply_shock(s, v);
  }
  return s;
}

CascadeState to_fixpoint(const Graph& g, const CascadeConfig& cfg, CascadeState s) {
  const ThresholdRule rule(g, cfg);
  for (;;) {
    CascadeState next = cascade_step(rule, s, kNoShock);
    if (next.adopted == s.adopted) return next;
    s = std::move(next);
  }
}

Graph random_graph(std::size_t n, double p, Rng& rng) {
  std::vector<Edge> edges;
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = i + 1; j < n; ++j) {
      if (rng.bernoulli(p)) edges.push_back({i, j});
    }
  }
  return Graph(n, edges, std::vector<double>(n, 0.5));
}

}  // namespace

TEST_SUITE("cascade") {
  TEST_CASE("shocks toggle one node") {
    CascadeState s(3);
    s = apply_shock(s, 1);
    CHECK(s.flipped(1));
    CHECK_FALSE(s.flipped(0));
    CHECK_FALSE(s.flipped(2));
    s = apply_shock(s, 1);
    CHECK(s == CascadeState(3));
    CHECK_THROWS(apply_shock(s, 3));
  }

  TEST_CASE("zero threshold floods a connected component") {
    NetworkGenConfig nc;
    nc.seed = 2;
    const Graph g = generate_network(nc);
    NodeId hub = 0;
    for (NodeId v = 0; v < g.node_count(); ++v) {
      if (g.degree(v) > g.degree(hub)) hub = v;
    }
    CascadeState s = apply_shock(CascadeState(g.node_count()), hub);
    s = to_fixpoint(g, with_threshold(0.0), s);
    // Everything reachable from the hub flips, nothing else.
    std::vector<bool> reach(g.node_count(), false);
    std::vector<NodeId> stack{hub};
    reach[hub] = true;
    while (!stack.empty()) {
      const NodeId v = stack.back();
      stack.pop_back();
      for (NodeId w : g.neighbors(v)) {
        if (!reach[w]) {
          reach[w] = true;
          stack.push_back(w);
        }
      }
    }
    for (NodeId v = 0; v < g.node_count(); ++v) CHECK(s.flipped(v) == reach[v]);
  }

  TEST_CASE("threshold one: a leaf of a flipped star centre flips") {
    Graph star(4, {{1, 0}, {2, 0}, {3, 0}}, std::vector<double>(4, 0.5));
    CascadeState s = apply_shock(CascadeState(4), 0);
    s = cascade_step(star, with_threshold(1.0), s, kNoShock);
    for (NodeId v = 0; v < 4; ++v) CHECK(s.flipped(v));
    CHECK(s.iteration == 1);
  }

  TEST_CASE("all-incumbent is a fixed point without shocks") {
    NetworkGenConfig nc;
    const Graph g = generate_network(nc);
    for (double phi : {0.0, 0.02, 0.5}) {
      const CascadeState s = cascade_step(g, with_threshold(phi), CascadeState(100), kNoShock);
      CHECK(s.flipped_count() == 0);
    }
    CascadeConfig cfg = with_threshold(0.1);
    cfg.shock_probability = 0.0;
    cfg.max_iterations = 500;
    CHECK_FALSE(run_cascade(g, cfg).emerged);
  }

  TEST_CASE("a single step matches the adoption rule") {
    Rng rng(8);
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t n = 2 + rng.index(11);
      const Graph g = random_graph(n, 0.3, rng);
      const auto adj = oracle::adjacency(g);
      const std::uint32_t seeds = static_cast<std::uint32_t>(rng.next() & ((1u << n) - 1));
      const double phi = rng.index(11) / 10.0;
      const CascadeState s = cascade_step(g, with_threshold(phi), seeded(n, seeds), kNoShock);
      for (NodeId v = 0; v < n; ++v) {
        const bool expected = (seeds >> v & 1u) || oracle::adopts(adj, seeds, v, phi);
        CHECK(s.flipped(v) == expected);
      }
    }
  }

  TEST_CASE("fixpoints match the subset-enumeration closure") {
    Rng rng(99);
    int checked = 0;
    for (std::size_t n = 1; n <= 12; ++n) {
      for (int trial = 0; trial < 6; ++trial) {
        const Graph g = random_graph(n, 0.15 + 0.1 * trial, rng);
        const std::uint32_t seeds = static_cast<std::uint32_t>(rng.next() & ((1u << n) - 1));
        for (double phi : {0.0, 0.2, 0.3, 0.5, 0.75, 1.0}) {
          const CascadeState s = to_fixpoint(g, with_threshold(phi), seeded(n, seeds));
          CHECK(mask_of(s) == oracle::closure_by_enumeration(g, seeds, phi));
          ++checked;
        }
      }
    }
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      NetworkGenConfig nc;
      nc.target_nodes = 10;
      nc.seed = seed;
      const Graph g = generate_network(nc);
      const CascadeState s = to_fixpoint(g, with_threshold(0.3), seeded(10, 1u));
      CHECK(mask_of(s) == oracle::closure_by_enumeration(g, 1u, 0.3));
    }
    CHECK(checked == 432);
  }

  TEST_CASE("flipped sets are nested in the threshold under a replayed schedule") {
    NetworkGenConfig nc;
    nc.seed = 5;
    const Graph g = generate_network(nc);
    const std::vector<double> phis{0.0, 0.02, 0.1, 0.3, 0.6, 1.0};
    std::vector<ThresholdRule> rules;
    std::vector<CascadeState> states(phis.size(), CascadeState(100));
    for (double phi : phis) rules.emplace_back(g, with_threshold(phi));
    ShockSchedule schedule(17, 0.05, 100);
    for (int it = 0; it < 2000; ++it) {
      const ShockDraw draw = schedule.next();
      for (std::size_t k = 0; k < phis.size(); ++k) {
        states[k] = cascade_step(rules[k], std::move(states[k]), draw);
      }
      for (std::size_t k = 1; k < phis.size(); ++k) {
        for (NodeId v = 0; v < 100; ++v) {
          if (states[k].flipped(v)) REQUIRE(states[k - 1].flipped(v));
        }
      }
    }
  }

  TEST_CASE("shock schedules replay") {
    ShockSchedule a(3, 0.3, 50);
    ShockSchedule b(3, 0.3, 50);
    for (int k = 0; k < 1000; ++k) {
      const auto x = a.next();
      const auto y = b.next();
      CHECK(x.fires == y.fires);
      CHECK(x.node == y.node);
    }
  }

  TEST_CASE("run_cascade") {
    NetworkGenConfig nc;
    nc.seed = 6;
    const Graph g = generate_network(nc);
    CascadeConfig cfg = with_threshold(0.02);
    cfg.seed = 4;
    CHECK(run_cascade(g, cfg) == run_cascade(g, cfg));

    // One connected component: everything floods within diameter + 1 steps.
    const Graph k = complete_digraph(100);
    CascadeConfig flood = with_threshold(0.0);
    flood.shock_probability = 1.0;
    const auto res = run_cascade(k, flood);
    CHECK(res.emerged);
    CHECK(res.iterations <= 2);

    CascadeConfig never = with_threshold(1.0);
    never.shock_probability = 0.0;
    never.max_iterations = 100;
    const auto none = run_cascade(g, never);
    CHECK_FALSE(none.emerged);
    CHECK(none.iterations == 100);
    CHECK_THROWS_AS(run_cascade(Graph(), cfg), std::invalid_argument);
    CHECK_THROWS_AS(run_cascade(g, with_threshold(1.5)), std::invalid_argument);
  }

  TEST_CASE("weighted influence uses centrality weights") {
    // Node 0 sees a low-degree neighbour 1 and a hub 2.
    Graph g(6, {{0, 1}, {0, 2}, {2, 3}, {2, 4}, {2, 5}}, std::vector<double>(6, 0.5));
    CascadeConfig cfg = with_threshold(0.5);
    cfg.influence = CascadeInfluence::weighted;
    const CascadeState from_leaf = cascade_step(g, cfg, apply_shock(CascadeState(6), 1), kNoShock);
    CHECK_FALSE(from_leaf.flipped(0));
    const CascadeState from_hub = cascade_step(g, cfg, apply_shock(CascadeState(6), 2), kNoShock);
    CHECK(from_hub.flipped(0));
    cfg.influence = CascadeInfluence::uniform;
    CHECK(cascade_step(g, cfg, apply_shock(CascadeState(6), 1), kNoShock).flipped(0));
  }
}
