#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "normsim/config.hpp"
#include "normsim/edge_list.hpp"
#include "normsim/experiments.hpp"
#include "normsim/netgen.hpp"

namespace fs = std::filesystem;
using namespace normsim;

namespace {

constexpr int kConfigError = 1;
constexpr int kRuntimeError = 2;

struct Options {
  std::string config_path;
  std::string output_dir = "results";
  std::optional<std::uint64_t> seed;
  std::size_t workers = 1;
  int verbosity = 0;
};

struct ConfigFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

ExperimentSpec load_spec(const Options& opt) {
  std::string text;
  if (!opt.config_path.empty()) {
    try {
      text = read_text_file(opt.config_path);
    } catch (const std::exception& e) {
      throw ConfigFailure(e.what());
    }
  }
  try {
    ExperimentSpec spec = parse_config(text);
    if (opt.seed) spec.base_seed = *opt.seed;
    return spec;
  } catch (const ConfigError& e) {
    throw ConfigFailure(opt.config_path.empty() ? e.what() : opt.config_path + ": " + e.what());
  }
}

void check_spec(const ExperimentSpec& spec) {
  try {
    validate(spec);
  } catch (const std::invalid_argument& e) {
    throw ConfigFailure(std::string(to_string(spec.kind)) + ": " + e.what());
  }
}

class Writer {
 public:
  Writer(fs::path dir, int verbosity) : dir_(std::move(dir)), verbosity_(verbosity) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) throw std::runtime_error("cannot create " + dir_.string() + ": " + ec.message());
  }

  void write(const std::string& name, const std::string& text) {
    write_text_file(dir_ / name, text);
    if (verbosity_ > 0) std::cerr << "wrote " << (dir_ / name).string() << "\n";
  }

 private:
  fs::path dir_;
  int verbosity_;
};

void print_summary(const ExperimentResult& result) {
  std::cout << summary_table(result).str();
}

void run_kind(ExperimentSpec spec, ExperimentKind kind, const Options& opt, Writer& out) {
  spec.kind = kind;
  check_spec(spec);
  const std::string name(to_string(kind));
  if (opt.verbosity > 0) {
    std::cerr << name << ": " << spec.replications << " replications, base seed "
              << spec.base_seed << "\n";
  }
  const ExperimentResult result = run_experiment(spec, opt.workers);
  out.write(name + ".cfg", echo_config(spec));
  out.write(name + "_runs.csv", runs_table(result).str());
  out.write(name + "_summary.csv", summary_table(result).str());
  for (const auto& plot : plot_data(result)) out.write(plot.name, plot.table.str());
  if (opt.verbosity >= 0) print_summary(result);
}

void gen_net(const ExperimentSpec& spec, const Options& opt, Writer& out) {
  check_spec(spec);
  NetworkGenConfig cfg = spec.netgen;
  cfg.target_nodes = spec.population;
  cfg.seed = spec.base_seed;
  const Graph g = generate_network(cfg);
  out.write("network.cfg", echo_config(spec));
  out.write("network.edges", write_edge_list(g));
  if (opt.verbosity >= 0) {
    std::cout << "nodes " << g.node_count() << ", edges " << g.edge_count() << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Norm emergence simulator"};
  app.require_subcommand(1);
  Options opt;
  app.add_option("-c,--config", opt.config_path, "Sectioned key = value config file")
      ->check(CLI::ExistingFile);
  app.add_option("-o,--output-dir", opt.output_dir, "Directory for CSV and config output")
      ->capture_default_str();
  app.add_option("-s,--seed", opt.seed, "Override experiment.base_seed");
  app.add_option("-j,--workers", opt.workers, "Replications run in parallel")
      ->check(CLI::Range(std::size_t{1}, std::size_t{256}))
      ->capture_default_str();
  app.add_flag("-v,--verbose", opt.verbosity, "Progress on stderr");
  bool quiet = false;
  app.add_flag("-q,--quiet", quiet, "No summary on stdout");

  struct Command {
    const char* name;
    const char* help;
    std::optional<ExperimentKind> kind;
  };
  const std::vector<Command> commands{
      {"gen-net", "Generate one network and write it as an edge list", std::nullopt},
      {"key-few", "Seed the top, middle and bottom 10% by centrality", ExperimentKind::key_few},
      {"stickiness", "Double-game and fast-driver sticky agents", ExperimentKind::stickiness},
      {"context-sweep", "Threshold cascade emergence rates", ExperimentKind::context_sweep},
      {"clique-compare", "Power-law network against a complete clique",
       ExperimentKind::clique_compare},
      {"all", "Every experiment", std::nullopt},
  };
  app.fallthrough();
  for (const auto& c : commands) app.add_subcommand(c.name, c.help);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }
  if (quiet) opt.verbosity = -1;

  try {
    const ExperimentSpec spec = load_spec(opt);
    Writer out(opt.output_dir, opt.verbosity);
    for (const auto& c : commands) {
      if (!app.got_subcommand(c.name)) continue;
      const std::string name = c.name;
      if (name == "gen-net") {
        gen_net(spec, opt, out);
      } else if (name == "all") {
        for (auto kind : {ExperimentKind::key_few, ExperimentKind::stickiness,
                          ExperimentKind::context_sweep, ExperimentKind::clique_compare}) {
          ExperimentSpec s = spec;
          s.kind = kind;
          check_spec(s);
        }
        for (auto kind : {ExperimentKind::key_few, ExperimentKind::stickiness,
                          ExperimentKind::context_sweep, ExperimentKind::clique_compare}) {
          run_kind(spec, kind, opt, out);
        }
      } else {
        run_kind(spec, *c.kind, opt, out);
      }
    }
  } catch (const ConfigFailure& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntimeError;
  }
  return 0;
}
