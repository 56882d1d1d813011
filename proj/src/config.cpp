#include "normsim/config.hpp"

#include <charconv>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <sstream>

namespace normsim {
namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::string exact(double v) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

double parse_real(const std::string& key, const std::string& text) {
  double v = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || end != text.data() + text.size() || !std::isfinite(v)) {
    throw ConfigError(key, "expected a finite number, got '" + text + "'");
  }
  return v;
}

std::uint64_t parse_count(const std::string& key, const std::string& text) {
  std::uint64_t v = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || end != text.data() + text.size()) {
    throw ConfigError(key, "expected a non-negative integer, got '" + text + "'");
  }
  return v;
}

bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "true") return true;
  if (text == "false") return false;
  throw ConfigError(key, "expected true or false, got '" + text + "'");
}

struct Range {
  double lo;
  double hi;
  bool lo_open;
  bool hi_open;

  bool contains(double v) const {
    return (lo_open ? v > lo : v >= lo) && (hi_open ? v < hi : v <= hi);
  }
  std::string str() const {
    const auto bound = [](double b) {
      if (std::isinf(b)) return std::string(b < 0 ? "-inf" : "inf");
      return exact(b);
    };
    return std::string(lo_open ? "(" : "[") + bound(lo) + ", " + bound(hi) +
           (hi_open ? ")" : "]");
  }
};

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr Range kAnyReal{-kInf, kInf, true, true};
constexpr Range kProbability{0.0, 1.0, false, false};
constexpr Range kUnitOpenLow{0.0, 1.0, true, false};

template <typename E, typename F>
E parse_enum(const std::string& key, const std::string& text, F from_string) {
  try {
    return from_string(text);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(key, e.what());
  }
}

struct Field {
  std::string key;
  std::function<void(ExperimentSpec&, const std::string&)> set;
  std::function<std::string(ExperimentSpec&)> get;
};

template <typename Access>
Field real(std::string key, Range range, Access access) {
  return {key,
          [key, range, access](ExperimentSpec& s, const std::string& text) {
            const double v = parse_real(key, text);
            if (!range.contains(v)) {
              throw ConfigError(key, "must lie in " + range.str() + ", got " + text);
            }
            access(s) = v;
          },
          [access](ExperimentSpec& s) {
            return exact(access(s));
          }};
}

template <typename Access>
Field count(std::string key, std::uint64_t min, Access access) {
  return {key,
          [key, min, access](ExperimentSpec& s, const std::string& text) {
            const std::uint64_t v = parse_count(key, text);
            if (v < min) {
              throw ConfigError(key, "must be at least " + std::to_string(min) + ", got " + text);
            }
            using T = std::remove_reference_t<decltype(access(s))>;
            if (v > std::numeric_limits<T>::max()) throw ConfigError(key, "value too large");
            access(s) = static_cast<T>(v);
          },
          [access](ExperimentSpec& s) {
            return std::to_string(access(s));
          }};
}

template <typename Access, typename Parse>
Field named(std::string key, Access access, Parse parse) {
  return {key,
          [key, access, parse](ExperimentSpec& s, const std::string& text) {
            access(s) = parse_enum<std::remove_reference_t<decltype(access(s))>>(key, text, parse);
          },
          [access](ExperimentSpec& s) {
            return std::string(to_string(access(s)));
          }};
}

const std::vector<Field>& fields() {
  static const std::vector<Field> table = [] {
    std::vector<Field> f;
    f.push_back(named("experiment.kind", [](ExperimentSpec& s) -> auto& { return s.kind; },
                      experiment_kind_from_string));
    f.push_back(count("experiment.replications", 1,
                      [](ExperimentSpec& s) -> auto& { return s.replications; }));
    f.push_back(count("experiment.population", 1,
                      [](ExperimentSpec& s) -> auto& { return s.population; }));
    f.push_back(count("experiment.base_seed", 0,
                      [](ExperimentSpec& s) -> auto& { return s.base_seed; }));
    f.push_back({"experiment.sweep_values",
                 [](ExperimentSpec& s, const std::string& text) {
                   const std::string key = "experiment.sweep_values";
                   std::vector<double> values;
                   std::stringstream in(text);
                   std::string item;
                   while (std::getline(in, item, ',')) {
                     const double v = parse_real(key, trim(item));
                     if (!kProbability.contains(v)) {
                       throw ConfigError(key, "every value must lie in [0, 1], got " + trim(item));
                     }
                     values.push_back(v);
                   }
                   if (values.empty()) throw ConfigError(key, "needs at least one value");
                   s.sweep_values = std::move(values);
                 },
                 [](ExperimentSpec& s) {
                   std::string out;
                   for (std::size_t i = 0; i < s.sweep_values.size(); ++i) {
                     if (i > 0) out += ", ";
                     out += exact(s.sweep_values[i]);
                   }
                   return out;
                 }});
    f.push_back(real("experiment.slice_fraction", kUnitOpenLow,
                     [](ExperimentSpec& s) -> auto& { return s.slice_fraction; }));
    f.push_back(count("experiment.sticky_agents", 1,
                      [](ExperimentSpec& s) -> auto& { return s.sticky_agents; }));
    f.push_back(count("experiment.control_agents", 0,
                      [](ExperimentSpec& s) -> auto& { return s.control_agents; }));
    f.push_back(count("experiment.sticky_games", 1,
                      [](ExperimentSpec& s) -> auto& { return s.sticky_games; }));
    f.push_back(count("experiment.sticky_speed", 1,
                      [](ExperimentSpec& s) -> auto& { return s.sticky_speed; }));

    f.push_back(real("netgen.link_density", Range{0.0, 1.0, false, true},
                     [](ExperimentSpec& s) -> auto& { return s.netgen.link_density; }));
    f.push_back(real("netgen.homophily", kProbability,
                     [](ExperimentSpec& s) -> auto& { return s.netgen.homophily; }));

    f.push_back(real("sim.coordinate_payoff", kAnyReal,
                     [](ExperimentSpec& s) -> auto& { return s.sim.payoffs.coordinate; }));
    f.push_back(real("sim.miscoordinate_payoff", kAnyReal,
                     [](ExperimentSpec& s) -> auto& { return s.sim.payoffs.miscoordinate; }));
    f.push_back({"sim.weighted_voting",
                 [](ExperimentSpec& s, const std::string& text) {
                   s.sim.weighted_voting = parse_bool("sim.weighted_voting", text);
                 },
                 [](ExperimentSpec& s) {
                   return std::string(s.sim.weighted_voting ? "true" : "false");
                 }});
    f.push_back(named("sim.decision", [](ExperimentSpec& s) -> auto& { return s.sim.decision; },
                      decision_mode_from_string));
    f.push_back(real("sim.vote_weight", kProbability,
                     [](ExperimentSpec& s) -> auto& { return s.sim.vote_weight; }));
    f.push_back(real("sim.learning_rate", kUnitOpenLow,
                     [](ExperimentSpec& s) -> auto& { return s.sim.learning_rate; }));
    f.push_back(real("sim.epsilon", kProbability,
                     [](ExperimentSpec& s) -> auto& { return s.sim.exploration; }));
    f.push_back(real("sim.emergence_fraction", kUnitOpenLow,
                     [](ExperimentSpec& s) -> auto& { return s.sim.emergence_fraction; }));
    f.push_back(count("sim.max_iterations", 1,
                      [](ExperimentSpec& s) -> auto& { return s.sim.max_iterations; }));
    f.push_back(named("sim.incumbent_norm",
                      [](ExperimentSpec& s) -> auto& { return s.sim.incumbent_norm; },
                      side_from_string));
    f.push_back(named("sim.target_norm",
                      [](ExperimentSpec& s) -> auto& { return s.sim.target_norm; },
                      side_from_string));

    f.push_back(real("cascade.shock_probability", kProbability,
                     [](ExperimentSpec& s) -> auto& { return s.cascade.shock_probability; }));
    f.push_back(count("cascade.max_iterations", 1,
                      [](ExperimentSpec& s) -> auto& { return s.cascade.max_iterations; }));
    f.push_back(real("cascade.emergence_fraction", kUnitOpenLow,
                     [](ExperimentSpec& s) -> auto& { return s.cascade.emergence_fraction; }));
    f.push_back(named("cascade.influence",
                      [](ExperimentSpec& s) -> auto& { return s.cascade.influence; },
                      cascade_influence_from_string));
    f.push_back(named("cascade.centrality",
                      [](ExperimentSpec& s) -> auto& { return s.cascade.centrality; },
                      centrality_from_string));
    return f;
  }();
  return table;
}

const std::set<std::string> kSections{"experiment", "netgen", "sim", "cascade"};

}  // namespace

ExperimentSpec parse_config(std::string_view text) {
  std::map<std::string, const Field*> by_key;
  for (const auto& f : fields()) by_key[f.key] = &f;

  ExperimentSpec spec;
  std::set<std::string> seen;
  std::string section;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(line_no);
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("", where + ": malformed section header");
      section = trim(std::string_view(line).substr(1, line.size() - 2));
      if (!kSections.count(section)) {
        throw ConfigError(section, where + ": unknown section");
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("", where + ": expected key = value");
    std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key.empty()) throw ConfigError("", where + ": missing key");
    if (key.find('.') == std::string::npos) {
      if (section.empty()) throw ConfigError(key, where + ": key outside any section");
      key = section + "." + key;
    }
    const auto it = by_key.find(key);
    if (it == by_key.end()) throw ConfigError(key, "unknown key");
    if (!seen.insert(key).second) throw ConfigError(key, "set more than once");
    it->second->set(spec, value);
  }
  return spec;
}

std::string echo_config(const ExperimentSpec& effective) {
  ExperimentSpec spec = effective;
  std::string out;
  std::string section;
  for (const auto& f : fields()) {
    const auto dot = f.key.find('.');
    const std::string s = f.key.substr(0, dot);
    if (s != section) {
      if (!section.empty()) out += "\n";
      out += "[" + s + "]\n";
      section = s;
    }
    out += f.key.substr(dot + 1) + " = " + f.get(spec) + "\n";
  }
  return out;
}

std::vector<std::string> config_keys() {
  std::vector<std::string> keys;
  for (const auto& f : fields()) keys.push_back(f.key);
  return keys;
}

}  // namespace normsim
