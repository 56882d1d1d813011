#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "normsim/experiments.hpp"

namespace normsim {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& what)
      : std::runtime_error(key.empty() ? what : key + ": " + what), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

// Sectioned key/value text:
//
//   # comment
//   [sim]
//   epsilon = 0.05
//   cascade.shock_probability = 0.0003   # dotted keys work in any section
//
// Sections are netgen, sim, cascade and experiment. Omitted keys keep their
// defaults. Unknown or repeated keys, malformed values and out-of-range values
// raise ConfigError naming the key. Cross-field checks are left to
// validate(ExperimentSpec).
ExperimentSpec parse_config(std::string_view text);

// Every key with its effective value, in a form parse_config reads back to
// an equal spec.
std::string echo_config(const ExperimentSpec& spec);

std::vector<std::string> config_keys();

}  // namespace normsim
