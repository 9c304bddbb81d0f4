#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "formring/form_ideal.hpp"
#include "formring/group.hpp"

namespace formring {

/// One configured check. `params` is the JSON text of its parameter object.
struct CheckSpec {
  std::string name;
  std::string params = "{}";
};

/// Names accepted in the checks list.
const std::vector<std::string>& known_checks();

/// A parsed scenario file. Ideals are kept in file order and are not
/// validated here; the "validate" check reports invalid ones.
struct ScenarioConfig {
  std::string name;
  FormRing form_ring;
  int n = 3;
  std::vector<std::pair<std::string, FormIdeal>> ideals;
  std::size_t budget = kDefaultBudget;
  std::size_t samples = 10000;
  std::uint64_t seed = 1;
  /// false: E(A) and G(A) are kept as generating sets without an
  /// enumeration attempt.
  bool enumerate_absolute = true;
  std::vector<CheckSpec> checks;
};

/// Builds a ring from its JSON specification (zmod, quadratic, product,
/// tables). Throws ConfigError or RingError.
InvolutiveRing parse_ring_spec(const std::string& json_text);

/// Throws ConfigError on malformed input.
ScenarioConfig parse_scenario(const std::string& json_text);
ScenarioConfig load_scenario(const std::string& path);

}  // namespace formring
