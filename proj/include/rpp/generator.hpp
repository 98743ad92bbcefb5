#pragma once

#include <cstdint>
#include <string>

#include "rpp/instances.hpp"

namespace rpp {

/// Knobs for the deterministic instance generator. Same parameters and seed
/// always produce the same instance, byte for byte.
struct GenParams {
  Kind kind = Kind::Drpp;
  int n = 8;                  // vertex count
  int k = 2;                  // required components (rpp/ee kinds), classes (cbm/cgm)
  std::int64_t weight_max = 5;
  double density = 0.3;       // probability of each optional arc/pair/edge
  std::int64_t budget = 6;
  std::uint64_t seed = 1;
  int requests = 2;           // |F|, cbm/cgm only
  bool oracle_compatible = false;  // keep the instance within the oracle size guards
  bool balanced_only = false;      // rpp/ee kinds: every required piece Eulerian
};

/// Generates the instance object; throws std::invalid_argument on infeasible
/// parameter combinations.
Instance generate_instance(const GenParams& params);

/// Canonical file text of the generated instance.
std::string generate_instance_text(const GenParams& params);

}  // namespace rpp
