#pragma once

#include <cstdint>
#include <optional>

#include "rpp/field.hpp"
#include "rpp/instances.hpp"

namespace rpp {

struct DriverConfig {
  unsigned field_bits = 64;
  std::optional<unsigned __int128> modulus;  // override of the built-in modulus
  unsigned repetitions = 2;
  std::uint64_t seed = 1;
  unsigned threads = 1;  // 0 = hardware concurrency
};

struct StageTimes {
  double reduce_ms = 0;
  double path_table_ms = 0;
  double sieve_ms = 0;
  double interpolate_ms = 0;
};

/// Decision outcome. YES answers are deterministic consequences of a nonzero
/// coefficient and always correct; a NO is wrong with probability at most
/// failure_bound (one-sided error).
struct Verdict {
  bool yes = false;
  std::optional<std::int64_t> min_extension_weight;
  double failure_bound = 0.0;
  std::uint64_t seed = 0;
  unsigned k = 0;  // the parameter: components, or |F| for matching problems
  std::size_t matching_size = 0;
  std::int64_t degree_bound = 0;  // L
  unsigned field_bits = 64;
  unsigned repetitions = 1;
  StageTimes times;
};

/// Core randomized decision: per repetition, draw the edge variables once,
/// evaluate the sieve polynomial at the L+1 field points encoding 0..L,
/// interpolate, and report the smallest exponent i <= budget with a nonzero
/// coefficient. L = m*(budget+1).
Verdict decide_ee(const NormalizedEe& inst, const DriverConfig& cfg);

/// Validates and runs the normalization chain first.
Verdict decide_ee(const EeInstance& inst, const DriverConfig& cfg);

Verdict decide_drpp(const RppInstance& inst, const DriverConfig& cfg);
Verdict decide_urpp(const RppInstance& inst, const DriverConfig& cfg);

Verdict decide_cbm(const CbmInstance& inst, const DriverConfig& cfg);
Verdict decide_cgm(const CbmInstance& inst, const DriverConfig& cfg);

/// Dispatch on the instance kind.
Verdict decide(const Instance& inst, const DriverConfig& cfg);

}  // namespace rpp
