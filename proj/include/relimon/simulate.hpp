#pragma once

#include <cstdint>

#include "relimon/failure_data.hpp"
#include "relimon/go_model.hpp"

namespace relimon {

struct SimConfig {
  GoParams params;
  double horizon = 0.0;             ///< time horizon, > 0
  std::uint64_t max_failures = 0;   ///< optional count cap, 0 = unbounded
  std::uint64_t seed = 0;
  std::uint32_t replications = 1;
};

/// One NHPP sample path under m(t) = a(1-e^{-bt}), by inversion of unit-rate
/// arrivals: t_i = m^{-1}(tau_i) while tau_i < m(horizon). Deterministic for a
/// given (seed, replication): std::mt19937_64 seeded with
/// derive_subseed(seed, replication), uniforms u = (x >> 11) * 2^-53, gaps
/// -log1p(-u), degenerate draws (zero gap or tied epoch) regenerated. The
/// returned series may be empty when the horizon is very small.
FailureSeries simulate_nhpp(const SimConfig& config, std::uint32_t replication = 0);

/// m^{-1}(y) = -(1/b) ln(1 - y/a); requires 0 <= y < a.
double inverse_mean_value(const GoParams& params, double y);

/// splitmix64 of seed + index; decorrelates replication streams.
std::uint64_t derive_subseed(std::uint64_t seed, std::uint64_t index);

}  // namespace relimon
