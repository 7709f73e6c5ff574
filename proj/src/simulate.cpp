#include "relimon/simulate.hpp"

#include <cmath>
#include <random>
#include <string>

#include "relimon/error.hpp"

namespace relimon {

std::uint64_t derive_subseed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + index * 0x9E3779B97F4A7C15ULL + 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double inverse_mean_value(const GoParams& params, double y) {
  validate(params);
  if (!(y >= 0.0) || !(y < params.a))
    raise(ErrorCode::invalid_argument, "mean value must lie in [0, a)");
  return -std::log1p(-y / params.a) / params.b;
}

FailureSeries simulate_nhpp(const SimConfig& config, std::uint32_t replication) {
  validate(config.params);
  if (!(config.horizon > 0.0) || !std::isfinite(config.horizon))
    raise(ErrorCode::invalid_argument, "horizon must be positive and finite");
  if (config.replications < 1) raise(ErrorCode::invalid_argument, "replications must be >= 1");

  std::mt19937_64 rng(derive_subseed(config.seed, replication));
  const auto uniform = [&rng]() {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
  };

  const double a = config.params.a;
  const double b = config.params.b;
  const double m_end = a * num::one_minus_exp_neg(b * config.horizon);

  FailureSeries series;
  series.source_label = "simulated(seed=" + std::to_string(config.seed) +
                        ",rep=" + std::to_string(replication) + ")";
  double tau = 0.0;
  double prev = 0.0;
  while (config.max_failures == 0 || series.deltas.size() < config.max_failures) {
    const double gap = -std::log1p(-uniform());
    if (gap <= 0.0) continue;  // u == 0 draw; regenerate
    tau += gap;
    if (!(tau < m_end)) break;
    const double t = -std::log1p(-tau / a) / b;
    if (t <= prev) continue;  // epoch tie after rounding; regenerate
    series.deltas.push_back(t - prev);
    prev = t;
  }
  return series;
}

}  // namespace relimon
