#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hamcount/digraph.hpp"
#include "hamcount/sampler.hpp"
#include "hamcount/scaling.hpp"

namespace hamcount {

enum class EstimatorMode { kFixed, kAdaptive };

struct EstimatorConfig {
  double epsilon = 0.25;
  double delta = 0.1;
  EstimatorMode mode = EstimatorMode::kAdaptive;
  double budget_n = 1.0;                  // fixed mode: N in the trial budget
  std::uint64_t target_acceptances = 0;   // adaptive mode: 0 derives it from epsilon, delta
  std::uint64_t seed = 0;
  std::uint64_t max_trials = 100'000'000;
  unsigned threads = 1;
  ScalingOptions scaling;

  void validate() const;
};

struct EstimateReport {
  int n = 0;
  double alpha = 0.0;
  double epsilon = 0.0;
  double delta = 0.0;
  std::uint64_t seed = 0;
  EstimatorMode mode = EstimatorMode::kAdaptive;
  std::uint64_t t = 0;
  std::uint64_t s = 0;
  double log_br_c = 0.0;
  double log_l = 0.0;
  double log_estimate = 0.0;           // -inf when s == 0
  std::optional<double> estimate;      // empty when exp(log_estimate) overflows
  std::size_t clamp_events = 0;
  double max_clamp = 0.0;
  std::size_t scaling_iters = 0;
  double scaling_deviation = 0.0;
  std::uint64_t target = 0;            // trials (fixed) or acceptances (adaptive) requested
  bool hit_trial_cap = false;
  double wall_ms = 0.0;

  // log of Br(C)/l, the scale reported when nothing was accepted.
  double log_upper_bound() const { return log_br_c - log_l; }
};

// t = ceil(4 N (epsilon/2)^-2 ln(1/delta)).
std::uint64_t sample_budget(double epsilon, double delta, double budget_n);

// S = ceil(4 (epsilon/2)^-2 ln(2/delta)) acceptances for adaptive mode.
std::uint64_t adaptive_target(double epsilon, double delta);

// Exponent 0.5 + 0.5/(2 alpha - 1) + 1/(2 alpha - 1.5); alpha must lie in (0.75, 1].
double suggest_n_exponent(double alpha);
// c * n^exponent with c = 1.
double suggest_N(const WeightedDigraph& g, double alpha);

EstimateReport estimate(const WeightedDigraph& g, const EstimatorConfig& cfg);
// Same, on a prepared scaled instance (n and alpha are taken from the arguments).
EstimateReport estimate_scaled(const ScaledInstance& inst, int n, double alpha, const EstimatorConfig& cfg);

// Key/value text, one key per line in the fixed order
// n, alpha, epsilon, delta, seed, mode, t, s, log_br_c, log_l, log_estimate,
// estimate, clamp_events, scaling_iters, wall_ms.
std::string to_text(const EstimateReport& report);

std::string format_number(double v);
const char* mode_name(EstimatorMode mode);

struct SampleResult {
  std::vector<HamiltonianCycle> cycles;
  std::uint64_t trials = 0;
  std::uint64_t accepted = 0;
  std::uint64_t discarded = 0;  // accepted cycles that use a padded (non-edge) entry
  std::size_t clamp_events = 0;
};

// Runs trials in index order until `count` cycles are kept or max_trials is hit.
// When `support` is given, accepted cycles using a structural zero of it are
// discarded; the kept cycles are then weight-proportional on the support itself.
// Cycles come back in trial-index order regardless of thread count.
SampleResult sample_cycles(const ScaledInstance& inst, const LogMatrix* support, std::uint64_t count,
                           std::uint64_t seed, std::uint64_t max_trials, unsigned threads);

}  // namespace hamcount
