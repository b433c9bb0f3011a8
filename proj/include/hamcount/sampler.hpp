#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "hamcount/digraph.hpp"
#include "hamcount/log_matrix.hpp"
#include "hamcount/rng.hpp"
#include "hamcount/scaling.hpp"

namespace hamcount {

// Sum of level probabilities may exceed 1 by this much before it is an error.
inline constexpr double kProbabilityTolerance = 1e-9;

// Selection vector of the sequential first-column procedure, 1-based values:
// 1 < pi(k) <= n-k+1 for k < n and pi(n) = 1.
struct SelectionVector {
  std::vector<int> pi;

  std::size_t size() const { return pi.size(); }
  int operator()(std::size_t k) const { return pi[k - 1]; }  // 1-based access

  // Throws DomainError when the vector is malformed.
  void validate() const;

  bool operator==(const SelectionVector&) const = default;
};

// (1, k_1, ..., k_{n-1}, 1).
struct HamiltonianCycle {
  std::vector<Vertex> vertices;
  double log_weight = 0.0;

  // Consecutive (tail, head) pairs.
  std::vector<std::pair<Vertex, Vertex>> arcs() const;
};

struct TrialOutcome {
  bool accepted = false;
  SelectionVector pi;     // set on acceptance
  HamiltonianCycle cycle;  // set on acceptance
  int levels_completed = 0;
  std::optional<int> rejection_level;
  std::size_t clamp_events = 0;
  double max_clamp = 0.0;  // largest excess of sum p(i) over 1 that was clamped
};

// Recovers the cycle selected by pi with the O(n^2) backward row-position trace.
HamiltonianCycle recover(const SelectionVector& pi);

// Original-matrix positions (row, column), 1-based, of the entries selected by the
// sequential procedure for pi. Entry k lies in column k.
std::vector<std::pair<int, int>> shc_trace(const LogMatrix& a, const SelectionVector& pi);

// True if cycle visits every vertex of an order-n instance once, starts and ends at 1,
// and every arc is a nonzero entry of a.
bool is_valid_cycle(const LogMatrix& a, const HamiltonianCycle& cycle);
bool is_valid_cycle(const WeightedDigraph& g, const std::vector<Vertex>& vertices);

// Per-instance tables shared by every trial: C column-major in log and linear form,
// row-major linear form for periodic row-sum refresh, and the initial row sums.
class SamplerTables {
 public:
  explicit SamplerTables(const ScaledInstance& inst);

  std::size_t order() const { return n_; }
  std::size_t recompute_every() const { return recompute_every_; }
  void set_recompute_every(std::size_t levels);

 private:
  friend class TrialRunner;

  std::size_t n_;
  std::size_t recompute_every_;
  std::vector<double> log_cols_;
  std::vector<double> lin_cols_;
  std::vector<double> lin_rows_;
  std::vector<double> initial_sums_;
  double initial_log_br_;
  LogMatrix c_;
};

// Runs single trials against fixed tables. Owns O(n) scratch; not thread-safe,
// use one runner per thread.
class TrialRunner {
 public:
  explicit TrialRunner(const SamplerTables& tables);

  TrialOutcome run(CounterRng& rng);

 private:
  const SamplerTables& t_;
  std::vector<std::size_t> rows_;
  std::vector<double> sums_, col_, minor_log_br_, reduced_, prob_;
};

// One trial on a scaled instance. Builds tables each call; prefer TrialRunner for loops.
TrialOutcome run_trial(const ScaledInstance& inst, CounterRng& rng);

}  // namespace hamcount
