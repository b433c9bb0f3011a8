#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hamcount/digraph.hpp"
#include "hamcount/exact.hpp"

namespace hamcount {

// Permanent-to-Hamilton ratio of one 0-1 instance.
// CSV columns: n,alpha,seed,per,ham,ratio,bound_exponent
struct RatioRecord {
  int n = 0;
  double alpha = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t per_value = 0;
  std::uint64_t ham_value = 0;
  double ratio = 0.0;           // per / ham, 0 when ham == 0
  double bound_exponent = 0.0;  // 1 + 1/(2 alpha - 1.5)
};

struct RatioSummary {
  double fitted_exponent = 0.0;  // OLS slope of log ratio against log n
  double fitted_log_constant = 0.0;
  double bound_exponent = 0.0;
  std::size_t points = 0;
  bool flagged = false;  // fitted exponent above bound + 1
};

struct RatioStudy {
  std::vector<RatioRecord> records;
  RatioSummary summary;
};

double ratio_bound_exponent(double alpha);

// Per-cell seed for instance `trial` at size n, so cells do not depend on each other.
std::uint64_t cell_seed(std::uint64_t seed, int n, std::uint64_t trial);

RatioStudy ratio_experiment(const std::vector<int>& n_values, double alpha, int trials_per_n, std::uint64_t seed,
                            unsigned threads = 1, const OracleCaps& caps = {});

struct ReductionRecord {
  std::uint64_t hc_undirected = 0;
  std::uint64_t dhc_directed = 0;
  bool consistent = false;
};

ReductionRecord reduction_check(const UndirectedGraph& g);

// One estimator run against the exact oracle.
// CSV columns: run,n,graph_seed,estimator_seed,oracle_ham,estimate,rel_error,t,s,pass
struct SweepRow {
  int run = 0;
  int n = 0;
  std::uint64_t graph_seed = 0;
  std::uint64_t estimator_seed = 0;
  double oracle_ham = 0.0;
  double estimate = 0.0;
  double rel_error = 0.0;
  std::uint64_t t = 0;
  std::uint64_t s = 0;
  bool pass = false;  // estimate within (1 +- epsilon) oracle
};

struct SweepSummary {
  std::vector<SweepRow> rows;
  double coverage = 0.0;  // fraction of rows that pass
  double target_coverage = 0.0;  // 1 - delta
};

// `runs` instances, sizes cycling through [n_lo, n_hi], adaptive estimator.
SweepSummary validation_sweep(int n_lo, int n_hi, double alpha, int runs, double epsilon, double delta,
                              std::uint64_t seed, unsigned threads = 1);

std::string to_csv(const RatioStudy& study);
std::string to_csv(const SweepSummary& sweep);

}  // namespace hamcount
