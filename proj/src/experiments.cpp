#include "hamcount/experiments.hpp"

#include <cmath>
#include <sstream>

#include "hamcount/errors.hpp"
#include "hamcount/estimator.hpp"
#include "hamcount/parallel.hpp"
#include "hamcount/rng.hpp"

namespace hamcount {

double ratio_bound_exponent(double alpha) {
  if (!(alpha > 0.75 && alpha <= 1.0)) throw DomainError("ratio bound: alpha must lie in (0.75, 1]");
  return 1.0 + 1.0 / (2.0 * alpha - 1.5);
}

std::uint64_t cell_seed(std::uint64_t seed, int n, std::uint64_t trial) {
  CounterRng rng(seed, (static_cast<std::uint64_t>(n) << 32) ^ trial);
  return rng();
}

RatioStudy ratio_experiment(const std::vector<int>& n_values, double alpha, int trials_per_n, std::uint64_t seed,
                            unsigned threads, const OracleCaps& caps) {
  const double exponent = ratio_bound_exponent(alpha);
  for (int n : n_values) {
    if (n < 2) throw DomainError("ratio_experiment: n must be >= 2");
    if (static_cast<std::size_t>(n) > caps.hamilton) throw CapExceeded("hamilton_dp", n, caps.hamilton);
    if (static_cast<std::size_t>(n) > caps.permanent) throw CapExceeded("permanent_ryser", n, caps.permanent);
    if (static_cast<std::size_t>(n) > kIntegerPathCap) throw CapExceeded("integer pathway", n, kIntegerPathCap);
  }
  const std::size_t per_n = trials_per_n > 0 ? static_cast<std::size_t>(trials_per_n) : 0;

  RatioStudy study;
  study.records.resize(n_values.size() * per_n);
  parallel_chunks(study.records.size(), threads, [&](unsigned, std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      const int n = n_values[k / per_n];
      RatioRecord& rec = study.records[k];
      rec.n = n;
      rec.alpha = alpha;
      rec.seed = cell_seed(seed, n, k % per_n);
      rec.bound_exponent = exponent;
      const LogMatrix a = adjacency_matrix(gen_dense_digraph(n, alpha, rec.seed));
      rec.per_value = *permanent_ryser(a, caps.permanent).count;
      rec.ham_value = *hamilton_dp(a, caps.hamilton).count;
      rec.ratio = rec.ham_value > 0 ? static_cast<double>(rec.per_value) / static_cast<double>(rec.ham_value) : 0.0;
    }
  });

  // Ordinary least squares of log ratio on log n.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t m = 0;
  for (const RatioRecord& r : study.records) {
    if (r.ham_value == 0) continue;
    const double x = std::log(static_cast<double>(r.n));
    const double y = std::log(r.ratio);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  RatioSummary& s = study.summary;
  s.bound_exponent = exponent;
  s.points = m;
  const double denom = static_cast<double>(m) * sxx - sx * sx;
  if (m >= 2 && denom > 0) {
    s.fitted_exponent = (static_cast<double>(m) * sxy - sx * sy) / denom;
    s.fitted_log_constant = (sy - s.fitted_exponent * sx) / static_cast<double>(m);
  }
  s.flagged = s.fitted_exponent > exponent + 1.0;
  return study;
}

ReductionRecord reduction_check(const UndirectedGraph& g) {
  if (g.n() < 3 || g.n() > kUndirectedCountCap) throw DomainError("reduction_check: need 3 <= n <= 12");
  ReductionRecord rec;
  rec.hc_undirected = count_hc_undirected(g);
  rec.dhc_directed = *hamilton_dp(adjacency_matrix(symmetric_lift(g))).count;
  rec.consistent = rec.dhc_directed == 2 * rec.hc_undirected;
  return rec;
}

SweepSummary validation_sweep(int n_lo, int n_hi, double alpha, int runs, double epsilon, double delta,
                              std::uint64_t seed, unsigned threads) {
  if (n_lo < 2 || n_hi < n_lo) throw DomainError("validation_sweep: need 2 <= n_lo <= n_hi");
  if (static_cast<std::size_t>(n_hi) > OracleCaps{}.hamilton) throw CapExceeded("hamilton_dp", n_hi, OracleCaps{}.hamilton);
  SweepSummary sweep;
  sweep.target_coverage = 1.0 - delta;
  if (runs <= 0) return sweep;
  sweep.rows.resize(static_cast<std::size_t>(runs));
  const int span = n_hi - n_lo + 1;

  parallel_chunks(sweep.rows.size(), threads, [&](unsigned, std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      SweepRow& row = sweep.rows[k];
      row.run = static_cast<int>(k);
      row.n = n_lo + static_cast<int>(k % static_cast<std::size_t>(span));
      row.graph_seed = cell_seed(seed, row.n, 2 * k);
      row.estimator_seed = cell_seed(seed, row.n, 2 * k + 1);
      const WeightedDigraph g = gen_dense_digraph(row.n, alpha, row.graph_seed);
      row.oracle_ham = hamilton_dp(adjacency_matrix(g)).value();

      EstimatorConfig cfg;
      cfg.epsilon = epsilon;
      cfg.delta = delta;
      cfg.mode = EstimatorMode::kAdaptive;
      cfg.seed = row.estimator_seed;
      const EstimateReport rep = estimate(g, cfg);
      row.estimate = rep.estimate.value_or(HUGE_VAL);
      row.t = rep.t;
      row.s = rep.s;
      row.rel_error = row.oracle_ham > 0 ? (row.estimate - row.oracle_ham) / row.oracle_ham : HUGE_VAL;
      row.pass = row.oracle_ham > 0 && std::fabs(row.rel_error) <= epsilon;
    }
  });

  std::size_t passed = 0;
  for (const SweepRow& r : sweep.rows) passed += r.pass;
  sweep.coverage = static_cast<double>(passed) / static_cast<double>(sweep.rows.size());
  return sweep;
}

std::string to_csv(const RatioStudy& study) {
  std::ostringstream out;
  out << "n,alpha,seed,per,ham,ratio,bound_exponent\n";
  for (const RatioRecord& r : study.records) {
    out << r.n << ',' << format_number(r.alpha) << ',' << r.seed << ',' << r.per_value << ',' << r.ham_value << ','
        << format_number(r.ratio) << ',' << format_number(r.bound_exponent) << '\n';
  }
  return out.str();
}

std::string to_csv(const SweepSummary& sweep) {
  std::ostringstream out;
  out << "run,n,graph_seed,estimator_seed,oracle_ham,estimate,rel_error,t,s,pass\n";
  for (const SweepRow& r : sweep.rows) {
    out << r.run << ',' << r.n << ',' << r.graph_seed << ',' << r.estimator_seed << ',' << format_number(r.oracle_ham)
        << ',' << format_number(r.estimate) << ',' << format_number(r.rel_error) << ',' << r.t << ',' << r.s << ','
        << (r.pass ? 1 : 0) << '\n';
  }
  return out.str();
}

}  // namespace hamcount
