#include "hamcount/estimator.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>

#include "hamcount/bregman.hpp"
#include "hamcount/errors.hpp"
#include "hamcount/parallel.hpp"

namespace hamcount {

namespace {

constexpr std::uint64_t kBatch = 16384;

void check_unit_interval(const char* name, double v) {
  if (!(v > 0.0 && v <= 1.0)) throw DomainError(std::string(name) + " must lie in (0, 1]");
}

// Runs trials [first, first + count) and converts each outcome with `keep`.
// Output order is trial-index order for any thread count.
template <typename Record, typename Keep>
std::vector<Record> run_batch(const SamplerTables& tables, std::uint64_t seed, std::uint64_t first,
                              std::uint64_t count, unsigned threads, Keep keep) {
  std::vector<Record> out(count);
  parallel_chunks(count, threads, [&](unsigned, std::size_t begin, std::size_t end) {
    TrialRunner runner(tables);
    for (std::size_t k = begin; k < end; ++k) {
      CounterRng rng(seed, first + k);
      out[k] = keep(runner.run(rng));
    }
  });
  return out;
}

struct TrialSummary {
  bool accepted = false;
  std::size_t clamp_events = 0;
  double max_clamp = 0.0;
};

TrialSummary summarize(const TrialOutcome& o) { return {o.accepted, o.clamp_events, o.max_clamp}; }

}  // namespace

void EstimatorConfig::validate() const {
  check_unit_interval("epsilon", epsilon);
  check_unit_interval("delta", delta);
  if (max_trials == 0) throw DomainError("max_trials must be positive");
  if (mode == EstimatorMode::kFixed && !(budget_n >= 1.0)) throw DomainError("N must be >= 1");
}

std::uint64_t sample_budget(double epsilon, double delta, double budget_n) {
  check_unit_interval("epsilon", epsilon);
  check_unit_interval("delta", delta);
  if (!(budget_n >= 1.0) || !std::isfinite(budget_n)) throw DomainError("N must be finite and >= 1");
  const double half = epsilon / 2.0;
  const double t = 4.0 * budget_n / (half * half) * std::log(1.0 / delta);
  if (t >= 1.8e19) throw DomainError("sample budget exceeds 64-bit range");
  // Guard the ceiling against round-off in exact products such as 4*1*4*1 = 16.
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(t * (1.0 - 1e-15))));
}

std::uint64_t adaptive_target(double epsilon, double delta) {
  check_unit_interval("epsilon", epsilon);
  check_unit_interval("delta", delta);
  const double half = epsilon / 2.0;
  return static_cast<std::uint64_t>(std::ceil(4.0 / (half * half) * std::log(2.0 / delta) * (1.0 - 1e-15)));
}

double suggest_n_exponent(double alpha) {
  if (!(alpha > 0.75 && alpha <= 1.0)) throw DomainError("suggest_N: alpha must lie in (0.75, 1]");
  return 0.5 + 0.5 / (2.0 * alpha - 1.0) + 1.0 / (2.0 * alpha - 1.5);
}

double suggest_N(const WeightedDigraph& g, double alpha) {
  return std::pow(static_cast<double>(g.n()), suggest_n_exponent(alpha));
}

EstimateReport estimate(const WeightedDigraph& g, const EstimatorConfig& cfg) {
  cfg.validate();
  if (g.n() < 2) throw DomainError("estimate: need n >= 2");
  const auto start = std::chrono::steady_clock::now();
  const ScaledInstance inst = scale_padded(adjacency_matrix(g), cfg.epsilon, cfg.scaling);
  EstimateReport report = estimate_scaled(inst, g.n(), density(g).alpha, cfg);
  report.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

EstimateReport estimate_scaled(const ScaledInstance& inst, int n, double alpha, const EstimatorConfig& cfg) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  const SamplerTables tables(inst);

  EstimateReport rep;
  rep.n = n;
  rep.alpha = alpha;
  rep.epsilon = cfg.epsilon;
  rep.delta = cfg.delta;
  rep.seed = cfg.seed;
  rep.mode = cfg.mode;
  rep.log_br_c = RowSums::of(inst.c).log_br;
  rep.log_l = inst.log_l;
  rep.scaling_iters = inst.diagnostics.sweeps;
  rep.scaling_deviation = inst.diagnostics.max_deviation;

  auto absorb = [&](const TrialSummary& ts) {
    rep.clamp_events += ts.clamp_events;
    rep.max_clamp = std::max(rep.max_clamp, ts.max_clamp);
  };

  if (cfg.mode == EstimatorMode::kFixed) {
    rep.target = sample_budget(cfg.epsilon, cfg.delta, cfg.budget_n);
    if (rep.target > cfg.max_trials) {
      throw DomainError("fixed budget of " + std::to_string(rep.target) + " trials exceeds max_trials " +
                        std::to_string(cfg.max_trials));
    }
    for (std::uint64_t first = 0; first < rep.target; first += kBatch) {
      const std::uint64_t count = std::min(kBatch, rep.target - first);
      for (const TrialSummary& ts : run_batch<TrialSummary>(tables, cfg.seed, first, count, cfg.threads, summarize)) {
        rep.s += ts.accepted;
        absorb(ts);
      }
    }
    rep.t = rep.target;
  } else {
    rep.target = cfg.target_acceptances > 0 ? cfg.target_acceptances : adaptive_target(cfg.epsilon, cfg.delta);
    bool done = false;
    for (std::uint64_t first = 0; !done && first < cfg.max_trials; first += kBatch) {
      const std::uint64_t count = std::min(kBatch, cfg.max_trials - first);
      const auto batch = run_batch<TrialSummary>(tables, cfg.seed, first, count, cfg.threads, summarize);
      for (std::uint64_t k = 0; k < count; ++k) {
        absorb(batch[k]);
        rep.s += batch[k].accepted;
        rep.t = first + k + 1;
        if (rep.s == rep.target) {
          done = true;
          break;
        }
      }
    }
    rep.hit_trial_cap = !done;
  }

  if (rep.s > 0) {
    rep.log_estimate = -rep.log_l + std::log(static_cast<double>(rep.s)) - std::log(static_cast<double>(rep.t)) +
                       rep.log_br_c;
    if (rep.log_estimate < std::log(std::numeric_limits<double>::max())) rep.estimate = std::exp(rep.log_estimate);
  } else {
    rep.log_estimate = LogMatrix::kZero;
    rep.estimate = 0.0;
  }
  rep.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

const char* mode_name(EstimatorMode mode) { return mode == EstimatorMode::kFixed ? "fixed" : "adaptive"; }

std::string format_number(double v) {
  if (std::isinf(v)) return v < 0 ? "-inf" : "inf";
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

std::string to_text(const EstimateReport& r) {
  std::string out;
  auto line = [&](const char* key, const std::string& value) {
    out += key;
    out += '=';
    out += value;
    out += '\n';
  };
  line("n", std::to_string(r.n));
  line("alpha", format_number(r.alpha));
  line("epsilon", format_number(r.epsilon));
  line("delta", format_number(r.delta));
  line("seed", std::to_string(r.seed));
  line("mode", mode_name(r.mode));
  line("t", std::to_string(r.t));
  line("s", std::to_string(r.s));
  line("log_br_c", format_number(r.log_br_c));
  line("log_l", format_number(r.log_l));
  line("log_estimate", format_number(r.log_estimate));
  line("estimate", r.estimate ? format_number(*r.estimate) : "overflow");
  line("clamp_events", std::to_string(r.clamp_events));
  line("scaling_iters", std::to_string(r.scaling_iters));
  char ms[32];
  std::snprintf(ms, sizeof ms, "%.3f", r.wall_ms);
  line("wall_ms", ms);
  return out;
}

SampleResult sample_cycles(const ScaledInstance& inst, const LogMatrix* support, std::uint64_t count,
                           std::uint64_t seed, std::uint64_t max_trials, unsigned threads) {
  const SamplerTables tables(inst);
  SampleResult result;
  auto keep = [](TrialOutcome o) { return o; };
  for (std::uint64_t first = 0; result.cycles.size() < count && first < max_trials; first += kBatch) {
    const std::uint64_t batch_size = std::min(kBatch, max_trials - first);
    const auto batch = run_batch<TrialOutcome>(tables, seed, first, batch_size, threads, keep);
    for (std::uint64_t k = 0; k < batch_size && result.cycles.size() < count; ++k) {
      result.trials = first + k + 1;
      result.clamp_events += batch[k].clamp_events;
      if (!batch[k].accepted) continue;
      ++result.accepted;
      if (support && !is_valid_cycle(*support, batch[k].cycle)) {
        ++result.discarded;
        continue;
      }
      result.cycles.push_back(batch[k].cycle);
    }
  }
  return result;
}

}  // namespace hamcount
