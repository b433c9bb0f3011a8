#include "hamcount/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hamcount/errors.hpp"

namespace hamcount {

namespace {

// log sum_k exp(v_k), evaluated relative to the maximum.
template <typename Term>
double log_sum_exp(std::size_t count, Term term) {
  double m = LogMatrix::kZero;
  for (std::size_t k = 0; k < count; ++k) m = std::max(m, term(k));
  if (m == LogMatrix::kZero) return m;
  double s = 0.0;
  for (std::size_t k = 0; k < count; ++k) s += std::exp(term(k) - m);
  return m + std::log(s);
}

}  // namespace

double padding_log_gamma(std::size_t n, double epsilon) {
  if (n < 1) throw DomainError("padding: order must be >= 1");
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw DomainError("padding: epsilon must lie in (0, 1]");
  return std::log(epsilon / 3.0) - std::lgamma(static_cast<double>(n));
}

LogMatrix pad_zeros(const LogMatrix& a, double epsilon) {
  if (a.order() < 2) throw DomainError("pad_zeros: order must be >= 2");
  const double gamma_log = padding_log_gamma(a.order(), epsilon);
  LogMatrix out = a;
  for (std::size_t i = 0; i < a.order(); ++i)
    for (std::size_t j = 0; j < a.order(); ++j)
      if (a.is_zero(i, j)) out.set_log(i, j, gamma_log);
  return out;
}

double stochastic_deviation(const LogMatrix& a, const std::vector<double>& log_x, const std::vector<double>& log_y) {
  const std::size_t n = a.order();
  double dev = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lse = log_sum_exp(n, [&](std::size_t j) { return a.log_at(i, j) + log_x[i] + log_y[j]; });
    dev = std::max(dev, std::fabs(std::exp(lse) - 1.0));
  }
  for (std::size_t j = 0; j < n; ++j) {
    const double lse = log_sum_exp(n, [&](std::size_t i) { return a.log_at(i, j) + log_x[i] + log_y[j]; });
    dev = std::max(dev, std::fabs(std::exp(lse) - 1.0));
  }
  return dev;
}

ScaledInstance scale(const LogMatrix& a, const ScalingOptions& options) {
  const std::size_t n = a.order();
  if (n < 1) throw DomainError("scale: empty matrix");
  for (std::size_t i = 0; i < n; ++i)
    for (double v : a.row_logs(i))
      if (!std::isfinite(v)) throw DomainError("scale: matrix must be strictly positive (pad zeros first)");

  ScaledInstance inst;
  inst.log_x.assign(n, 0.0);
  inst.log_y.assign(n, 0.0);
  auto& x = inst.log_x;
  auto& y = inst.log_y;
  auto& diag = inst.diagnostics;
  diag.tolerance = options.tolerance_factor / (static_cast<double>(n) * static_cast<double>(n));

  for (;;) {
    diag.max_deviation = stochastic_deviation(a, x, y);
    if (diag.max_deviation < diag.tolerance) break;
    if (diag.sweeps >= options.max_sweeps) {
      throw ScalingError("scale: no convergence after " + std::to_string(diag.sweeps) +
                             " sweeps; achieved deviation " + std::to_string(diag.max_deviation) +
                             ", required " + std::to_string(diag.tolerance),
                         diag.max_deviation);
    }
    for (std::size_t i = 0; i < n; ++i)
      x[i] = -log_sum_exp(n, [&](std::size_t j) { return a.log_at(i, j) + y[j]; });
    for (std::size_t j = 0; j < n; ++j)
      y[j] = -log_sum_exp(n, [&](std::size_t i) { return a.log_at(i, j) + x[i]; });
    ++diag.sweeps;
  }

  inst.log_z.resize(n);
  inst.c = LogMatrix(n);
  inst.log_l = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row_max = LogMatrix::kZero;
    for (std::size_t j = 0; j < n; ++j) row_max = std::max(row_max, a.log_at(i, j) + x[i] + y[j]);
    inst.log_z[i] = -row_max;
    for (std::size_t j = 0; j < n; ++j) {
      double v = (a.log_at(i, j) + x[i] + y[j]) - row_max;
      if (v > 0.0) {
        v = 0.0;
        ++diag.clamped_entries;
      }
      inst.c.set_log(i, j, v);
    }
    inst.log_l += x[i] + y[i] + inst.log_z[i];
  }
  return inst;
}

ScaledInstance scale_padded(const LogMatrix& a, double epsilon, const ScalingOptions& options) {
  ScaledInstance inst = scale(pad_zeros(a, epsilon), options);
  inst.gamma_log = padding_log_gamma(a.order(), epsilon);
  inst.epsilon = epsilon;
  return inst;
}

}  // namespace hamcount
