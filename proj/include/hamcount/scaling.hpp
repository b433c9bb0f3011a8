#pragma once

#include <cstddef>
#include <vector>

#include "hamcount/log_matrix.hpp"

namespace hamcount {

struct ScalingOptions {
  std::size_t max_sweeps = 1'000'000;
  // Band half-width is tolerance_factor / n^2.
  double tolerance_factor = 0.1;
};

struct ScalingDiagnostics {
  std::size_t sweeps = 0;
  double max_deviation = 0.0;  // max |sum - 1| over rows and columns of B
  double tolerance = 0.0;
  std::size_t clamped_entries = 0;
};

// Result of scaling: C = Z X A Y with entries in [0,1] and row maxima 1.
struct ScaledInstance {
  LogMatrix c;
  double log_l = 0.0;      // log prod_i X(i,i) Y(i,i) Z(i,i)
  double gamma_log = 0.0;  // log of the padding value
  double epsilon = 0.0;
  std::vector<double> log_x, log_y, log_z;
  ScalingDiagnostics diagnostics;

  std::size_t order() const { return c.order(); }
};

// log gamma = log(epsilon/3) - log((n-1)!).
double padding_log_gamma(std::size_t n, double epsilon);

// Replaces every structural zero (diagonal included) with gamma. Requires n >= 2.
LogMatrix pad_zeros(const LogMatrix& a, double epsilon);

// Log-domain iterative proportional fitting to a nearly doubly stochastic B = X A Y,
// then row-normalizes into C. Requires a strictly positive matrix. The returned
// instance has gamma_log/epsilon unset; use scale_padded to fill them.
ScaledInstance scale(const LogMatrix& a_padded, const ScalingOptions& options = {});

// pad_zeros followed by scale, recording gamma and epsilon.
ScaledInstance scale_padded(const LogMatrix& a, double epsilon, const ScalingOptions& options = {});

// max over rows and columns of |sum - 1| for the matrix exp(logs(i,j) + x_i + y_j).
double stochastic_deviation(const LogMatrix& a, const std::vector<double>& log_x, const std::vector<double>& log_y);

}  // namespace hamcount
