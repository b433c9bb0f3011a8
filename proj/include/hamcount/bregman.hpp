#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hamcount/log_matrix.hpp"

namespace hamcount {

// Entries may exceed 1 by this much (scaling round-off) and are clamped to 1.
inline constexpr double kEntryTolerance = 1e-12;
// Reduced row sums may dip below 0 by this much before it is treated as an error.
inline constexpr double kRowSumTolerance = 1e-9;

// g(r) = r + log(r)/2 + e - 1 for r >= 1, and 1 + (e-1) r on [0, 1].
double bregman_g(double r);

// log(g(r) / e), the per-row factor of Br in log space.
double log_bregman_factor(double r);

// Row sums of a [0,1] matrix together with log Br = sum_i (log g(r(i)) - 1).
struct RowSums {
  std::vector<double> sums;
  double log_br = 0.0;

  // Rows of a. Entries above 1 (within kEntryTolerance) are clamped and counted.
  static RowSums of(const LogMatrix& a, std::size_t* clamp_events = nullptr);
  static RowSums of(std::vector<double> sums);

  double recompute_log_br() const;
};

// log Br(A). Rejects the empty matrix and entries above 1 + kEntryTolerance.
double log_br(const LogMatrix& a, std::size_t* clamp_events = nullptr);

// For every row k, log Br of the matrix with row k and the first column removed,
// given row sums and the first column. Uses one shared product and a subtraction per
// row, so the whole vector costs O(r). Writes reduced row sums r(j) - D(j,1) into
// reduced (clamped at 0) and returns log of the shared product.
double br_minor_all(std::span<const double> row_sums, std::span<const double> first_col,
                    std::span<double> out_log_br, std::span<double> reduced);

std::vector<double> br_minor_all(const RowSums& rs, std::span<const double> first_col);

}  // namespace hamcount
