#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace hamcount {

// Dense square matrix of nonnegative reals stored as natural logarithms.
// A structural zero is stored as -infinity (kZero); every other entry is finite.
// Indices are 0-based. Order 0 is permitted for the empty matrix.
class LogMatrix {
 public:
  static constexpr double kZero = -std::numeric_limits<double>::infinity();

  LogMatrix() = default;
  explicit LogMatrix(std::size_t order) : order_(order), logs_(order * order, kZero) {}

  // Builds from linear entries; zeros become structural zeros. Rejects negative or
  // non-finite entries and non-square input.
  static LogMatrix from_linear(const std::vector<std::vector<double>>& rows);

  std::size_t order() const { return order_; }
  bool empty() const { return order_ == 0; }

  double log_at(std::size_t i, std::size_t j) const { return logs_[i * order_ + j]; }
  double value(std::size_t i, std::size_t j) const { return std::exp(log_at(i, j)); }
  bool is_zero(std::size_t i, std::size_t j) const { return log_at(i, j) == kZero; }

  // Stores log_value as-is; pass kZero for a structural zero.
  void set_log(std::size_t i, std::size_t j, double log_value) { logs_[i * order_ + j] = log_value; }
  // Stores log(w); w == 0 stores a structural zero.
  void set_value(std::size_t i, std::size_t j, double w);

  std::span<const double> row_logs(std::size_t i) const {
    return {logs_.data() + i * order_, order_};
  }

  std::size_t nonzero_count() const;

  // Linear copy, row-major.
  std::vector<double> to_linear() const;

  // A_{ij}: row i and column j removed.
  LogMatrix minor(std::size_t row, std::size_t col) const;

  // A'_{i1}: rows i and 0 swapped, then row 0 and column 0 removed. Old row 0
  // (without its first entry) ends up at row i-1 of the result.
  LogMatrix contract_first(std::size_t i) const;

  bool operator==(const LogMatrix&) const = default;

 private:
  std::size_t order_ = 0;
  std::vector<double> logs_;
};

}  // namespace hamcount
