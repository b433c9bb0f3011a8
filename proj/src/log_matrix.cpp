#include "hamcount/log_matrix.hpp"

#include "hamcount/errors.hpp"

namespace hamcount {

LogMatrix LogMatrix::from_linear(const std::vector<std::vector<double>>& rows) {
  LogMatrix m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) {
      throw DomainError("LogMatrix::from_linear: row " + std::to_string(i + 1) + " has " +
                        std::to_string(rows[i].size()) + " entries, expected " +
                        std::to_string(rows.size()));
    }
    for (std::size_t j = 0; j < rows.size(); ++j) m.set_value(i, j, rows[i][j]);
  }
  return m;
}

void LogMatrix::set_value(std::size_t i, std::size_t j, double w) {
  if (!(w >= 0.0) || !std::isfinite(w)) {
    throw DomainError("LogMatrix: entries must be finite and nonnegative");
  }
  set_log(i, j, w == 0.0 ? kZero : std::log(w));
}

std::size_t LogMatrix::nonzero_count() const {
  std::size_t count = 0;
  for (double v : logs_) count += (v != kZero);
  return count;
}

std::vector<double> LogMatrix::to_linear() const {
  std::vector<double> out(logs_.size());
  for (std::size_t k = 0; k < logs_.size(); ++k) out[k] = std::exp(logs_[k]);
  return out;
}

LogMatrix LogMatrix::minor(std::size_t row, std::size_t col) const {
  if (order_ == 0 || row >= order_ || col >= order_) throw DomainError("LogMatrix::minor: index out of range");
  LogMatrix out(order_ - 1);
  for (std::size_t i = 0, oi = 0; i < order_; ++i) {
    if (i == row) continue;
    for (std::size_t j = 0, oj = 0; j < order_; ++j) {
      if (j == col) continue;
      out.set_log(oi, oj++, log_at(i, j));
    }
    ++oi;
  }
  return out;
}

LogMatrix LogMatrix::contract_first(std::size_t i) const {
  if (order_ < 2 || i == 0 || i >= order_) {
    throw DomainError("LogMatrix::contract_first: need order >= 2 and 0 < i < order");
  }
  LogMatrix out(order_ - 1);
  for (std::size_t r = 1; r < order_; ++r) {
    const std::size_t src = (r == i) ? 0 : r;
    for (std::size_t c = 1; c < order_; ++c) out.set_log(r - 1, c - 1, log_at(src, c));
  }
  return out;
}

}  // namespace hamcount
