#include "hamcount/bregman.hpp"

#include <cmath>
#include <numbers>

#include "hamcount/errors.hpp"

namespace hamcount {

double bregman_g(double r) {
  if (!(r >= 0.0)) throw DomainError("bregman_g: r must be nonnegative");
  constexpr double e = std::numbers::e;
  if (r >= 1.0) return r + 0.5 * std::log(r) + e - 1.0;
  return 1.0 + (e - 1.0) * r;
}

double log_bregman_factor(double r) { return std::log(bregman_g(r)) - 1.0; }

RowSums RowSums::of(const LogMatrix& a, std::size_t* clamp_events) {
  if (a.empty()) throw DomainError("Br: empty matrix");
  RowSums rs;
  rs.sums.resize(a.order());
  for (std::size_t i = 0; i < a.order(); ++i) {
    double s = 0.0;
    for (double lv : a.row_logs(i)) {
      if (lv > 0.0) {
        if (lv > std::log1p(kEntryTolerance)) {
          throw DomainError("Br: matrix entry exceeds 1 (log value " + std::to_string(lv) + ")");
        }
        if (clamp_events) ++*clamp_events;
        lv = 0.0;
      }
      s += std::exp(lv);
    }
    rs.sums[i] = s;
  }
  rs.log_br = rs.recompute_log_br();
  return rs;
}

RowSums RowSums::of(std::vector<double> sums) {
  RowSums rs;
  rs.sums = std::move(sums);
  rs.log_br = rs.recompute_log_br();
  return rs;
}

double RowSums::recompute_log_br() const {
  double total = 0.0;
  for (double r : sums) total += log_bregman_factor(r);
  return total;
}

double log_br(const LogMatrix& a, std::size_t* clamp_events) { return RowSums::of(a, clamp_events).log_br; }

double br_minor_all(std::span<const double> row_sums, std::span<const double> first_col,
                    std::span<double> out_log_br, std::span<double> reduced) {
  const std::size_t r = row_sums.size();
  if (first_col.size() != r || out_log_br.size() != r || reduced.size() != r) {
    throw DomainError("br_minor_all: length mismatch");
  }
  double shared = 0.0;
  for (std::size_t k = 0; k < r; ++k) {
    double left = row_sums[k] - first_col[k];
    if (left < 0.0) {
      if (left < -kRowSumTolerance) throw NumericError("br_minor_all: reduced row sum is negative");
      left = 0.0;
    }
    reduced[k] = left;
    out_log_br[k] = log_bregman_factor(left);
    shared += out_log_br[k];
  }
  for (std::size_t k = 0; k < r; ++k) out_log_br[k] = shared - out_log_br[k];
  return shared;
}

std::vector<double> br_minor_all(const RowSums& rs, std::span<const double> first_col) {
  std::vector<double> out(rs.sums.size()), reduced(rs.sums.size());
  br_minor_all(rs.sums, first_col, out, reduced);
  return out;
}

}  // namespace hamcount
