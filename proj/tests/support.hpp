#pragma once

// Test-only helpers: random instance generators and statistical checks that do not
// go through the code paths under test.

#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "hamcount/log_matrix.hpp"

namespace hamcount::testing {

// Random matrix with entries uniform in [lo, hi); each entry is zeroed with
// probability zero_prob.
inline LogMatrix random_matrix(std::size_t n, std::mt19937_64& rng, double lo = 0.0, double hi = 1.0,
                               double zero_prob = 0.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::bernoulli_distribution zero(zero_prob);
  LogMatrix a(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double v = u(rng);
      a.set_value(i, j, zero(rng) ? 0.0 : v);
    }
  return a;
}

inline LogMatrix random_zero_one(std::size_t n, std::mt19937_64& rng, double p_one = 0.6) {
  std::bernoulli_distribution one(p_one);
  LogMatrix a(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a.set_value(i, j, one(rng) ? 1.0 : 0.0);
  return a;
}

inline LogMatrix ones(std::size_t n, bool zero_diagonal) {
  LogMatrix a(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a.set_value(i, j, (zero_diagonal && i == j) ? 0.0 : 1.0);
  return a;
}

inline LogMatrix directed_cycle(std::size_t n) {
  LogMatrix a(n);
  for (std::size_t i = 0; i < n; ++i) a.set_value(i, (i + 1) % n, 1.0);
  return a;
}

inline bool rel_close(double a, double b, double tol) {
  if (a == b) return true;
  return std::fabs(a - b) <= tol * std::max(std::fabs(a), std::fabs(b));
}

// Upper-tail p-value of Pearson's chi-square statistic against equal class
// probabilities over `classes` categories (unseen categories count as zero).
template <typename Key>
double uniform_chi_square_pvalue(const std::map<Key, std::uint64_t>& counts, std::size_t classes) {
  std::uint64_t total = 0;
  for (const auto& [k, c] : counts) total += c;
  const double expected = static_cast<double>(total) / static_cast<double>(classes);
  double stat = 0.0;
  for (const auto& [k, c] : counts) {
    const double d = static_cast<double>(c) - expected;
    stat += d * d / expected;
  }
  stat += expected * static_cast<double>(classes - counts.size());
  boost::math::chi_squared dist(static_cast<double>(classes - 1));
  return boost::math::cdf(boost::math::complement(dist, stat));
}

}  // namespace hamcount::testing
