#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "hamcount/digraph.hpp"
#include "hamcount/log_matrix.hpp"

namespace hamcount {

// Exact permanent / Hamilton value. log_value is -infinity for zero. For 0-1
// inputs within the integer pathway the exact count is carried as well.
struct ExactValue {
  double log_value = LogMatrix::kZero;
  std::optional<std::uint64_t> count;

  bool is_zero() const { return log_value == LogMatrix::kZero; }
  double value() const;
};

struct OracleCaps {
  std::size_t permanent = 24;
  std::size_t hamilton = 22;

  // Defaults overridden by PER_ORACLE_CAP / HAM_ORACLE_CAP when set.
  static OracleCaps from_environment();
};

inline constexpr std::size_t kEnumerationCap = 9;
inline constexpr std::size_t kIntegerPathCap = 20;
inline constexpr int kUndirectedCountCap = 12;

// True when every entry is exactly 0 or 1.
bool is_zero_one(const LogMatrix& a);

// Ryser's formula with Gray-code subset order, O(2^n n).
ExactValue permanent_ryser(const LogMatrix& a, std::size_t cap = OracleCaps{}.permanent);

// Sum over all n! permutations. The empty matrix has permanent 1.
ExactValue permanent_enum(const LogMatrix& a);

// Sum over permutations (k_1..k_{n-1}) of {2..n} of
// A(k_1,1) A(k_2,k_1) ... A(1,k_{n-1}); A(1,1) when n = 1.
ExactValue hamilton_enum(const LogMatrix& a);

// Held-Karp style subset DP anchored at vertex 1, O(2^n n^2) time. Keeps only two
// popcount layers alive so memory stays at O(C(n-1, (n-1)/2) n).
ExactValue hamilton_dp(const LogMatrix& a, std::size_t cap = OracleCaps{}.hamilton);

// Recursive first-column expansion ham(A) = sum_{i>=2} A(i,1) ham(A'_{i1}).
ExactValue hamilton_expand(const LogMatrix& a);

// Number of undirected Hamiltonian cycles; a cycle and its reversal count once.
std::uint64_t count_hc_undirected(const UndirectedGraph& g);

}  // namespace hamcount
