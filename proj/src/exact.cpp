#include "hamcount/exact.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <string>
#include <vector>

#include "hamcount/errors.hpp"

namespace hamcount {

double ExactValue::value() const { return std::exp(log_value); }

OracleCaps OracleCaps::from_environment() {
  OracleCaps caps;
  auto read = [](const char* name, std::size_t& slot) {
    if (const char* raw = std::getenv(name)) {
      char* end = nullptr;
      const unsigned long v = std::strtoul(raw, &end, 10);
      if (end == raw || *end != '\0' || v == 0) {
        throw DomainError(std::string(name) + " must be a positive integer");
      }
      slot = v;
    }
  };
  read("PER_ORACLE_CAP", caps.permanent);
  read("HAM_ORACLE_CAP", caps.hamilton);
  return caps;
}

bool is_zero_one(const LogMatrix& a) {
  for (std::size_t i = 0; i < a.order(); ++i)
    for (double v : a.row_logs(i))
      if (v != LogMatrix::kZero && v != 0.0) return false;
  return true;
}

namespace {

// Linear copy with every row and then every column divided by its maximum, so all
// entries lie in [0,1]. Each permutation and each Hamiltonian cycle uses every row
// and column once, so the value scales by exp(log_scale).
struct Normalized {
  std::size_t n = 0;
  std::vector<double> w;  // row-major
  double log_scale = 0.0;
  bool zero = false;

  double at(std::size_t i, std::size_t j) const { return w[i * n + j]; }
};

Normalized normalize(const LogMatrix& a, bool skip_diagonal) {
  Normalized out;
  out.n = a.order();
  const std::size_t n = out.n;
  std::vector<double> logs(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      logs[i * n + j] = (skip_diagonal && i == j && n >= 2) ? LogMatrix::kZero : a.log_at(i, j);

  for (std::size_t i = 0; i < n && !out.zero; ++i) {
    const double m = *std::max_element(logs.begin() + i * n, logs.begin() + (i + 1) * n);
    if (m == LogMatrix::kZero) {
      out.zero = true;
      break;
    }
    for (std::size_t j = 0; j < n; ++j) logs[i * n + j] -= m;
    out.log_scale += m;
  }
  for (std::size_t j = 0; j < n && !out.zero; ++j) {
    double m = LogMatrix::kZero;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, logs[i * n + j]);
    if (m == LogMatrix::kZero) {
      out.zero = true;
      break;
    }
    for (std::size_t i = 0; i < n; ++i) logs[i * n + j] -= m;
    out.log_scale += m;
  }
  out.w.resize(n * n);
  for (std::size_t k = 0; k < n * n; ++k) out.w[k] = std::exp(logs[k]);
  return out;
}

ExactValue from_sum(long double sum, double log_scale) {
  ExactValue v;
  if (sum > 0) v.log_value = static_cast<double>(std::log(sum)) + log_scale;
  return v;
}

ExactValue from_count(std::uint64_t count) {
  ExactValue v;
  v.count = count;
  if (count > 0) v.log_value = std::log(static_cast<double>(count));
  return v;
}

ExactValue zero_value(bool zero_one) {
  ExactValue v;
  if (zero_one) v.count = 0;
  return v;
}

void require_cap(const char* oracle, std::size_t order, std::size_t cap) {
  if (order > cap) throw CapExceeded(oracle, order, cap);
}

// Neumaier compensated accumulator.
struct CompensatedSum {
  long double sum = 0;
  long double carry = 0;

  void add(long double x) {
    const long double t = sum + x;
    if (std::fabs(sum) >= std::fabs(x)) {
      carry += (sum - t) + x;
    } else {
      carry += (x - t) + sum;
    }
    sum = t;
  }
  long double total() const { return sum + carry; }
};

std::uint64_t permanent_ryser_integer(const LogMatrix& a) {
  const std::size_t n = a.order();
  std::vector<std::int64_t> row_sums(n, 0);
  __int128 total = 0;
  const std::uint64_t subsets = std::uint64_t{1} << n;
  std::uint64_t gray = 0;
  for (std::uint64_t k = 1; k < subsets; ++k) {
    const auto j = static_cast<std::size_t>(std::countr_zero(k));
    gray ^= std::uint64_t{1} << j;
    const bool added = (gray >> j) & 1U;
    for (std::size_t i = 0; i < n; ++i)
      if (!a.is_zero(i, j)) row_sums[i] += added ? 1 : -1;
    __int128 prod = 1;
    for (std::size_t i = 0; i < n && prod != 0; ++i) prod *= row_sums[i];
    const bool negative = ((n - static_cast<std::size_t>(std::popcount(gray))) & 1U) != 0;
    total += negative ? -prod : prod;
  }
  return static_cast<std::uint64_t>(total);
}

// Two-layer subset DP. Subsets of the m = n-1 non-anchor vertices are ranked in
// colex order inside each popcount layer; entry (rank, t) holds the total weight of
// paths 1 -> ... -> (t-th smallest element of S) visiting exactly S.
template <typename T, typename Weight>
T hamilton_layers(std::size_t n, Weight weight) {
  if (n == 1) return weight(0, 0);
  const std::size_t m = n - 1;
  std::vector<std::vector<std::uint64_t>> binom(m + 1, std::vector<std::uint64_t>(m + 2, 0));
  for (std::size_t a = 0; a <= m; ++a) {
    binom[a][0] = 1;
    for (std::size_t b = 1; b <= a; ++b) binom[a][b] = binom[a - 1][b - 1] + binom[a - 1][b];
  }
  auto choose = [&](std::size_t a, std::size_t b) -> std::uint64_t { return b > a ? 0 : binom[a][b]; };

  std::vector<T> prev(m), cur;
  for (std::size_t v = 0; v < m; ++v) prev[v] = weight(0, v + 1);

  std::vector<std::size_t> pos(m);
  std::vector<std::uint64_t> prefix(m + 1), suffix(m + 1);
  for (std::size_t k = 2; k <= m; ++k) {
    cur.assign(choose(m, k) * k, T{});
    std::uint64_t set = (std::uint64_t{1} << k) - 1;
    const std::uint64_t limit = std::uint64_t{1} << m;
    for (std::uint64_t rank = 0; set < limit; ++rank) {
      std::size_t c = 0;
      for (std::uint64_t bits = set; bits; bits &= bits - 1) pos[c++] = static_cast<std::size_t>(std::countr_zero(bits));
      prefix[0] = 0;
      for (std::size_t i = 0; i < k; ++i) prefix[i + 1] = prefix[i] + choose(pos[i], i + 1);
      suffix[k] = 0;
      for (std::size_t i = k; i-- > 0;) suffix[i] = suffix[i + 1] + choose(pos[i], i);
      for (std::size_t t = 0; t < k; ++t) {
        const std::uint64_t prev_rank = prefix[t] + suffix[t + 1];
        const T* from = &prev[prev_rank * (k - 1)];
        T acc{};
        for (std::size_t s = 0; s < k; ++s) {
          if (s == t) continue;
          const T f = from[s < t ? s : s - 1];
          if (f != T{}) acc += f * weight(pos[s] + 1, pos[t] + 1);
        }
        cur[rank * k + t] = acc;
      }
      // Gosper's hack: next subset of the same size in increasing order.
      const std::uint64_t lo = set & (~set + 1);
      const std::uint64_t hi = set + lo;
      set = hi | (((set ^ hi) >> 2) / lo);
    }
    prev.swap(cur);
  }
  T total{};
  for (std::size_t t = 0; t < m; ++t) total += prev[t] * weight(t + 1, 0);
  return total;
}

long double hamilton_expand_rec(const LogMatrix& a) {
  const std::size_t n = a.order();
  if (n == 1) return std::exp(static_cast<long double>(a.log_at(0, 0)));
  long double total = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (a.is_zero(i, 0)) continue;
    total += std::exp(static_cast<long double>(a.log_at(i, 0))) * hamilton_expand_rec(a.contract_first(i));
  }
  return total;
}

}  // namespace

ExactValue permanent_ryser(const LogMatrix& a, std::size_t cap) {
  const std::size_t n = a.order();
  require_cap("permanent_ryser", n, cap);
  if (n == 0) return from_count(1);
  const bool zero_one = is_zero_one(a);
  if (zero_one && n <= kIntegerPathCap) return from_count(permanent_ryser_integer(a));

  const Normalized nz = normalize(a, false);
  if (nz.zero) return zero_value(zero_one);
  std::vector<long double> row_sums(n, 0);
  CompensatedSum total;
  const std::uint64_t subsets = std::uint64_t{1} << n;
  std::uint64_t gray = 0;
  for (std::uint64_t k = 1; k < subsets; ++k) {
    const auto j = static_cast<std::size_t>(std::countr_zero(k));
    gray ^= std::uint64_t{1} << j;
    const long double sign = ((gray >> j) & 1U) ? 1.0L : -1.0L;
    for (std::size_t i = 0; i < n; ++i) row_sums[i] += sign * nz.at(i, j);
    long double prod = 1;
    for (std::size_t i = 0; i < n; ++i) prod *= row_sums[i];
    const bool negative = ((n - static_cast<std::size_t>(std::popcount(gray))) & 1U) != 0;
    total.add(negative ? -prod : prod);
  }
  return from_sum(std::max<long double>(total.total(), 0), nz.log_scale);
}

ExactValue permanent_enum(const LogMatrix& a) {
  const std::size_t n = a.order();
  require_cap("permanent_enum", n, kEnumerationCap);
  if (n == 0) return from_count(1);
  const bool zero_one = is_zero_one(a);
  const Normalized nz = normalize(a, false);
  if (nz.zero) return zero_value(zero_one);

  std::vector<std::size_t> sigma(n);
  std::iota(sigma.begin(), sigma.end(), 0);
  long double total = 0;
  do {
    long double prod = 1;
    for (std::size_t i = 0; i < n && prod != 0; ++i) prod *= nz.at(i, sigma[i]);
    total += prod;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  if (zero_one) return from_count(static_cast<std::uint64_t>(std::llround(total)));
  return from_sum(total, nz.log_scale);
}

ExactValue hamilton_enum(const LogMatrix& a) {
  const std::size_t n = a.order();
  if (n == 0) throw DomainError("hamilton_enum: empty matrix");
  require_cap("hamilton_enum", n, kEnumerationCap);
  const bool zero_one = is_zero_one(a);
  if (n == 1) {
    if (zero_one) return from_count(a.is_zero(0, 0) ? 0 : 1);
    ExactValue v;
    v.log_value = a.log_at(0, 0);
    return v;
  }
  const Normalized nz = normalize(a, true);
  if (nz.zero) return zero_value(zero_one);

  // k[0..n-2] = (k_1, ..., k_{n-1}) as 0-based vertices, a permutation of {1..n-1}.
  std::vector<std::size_t> k(n - 1);
  std::iota(k.begin(), k.end(), 1);
  long double total = 0;
  do {
    long double prod = nz.at(k[0], 0);
    for (std::size_t i = 1; i + 1 < n && prod != 0; ++i) prod *= nz.at(k[i], k[i - 1]);
    prod *= nz.at(0, k[n - 2]);
    total += prod;
  } while (std::next_permutation(k.begin(), k.end()));
  if (zero_one) return from_count(static_cast<std::uint64_t>(std::llround(total)));
  return from_sum(total, nz.log_scale);
}

ExactValue hamilton_dp(const LogMatrix& a, std::size_t cap) {
  const std::size_t n = a.order();
  if (n == 0) throw DomainError("hamilton_dp: empty matrix");
  require_cap("hamilton_dp", n, cap);
  const bool zero_one = is_zero_one(a);
  if (zero_one && n <= kIntegerPathCap) {
    const std::uint64_t count = hamilton_layers<std::uint64_t>(
        n, [&](std::size_t i, std::size_t j) -> std::uint64_t { return a.is_zero(i, j) ? 0 : 1; });
    return from_count(count);
  }
  if (n == 1) {
    ExactValue v;
    v.log_value = a.log_at(0, 0);
    return v;
  }
  const Normalized nz = normalize(a, true);
  if (nz.zero) return zero_value(zero_one);
  const double total = hamilton_layers<double>(n, [&](std::size_t i, std::size_t j) { return nz.at(i, j); });
  return from_sum(total, nz.log_scale);
}

ExactValue hamilton_expand(const LogMatrix& a) {
  const std::size_t n = a.order();
  if (n == 0) throw DomainError("hamilton_expand: empty matrix");
  require_cap("hamilton_expand", n, kEnumerationCap);
  const bool zero_one = is_zero_one(a);
  if (n == 1) return hamilton_enum(a);

  // Rescale rows and columns in log space first so the recursion runs on entries <= 1.
  const Normalized nz = normalize(a, true);
  if (nz.zero) return zero_value(zero_one);
  LogMatrix scaled(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (nz.at(i, j) > 0) scaled.set_log(i, j, std::log(nz.at(i, j)));
  const long double total = hamilton_expand_rec(scaled);
  if (zero_one) return from_count(static_cast<std::uint64_t>(std::llround(total)));
  return from_sum(total, nz.log_scale);
}

namespace {

struct UndirectedCounter {
  const UndirectedGraph& g;
  int n;
  std::vector<char> used;
  std::vector<int> path;
  std::uint64_t count = 0;

  void extend(int depth) {
    const int last = path.back();
    if (depth == n) {
      // Close back to 1 and keep one orientation: second vertex < final vertex.
      if (g.adjacent(last, 1) && path[1] < last) ++count;
      return;
    }
    for (int v = 2; v <= n; ++v) {
      if (used[v] || !g.adjacent(last, v)) continue;
      used[v] = 1;
      path.push_back(v);
      extend(depth + 1);
      path.pop_back();
      used[v] = 0;
    }
  }
};

}  // namespace

std::uint64_t count_hc_undirected(const UndirectedGraph& g) {
  const int n = g.n();
  if (n > kUndirectedCountCap) {
    throw CapExceeded("count_hc_undirected", static_cast<std::size_t>(n), kUndirectedCountCap);
  }
  if (n < 3) return 0;
  UndirectedCounter counter{g, n, std::vector<char>(static_cast<std::size_t>(n) + 1, 0), {1}};
  counter.used[1] = 1;
  counter.extend(1);
  return counter.count;
}

}  // namespace hamcount
