#include "hamcount/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hamcount/bregman.hpp"
#include "hamcount/errors.hpp"

namespace hamcount {

void SelectionVector::validate() const {
  const std::size_t n = pi.size();
  if (n < 1) throw DomainError("selection vector: empty");
  if (pi[n - 1] != 1) throw DomainError("selection vector: pi(n) must be 1");
  for (std::size_t k = 1; k < n; ++k) {
    const int v = pi[k - 1];
    if (v < 2 || v > static_cast<int>(n - k + 1)) {
      throw DomainError("selection vector: pi(" + std::to_string(k) + ") = " + std::to_string(v) +
                        " outside 2.." + std::to_string(n - k + 1));
    }
  }
}

std::vector<std::pair<Vertex, Vertex>> HamiltonianCycle::arcs() const {
  std::vector<std::pair<Vertex, Vertex>> out;
  for (std::size_t t = 0; t + 1 < vertices.size(); ++t) out.emplace_back(vertices[t], vertices[t + 1]);
  return out;
}

HamiltonianCycle recover(const SelectionVector& sel) {
  sel.validate();
  const int n = static_cast<int>(sel.size());
  if (n < 2) throw DomainError("recover: need n >= 2");
  auto pi = [&](int k) { return sel.pi[static_cast<std::size_t>(k - 1)]; };

  std::vector<int> k(static_cast<std::size_t>(n), 0);  // k[1..n-1]
  k[n - 1] = pi(1);
  for (int i = n - 2; i >= 1; --i) {
    int a = pi(k[i + 1]);
    for (int j = k[i + 1]; j >= 2; --j) {
      if (a == pi(j - 1) - 1) {
        a = 1;
      } else {
        a = a + 1;
      }
    }
    k[i] = a;
  }

  HamiltonianCycle cycle;
  cycle.vertices.reserve(static_cast<std::size_t>(n) + 1);
  cycle.vertices.push_back(1);
  for (int i = 1; i <= n - 1; ++i) cycle.vertices.push_back(k[i]);
  cycle.vertices.push_back(1);
  return cycle;
}

std::vector<std::pair<int, int>> shc_trace(const LogMatrix& a, const SelectionVector& sel) {
  sel.validate();
  const std::size_t n = sel.size();
  if (a.order() != n) throw DomainError("shc_trace: selection vector length differs from matrix order");
  std::vector<int> rows(n);
  for (std::size_t r = 0; r < n; ++r) rows[r] = static_cast<int>(r) + 1;
  std::vector<std::pair<int, int>> out;
  out.reserve(n);
  std::size_t off = 0;
  for (std::size_t k = 1; k <= n; ++k, ++off) {
    const std::size_t picked = off + static_cast<std::size_t>(sel(k)) - 1;
    out.emplace_back(rows[picked], static_cast<int>(k));
    rows[picked] = rows[off];
  }
  return out;
}

bool is_valid_cycle(const LogMatrix& a, const HamiltonianCycle& cycle) {
  const std::size_t n = a.order();
  const auto& v = cycle.vertices;
  if (n < 2 || v.size() != n + 1 || v.front() != 1 || v.back() != 1) return false;
  std::vector<char> seen(n + 1, 0);
  for (std::size_t t = 0; t < n; ++t) {
    if (v[t] < 1 || v[t] > static_cast<int>(n) || seen[v[t]]) return false;
    seen[v[t]] = 1;
    if (a.is_zero(v[t] - 1, v[t + 1] - 1) || v[t] == v[t + 1]) return false;
  }
  return true;
}

bool is_valid_cycle(const WeightedDigraph& g, const std::vector<Vertex>& v) {
  const auto n = static_cast<std::size_t>(g.n());
  if (n < 2 || v.size() != n + 1 || v.front() != 1 || v.back() != 1) return false;
  std::vector<char> seen(n + 1, 0);
  for (std::size_t t = 0; t < n; ++t) {
    if (v[t] < 1 || v[t] > static_cast<int>(n) || seen[v[t]]) return false;
    seen[v[t]] = 1;
    if (!g.has_edge(v[t], v[t + 1])) return false;
  }
  return true;
}

SamplerTables::SamplerTables(const ScaledInstance& inst)
    : n_(inst.order()), recompute_every_((inst.order() + 3) / 4), c_(inst.c) {
  if (n_ < 1) throw DomainError("sampler: empty instance");
  log_cols_.resize(n_ * n_);
  lin_cols_.resize(n_ * n_);
  lin_rows_.resize(n_ * n_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      double lv = c_.log_at(i, j);
      if (lv > 0.0) {
        if (lv > std::log1p(kEntryTolerance)) throw DomainError("sampler: scaled entry exceeds 1");
        lv = 0.0;
      }
      log_cols_[j * n_ + i] = lv;
      lin_cols_[j * n_ + i] = lin_rows_[i * n_ + j] = std::exp(lv);
    }
  }
  const RowSums rs = RowSums::of(c_);
  initial_sums_ = rs.sums;
  initial_log_br_ = rs.log_br;
}

void SamplerTables::set_recompute_every(std::size_t levels) { recompute_every_ = std::max<std::size_t>(levels, 1); }

TrialRunner::TrialRunner(const SamplerTables& tables)
    : t_(tables),
      rows_(tables.n_),
      sums_(tables.n_),
      col_(tables.n_),
      minor_log_br_(tables.n_),
      reduced_(tables.n_),
      prob_(tables.n_) {}

TrialOutcome TrialRunner::run(CounterRng& rng) {
  const std::size_t n = t_.n_;
  TrialOutcome out;
  for (std::size_t r = 0; r < n; ++r) rows_[r] = r;
  std::copy(t_.initial_sums_.begin(), t_.initial_sums_.end(), sums_.begin());
  double log_br_d = t_.initial_log_br_;
  std::vector<int> pi(n, 0);

  auto note_excess = [&](double total) {
    if (total <= 1.0) return;
    const double excess = total - 1.0;
    if (excess > kProbabilityTolerance) {
      throw NumericError("sampler: level probabilities sum to 1 + " + std::to_string(excess));
    }
    ++out.clamp_events;
    out.max_clamp = std::max(out.max_clamp, excess);
  };

  // Level k works on D of order r = n-k+1: active positions [off, n), column off of C.
  for (std::size_t off = 0; off + 1 < n; ++off) {
    const std::size_t level = off + 1;
    const std::size_t r = n - off;
    if (off > 0 && off % t_.recompute_every_ == 0) {
      double lb = 0.0;
      for (std::size_t p = off; p < n; ++p) {
        const double* row = &t_.lin_rows_[rows_[p] * n];
        double s = 0.0;
        for (std::size_t c = off; c < n; ++c) s += row[c];
        sums_[p] = s;
        lb += log_bregman_factor(s);
      }
      log_br_d = lb;
    }

    const double* lin_col = &t_.lin_cols_[off * n];
    const double* log_col = &t_.log_cols_[off * n];
    for (std::size_t p = off; p < n; ++p) col_[p] = lin_col[rows_[p]];
    br_minor_all(std::span<const double>(sums_).subspan(off, r), std::span<const double>(col_).subspan(off, r),
                 std::span<double>(minor_log_br_).subspan(off, r), std::span<double>(reduced_).subspan(off, r));

    // p(i) = D(i,1) Br(D'_{i1}) / Br(D) for D rows 2..r; rejection takes the residual.
    double total = 0.0;
    for (std::size_t p = off + 1; p < n; ++p) {
      prob_[p] = std::exp(log_col[rows_[p]] + minor_log_br_[p] - log_br_d);
      total += prob_[p];
    }
    note_excess(total);

    const double u = rng.uniform();
    double cum = 0.0;
    std::size_t picked = n;
    for (std::size_t p = off + 1; p < n; ++p) {
      cum += prob_[p];
      if (u < cum) {
        picked = p;
        break;
      }
    }
    // A clamped level has cum >= 1 > u at the end of the walk, so p(0) = 0 there.
    if (picked == n) {
      out.levels_completed = static_cast<int>(level) - 1;
      out.rejection_level = static_cast<int>(level);
      return out;
    }

    pi[off] = static_cast<int>(picked - off) + 1;
    for (std::size_t p = off; p < n; ++p) sums_[p] = reduced_[p];
    rows_[picked] = rows_[off];
    sums_[picked] = reduced_[off];
    log_br_d = minor_log_br_[picked];
  }

  // Order-1 level: accept with probability D / Br(D).
  const std::size_t last = n - 1;
  const double p_accept = std::exp(t_.log_cols_[last * n + rows_[last]] - log_br_d);
  note_excess(p_accept);
  if (!(rng.uniform() < p_accept)) {
    out.levels_completed = static_cast<int>(n) - 1;
    out.rejection_level = static_cast<int>(n);
    return out;
  }
  pi[last] = 1;
  out.accepted = true;
  out.levels_completed = static_cast<int>(n);
  out.pi.pi = std::move(pi);
  if (n >= 2) {
    out.cycle = recover(out.pi);
    double lw = 0.0;
    for (auto [tail, head] : out.cycle.arcs()) lw += t_.c_.log_at(tail - 1, head - 1);
    out.cycle.log_weight = lw;
  } else {
    out.cycle.vertices = {1, 1};
    out.cycle.log_weight = t_.c_.log_at(0, 0);
  }
  return out;
}

TrialOutcome run_trial(const ScaledInstance& inst, CounterRng& rng) {
  const SamplerTables tables(inst);
  TrialRunner runner(tables);
  return runner.run(rng);
}

}  // namespace hamcount
