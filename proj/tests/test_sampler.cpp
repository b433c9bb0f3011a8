#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

#include "hamcount/bregman.hpp"
#include "hamcount/digraph.hpp"
#include "hamcount/errors.hpp"
#include "hamcount/exact.hpp"
#include "hamcount/sampler.hpp"
#include "hamcount/scaling.hpp"
#include "support.hpp"

using namespace hamcount;
using namespace hamcount::testing;

namespace {

ScaledInstance raw_instance(const LogMatrix& c) {
  ScaledInstance inst;
  inst.c = c;
  return inst;
}

SelectionVector random_selection(std::size_t n, std::mt19937_64& rng) {
  SelectionVector s;
  for (std::size_t k = 1; k < n; ++k) {
    std::uniform_int_distribution<int> d(2, static_cast<int>(n - k + 1));
    s.pi.push_back(d(rng));
  }
  s.pi.push_back(1);
  return s;
}

}  // namespace

TEST_CASE("recover examples") {
  CHECK(recover({{2, 1}}).vertices == std::vector<int>{1, 2, 1});
  CHECK(recover({{2, 2, 1}}).vertices == std::vector<int>{1, 3, 2, 1});
  CHECK(recover({{3, 2, 1}}).vertices == std::vector<int>{1, 2, 3, 1});
  CHECK_THROWS_AS(recover({{1, 2, 1}}), DomainError);
  CHECK_THROWS_AS(recover({{4, 2, 1}}), DomainError);
  CHECK_THROWS_AS(recover({{2, 2, 2}}), DomainError);
}

TEST_CASE("shc_trace examples") {
  using P = std::vector<std::pair<int, int>>;
  CHECK(shc_trace(ones(3, true), {{2, 2, 1}}) == P{{2, 1}, {3, 2}, {1, 3}});
  CHECK(shc_trace(ones(2, true), {{2, 1}}) == P{{2, 1}, {1, 2}});
  CHECK_THROWS_AS(shc_trace(ones(4, true), {{2, 2, 1}}), DomainError);
}

TEST_CASE("recover and shc_trace agree on random selection vectors") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 2 + trial % 49;
    const SelectionVector s = random_selection(n, rng);
    const auto trace = shc_trace(LogMatrix(n), s);
    for (std::size_t k = 0; k < n; ++k) CHECK(trace[k].second == static_cast<int>(k + 1));
    const HamiltonianCycle cyc = recover(s);
    auto arcs = cyc.arcs();
    std::sort(arcs.begin(), arcs.end());
    auto positions = trace;
    std::sort(positions.begin(), positions.end());
    CHECK(arcs == positions);
    CHECK(is_valid_cycle(ones(n, true), cyc));
  }
}

TEST_CASE("every selection vector maps to a distinct Hamiltonian cycle") {
  // (n-1)! selection vectors and (n-1)! cycles of the complete digraph on 6 vertices.
  std::set<std::vector<int>> cycles;
  std::vector<int> pi(6, 2);
  pi[5] = 1;
  std::size_t total = 0;
  for (;;) {
    cycles.insert(recover({pi}).vertices);
    ++total;
    std::size_t k = 0;
    while (k < 5 && pi[k] == static_cast<int>(6 - k)) pi[k++] = 2;
    if (k == 5) break;
    ++pi[k];
  }
  CHECK(total == 120);
  CHECK(cycles.size() == 120);
}

TEST_CASE("order-1 instance always accepts") {
  const ScaledInstance inst = scale(LogMatrix::from_linear({{1.0}}));
  CounterRng rng(1, 0);
  for (int k = 0; k < 100; ++k) CHECK(run_trial(inst, rng).accepted);
}

TEST_CASE("order-2 all-ones instance accepts with probability 1/Br") {
  constexpr double kAccept = 0.4471968727853905;  // (g(2)/e)^-2
  const ScaledInstance inst = raw_instance(ones(2, false));
  CHECK(std::exp(-log_br(inst.c)) == doctest::Approx(kAccept).epsilon(1e-13));

  const SamplerTables tables(inst);
  TrialRunner runner(tables);
  const int trials = 200000;
  int accepted = 0;
  for (int k = 0; k < trials; ++k) {
    CounterRng rng(99, k);
    const TrialOutcome o = runner.run(rng);
    if (o.accepted) {
      ++accepted;
      CHECK(o.levels_completed == 2);
      CHECK(o.cycle.vertices == std::vector<int>{1, 2, 1});
    } else {
      CHECK(o.rejection_level == 1);
    }
  }
  const double se = std::sqrt(kAccept * (1 - kAccept) / trials);
  CHECK(std::fabs(double(accepted) / trials - kAccept) < 3 * se);
}

TEST_CASE("complete digraph n=5: accepted cycles are uniform") {
  const ScaledInstance inst = scale_padded(ones(5, true), 0.25);
  const SamplerTables tables(inst);
  TrialRunner runner(tables);
  std::map<std::vector<int>, std::uint64_t> counts;
  std::uint64_t accepted = 0;
  for (std::uint64_t k = 0; accepted < 100000; ++k) {
    CounterRng rng(7, k);
    const TrialOutcome o = runner.run(rng);
    if (!o.accepted) continue;
    ++accepted;
    REQUIRE(is_valid_cycle(ones(5, true), o.cycle));
    ++counts[o.cycle.vertices];
  }
  CHECK(counts.size() == 24);
  CHECK(uniform_chi_square_pvalue(counts, 24) > 1e-3);
}

TEST_CASE("weighted instance: each cycle is drawn with probability W(H)/Br(C)") {
  std::mt19937_64 gen(4);
  LogMatrix a = random_matrix(4, gen, 0.2, 1.0);
  for (std::size_t i = 0; i < 4; ++i) a.set_log(i, i, LogMatrix::kZero);
  const ScaledInstance inst = scale_padded(a, 0.3);
  const double log_br_c = log_br(inst.c);

  const SamplerTables tables(inst);
  TrialRunner runner(tables);
  const std::uint64_t trials = 400000;
  std::map<std::vector<int>, std::uint64_t> counts;
  std::uint64_t rejected = 0;
  for (std::uint64_t k = 0; k < trials; ++k) {
    CounterRng rng(3, k);
    const TrialOutcome o = runner.run(rng);
    if (o.accepted) {
      ++counts[o.cycle.vertices];
    } else {
      ++rejected;
    }
  }
  // Expected probability of each cycle from its weight in C, enumerated directly.
  std::vector<int> k{2, 3, 4};
  double stat = 0.0, accept_mass = 0.0;
  int classes = 0;
  do {
    const std::vector<int> cyc{1, k[0], k[1], k[2], 1};
    double lw = 0.0;
    for (int t = 0; t < 4; ++t) lw += inst.c.log_at(cyc[t] - 1, cyc[t + 1] - 1);
    const double p = std::exp(lw - log_br_c);
    accept_mass += p;
    const double expected = p * trials;
    const double d = double(counts[cyc]) - expected;
    stat += d * d / expected;
    ++classes;
  } while (std::next_permutation(k.begin(), k.end()));
  const double expected_rej = (1 - accept_mass) * trials;
  stat += (double(rejected) - expected_rej) * (double(rejected) - expected_rej) / expected_rej;
  boost::math::chi_squared dist(classes);  // classes + 1 categories
  CHECK(boost::math::cdf(boost::math::complement(dist, stat)) > 1e-3);
}

TEST_CASE("acceptance rate tracks ham(C)/Br(C)") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const int n = 6 + static_cast<int>(seed);
    const ScaledInstance inst = scale_padded(adjacency_matrix(gen_dense_digraph(n, 0.7, seed)), 0.25);
    const double p = std::exp(hamilton_dp(inst.c).log_value - log_br(inst.c));
    const SamplerTables tables(inst);
    TrialRunner runner(tables);
    const std::uint64_t trials = 60000;
    std::uint64_t accepted = 0;
    for (std::uint64_t k = 0; k < trials; ++k) {
      CounterRng rng(seed + 100, k);
      const TrialOutcome o = runner.run(rng);
      CHECK(o.max_clamp <= kProbabilityTolerance);
      accepted += o.accepted;
    }
    const double se = std::sqrt(p * (1 - p) / trials);
    INFO("n=" << n << " p=" << p);
    CHECK(std::fabs(double(accepted) / trials - p) < 3 * se);
  }
}

TEST_CASE("row-sum refresh cadence does not change outcomes") {
  const ScaledInstance inst = scale_padded(adjacency_matrix(gen_dense_digraph(40, 0.8, 9)), 0.25);
  SamplerTables every(inst), lazy(inst);
  every.set_recompute_every(1);
  lazy.set_recompute_every(1000);
  CHECK(SamplerTables(inst).recompute_every() == 10);
  TrialRunner a(every), b(lazy);
  for (std::uint64_t k = 0; k < 3000; ++k) {
    CounterRng r1(5, k), r2(5, k);
    const TrialOutcome x = a.run(r1), y = b.run(r2);
    CHECK(x.accepted == y.accepted);
    CHECK(x.levels_completed == y.levels_completed);
    if (x.accepted) CHECK(x.pi == y.pi);
  }
}

TEST_CASE("directed cycle: every acceptance recovers the unique cycle") {
  const ScaledInstance inst = scale_padded(directed_cycle(7), 0.25);
  const SamplerTables tables(inst);
  TrialRunner runner(tables);
  int accepted = 0;
  for (std::uint64_t k = 0; accepted < 200 && k < 1'000'000; ++k) {
    CounterRng rng(1, k);
    const TrialOutcome o = runner.run(rng);
    if (!o.accepted) continue;
    ++accepted;
    CHECK(o.cycle.vertices == std::vector<int>{1, 2, 3, 4, 5, 6, 7, 1});
  }
  CHECK(accepted == 200);
}
