#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hamcount/bregman.hpp"
#include "hamcount/errors.hpp"
#include "hamcount/exact.hpp"
#include "support.hpp"

using namespace hamcount;
using namespace hamcount::testing;

// Reference values evaluated independently from the closed form.
constexpr double kG2 = 4.064855418739018;
constexpr double kBrOnes2 = 2.236151594199317;

TEST_CASE("bregman_g values") {
  CHECK(bregman_g(0.0) == 1.0);
  CHECK(bregman_g(1.0) == doctest::Approx(std::numbers::e).epsilon(1e-15));
  CHECK(bregman_g(2.0) == doctest::Approx(kG2).epsilon(1e-14));
  CHECK_THROWS_AS(bregman_g(-0.1), DomainError);
}

TEST_CASE("bregman_g is continuous at 1 and nondecreasing") {
  CHECK(bregman_g(1.0 - 1e-12) == doctest::Approx(bregman_g(1.0)).epsilon(1e-10));
  double prev = bregman_g(0.0);
  for (int k = 1; k <= 20000; ++k) {
    const double g = bregman_g(k * 1e-3);
    CHECK(g >= prev);
    prev = g;
  }
}

TEST_CASE("log_br examples") {
  CHECK(log_br(ones(2, false)) == doctest::Approx(std::log(kBrOnes2)).epsilon(1e-13));
  LogMatrix id(2);
  id.set_value(0, 0, 1.0);
  id.set_value(1, 1, 1.0);
  CHECK(std::fabs(log_br(id)) < 1e-15);
  CHECK_THROWS_AS(log_br(LogMatrix(0)), DomainError);
  CHECK_THROWS_AS(log_br(LogMatrix::from_linear({{1.5, 0}, {0, 1}})), DomainError);
}

TEST_CASE("log_br clamps round-off above 1") {
  LogMatrix a = ones(2, false);
  a.set_log(0, 0, 1e-14);
  std::size_t clamps = 0;
  CHECK(log_br(a, &clamps) == doctest::Approx(std::log(kBrOnes2)));
  CHECK(clamps == 1);
}

TEST_CASE("Br bounds the permanent") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    const LogMatrix a = random_matrix(1 + trial % 9, rng, 0.0, 1.0, 0.3);
    CHECK(std::exp(log_br(a)) >= permanent_enum(a).value() * (1 - 1e-9));
  }
}

TEST_CASE("br_minor_all examples") {
  const RowSums rs = RowSums::of(ones(2, false));
  const std::vector<double> col{1.0, 1.0};
  const auto out = br_minor_all(rs, col);
  CHECK(std::fabs(out[1]) < 1e-15);
  CHECK(std::fabs(out[0]) < 1e-15);

  const RowSums uniform = RowSums::of(std::vector<double>(5, 2.5));
  const auto same = br_minor_all(uniform, std::vector<double>(5, 0.5));
  for (double v : same) CHECK(v == same[0]);

  CHECK_THROWS_AS(br_minor_all(RowSums::of({0.5, 0.5}), std::vector<double>{0.6, 0.1}), NumericError);
}

TEST_CASE("br_minor_all matches explicit minors") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + trial % 11;
    const LogMatrix a = random_matrix(n, rng, 0.0, 1.0, 0.2);
    std::vector<double> col(n);
    for (std::size_t k = 0; k < n; ++k) col[k] = a.value(k, 0);
    const auto fast = br_minor_all(RowSums::of(a), col);
    for (std::size_t k = 0; k < n; ++k) {
      const double direct = log_br(a.minor(k, 0));
      CHECK(std::fabs(fast[k] - direct) <= 1e-9 * std::max(1.0, std::fabs(direct)));
    }
  }
}

TEST_CASE("first-column recursion inequality") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + trial % 8;
    const LogMatrix a = random_matrix(n, rng, 0.0, 1.0, 0.25);
    const double br = std::exp(log_br(a));
    double rhs = 0.0;
    for (std::size_t i = 0; i < n; ++i) rhs += a.value(i, 0) * std::exp(log_br(a.minor(i, 0)));
    CHECK(br >= rhs * (1 - 1e-9));
  }
}
