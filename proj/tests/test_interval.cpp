#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"

#include "contra/errors.hpp"
#include "contra/interval.hpp"
#include "support/oracles.hpp"

using contra::CredibleInterval;
using contra::Direction;
using contra::ThresholdSpec;

namespace {

CredibleInterval ci(double lo, double hi) { return {lo, hi, 0.05, 1000, 0}; }

std::vector<double> uniform_grid() {
  std::vector<double> v;
  for (int i = 1; i <= 100; ++i) v.push_back(i / 100.0);
  return v;
}

}  // namespace

TEST_SUITE("interval") {

TEST_CASE("nearest rank on a uniform grid") {
  auto grid = uniform_grid();
  std::shuffle(grid.begin(), grid.end(), std::mt19937(1));
  const auto c = contra::credible_interval(grid, 0.10);
  CHECK(c.lo == 0.05);
  CHECK(c.hi == 0.95);
  CHECK(c.k == 100);
}

TEST_CASE("Bonferroni alpha 0.05/3 picks ranks ceil(K*p)") {
  CHECK(contra::nearest_rank(1'000'000, 0.05 / 3 / 2) == 8334);
  CHECK(contra::nearest_rank(1'000'000, 1 - 0.05 / 3 / 2) == 991667);
  CHECK(contra::nearest_rank(100, 0.05) == 5);
  CHECK(contra::nearest_rank(100, 0.95) == 95);
  CHECK(contra::nearest_rank(10, 0.0) == 1);
  CHECK(contra::nearest_rank(10, 1.0) == 10);
}

TEST_CASE("nearest rank matches the counting oracle") {
  std::mt19937_64 gen(3);
  for (int i = 0; i < 2000; ++i) {
    const std::size_t k = 1 + gen() % 100'000;
    const double p = std::uniform_real_distribution<double>(0, 1)(gen);
    REQUIRE(contra::nearest_rank(k, p) == oracle::count_rank(k, p));
  }
  for (std::size_t k : {100u, 1000u, 100000u, 1000000u}) {
    for (double alpha : {0.05, 0.05 / 2, 0.05 / 3, 0.05 / 6, 0.05 / 10, 0.05 / 12, 0.01, 0.1}) {
      REQUIRE(contra::nearest_rank(k, alpha / 2) == oracle::count_rank(k, alpha / 2));
      REQUIRE(contra::nearest_rank(k, 1 - alpha / 2) == oracle::count_rank(k, 1 - alpha / 2));
    }
  }
}

TEST_CASE("credible interval equals the brute-force sort oracle on 1000 vectors") {
  std::mt19937_64 gen(2024);
  const double alphas[] = {0.05, 0.05 / 3, 0.01, 0.1, 0.05 / 12};
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t k = 1000 + gen() % 4000;
    std::vector<double> v(k);
    std::lognormal_distribution<double> dist(0, 1);
    for (auto& x : v) x = dist(gen) - 1.2;
    if (trial % 7 == 0) {
      // Heavy ties.
      for (auto& x : v) x = std::round(x * 4) / 4;
    }
    const double alpha = alphas[trial % 5];
    const auto c = contra::credible_interval(v, alpha);
    REQUIRE(c.lo == oracle::sorted_quantile(v, alpha / 2));
    REQUIRE(c.hi == oracle::sorted_quantile(v, 1 - alpha / 2));
    REQUIRE(c.lo <= c.hi);
  }
}

TEST_CASE("summarize_draws agrees with separate interval and median") {
  const auto d = contra::draw_relative_dm({20, 5, 8}, {30, 6, 9}, 20'000, 9);
  const auto s = contra::summarize_draws(d, 0.05 / 3);
  const auto c = contra::credible_interval(d, 0.05 / 3);
  CHECK(s.interval.lo == c.lo);
  CHECK(s.interval.hi == c.hi);
  CHECK(s.median == contra::posterior_median(d.relative));
  CHECK(s.median == oracle::sorted_quantile(d.relative, 0.5));
  CHECK(s.interval.seed == 9);
  CHECK(s.interval.k == 20'000);
}

TEST_CASE("interval arguments are checked") {
  const std::vector<double> v(100, 1.0);
  CHECK_THROWS_AS(contra::credible_interval(v, 0.0), contra::ArgumentError);
  CHECK_THROWS_AS(contra::credible_interval(v, 1.0), contra::ArgumentError);
  CHECK_THROWS_AS(contra::credible_interval(v, -0.1), contra::ArgumentError);
  // K * alpha / 2 = 0.5 draws in the tail.
  CHECK_THROWS_AS(contra::credible_interval(v, 0.01), contra::ArgumentError);
  CHECK_NOTHROW(contra::credible_interval(v, 0.02));
}

TEST_CASE("non-finite bounds are a degenerate-draw error") {
  std::vector<double> v(100, 0.5);
  v[0] = -std::numeric_limits<double>::infinity();
  v[1] = -std::numeric_limits<double>::infinity();
  v[2] = -std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(contra::credible_interval(v, 0.05), contra::DegenerateDrawError);
}

TEST_CASE("delta_L examples") {
  CHECK(contra::score_delta_l(ci(-0.20, -0.05)) == -0.05);
  CHECK(contra::score_delta_l(ci(-0.10, 0.30)) == 0.0);
  CHECK(contra::score_delta_l(ci(0.50, 4.10)) == 0.50);
  CHECK(contra::score_delta_l(ci(0.0, 0.4)) == 0.0);
  CHECK(contra::score_delta_l(ci(-0.4, 0.0)) == 0.0);
}

TEST_CASE("delta_L cases are exhaustive and exclusive, with sign coherence") {
  std::mt19937_64 gen(8);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int i = 0; i < 10'000; ++i) {
    double a = u(gen), b = u(gen);
    if (i % 50 == 0) a = 0.0;
    const auto c = ci(std::min(a, b), std::max(a, b));
    const double d = contra::score_delta_l(c);
    const int cases = int(d == 0.0) + int(d == c.lo && d > 0) + int(d == c.hi && d < 0);
    REQUIRE(cases == 1);
    if (d != 0.0) {
      REQUIRE(std::signbit(d) == std::signbit(c.lo));
      REQUIRE(std::signbit(d) == std::signbit(c.hi));
    }
  }
}

TEST_CASE("threshold tests use strict inequalities") {
  CHECK(contra::test_meaningful(ci(-0.34, -0.12), {-0.10, Direction::decrease}).reject_null);
  CHECK_FALSE(contra::test_meaningful(ci(-0.15, -0.05), {-0.10, Direction::decrease}).reject_null);
  CHECK_FALSE(contra::test_meaningful(-0.10, {-0.10, Direction::decrease}).reject_null);
  CHECK_FALSE(contra::test_meaningful(0.5, {0.5, Direction::increase}).reject_null);
  CHECK(contra::test_meaningful(0.51, {0.5, Direction::increase}).reject_null);
  CHECK(contra::test_meaningful(-0.6, {0.5, Direction::two_sided}).reject_null);
  CHECK(contra::test_meaningful(0.6, {0.5, Direction::two_sided}).reject_null);
  CHECK_FALSE(contra::test_meaningful(0.5, {0.5, Direction::two_sided}).reject_null);
  const auto out = contra::test_meaningful(ci(0.7, 1.2), {0.5, Direction::increase});
  CHECK(out.delta_l == 0.7);
  CHECK(out.threshold.value == 0.5);
}

TEST_CASE("invalid thresholds are argument errors") {
  CHECK_THROWS_AS(contra::test_meaningful(0.1, {0.0, Direction::increase}), contra::ArgumentError);
  CHECK_THROWS_WITH(ThresholdSpec({0.0, Direction::decrease}).validate(),
                    doctest::Contains("point"));
  CHECK_THROWS_AS(ThresholdSpec({0.2, Direction::decrease}).validate(), contra::ArgumentError);
  CHECK_THROWS_AS(ThresholdSpec({-0.2, Direction::increase}).validate(), contra::ArgumentError);
  CHECK_THROWS_AS(ThresholdSpec({-0.2, Direction::two_sided}).validate(), contra::ArgumentError);
  CHECK_THROWS_AS(contra::parse_direction("up"), contra::ArgumentError);
  CHECK(contra::parse_direction("two-sided") == Direction::two_sided);
}

TEST_CASE("threshold monotonicity on 100 random intervals") {
  std::mt19937_64 gen(12);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int i = 0; i < 100; ++i) {
    const double a = u(gen), b = u(gen);
    const auto c = ci(std::min(a, b), std::max(a, b));
    for (Direction dir : {Direction::decrease, Direction::increase, Direction::two_sided}) {
      const double sign = dir == Direction::decrease ? -1 : 1;
      for (double v = 0.05; v < 1.6; v += 0.05) {
        if (!contra::test_meaningful(c, {sign * v, dir}).reject_null) continue;
        for (double w = 0.01; w <= v; w += 0.01) {
          REQUIRE(contra::test_meaningful(c, {sign * w, dir}).reject_null);
        }
      }
    }
  }
}

TEST_CASE("Bonferroni nesting on 100 random draw vectors") {
  std::mt19937_64 gen(13);
  for (int i = 0; i < 100; ++i) {
    std::normal_distribution<double> dist(std::uniform_real_distribution<double>(-1, 1)(gen), 0.3);
    std::vector<double> v(5000);
    for (auto& x : v) x = dist(gen);
    const auto wide = contra::credible_interval(v, 0.05 / 6);
    const auto narrow = contra::credible_interval(v, 0.05);
    REQUIRE(wide.lo <= narrow.lo);
    REQUIRE(wide.hi >= narrow.hi);
    REQUIRE(std::fabs(contra::score_delta_l(wide)) <= std::fabs(contra::score_delta_l(narrow)));
  }
}

TEST_CASE("ranking examples") {
  using contra::ScoredStudy;
  const auto r = contra::rank_entries({{1, -0.05, -0.1}, {2, -0.34, -0.5}, {3, 0, 0.1}, {4, 0.2, 0.4}});
  CHECK(r[0].id == 2);
  CHECK(r[1].id == 1);
  CHECK(r[2].id == 3);
  CHECK(r[3].id == 4);
  const auto tied = contra::rank_entries({{9, 0, 0.1}, {4, 0, 0.1}, {7, 0, -0.05}});
  CHECK(tied[0].id == 7);  // smaller |median|
  CHECK(tied[1].id == 4);  // then id
  CHECK(tied[2].id == 9);
}

TEST_CASE("ranking is invariant to input permutation") {
  std::mt19937_64 gen(21);
  std::vector<contra::ScoredStudy> scores;
  for (int id = 1; id <= 40; ++id) {
    const double d = id % 4 == 0 ? 0.0 : std::round(std::normal_distribution<double>()(gen) * 10) / 10;
    scores.push_back({id, d, std::round(std::normal_distribution<double>()(gen) * 4) / 4});
  }
  const auto reference = contra::rank_entries(scores);
  for (int i = 0; i < 200; ++i) {
    std::shuffle(scores.begin(), scores.end(), gen);
    REQUIRE(contra::rank_entries(scores) == reference);
  }
}

}  // TEST_SUITE
