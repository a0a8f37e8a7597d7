#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "pcblend/rng.hpp"
#include "pcblend/transport.hpp"

using namespace pcblend;

namespace {

std::vector<double> random_costs(int n, int k, std::uint64_t seed, double lo,
                                 double hi) {
  Rng rng(seed);
  std::vector<double> c(static_cast<std::size_t>(n) * k);
  for (double& v : c) v = rng.uniform(lo, hi);
  return c;
}

}  // namespace

TEST_CASE("balanced transport: equals exhaustive enumeration on small instances") {
  Rng shape(2024);
  for (int trial = 0; trial < 60; ++trial) {
    const int k = 1 + static_cast<int>(shape.uniform_index(3));
    const int m = 1 + static_cast<int>(shape.uniform_index(12 / k));
    const int n = k * m;
    const auto costs = random_costs(n, k, 9000 + trial, 0.0, 5.0);
    const auto sol = transport::solve_balanced_transport(costs, n, k, m);
    const double brute = oracle::brute_balanced_cost(costs, n, k, m);
    CHECK(sol.cost == doctest::Approx(brute).epsilon(1e-12));

    std::vector<int> counts(k, 0);
    for (int label : sol.labels) {
      REQUIRE(label >= 0);
      REQUIRE(label < k);
      ++counts[label];
    }
    for (int h = 0; h < k; ++h) CHECK(counts[h] == m);
  }
}

TEST_CASE("balanced transport: handles negative costs exactly") {
  const auto costs = random_costs(8, 2, 555, -3.0, 3.0);
  const auto sol = transport::solve_balanced_transport(costs, 8, 2, 4);
  CHECK(sol.cost == doctest::Approx(oracle::brute_balanced_cost(costs, 8, 2, 4))
                        .epsilon(1e-12));
}

TEST_CASE("balanced transport: k = 1 takes everything") {
  const auto costs = random_costs(6, 1, 7, 0.0, 1.0);
  const auto sol = transport::solve_balanced_transport(costs, 6, 1, 6);
  for (int label : sol.labels) CHECK(label == 0);
}

TEST_CASE("balanced transport: all-equal costs stay balanced and deterministic") {
  const std::vector<double> costs(12 * 2, 1.0);
  const auto a = transport::solve_balanced_transport(costs, 12, 2, 6);
  const auto b = transport::solve_balanced_transport(costs, 12, 2, 6);
  CHECK(a.cost == 12.0);
  CHECK(a.labels == b.labels);
  int c0 = 0;
  for (int label : a.labels) c0 += label == 0;
  CHECK(c0 == 6);
}

TEST_CASE("balanced transport: rejects malformed input") {
  CHECK_THROWS_AS(transport::solve_balanced_transport({1.0, 2.0}, 2, 2, 1),
                  std::invalid_argument);  // costs too short
  CHECK_THROWS_AS(
      transport::solve_balanced_transport(random_costs(6, 2, 1, 0, 1), 6, 2, 2),
      std::invalid_argument);  // n != k * capacity
  auto bad = random_costs(4, 2, 2, 0, 1);
  bad[3] = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(transport::solve_balanced_transport(bad, 4, 2, 2),
                  std::invalid_argument);
}

TEST_CASE("dense assignment: equals the permutation oracle") {
  Rng shape(11);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + static_cast<int>(shape.uniform_index(6));  // up to 7
    const auto costs = random_costs(n, n, 300 + trial, -2.0, 4.0);

    // direct permutation enumeration over the cost matrix
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    double best = std::numeric_limits<double>::infinity();
    do {
      double c = 0.0;
      for (int i = 0; i < n; ++i) c += costs[static_cast<std::size_t>(i) * n + perm[i]];
      best = std::min(best, c);
    } while (std::next_permutation(perm.begin(), perm.end()));

    const auto sol = transport::solve_dense_assignment(costs, n);
    CHECK(sol.cost == doctest::Approx(best).epsilon(1e-12));

    std::vector<char> used(n, 0);
    double recomputed = 0.0;
    for (int i = 0; i < n; ++i) {
      REQUIRE(sol.match[i] >= 0);
      REQUIRE(sol.match[i] < n);
      CHECK(!used[sol.match[i]]);
      used[sol.match[i]] = 1;
      recomputed += costs[static_cast<std::size_t>(i) * n + sol.match[i]];
    }
    CHECK(recomputed == sol.cost);
  }
}

TEST_CASE("dense assignment: deterministic under ties") {
  const std::vector<double> costs(5 * 5, 2.5);
  const auto a = transport::solve_dense_assignment(costs, 5);
  const auto b = transport::solve_dense_assignment(costs, 5);
  CHECK(a.match == b.match);
  CHECK(a.cost == 12.5);
}
