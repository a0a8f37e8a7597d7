#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <map>

#include "doctest.h"
#include "oracles.hpp"
#include "pcblend/kde.hpp"
#include "pcblend/rng.hpp"

using namespace pcblend;

TEST_CASE("kde: kernel peak at a single source point") {
  const double bw = 0.01;
  const Density d(PointCloud({{0.5, 0.5, 0.5}}), bw);
  const double peak =
      1.0 / std::pow(2.0 * 3.14159265358979323846 * bw * bw, 1.5);
  CHECK(d.evaluate({0.5, 0.5, 0.5}) == doctest::Approx(peak).epsilon(1e-12));
}

TEST_CASE("kde: far queries fall below 1e-30 of the peak") {
  const double bw = 0.01;
  const Density d(PointCloud({{0.5, 0.5, 0.5}}), bw);
  const double peak = d.evaluate({0.5, 0.5, 0.5});
  CHECK(d.evaluate({0.5 + 20.0 * bw, 0.5, 0.5}) < 1e-30 * peak);
}

TEST_CASE("kde: tree-accelerated evaluation matches direct summation") {
  const PointCloud src = oracle::random_cloud(50, 7);
  const Density d(src, 0.01);
  Rng rng(8);
  for (int t = 0; t < 1000; ++t) {
    const Point3 q{rng.uniform(-0.1, 1.1), rng.uniform(-0.1, 1.1),
                   rng.uniform(-0.1, 1.1)};
    const double got = d.evaluate(q);
    const double want = oracle::brute_kde(src, 0.01, q);
    CHECK(got == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("kde: batch evaluation equals pointwise evaluation") {
  const PointCloud src = oracle::random_cloud(80, 9);
  const Density d(src, 0.02);
  const PointCloud queries = oracle::random_cloud(64, 10);
  const std::vector<double> batch = d.evaluate(queries);
  for (std::size_t i = 0; i < queries.size(); ++i) {
    CHECK(batch[i] == d.evaluate(queries[i]));
  }
}

TEST_CASE("kde: translation equivariance") {
  const PointCloud src = oracle::random_cloud(40, 11);
  const Point3 shift{0.13, -0.21, 0.34};
  PointCloud moved = src;
  for (Point3& p : moved.points) p += shift;
  const Density d0(src, 0.015), d1(moved, 0.015);
  Rng rng(12);
  for (int t = 0; t < 100; ++t) {
    const Point3 q{rng.uniform(), rng.uniform(), rng.uniform()};
    const double a = d0.evaluate(q);
    const double b = d1.evaluate(q + shift);
    CHECK(a == doctest::Approx(b).epsilon(1e-12));
  }
}

TEST_CASE("kde: bandwidth must be positive, cloud non-empty") {
  CHECK_THROWS_AS(Density(PointCloud{}, 0.01), std::invalid_argument);
  CHECK_THROWS_AS(Density(oracle::random_cloud(5, 1), 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(Density(oracle::random_cloud(5, 1), -1.0),
                  std::invalid_argument);
}

TEST_CASE("subsample: selection stays near the density's support") {
  // density mass only in the half cube x < 0.5; design spans the whole cube
  const PointCloud mass = oracle::random_cloud(4000, 21, 0.0, 1.0);
  PointCloud half;
  for (const Point3& p : mass) {
    if (p.x < 0.5) half.points.push_back(p);
  }
  const double bw = 0.01;
  const Density d(half, bw);

  PointCloud grid;
  for (int i = 0; i < 10; ++i) {
    for (int j = 0; j < 10; ++j) {
      for (int l = 0; l < 10; ++l) {
        grid.points.push_back({(i + 0.5) / 10.0, (j + 0.5) / 10.0,
                               (l + 0.5) / 10.0});
      }
    }
  }
  const PointCloud out = density_subsample(grid, d, 10000, 0.0, 5);
  REQUIRE(out.size() == 10000);
  std::size_t inside = 0;
  for (const Point3& p : out) inside += p.x < 0.5 + 3.0 * bw;
  CHECK(static_cast<double>(inside) >= 0.99 * 10000);
}

TEST_CASE("subsample: symmetric weights draw uniformly") {
  // all eight cube corners are equidistant from a center source, so their
  // selection weights are identical by symmetry
  const Density d(PointCloud({{0.5, 0.5, 0.5}}), 0.5);
  PointCloud corners;
  for (int i = 0; i < 8; ++i) {
    corners.points.push_back({static_cast<double>(i & 1),
                              static_cast<double>((i >> 1) & 1),
                              static_cast<double>((i >> 2) & 1)});
  }
  const std::size_t draws = 80000;
  const PointCloud out = density_subsample(corners, d, draws, 0.0, 31);
  std::map<int, std::size_t> counts;
  for (const Point3& p : out) {
    const int key = static_cast<int>(p.x) + 2 * static_cast<int>(p.y) +
                    4 * static_cast<int>(p.z);
    ++counts[key];
  }
  const double expect = draws / 8.0;
  const double sigma = std::sqrt(draws * (1.0 / 8.0) * (7.0 / 8.0));
  for (int key = 0; key < 8; ++key) {
    CHECK(std::fabs(static_cast<double>(counts[key]) - expect) <= 3.0 * sigma);
  }
}

TEST_CASE("subsample: with-replacement duplicates separated by noise") {
  const PointCloud design = oracle::random_cloud(16, 41);
  const Density d(oracle::random_cloud(32, 42), 0.05);
  const PointCloud out = density_subsample(design, d, 200, 0.001, 43);
  REQUIRE(out.size() == 200);

  // noise-free draws form a sub-multiset of the design
  const PointCloud clean = density_subsample(design, d, 200, 0.0, 43);
  for (const Point3& p : clean) {
    bool found = false;
    for (const Point3& q : design) found |= p == q;
    CHECK(found);
  }
  // 200 draws from 16 points must duplicate; the noisy copies disagree
  bool any_equal = false;
  for (std::size_t i = 0; i < out.size() && !any_equal; ++i) {
    for (std::size_t j = i + 1; j < out.size(); ++j) {
      any_equal |= out[i] == out[j];
    }
  }
  CHECK(!any_equal);
}

TEST_CASE("subsample: deterministic under the seed") {
  const PointCloud design = oracle::random_cloud(100, 51);
  const Density d(oracle::random_cloud(50, 52), 0.05);
  const PointCloud a = density_subsample(design, d, 64, 0.001, 7);
  const PointCloud b = density_subsample(design, d, 64, 0.001, 7);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
}

TEST_CASE("subsample: total underflow reports the bandwidth remedy") {
  // design so far from the mass that every weight underflows to zero
  const Density d(PointCloud({{0.0, 0.0, 0.0}}), 0.001);
  const PointCloud far_design({{50.0, 50.0, 50.0}, {60.0, 60.0, 60.0}});
  CHECK_THROWS_WITH_AS(density_subsample(far_design, d, 10, 0.0, 1),
                       doctest::Contains("bandwidth"), std::runtime_error);
}

TEST_CASE("style_source: size contract and determinism") {
  const PointCloud x = oracle::wall_slab(512, 61);
  const PointCloud design = oracle::random_cloud(2048, 62);
  const PointCloud a = style_source(x, design, 0.01, 9);
  const PointCloud b = style_source(x, design, 0.01, 9);
  REQUIRE(a.size() == x.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
}

TEST_CASE("style_source: output hugs the slab's thickened support") {
  const PointCloud x = oracle::wall_slab(1024, 63);
  const PointCloud design = oracle::random_cloud(4096, 64);
  const double bw = 0.01, noise = 0.001;
  const PointCloud s = style_source(x, design, bw, 65);
  std::size_t near = 0;
  for (const Point3& p : s) {
    near += oracle::dist_to_support(p, x) <= 3.0 * bw + 3.0 * noise;
  }
  CHECK(static_cast<double>(near) >= 0.99 * static_cast<double>(s.size()));
}

TEST_CASE("style_source: clouds outside the unit cube are rejected") {
  const PointCloud x = oracle::random_cloud(32, 71, 5.0, 6.0);
  const PointCloud design = oracle::random_cloud(32, 72);
  CHECK_THROWS_AS(style_source(x, design), std::invalid_argument);
}
