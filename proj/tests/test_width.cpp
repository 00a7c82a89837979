#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "gwtda/core.hpp"
#include "gwtda/error.hpp"
#include "gwtda/harness.hpp"
#include "gwtda/transforms.hpp"
#include "gwtda/width.hpp"
#include "oracles.hpp"

using namespace gwtda;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no exception";
  return ErrorCode::InvalidInput;
}

DirectionSet random_unit_vectors(std::size_t count, std::size_t d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<double> data;
  for (std::size_t i = 0; i < count; ++i) {
    std::vector<double> v(d);
    double s = 0.0;
    for (auto& x : v) {
      x = g(rng);
      s += x * x;
    }
    for (auto& x : v) data.push_back(x / std::sqrt(s));
  }
  return DirectionSet(d, data);
}

PointCloud circle(std::size_t n) {
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = 2.0 * M_PI * i / n;
    rows.push_back({std::cos(t), std::sin(t)});
  }
  return PointCloud::from_rows(rows);
}

PointCloud triangle() { return PointCloud::from_rows({{0.0, 0.0}, {1.0, 0.0}, {0.5, std::sqrt(3.0) / 2.0}}); }

}  // namespace

TEST(DirectionSet, RejectsNonUnit) {
  EXPECT_THROW(DirectionSet(2, {1.0, 0.1}), Error);
  EXPECT_THROW(DirectionSet(2, {1.0, 0.0, 0.0}), Error);
  EXPECT_NO_THROW(DirectionSet(2, {1.0, 0.0}));
}

TEST(NormalizedDifferences, TwoPoints) {
  const auto t = normalized_differences(PointCloud::from_rows({{0.0, 0.0}, {3.0, 4.0}}));
  ASSERT_EQ(t.size(), 2u);
  EXPECT_NEAR(t.direction(0)[0], -t.direction(1)[0], 1e-15);
  EXPECT_NEAR(t.direction(0)[1], -t.direction(1)[1], 1e-15);
  EXPECT_NEAR(std::abs(t.direction(0)[0]), 0.6, 1e-15);
}

TEST(NormalizedDifferences, CollinearKeepsMultiset) {
  const auto t = normalized_differences(PointCloud::from_rows({{0.0}, {1.0}, {2.0}}));
  ASSERT_EQ(t.size(), 6u);
  std::size_t plus = 0;
  for (std::size_t i = 0; i < 6; ++i) {
    EXPECT_NEAR(std::abs(t.direction(i)[0]), 1.0, 1e-15);
    plus += t.direction(i)[0] > 0;
  }
  EXPECT_EQ(plus, 3u);
}

TEST(NormalizedDifferences, RandomUnitAndSymmetric) {
  std::mt19937_64 rng(1);
  const auto t = normalized_differences(PointCloud::from_rows(oracle::random_points(5, 4, rng)));
  ASSERT_EQ(t.size(), 20u);
  for (std::size_t i = 0; i < t.size(); ++i) {
    EXPECT_NEAR(norm(t.direction(i)), 1.0, 1e-12);
    bool found = false;
    for (std::size_t j = 0; j < t.size() && !found; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < 4; ++k) s += std::abs(t.direction(i)[k] + t.direction(j)[k]);
      found = s < 1e-15;
    }
    EXPECT_TRUE(found);
  }
}

TEST(NormalizedDifferences, Duplicates) {
  EXPECT_EQ(code_of([] { normalized_differences(PointCloud::from_rows({{1.0, 1.0}, {1.0, 1.0}})); }),
            ErrorCode::DuplicatePoint);
}

TEST(GaussianWidthMc, SingleDirectionMeanZero) {
  const auto w = gaussian_width_mc(DirectionSet(3, {1.0, 0.0, 0.0}), 10000, RngSeed{2});
  EXPECT_EQ(w.num_samples, 10000u);
  EXPECT_GT(w.std_error, 0.0);
  EXPECT_LE(std::abs(w.mean), 4.0 * w.std_error);
}

TEST(GaussianWidthMc, HalfNormal) {
  const auto w = gaussian_width_mc(DirectionSet(3, {1.0, 0.0, 0.0, -1.0, 0.0, 0.0}), 10000, RngSeed{3});
  EXPECT_NEAR(w.mean, std::sqrt(2.0 / M_PI), 4.0 * w.std_error);
}

TEST(GaussianWidthMc, DenseSphereSampleMatchesQuadrature) {
  const auto t = random_unit_vectors(10000, 16, 4);
  const auto w = gaussian_width_mc(t, 4096, RngSeed{5});
  const double expected = em_constant(16) * oracle::expected_max_cosine(16, 10000);
  EXPECT_NEAR(w.mean, expected, 5.0 * w.std_error);
  EXPECT_LE(w.mean, em_constant(16));
  EXPECT_LE(w.mean, width_bound_sphere(16));
}

TEST(GaussianWidthMc, DeterministicInSeed) {
  const auto t = random_unit_vectors(50, 6, 6);
  const auto a = gaussian_width_mc(t, 500, RngSeed{7});
  const auto b = gaussian_width_mc(t, 500, RngSeed{7});
  EXPECT_EQ(a.mean, b.mean);
  EXPECT_EQ(a.std_error, b.std_error);
}

TEST(GaussianWidthMc, StdErrorFromSamples) {
  const auto t = random_unit_vectors(20, 5, 8);
  const auto s = width_samples(t, 300, RngSeed{9});
  const auto w = gaussian_width_mc(t, 300, RngSeed{9});
  double mean = 0.0;
  for (double x : s) mean += x;
  mean /= s.size();
  double var = 0.0;
  for (double x : s) var += (x - mean) * (x - mean);
  var /= (s.size() - 1);
  EXPECT_NEAR(w.mean, mean, 1e-12);
  EXPECT_NEAR(w.std_error, std::sqrt(var / s.size()), 1e-12);
}

TEST(GaussianWidthMc, MonotoneUnderInclusion) {
  const auto big = random_unit_vectors(40, 7, 10);
  const std::vector<double> head(big.data().begin(), big.data().begin() + 15 * 7);
  const DirectionSet small(7, head);
  const auto a = width_samples(small, 1000, RngSeed{11});
  const auto b = width_samples(big, 1000, RngSeed{11});
  for (std::size_t j = 0; j < a.size(); ++j) EXPECT_LE(a[j], b[j]);
  EXPECT_LE(gaussian_width_mc(small, 1000, RngSeed{11}).mean, gaussian_width_mc(big, 1000, RngSeed{11}).mean);
}

TEST(GaussianWidthMc, BelowDiscreteBound) {
  for (std::uint64_t s = 0; s < 5; ++s) {
    const auto t = random_unit_vectors(100, 10, 20 + s);
    const auto w = gaussian_width_mc(t, 4096, RngSeed{30 + s});
    EXPECT_LE(w.mean, width_bound_discrete(100) + 4.0 * w.std_error);
  }
}

TEST(GaussianWidthMc, Errors) {
  const auto t = random_unit_vectors(3, 2, 1);
  EXPECT_EQ(code_of([&] { gaussian_width_mc(t, 1, RngSeed{1}); }), ErrorCode::ParamOutOfRange);
  EXPECT_EQ(code_of([] { gaussian_width_mc(DirectionSet(2, {}), 10, RngSeed{1}); }), ErrorCode::EmptySet);
}

TEST(DifferenceWidthMc, AgreesWithMaterializedSet) {
  std::mt19937_64 rng(12);
  const auto cloud = PointCloud::from_rows(oracle::random_points(15, 6, rng));
  const auto a = difference_width_mc(cloud, 2000, RngSeed{13});
  const auto b = gaussian_width_mc(normalized_differences(cloud), 2000, RngSeed{13});
  EXPECT_NEAR(a.mean, b.mean, 1e-12);
  EXPECT_NEAR(a.std_error, b.std_error, 1e-12);
  EXPECT_EQ(code_of([] { difference_width_mc(PointCloud::from_rows({{1.0}}), 10, RngSeed{1}); }), ErrorCode::EmptySet);
}

TEST(DifferenceWidthMc, TriangleMatchesHexagonClosedForm) {
  // directions of an equilateral triangle form a regular hexagon:
  // w = E_2 * E[cos phi], phi uniform on [0, pi/6] = E_2 * 3 / pi
  const auto w = difference_width_mc(triangle(), 20000, RngSeed{14});
  EXPECT_NEAR(w.mean, em_constant(2) * 3.0 / M_PI, 4.0 * w.std_error);
}

TEST(WidthBounds, ClosedForms) {
  EXPECT_EQ(width_bound_discrete(1), 0.0);
  EXPECT_NEAR(width_bound_discrete(static_cast<std::size_t>(std::round(std::exp(2.0)))),
              std::sqrt(2.0 * std::log(std::round(std::exp(2.0)))), 1e-15);
  EXPECT_NEAR(std::sqrt(2.0 * std::log(std::exp(2.0))), 2.0, 1e-15);
  EXPECT_THROW(width_bound_discrete(0), Error);
  EXPECT_EQ(width_bound_sparse(8, 8, 1.0), 0.0);
  EXPECT_NEAR(width_bound_sparse(2, 128, 4.0), std::sqrt(8.0 * std::log(64.0)), 1e-12);
  EXPECT_NEAR(width_bound_sparse(2, 128, 4.0), 5.77, 0.01);
  EXPECT_THROW(width_bound_sparse(0, 8, 1.0), Error);
  EXPECT_THROW(width_bound_sparse(9, 8, 1.0), Error);
  EXPECT_THROW(width_bound_sparse(2, 8, 0.0), Error);
  EXPECT_EQ(width_bound_sphere(1), 1.0);
  EXPECT_EQ(width_bound_sphere(16), 4.0);
}

TEST(WidthBounds, SparseCalibration) {
  // calibrate c on three clouds, then check a fresh one against the calibrated bound
  const std::size_t d = 128, s = 2;
  auto cloud_for = [&](std::uint64_t seed) {
    GeneratorSpec spec;
    spec.kind = GeneratorKind::Sparse;
    spec.n = 60;
    spec.d = d;
    spec.s = s;
    spec.seed = RngSeed{seed};
    return generate(spec);
  };
  const double unit = width_bound_sparse(2 * s, d, 1.0);
  double c_cal = 0.0;
  for (std::uint64_t seed = 40; seed < 43; ++seed) {
    const auto w = difference_width_mc(cloud_for(seed), 2048, RngSeed{seed + 100});
    c_cal = std::max(c_cal, std::pow((w.mean + 4.0 * w.std_error) / unit, 2));
  }
  const auto w = difference_width_mc(cloud_for(50), 2048, RngSeed{150});
  EXPECT_LE(w.mean, width_bound_sparse(2 * s, d, c_cal) + 4.0 * w.std_error);
}

TEST(Spread, Examples) {
  const auto tri = spread(pairwise_distances(triangle()));
  EXPECT_NEAR(tri.spread, 1.0, 1e-15);
  const auto line = spread(pairwise_distances(PointCloud::from_rows({{0.0}, {1.0}, {3.0}})));
  EXPECT_EQ(line.diameter, 3.0);
  EXPECT_EQ(line.min_distance, 1.0);
  EXPECT_EQ(line.spread, 3.0);
}

TEST(Spread, MatchesScan) {
  std::mt19937_64 rng(15);
  const auto pts = oracle::random_points(25, 3, rng);
  const auto ref = oracle::distance_table(pts);
  double mx = 0.0, mn = 1e300;
  for (std::size_t i = 0; i < 25; ++i)
    for (std::size_t j = i + 1; j < 25; ++j) {
      mx = std::max(mx, ref[i][j]);
      mn = std::min(mn, ref[i][j]);
    }
  const auto s = spread(pairwise_distances(PointCloud::from_rows(pts)));
  EXPECT_NEAR(s.diameter, mx, 1e-12);
  EXPECT_NEAR(s.min_distance, mn, 1e-12);
  EXPECT_GE(s.spread, 1.0);
}

TEST(Spread, Errors) {
  EXPECT_EQ(code_of([] { spread(pairwise_distances(PointCloud::from_rows({{0.0}, {0.0}}))); }),
            ErrorCode::DuplicatePoint);
  EXPECT_THROW(spread(pairwise_distances(PointCloud::from_rows({{0.0}}))), Error);
}

TEST(Doubling, TwoPoints) {
  const auto d = doubling_dimension(PointCloud::from_rows({{0.0}, {1.0}}));
  EXPECT_EQ(d.doubling_constant, 2u);
  EXPECT_DOUBLE_EQ(d.dimension, 1.0);
}

TEST(Doubling, CollinearFour) {
  const auto cloud = PointCloud::from_rows({{0.0}, {1.0}, {2.0}, {3.0}});
  const auto d = doubling_dimension(cloud);
  EXPECT_LE(d.dimension, std::log2(3.0) + 1e-12);
  EXPECT_EQ(d.doubling_constant, oracle::exact_doubling_constant(oracle::distance_table(cloud.rows())));
  EXPECT_DOUBLE_EQ(d.dimension, std::log2(static_cast<double>(d.doubling_constant)));
}

TEST(Doubling, CircleBelowSphere) {
  // the exact constant of the 32-gon is 5: at R = the 2-step chord the ball
  // holds 5 points and R/2 is shorter than one step
  const auto c = doubling_dimension(circle(32));
  EXPECT_EQ(c.doubling_constant, oracle::exact_doubling_constant(oracle::distance_table(circle(32).rows())));
  GeneratorSpec spec;
  spec.kind = GeneratorKind::Sphere;
  spec.n = 32;
  spec.d = 3;
  spec.seed = RngSeed{16};
  const auto s = doubling_dimension(generate(spec));
  EXPECT_GE(c.dimension, 1.0);
  EXPECT_LT(c.dimension, s.dimension);
}

TEST(Doubling, GreedyNeverBelowExact) {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 15; ++t) {
    const auto pts = oracle::random_points(6 + rng() % 8, 2, rng);
    const auto greedy = doubling_dimension(PointCloud::from_rows(pts));
    const auto exact = oracle::exact_doubling_constant(oracle::distance_table(pts));
    EXPECT_GE(greedy.doubling_constant, exact);
    EXPECT_LE(greedy.doubling_constant, 2 * exact);
  }
}

TEST(Doubling, SubsetAtMostTwiceSuperset) {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 10; ++t) {
    const auto pts = oracle::random_points(30, 3, rng);
    const std::vector<std::vector<double>> sub(pts.begin(), pts.begin() + 12);
    const auto a = doubling_dimension(PointCloud::from_rows(sub));
    const auto b = doubling_dimension(PointCloud::from_rows(pts));
    EXPECT_LE(a.doubling_constant, 2 * b.doubling_constant);
  }
}

TEST(Doubling, TooLarge) {
  std::mt19937_64 rng(18);
  const auto cloud = PointCloud::from_rows(oracle::random_points(kDoublingBruteForceCap + 1, 2, rng));
  EXPECT_EQ(code_of([&] { doubling_dimension(cloud); }), ErrorCode::TooLarge);
}

TEST(CheckWidthDoubling, CircleAndRandomCloudPass) {
  const auto c = check_width_doubling(circle(32), 4096, RngSeed{19});
  EXPECT_TRUE(c.pass) << c.lhs << " " << c.w2 << " " << c.rhs;
  std::mt19937_64 rng(20);
  const auto r = check_width_doubling(PointCloud::from_rows(oracle::random_points(16, 8, rng)), 4096, RngSeed{21});
  EXPECT_TRUE(r.pass) << r.lhs << " " << r.w2 << " " << r.rhs;
}

TEST(CheckWidthDoubling, ReportedQuantities) {
  const auto r = check_width_doubling(triangle(), 4096, RngSeed{22});
  EXPECT_NEAR(r.spread.spread, 1.0, 1e-12);
  EXPECT_EQ(r.doubling.doubling_constant, 3u);
  EXPECT_NEAR(r.lhs, 36.0 / 25.0 * std::log2(3.0), 1e-12);
  EXPECT_NEAR(r.rhs, 227.0 * std::log2(3.0), 1e-9);
  EXPECT_NEAR(r.w2, r.width.mean * r.width.mean, 1e-15);
  EXPECT_NEAR(r.w2_std_error, 2.0 * r.width.mean * r.width.std_error, 1e-15);
}
