#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "gwtda/error.hpp"
#include "gwtda/harness.hpp"
#include "gwtda/io.hpp"
#include "gwtda/transforms.hpp"
#include "oracles.hpp"

using namespace gwtda;

namespace {

GeneratorSpec spec_of(GeneratorKind kind, std::size_t n, std::size_t d, std::uint64_t seed) {
  GeneratorSpec s;
  s.kind = kind;
  s.n = n;
  s.d = d;
  s.seed = RngSeed{seed};
  return s;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("gwtda_test_" + std::to_string(::getpid()) + "_" + name);
}

}  // namespace

TEST(Generate, CircleSquare) {
  const auto c = generate(spec_of(GeneratorKind::Circle, 4, 3, 1));
  const std::vector<std::vector<double>> expect{{1, 0, 0}, {0, 1, 0}, {-1, 0, 0}, {0, -1, 0}};
  const auto rows = c.rows();
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t k = 0; k < 3; ++k) EXPECT_NEAR(rows[i][k], expect[i][k], 1e-15);
}

TEST(Generate, UniformCircleOnUnitCircle) {
  auto s = spec_of(GeneratorKind::Circle, 50, 2, 2);
  s.equispaced = false;
  const auto c = generate(s);
  for (std::size_t i = 0; i < 50; ++i) EXPECT_NEAR(norm(c.point(i)), 1.0, 1e-14);
}

TEST(Generate, SparseExactSupport) {
  auto s = spec_of(GeneratorKind::Sparse, 200, 128, 3);
  s.s = 2;
  const auto c = generate(s);
  std::vector<std::size_t> hits(128, 0);
  for (std::size_t i = 0; i < c.size(); ++i) {
    std::size_t nz = 0;
    for (std::size_t k = 0; k < 128; ++k)
      if (c.point(i)[k] != 0.0) {
        ++nz;
        ++hits[k];
      }
    EXPECT_EQ(nz, 2u);
    EXPECT_NEAR(norm(c.point(i)), 1.0, 1e-12);
  }
  // positions uniform: 400 hits over 128 slots
  for (auto h : hits) EXPECT_LT(h, 20u);
}

TEST(Generate, LowRankIsRankOne) {
  auto s = spec_of(GeneratorKind::LowRank, 10, 16, 4);
  s.rank = 1;
  s.d1 = 4;
  s.d2 = 4;
  const auto c = generate(s);
  ASSERT_EQ(c.dim(), 16u);
  for (std::size_t i = 0; i < c.size(); ++i) {
    Eigen::Matrix4d m;
    for (int r = 0; r < 4; ++r)
      for (int q = 0; q < 4; ++q) m(r, q) = c.point(i)[r * 4 + q];
    const Eigen::JacobiSVD<Eigen::Matrix4d> svd(m);
    EXPECT_NEAR(m.norm(), 1.0, 1e-12);
    EXPECT_LE(svd.singularValues()(1), 1e-10);
  }
}

TEST(Generate, LowRankHigherRank) {
  auto s = spec_of(GeneratorKind::LowRank, 5, 30, 5);
  s.rank = 2;
  s.d1 = 5;
  s.d2 = 6;
  const auto c = generate(s);
  for (std::size_t i = 0; i < c.size(); ++i) {
    Eigen::MatrixXd m(5, 6);
    for (int r = 0; r < 5; ++r)
      for (int q = 0; q < 6; ++q) m(r, q) = c.point(i)[r * 6 + q];
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    EXPECT_GT(svd.singularValues()(1), 1e-6);
    EXPECT_LE(svd.singularValues()(2), 1e-10);
  }
}

TEST(Generate, NoiseBounded) {
  auto base = spec_of(GeneratorKind::Sphere, 40, 5, 6);
  auto noisy = base;
  noisy.noise = 0.05;
  const auto a = generate(base), b = generate(noisy);
  double max_shift = 0.0;
  for (std::size_t i = 0; i < 40; ++i) {
    EXPECT_NEAR(norm(a.point(i)), 1.0, 1e-12);
    const double s = euclidean_distance(a.point(i), b.point(i));
    EXPECT_LE(s, 0.05 + 1e-15);
    max_shift = std::max(max_shift, s);
  }
  EXPECT_GT(max_shift, 0.0);
}

TEST(Generate, Deterministic) {
  for (auto kind : {GeneratorKind::Circle, GeneratorKind::Sphere, GeneratorKind::Sparse, GeneratorKind::GaussianBlob}) {
    auto s = spec_of(kind, 20, 8, 7);
    s.equispaced = false;
    s.noise = 0.01;
    EXPECT_EQ(generate(s).rows(), generate(s).rows());
    auto t = s;
    t.seed = RngSeed{8};
    EXPECT_NE(generate(s).rows(), generate(t).rows());
  }
}

TEST(Generate, Errors) {
  auto bad_sparse = spec_of(GeneratorKind::Sparse, 5, 4, 1);
  bad_sparse.s = 5;
  auto bad_circle = spec_of(GeneratorKind::Circle, 5, 1, 1);
  auto bad_lowrank = spec_of(GeneratorKind::LowRank, 5, 16, 1);
  bad_lowrank.d1 = 4;
  bad_lowrank.d2 = 3;
  auto bad_noise = spec_of(GeneratorKind::Sphere, 5, 3, 1);
  bad_noise.noise = -1.0;
  auto zero = spec_of(GeneratorKind::Sphere, 0, 3, 1);
  for (const auto& s : {bad_sparse, bad_circle, bad_lowrank, bad_noise, zero}) {
    try {
      generate(s);
      ADD_FAILURE();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::ParamOutOfRange);
    }
  }
  EXPECT_THROW(generator_kind_from_string("torus"), Error);
  EXPECT_EQ(generator_kind_from_string("gaussian_blob"), GeneratorKind::GaussianBlob);
  EXPECT_EQ(operator_kind_from_string("sors"), OperatorKind::Sors);
  EXPECT_EQ(complex_kind_from_string("cech"), ComplexKind::Cech);
}

TEST(SuccessProbability, SorsAtFullDimensionAlwaysSucceeds) {
  SuccessProbabilityConfig cfg;
  cfg.data = spec_of(GeneratorKind::Sparse, 30, 64, 9);
  cfg.eps = 0.1;
  cfg.m_grid = {1, 64};
  cfg.trials = 40;
  const auto r = run_success_probability(cfg);
  ASSERT_EQ(r.records.size(), 2u);
  EXPECT_EQ(r.records[1]["sors"].get<double>(), 1.0);
  EXPECT_LE(r.records[0]["gaussian"].get<double>(), 0.05);
  EXPECT_LE(r.records[0]["sors"].get<double>(), 0.05);
  for (const auto& rec : r.records) {
    for (const char* k : {"gaussian", "sors"}) {
      EXPECT_GE(rec[k].get<double>(), 0.0);
      EXPECT_LE(rec[k].get<double>(), 1.0);
    }
  }
  EXPECT_TRUE(r.aggregates.contains("m_gaussian_theory"));
}

TEST(SuccessProbability, NondecreasingAfterIsotonicSmoothing) {
  SuccessProbabilityConfig cfg;
  cfg.data = spec_of(GeneratorKind::Sparse, 40, 128, 10);
  cfg.eps = 0.3;
  cfg.m_grid = {8, 16, 32, 64, 96, 128};
  cfg.trials = 50;
  cfg.gaussian = false;
  const auto r = run_success_probability(cfg);
  const double slack = 2.0 / std::sqrt(50.0);
  double running_max = 0.0;
  for (const auto& rec : r.records) {
    const double v = rec["sors"].get<double>();
    EXPECT_GE(v, running_max - slack);
    running_max = std::max(running_max, v);
  }
  EXPECT_EQ(r.records.back()["sors"].get<double>(), 1.0);
}

TEST(SuccessProbability, Errors) {
  SuccessProbabilityConfig cfg;
  cfg.data = spec_of(GeneratorKind::Sparse, 10, 16, 1);
  cfg.m_grid = {17};
  EXPECT_THROW(run_success_probability(cfg), Error);
  cfg.m_grid = {4};
  cfg.trials = 0;
  EXPECT_THROW(run_success_probability(cfg), Error);
}

TEST(SuccessProbability, Deterministic) {
  const auto cloud = generate(spec_of(GeneratorKind::Sphere, 30, 32, 11));
  EXPECT_EQ(success_rate(cloud, OperatorKind::Gaussian, 20, 0.5, 30, RngSeed{3}),
            success_rate(cloud, OperatorKind::Gaussian, 20, 0.5, 30, RngSeed{3}));
}

TEST(Timing, SmallRunShape) {
  TimingConfig cfg;
  cfg.d_grid = {64};
  cfg.m_fractions = {1.0, 0.25};
  cfg.n_grid = {4, 8};
  cfg.reps = 3;
  const auto r = run_timing(cfg);
  ASSERT_EQ(r.records.size(), 4u);
  for (const auto& rec : r.records) {
    EXPECT_GE(rec["direct_us"].get<double>(), 0.0);
    EXPECT_GE(rec["projected_us"].get<double>(), 0.0);
  }
  ASSERT_EQ(r.aggregates["breakeven"].size(), 2u);
  cfg.d_grid = {48};
  EXPECT_THROW(run_timing(cfg), Error);
}

TEST(Timing, FullDimensionIsPureOverhead) {
  TimingConfig cfg;
  cfg.d_grid = {1024};
  cfg.m_fractions = {1.0};
  cfg.n_grid = {8, 32, 64};
  cfg.reps = 5;
  const auto r = run_timing(cfg);
  for (const auto& rec : r.records)
    EXPECT_GE(rec["projected_us"].get<double>(), rec["direct_us"].get<double>());
}

TEST(Pipeline, CircleVr) {
  PipelineConfig cfg;
  cfg.data = spec_of(GeneratorKind::Circle, 20, 2, 12);
  const auto r = run_pipeline(cfg);
  EXPECT_TRUE(r.aggregates["all_interleaved"].get<bool>());
  ASSERT_EQ(r.records.size(), 2u);
  for (const char* key : {"diagram_x", "diagram_y"}) {
    std::size_t prominent = 0;
    for (const auto& p : r.records[1][key]) prominent += p[1].get<double>() - p[0].get<double>() > 0.3;
    EXPECT_EQ(prominent, 1u) << key;
  }
}

TEST(Pipeline, SinglePoint) {
  PipelineConfig cfg;
  cfg.data = spec_of(GeneratorKind::Sphere, 1, 4, 13);
  const auto r = run_pipeline(cfg);
  EXPECT_TRUE(r.aggregates["all_interleaved"].get<bool>());
  EXPECT_EQ(r.records[0]["diagram_x"].size(), 1u);
  EXPECT_TRUE(r.records[1]["diagram_x"].empty());
}

TEST(Pipeline, SorsOperatorRuns) {
  PipelineConfig cfg;
  cfg.data = spec_of(GeneratorKind::Sparse, 20, 100, 14);
  cfg.op = OperatorKind::Sors;
  cfg.complex = ComplexKind::Cech;
  const auto r = run_pipeline(cfg);
  EXPECT_TRUE(r.aggregates["all_interleaved"].get<bool>());
  EXPECT_EQ(r.aggregates["operator"]["d"].get<std::size_t>(), 128u);
}

TEST(Pipeline, Deterministic) {
  PipelineConfig cfg;
  cfg.data = spec_of(GeneratorKind::Sparse, 15, 32, 15);
  EXPECT_EQ(run_pipeline(cfg).to_json(), run_pipeline(cfg).to_json());
}

TEST(CsvIo, RoundTrip) {
  std::mt19937_64 rng(16);
  std::normal_distribution<double> g(0.0, 1e3);
  std::vector<std::vector<double>> rows(25, std::vector<double>(7));
  for (auto& r : rows)
    for (auto& x : r) x = g(rng);
  const auto cloud = PointCloud::from_rows(rows);
  const auto path = temp_file("cloud.csv");
  emit_cloud(cloud, path.string());
  const auto back = ingest_csv(path.string());
  std::filesystem::remove(path);
  ASSERT_EQ(back.size(), 25u);
  for (std::size_t i = 0; i < 25; ++i)
    for (std::size_t k = 0; k < 7; ++k)
      EXPECT_LE(std::abs(back.point(i)[k] - rows[i][k]), 1e-15 * std::abs(rows[i][k]));
}

TEST(CsvIo, HeaderSkippedAndRaggedRejected) {
  std::stringstream ok("# x,y\n1,2\n# mid comment\n3,4\n");
  const auto c = read_cloud_csv(ok);
  EXPECT_EQ(c.size(), 2u);
  EXPECT_EQ(c.point(1)[0], 3.0);
  std::stringstream ragged("1,2\n3,4\n5\n");
  try {
    read_cloud_csv(ragged);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParseError);
    EXPECT_NE(std::string(e.what()).find("3"), std::string::npos);
  }
  std::stringstream junk("1,abc\n");
  EXPECT_THROW(read_cloud_csv(junk), Error);
  EXPECT_THROW(ingest_csv("/nonexistent/file.csv"), Error);
}

TEST(Reports, JsonAndCsv) {
  SuccessProbabilityConfig cfg;
  cfg.data = spec_of(GeneratorKind::Sparse, 10, 16, 17);
  cfg.m_grid = {4, 16};
  cfg.trials = 5;
  const auto r = run_success_probability(cfg);
  const auto j = r.to_json();
  EXPECT_EQ(j["experiment"], "succ-prob");
  EXPECT_TRUE(j.contains("config"));
  EXPECT_TRUE(j.contains("records"));
  EXPECT_TRUE(j.contains("aggregates"));

  std::stringstream csv;
  write_report_csv(csv, r);
  std::string header;
  std::getline(csv, header);
  EXPECT_NE(header.find("m"), std::string::npos);
  EXPECT_NE(header.find("sors"), std::string::npos);
  std::size_t lines = 0;
  for (std::string line; std::getline(csv, line);) lines += !line.empty();
  EXPECT_EQ(lines, 2u);

  const auto path = temp_file("report.json");
  emit_report(r, path.string());
  std::ifstream in(path);
  EXPECT_EQ(nlohmann::json::parse(in), j);
  std::filesystem::remove(path);
}
