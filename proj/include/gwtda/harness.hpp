#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "json.hpp"

#include "gwtda/core.hpp"
#include "gwtda/transforms.hpp"

namespace gwtda {

enum class GeneratorKind { Circle, Sphere, Sparse, LowRank, GaussianBlob };

std::string to_string(GeneratorKind kind);
GeneratorKind generator_kind_from_string(const std::string& name);

struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::Circle;
  std::size_t n = 20;
  std::size_t d = 2;
  std::size_t s = 2;            // sparse: nonzeros per point
  std::size_t rank = 1;         // lowrank: r, with d = d1 * d2
  std::size_t d1 = 0;
  std::size_t d2 = 0;
  bool equispaced = true;       // circle: equispaced vs uniform angles
  double noise = 0.0;           // perturbation norm bound
  RngSeed seed{};

  void validate() const;
};

/// Synthetic point clouds, deterministic in spec.seed.
PointCloud generate(const GeneratorSpec& spec);

enum class OperatorKind { Gaussian, Sors };
std::string to_string(OperatorKind kind);
OperatorKind operator_kind_from_string(const std::string& name);

enum class ComplexKind { VietorisRips, Cech };
std::string to_string(ComplexKind kind);
ComplexKind complex_kind_from_string(const std::string& name);

/// Report produced by each experiment: a config echo, per-trial records and
/// aggregates. Serialized as JSON; tabular parts also as CSV for plotting.
struct ExperimentReport {
  std::string experiment;
  nlohmann::json config = nlohmann::json::object();
  nlohmann::json records = nlohmann::json::array();
  nlohmann::json aggregates = nlohmann::json::object();

  nlohmann::json to_json() const;
};

struct SuccessProbabilityConfig {
  GeneratorSpec data;
  double eps = 0.1;
  double delta = 0.1;
  std::vector<std::size_t> m_grid;
  std::size_t trials = 100;
  std::size_t width_samples = 4096;
  bool gaussian = true;
  bool sors = true;
  RngSeed trial_seed{1};
  ScaleMode scale_mode = ScaleMode::InverseEm;

};

/// Fraction of trials with max pairwise distortion <= eps, per m and operator.
ExperimentReport run_success_probability(const SuccessProbabilityConfig& config);

/// Success rate of one operator kind at one m (the inner loop of the above).
double success_rate(const PointCloud& cloud, OperatorKind kind, std::size_t m, double eps,
                    std::size_t trials, RngSeed trial_seed, ScaleMode mode = ScaleMode::InverseEm);

struct TimingConfig {
  std::vector<std::size_t> d_grid{256, 4096};
  std::vector<double> m_fractions{0.125};
  std::vector<std::size_t> n_grid{8, 16, 32, 64, 128, 256, 512};
  std::size_t reps = 5;
  RngSeed seed{7};
};

/// Wall-clock comparison of (a) the full distance matrix in R^d against
/// (b) SORS projection to R^m followed by the distance matrix in R^m.
ExperimentReport run_timing(const TimingConfig& config);

struct PipelineConfig {
  GeneratorSpec data;
  double eps = 0.3;
  double delta = 0.1;
  ComplexKind complex = ComplexKind::VietorisRips;
  OperatorKind op = OperatorKind::Gaussian;
  std::size_t max_dim = 1;      // highest homology dimension reported
  std::size_t width_samples = 4096;
  RngSeed op_seed{11};
  ScaleMode scale_mode = ScaleMode::InverseEm;
  SorsParams sors_params{};
};

/// Generate, size m from the MC width + 2 SE, project, compute both diagram
/// sets and check the multiplicative interleaving at the measured distortion.
ExperimentReport run_pipeline(const PipelineConfig& config);

}  // namespace gwtda
