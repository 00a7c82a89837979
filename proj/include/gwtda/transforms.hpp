#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "gwtda/core.hpp"

namespace gwtda {

/// E[|g|] for a standard Gaussian vector in R^m, via log-gamma differences.
double em_constant(std::size_t m);

/// Smallest m with m >= (width + sqrt(2 ln(2/delta)))^2 / eps^2 + 1.
std::size_t target_dim_gaussian(double width, double eps, double delta);

struct SorsParams {
  double delta_bound = 1.0;   // entries of the unitary bounded by delta_bound / sqrt(d)
  double rip_constant = 1.0;  // the unspecified universal constant of the SORS bound

  void validate() const;
};

/// Right-hand side C * D^2 * (1 + ln(1/delta))^2 * (ln d)^4 * width^2 / eps^2,
/// with ln d passed directly.
double sors_dimension_bound(double width, double eps, double delta, double log_d,
                            const SorsParams& params);

struct SorsDimension {
  std::size_t m = 1;
  bool saturated = false;  // the bound exceeded d and m was clamped to d
};

SorsDimension target_dim_sors(double width, double eps, double delta, std::size_t d,
                              const SorsParams& params = {});

enum class ScaleMode { InverseEm, InverseSqrtM };

std::string to_string(ScaleMode mode);
ScaleMode scale_mode_from_string(const std::string& name);

bool is_power_of_two(std::size_t d);
std::size_t next_power_of_two(std::size_t d);

/// In-place orthonormal Walsh-Hadamard transform (Sylvester ordering).
void fwht_in_place(std::span<double> v);

/// Random projection R^d -> R^m: either a dense Gaussian matrix or a
/// subsampled Hadamard matrix with random signs (SORS). Coefficients are
/// regenerated from (m, d, seed) and never serialized.
class ProjectionOperator {
 public:
  struct GaussianDense {
    ScaleMode scale_mode = ScaleMode::InverseEm;
    std::vector<double> coefficients;  // m x d, row-major
  };
  struct Sors {
    std::vector<double> signs;       // length d, entries +-1
    std::vector<std::size_t> rows;   // m distinct indices in [0, d), sorted
  };

  static ProjectionOperator gaussian(std::size_t m, std::size_t d, RngSeed seed,
                                     ScaleMode mode = ScaleMode::InverseEm);
  static ProjectionOperator sors(std::size_t m, std::size_t d, RngSeed seed);

  std::size_t target_dim() const noexcept { return m_; }
  std::size_t source_dim() const noexcept { return d_; }
  RngSeed seed() const noexcept { return seed_; }
  bool is_sors() const noexcept { return std::holds_alternative<Sors>(data_); }
  bool is_gaussian() const noexcept { return std::holds_alternative<GaussianDense>(data_); }
  const GaussianDense& gaussian_data() const { return std::get<GaussianDense>(data_); }
  const Sors& sors_data() const { return std::get<Sors>(data_); }

  /// y = P x. `out` must have length m; `x` length d. Reentrant.
  void apply(std::span<const double> x, std::span<double> out) const;
  std::vector<double> apply(std::span<const double> x) const;

  /// Dense m x d matrix of the operator (for testing and small d).
  std::vector<double> dense_matrix() const;

  std::string descriptor_json() const;
  static ProjectionOperator from_descriptor_json(const std::string& text);

 private:
  ProjectionOperator(std::size_t m, std::size_t d, RngSeed seed,
                     std::variant<GaussianDense, Sors> data)
      : m_(m), d_(d), seed_(seed), data_(std::move(data)) {}

  std::size_t m_;
  std::size_t d_;
  RngSeed seed_;
  std::variant<GaussianDense, Sors> data_;
};

inline ProjectionOperator make_gaussian_op(std::size_t m, std::size_t d, RngSeed seed,
                                           ScaleMode mode = ScaleMode::InverseEm) {
  return ProjectionOperator::gaussian(m, d, seed, mode);
}
inline ProjectionOperator make_sors_op(std::size_t m, std::size_t d, RngSeed seed) {
  return ProjectionOperator::sors(m, d, seed);
}
inline std::vector<double> apply_op(const ProjectionOperator& op, std::span<const double> x) {
  return op.apply(x);
}

/// Applies `op` to every point. A SORS operator whose source dimension is the
/// next power of two above cloud.dim() zero-pads the points. Labels are kept.
PointCloud project_cloud(const ProjectionOperator& op, const PointCloud& cloud);

namespace serial {
PointCloud project_cloud(const ProjectionOperator& op, const PointCloud& cloud);
}  // namespace serial

}  // namespace gwtda
