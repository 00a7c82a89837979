#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gwtda/error.hpp"

namespace gwtda {

struct RngSeed {
  std::uint64_t value = 0;
  friend bool operator==(RngSeed, RngSeed) = default;
};

/// Absolute/relative tolerance pair. At least one component must be positive.
struct Tolerance {
  double abs = 0.0;
  double rel = 0.0;

  Tolerance() = default;
  Tolerance(double abs_tol, double rel_tol);
};

/// n points in R^d stored row-major. Immutable after construction.
class PointCloud {
 public:
  PointCloud(std::size_t n, std::size_t d, std::vector<double> coords,
             std::vector<std::string> labels = {});

  /// Builds a cloud from a list of equally sized points.
  static PointCloud from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t size() const noexcept { return n_; }
  std::size_t dim() const noexcept { return d_; }

  std::span<const double> point(std::size_t i) const {
    return {coords_.data() + i * d_, d_};
  }
  std::span<const double> coords() const noexcept { return coords_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  bool has_labels() const noexcept { return !labels_.empty(); }

  std::vector<std::vector<double>> rows() const;

 private:
  std::size_t n_;
  std::size_t d_;
  std::vector<double> coords_;
  std::vector<std::string> labels_;
};

/// Symmetric n x n matrix of Euclidean distances with zero diagonal.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(std::size_t n) : n_(n), entries_(n * n, 0.0) {}
  DistanceMatrix(std::size_t n, std::vector<double> entries);

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, double v) {
    entries_[i * n_ + j] = v;
    entries_[j * n_ + i] = v;
  }
  std::span<const double> entries() const noexcept { return entries_; }

  friend bool operator==(const DistanceMatrix&, const DistanceMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> entries_;
};

double euclidean_distance(std::span<const double> a, std::span<const double> b);
double squared_distance(std::span<const double> a, std::span<const double> b);
double dot(std::span<const double> a, std::span<const double> b);
double norm(std::span<const double> a);

/// All pairwise Euclidean distances. Parallel over rows of the upper triangle;
/// every entry is summed in coordinate order, so the result does not depend on
/// the thread count.
DistanceMatrix pairwise_distances(const PointCloud& cloud);

/// max over pairs i<j of | |y_i - y_j| / |x_i - x_j| - 1 |.
/// Throws DuplicatePoint when two points of x coincide.
double max_pairwise_distortion(const PointCloud& x, const PointCloud& y);

namespace serial {
DistanceMatrix pairwise_distances(const PointCloud& cloud);
}  // namespace serial

}  // namespace gwtda
