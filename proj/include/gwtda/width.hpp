#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gwtda/core.hpp"

namespace gwtda {

/// Multiset of unit vectors in R^d, stored row-major.
class DirectionSet {
 public:
  DirectionSet(std::size_t d, std::vector<double> directions);

  std::size_t size() const noexcept { return d_ == 0 ? 0 : data_.size() / d_; }
  std::size_t dim() const noexcept { return d_; }
  bool empty() const noexcept { return data_.empty(); }
  std::span<const double> direction(std::size_t i) const { return {data_.data() + i * d_, d_}; }
  std::span<const double> data() const noexcept { return data_; }

 private:
  std::size_t d_;
  std::vector<double> data_;
};

struct WidthEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t num_samples = 0;
};

struct SpreadStats {
  double diameter = 0.0;
  double min_distance = 0.0;
  double spread = 1.0;
};

struct DoublingEstimate {
  std::size_t doubling_constant = 1;
  double dimension = 0.0;
};

inline constexpr std::size_t kDefaultWidthSamples = 4096;
inline constexpr std::size_t kDoublingBruteForceCap = 512;

/// (x_i - x_j) / |x_i - x_j| for all ordered pairs i != j, in row-major pair order.
DirectionSet normalized_differences(const PointCloud& cloud);

/// Monte-Carlo estimate of E sup_{t in T} <t, g> from k Gaussian draws. Draw j
/// uses substream j of the seed, so the estimate is independent of thread count.
WidthEstimate gaussian_width_mc(const DirectionSet& t, std::size_t k, RngSeed seed);

/// Same estimate for T = normalized_differences(cloud), computed from the
/// projections <x_i, g> without materializing T. Uses the same Gaussian draws
/// as gaussian_width_mc with the same seed.
WidthEstimate difference_width_mc(const PointCloud& cloud, std::size_t k, RngSeed seed);

/// Per-draw suprema (the samples behind gaussian_width_mc), for callers that
/// need to compare sets on a shared Gaussian stream.
std::vector<double> width_samples(const DirectionSet& t, std::size_t k, RngSeed seed);

double width_bound_discrete(std::size_t n);
double width_bound_sparse(std::size_t s, std::size_t d, double c);
double width_bound_sphere(std::size_t m);

SpreadStats spread(const DistanceMatrix& dist);

/// Greedy upper estimate of the doubling constant of X with balls centred at
/// points of X. Brute force; n <= kDoublingBruteForceCap.
DoublingEstimate doubling_dimension(const PointCloud& cloud);
DoublingEstimate doubling_dimension(const DistanceMatrix& dist);

struct WidthDoublingReport {
  double lhs = 0.0;       // (36/25) spread^-2 dim
  double w2 = 0.0;        // squared MC width of the normalized differences
  double rhs = 0.0;       // 227 spread^2 dim
  double w2_std_error = 0.0;
  WidthEstimate width;
  SpreadStats spread;
  DoublingEstimate doubling;
  bool pass = false;
};

/// Two-sided width / doubling-dimension consistency check with 5-SE guard bands.
WidthDoublingReport check_width_doubling(const PointCloud& cloud, std::size_t mc_samples,
                                         RngSeed seed);

namespace serial {
WidthEstimate gaussian_width_mc(const DirectionSet& t, std::size_t k, RngSeed seed);
DoublingEstimate doubling_dimension(const DistanceMatrix& dist);
}  // namespace serial

}  // namespace gwtda
