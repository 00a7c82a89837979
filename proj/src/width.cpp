#include "gwtda/width.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "gwtda/random.hpp"

namespace gwtda {

DirectionSet::DirectionSet(std::size_t d, std::vector<double> directions)
    : d_(d), data_(std::move(directions)) {
  if (d_ == 0) throw Error(ErrorCode::InvalidInput, "direction set needs d >= 1");
  if (data_.size() % d_ != 0) throw Error(ErrorCode::DimensionMismatch, "ragged direction buffer");
  for (std::size_t i = 0; i < size(); ++i) {
    if (std::abs(norm(direction(i)) - 1.0) > 1e-10) {
      throw Error(ErrorCode::InvalidInput, "direction " + std::to_string(i) + " is not a unit vector");
    }
  }
}

DirectionSet normalized_differences(const PointCloud& cloud) {
  const std::size_t n = cloud.size();
  const std::size_t d = cloud.dim();
  std::vector<double> data;
  data.reserve(n * (n - 1) * d);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const auto xi = cloud.point(i);
      const auto xj = cloud.point(j);
      const double len = euclidean_distance(xi, xj);
      if (len == 0.0) {
        throw Error(ErrorCode::DuplicatePoint, "points " + std::to_string(i) + " and " + std::to_string(j));
      }
      for (std::size_t k = 0; k < d; ++k) data.push_back((xi[k] - xj[k]) / len);
    }
  }
  return DirectionSet(d, std::move(data));
}

namespace {

WidthEstimate summarize(const std::vector<double>& samples) {
  const double k = static_cast<double>(samples.size());
  double sum = 0.0;
  for (double s : samples) sum += s;
  const double mean = sum / k;
  double ss = 0.0;
  for (double s : samples) ss += (s - mean) * (s - mean);
  const double sd = std::sqrt(ss / (k - 1.0));
  return {mean, sd / std::sqrt(k), samples.size()};
}

void check_samples(std::size_t k) {
  if (k < 2) throw Error(ErrorCode::ParamOutOfRange, "width estimation needs k >= 2 samples");
}

double sup_over(const DirectionSet& t, std::span<const double> g) {
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < t.size(); ++i) best = std::max(best, dot(t.direction(i), g));
  return best;
}

}  // namespace

std::vector<double> width_samples(const DirectionSet& t, std::size_t k, RngSeed seed) {
  check_samples(k);
  if (t.empty()) throw Error(ErrorCode::EmptySet, "Gaussian width of an empty set");
  std::vector<double> samples(k);
#pragma omp parallel
  {
    std::vector<double> g(t.dim());
#pragma omp for schedule(static)
    for (std::ptrdiff_t jj = 0; jj < static_cast<std::ptrdiff_t>(k); ++jj) {
      auto engine = make_engine(seed, Stream::WidthSamples, static_cast<std::uint64_t>(jj));
      fill_standard_normal(engine, g);
      samples[static_cast<std::size_t>(jj)] = sup_over(t, g);
    }
  }
  return samples;
}

WidthEstimate gaussian_width_mc(const DirectionSet& t, std::size_t k, RngSeed seed) {
  return summarize(width_samples(t, k, seed));
}

WidthEstimate difference_width_mc(const PointCloud& cloud, std::size_t k, RngSeed seed) {
  check_samples(k);
  const std::size_t n = cloud.size();
  if (n < 2) throw Error(ErrorCode::EmptySet, "normalized differences of a single point");
  const DistanceMatrix dist = pairwise_distances(cloud);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (dist(i, j) == 0.0) {
        throw Error(ErrorCode::DuplicatePoint, "points " + std::to_string(i) + " and " + std::to_string(j));
      }
    }
  }
  std::vector<double> samples(k);
#pragma omp parallel
  {
    std::vector<double> g(cloud.dim());
    std::vector<double> proj(n);
#pragma omp for schedule(static)
    for (std::ptrdiff_t jj = 0; jj < static_cast<std::ptrdiff_t>(k); ++jj) {
      auto engine = make_engine(seed, Stream::WidthSamples, static_cast<std::uint64_t>(jj));
      fill_standard_normal(engine, g);
      for (std::size_t i = 0; i < n; ++i) proj[i] = dot(cloud.point(i), g);
      double best = -std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          // T is symmetric, so each unordered pair contributes |<x_i - x_j, g>|.
          best = std::max(best, std::abs(proj[i] - proj[j]) / dist(i, j));
        }
      }
      samples[static_cast<std::size_t>(jj)] = best;
    }
  }
  return summarize(samples);
}

namespace serial {
WidthEstimate gaussian_width_mc(const DirectionSet& t, std::size_t k, RngSeed seed) {
  check_samples(k);
  if (t.empty()) throw Error(ErrorCode::EmptySet, "Gaussian width of an empty set");
  std::vector<double> samples(k);
  std::vector<double> g(t.dim());
  for (std::size_t j = 0; j < k; ++j) {
    auto engine = make_engine(seed, Stream::WidthSamples, j);
    fill_standard_normal(engine, g);
    samples[j] = sup_over(t, g);
  }
  return summarize(samples);
}
}  // namespace serial

double width_bound_discrete(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::ParamOutOfRange, "discrete width bound needs n >= 1");
  return std::sqrt(2.0 * std::log(static_cast<double>(n)));
}

double width_bound_sparse(std::size_t s, std::size_t d, double c) {
  if (s == 0 || s > d) throw Error(ErrorCode::ParamOutOfRange, "sparse width bound needs 1 <= s <= d");
  if (!(c > 0.0)) throw Error(ErrorCode::ParamOutOfRange, "sparse width constant must be positive");
  const double sd = static_cast<double>(s);
  return std::sqrt(c * sd * std::log(static_cast<double>(d) / sd));
}

double width_bound_sphere(std::size_t m) {
  if (m == 0) throw Error(ErrorCode::ParamOutOfRange, "sphere width bound needs m >= 1");
  return std::sqrt(static_cast<double>(m));
}

SpreadStats spread(const DistanceMatrix& dist) {
  const std::size_t n = dist.size();
  if (n < 2) throw Error(ErrorCode::ParamOutOfRange, "spread needs at least two points");
  SpreadStats s{0.0, std::numeric_limits<double>::infinity(), 1.0};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = dist(i, j);
      if (v == 0.0) {
        throw Error(ErrorCode::DuplicatePoint, "points " + std::to_string(i) + " and " + std::to_string(j));
      }
      s.diameter = std::max(s.diameter, v);
      s.min_distance = std::min(s.min_distance, v);
    }
  }
  s.spread = s.diameter / s.min_distance;
  return s;
}

WidthDoublingReport check_width_doubling(const PointCloud& cloud, std::size_t mc_samples,
                                         RngSeed seed) {
  WidthDoublingReport r;
  const DistanceMatrix dist = pairwise_distances(cloud);
  r.spread = spread(dist);
  r.doubling = doubling_dimension(dist);
  r.width = difference_width_mc(cloud, mc_samples, seed);
  r.w2 = r.width.mean * r.width.mean;
  // Delta method: SE(w^2) = 2 |w| SE(w).
  r.w2_std_error = 2.0 * std::abs(r.width.mean) * r.width.std_error;
  const double delta2 = r.spread.spread * r.spread.spread;
  r.lhs = (36.0 / 25.0) * r.doubling.dimension / delta2;
  r.rhs = 227.0 * delta2 * r.doubling.dimension;
  const double guard = 5.0 * r.w2_std_error;
  r.pass = r.lhs - guard <= r.w2 && r.w2 <= r.rhs + guard;
  return r;
}

}  // namespace gwtda
