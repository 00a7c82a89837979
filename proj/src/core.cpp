#include "gwtda/core.hpp"

#include <cmath>
#include <omp.h>

namespace gwtda {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::DuplicatePoint: return "DuplicatePoint";
    case ErrorCode::ParamOutOfRange: return "ParamOutOfRange";
    case ErrorCode::NotPowerOfTwo: return "NotPowerOfTwo";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::WeightsNotConvex: return "WeightsNotConvex";
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::SizeBlowup: return "SizeBlowup";
    case ErrorCode::NonMonotoneFiltration: return "NonMonotoneFiltration";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

Tolerance::Tolerance(double abs_tol, double rel_tol) : abs(abs_tol), rel(rel_tol) {
  if (!std::isfinite(abs) || !std::isfinite(rel) || abs < 0 || rel < 0 || (abs == 0 && rel == 0)) {
    throw Error(ErrorCode::ParamOutOfRange, "tolerance needs finite nonnegative parts, one positive");
  }
}

PointCloud::PointCloud(std::size_t n, std::size_t d, std::vector<double> coords,
                       std::vector<std::string> labels)
    : n_(n), d_(d), coords_(std::move(coords)), labels_(std::move(labels)) {
  if (n_ == 0 || d_ == 0) throw Error(ErrorCode::InvalidInput, "point cloud needs n >= 1 and d >= 1");
  if (coords_.size() != n_ * d_) {
    throw Error(ErrorCode::DimensionMismatch, "coordinate buffer does not hold n * d values");
  }
  for (double c : coords_) {
    if (!std::isfinite(c)) throw Error(ErrorCode::InvalidInput, "non-finite coordinate");
  }
  if (!labels_.empty() && labels_.size() != n_) {
    throw Error(ErrorCode::DimensionMismatch, "labels must be absent or one per point");
  }
}

PointCloud PointCloud::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw Error(ErrorCode::InvalidInput, "empty point list");
  const std::size_t d = rows.front().size();
  std::vector<double> coords;
  coords.reserve(rows.size() * d);
  for (const auto& r : rows) {
    if (r.size() != d) throw Error(ErrorCode::DimensionMismatch, "points of unequal dimension");
    coords.insert(coords.end(), r.begin(), r.end());
  }
  return PointCloud(rows.size(), d, std::move(coords));
}

std::vector<std::vector<double>> PointCloud::rows() const {
  std::vector<std::vector<double>> out;
  out.reserve(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    auto p = point(i);
    out.emplace_back(p.begin(), p.end());
  }
  return out;
}

DistanceMatrix::DistanceMatrix(std::size_t n, std::vector<double> entries)
    : n_(n), entries_(std::move(entries)) {
  if (entries_.size() != n_ * n_) throw Error(ErrorCode::DimensionMismatch, "distance matrix size");
  for (std::size_t i = 0; i < n_; ++i) {
    if ((*this)(i, i) != 0.0) throw Error(ErrorCode::InvalidInput, "nonzero diagonal");
    for (std::size_t j = i + 1; j < n_; ++j) {
      if ((*this)(i, j) != (*this)(j, i) || !((*this)(i, j) >= 0.0)) {
        throw Error(ErrorCode::InvalidInput, "distance matrix must be symmetric and nonnegative");
      }
    }
  }
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double t = a[k] - b[k];
    s += t * t;
  }
  return s;
}

double euclidean_distance(std::span<const double> a, std::span<const double> b) {
  return std::sqrt(squared_distance(a, b));
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

DistanceMatrix pairwise_distances(const PointCloud& cloud) {
  const std::size_t n = cloud.size();
  std::vector<double> entries(n * n, 0.0);
  const auto rows = static_cast<std::ptrdiff_t>(n);
  // Row i costs n - i - 1 evaluations; dynamic scheduling balances the triangle.
#pragma omp parallel for schedule(dynamic, 8)
  for (std::ptrdiff_t ii = 0; ii < rows; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    const auto pi = cloud.point(i);
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = euclidean_distance(pi, cloud.point(j));
      entries[i * n + j] = v;
      entries[j * n + i] = v;
    }
  }
  return DistanceMatrix(n, std::move(entries));
}

namespace serial {
DistanceMatrix pairwise_distances(const PointCloud& cloud) {
  const std::size_t n = cloud.size();
  DistanceMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) out.set(i, j, euclidean_distance(cloud.point(i), cloud.point(j)));
  }
  return out;
}
}  // namespace serial

double max_pairwise_distortion(const PointCloud& x, const PointCloud& y) {
  if (x.size() != y.size()) throw Error(ErrorCode::DimensionMismatch, "clouds of different size");
  const std::size_t n = x.size();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dx = euclidean_distance(x.point(i), x.point(j));
      if (dx == 0.0) throw Error(ErrorCode::DuplicatePoint, "points " + std::to_string(i) + " and " + std::to_string(j));
      const double dy = euclidean_distance(y.point(i), y.point(j));
      worst = std::max(worst, std::abs(dy / dx - 1.0));
    }
  }
  return worst;
}

}  // namespace gwtda
