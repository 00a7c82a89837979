#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gwtda/core.hpp"

namespace gwtda {

using Point = std::vector<double>;

/// Smallest enclosing ball. `support` indexes the input points on the boundary
/// that determine it (empty for iterative solutions that did not polish).
struct Ball {
  Point center;
  double radius = 0.0;
  std::vector<std::size_t> support;
  bool converged = true;
  std::size_t iterations = 0;
};

struct WeightedPoints {
  std::vector<Point> points;
  std::vector<double> weights;

  void validate() const;
};

inline constexpr std::size_t kMiniballExactCap = 10000;

/// Exact smallest enclosing ball by move-to-front recursion over support sets.
/// Inputs above kMiniballExactCap points use the iterative solver at 1e-9.
Ball miniball(const std::vector<Point>& points);

/// Power-distance enclosing ball: minimizes max_i sqrt(|p - x_i|^2 + w_i^2).
/// Dual Frank-Wolfe with away steps, then an active-set polish. On
/// non-convergence the best iterate is returned with converged = false.
Ball miniball_weighted(const WeightedPoints& wp, Tolerance tol, std::size_t max_iterations = 200000);

/// Convex coordinates of `target` over `points` by simplex-constrained least
/// squares. Returns the residual |sum l_i p_i - target| and the coordinates.
struct ConvexFit {
  std::vector<double> lambda;
  double residual = 0.0;
};
ConvexFit convex_coordinates(const std::vector<Point>& points, std::span<const double> target);

/// True when `center` is a convex combination of `points` up to `tol`.
bool in_convex_hull(const std::vector<Point>& points, std::span<const double> center, double tol);

/// |LHS - RHS| / (1 + |LHS|) for sum l_i |x_i - c|^2 = sum_{i<j} l_i l_j |x_i - x_j|^2.
double variance_identity_residual(const std::vector<Point>& points, std::span<const double> weights);

struct RadiusDistortion {
  double ratio = 1.0;     // rho(fs) / rho(s)
  double eps_emp = 0.0;   // measured pairwise distortion of s -> fs
  bool holds = true;      // ratio in [1 - eps_emp, 1 + eps_emp] up to 1e-9
};

RadiusDistortion radius_distortion(const std::vector<Point>& s, const std::vector<Point>& fs);

}  // namespace gwtda
