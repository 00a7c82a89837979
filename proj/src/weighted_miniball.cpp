#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>

#include <Eigen/Dense>

#include "gwtda/geometry.hpp"
#include "geometry_detail.hpp"

namespace gwtda {

void WeightedPoints::validate() const {
  detail::validate_points(points);
  if (weights.size() != points.size()) throw Error(ErrorCode::DimensionMismatch, "one weight per point");
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) throw Error(ErrorCode::InvalidInput, "weights must be finite and nonnegative");
  }
}

namespace {

// Dual of the power-distance enclosing ball problem over the simplex:
//   maximize g(l) = sum_i l_i (|x_i - c|^2 + w_i^2),  c = sum_i l_i x_i,
// whose maximizer's c is the centre. Solved by Frank-Wolfe with away steps.
class WeightedSolver {
 public:
  WeightedSolver(const WeightedPoints& wp, Tolerance tol)
      : wp_(wp), tol_(tol), n_(wp.points.size()), k_(wp.points.front().size()) {
    // Work relative to the centroid for conditioning.
    shift_.assign(k_, 0.0);
    for (const auto& p : wp_.points)
      for (std::size_t c = 0; c < k_; ++c) shift_[c] += p[c] / static_cast<double>(n_);
    x_.reserve(n_);
    for (const auto& p : wp_.points) {
      Point q(k_);
      for (std::size_t c = 0; c < k_; ++c) q[c] = p[c] - shift_[c];
      x_.push_back(std::move(q));
    }
    w2_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) w2_[i] = wp_.weights[i] * wp_.weights[i];
  }

  Ball solve(std::size_t max_iterations) {
    lambda_.assign(n_, 0.0);
    center_.assign(k_, 0.0);
    h_.resize(n_);
    refresh_h();
    const std::size_t start = argmax_h();
    lambda_[start] = 1.0;
    center_ = x_[start];
    refresh_h();

    Ball best;
    std::size_t it = 0;
    for (; it < max_iterations; ++it) {
      const std::size_t far = argmax_h();
      const double primal = h_[far];
      const double dual = dual_value();
      if (converged(primal, dual)) return finish(true, it);
      if (it % 25 == 0) {
        if (auto exact = polish()) {
          exact->iterations = it;
          return *exact;
        }
      }
      step(far);
    }
    return finish(false, it);
  }

 private:
  void refresh_h() {
    for (std::size_t i = 0; i < n_; ++i) h_[i] = squared_distance(x_[i], center_) + w2_[i];
  }

  std::size_t argmax_h() const {
    return static_cast<std::size_t>(std::max_element(h_.begin(), h_.end()) - h_.begin());
  }

  double dual_value() const {
    double g = 0.0;
    for (std::size_t i = 0; i < n_; ++i) g += lambda_[i] * h_[i];
    return g;
  }

  bool converged(double primal, double dual) const {
    const double rp = std::sqrt(std::max(primal, 0.0));
    const double rd = std::sqrt(std::max(dual, 0.0));
    return rp - rd <= std::max(tol_.abs, tol_.rel * rp);
  }

  void step(std::size_t far) {
    // Away vertex: active point with the smallest power distance.
    std::size_t near = far;
    double near_h = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n_; ++i) {
      if (lambda_[i] > 0.0 && h_[i] < near_h) {
        near_h = h_[i];
        near = i;
      }
    }
    const double mean_h = dual_value();
    const bool toward = h_[far] - mean_h >= mean_h - near_h;
    // Direction in lambda space and its image u = sum_i d_i x_i in R^k.
    Point u(k_);
    double slope;  // g'(0) = sum_i d_i a_i - 2 c.u, written with h
    double t_max;
    if (toward) {
      for (std::size_t c = 0; c < k_; ++c) u[c] = x_[far][c] - center_[c];
      slope = h_[far] - mean_h;
      t_max = 1.0;
    } else {
      for (std::size_t c = 0; c < k_; ++c) u[c] = center_[c] - x_[near][c];
      slope = mean_h - near_h;
      t_max = lambda_[near] >= 1.0 ? 0.0 : lambda_[near] / (1.0 - lambda_[near]);
    }
    const double uu = dot(u, u);
    if (uu == 0.0 || slope <= 0.0 || t_max <= 0.0) {
      // Degenerate: fall back to a plain step toward the farthest point.
      if (!toward) return plain_step(far);
      return;
    }
    const double t = std::min(slope / (2.0 * uu), t_max);
    if (toward) {
      for (auto& l : lambda_) l *= (1.0 - t);
      lambda_[far] += t;
    } else {
      for (auto& l : lambda_) l *= (1.0 + t);
      lambda_[near] -= t;
      if (t == t_max) lambda_[near] = 0.0;
    }
    for (std::size_t c = 0; c < k_; ++c) center_[c] += t * u[c];
    refresh_h();
  }

  void plain_step(std::size_t far) {
    Point u(k_);
    for (std::size_t c = 0; c < k_; ++c) u[c] = x_[far][c] - center_[c];
    const double uu = dot(u, u);
    const double slope = h_[far] - dual_value();
    if (uu == 0.0 || slope <= 0.0) return;
    const double t = std::min(slope / (2.0 * uu), 1.0);
    for (auto& l : lambda_) l *= (1.0 - t);
    lambda_[far] += t;
    for (std::size_t c = 0; c < k_; ++c) center_[c] += t * u[c];
    refresh_h();
  }

  // Solve the equal-power-distance system on the active set; accept it if
  // the KKT conditions hold (nonnegative coordinates, everything enclosed).
  std::optional<Ball> polish() const {
    std::vector<std::size_t> active;
    for (std::size_t i = 0; i < n_; ++i)
      if (lambda_[i] > 0.0) active.push_back(i);
    if (active.empty() || active.size() > k_ + 1) return std::nullopt;
    auto sb = detail::support_ball(x_, &wp_.weights, active);
    if (!sb) return std::nullopt;
    for (double l : sb->lambda)
      if (l < -1e-12) return std::nullopt;
    for (std::size_t i = 0; i < n_; ++i) {
      const double h = squared_distance(x_[i], sb->center) + w2_[i];
      if (h > sb->radius_sq * (1.0 + 1e-12) + 1e-300) return std::nullopt;
    }
    Ball b;
    b.center.resize(k_);
    for (std::size_t c = 0; c < k_; ++c) b.center[c] = sb->center[c] + shift_[c];
    b.radius = std::sqrt(std::max(sb->radius_sq, 0.0));
    b.support = active;
    b.converged = true;
    return b;
  }


  Ball finish(bool ok, std::size_t iterations) const {
    Ball b;
    b.center.resize(k_);
    for (std::size_t c = 0; c < k_; ++c) b.center[c] = center_[c] + shift_[c];
    b.radius = std::sqrt(*std::max_element(h_.begin(), h_.end()));
    for (std::size_t i = 0; i < n_; ++i)
      if (lambda_[i] > 0.0) b.support.push_back(i);
    b.converged = ok;
    b.iterations = iterations;
    return b;
  }

  const WeightedPoints& wp_;
  Tolerance tol_;
  std::size_t n_;
  std::size_t k_;
  Point shift_;
  std::vector<Point> x_;
  std::vector<double> w2_;
  std::vector<double> lambda_;
  Point center_;
  std::vector<double> h_;
};

}  // namespace

Ball miniball_weighted(const WeightedPoints& wp, Tolerance tol, std::size_t max_iterations) {
  wp.validate();
  if (!(tol.rel > 0.0)) throw Error(ErrorCode::ParamOutOfRange, "weighted miniball needs tol.rel > 0");
  WeightedSolver solver(wp, tol);
  return solver.solve(max_iterations);
}

namespace {

// Minimizer of |sum a_i q_i| over the affine hull of the columns of q
// (sum a_i = 1), from the bordered normal equations.
Eigen::VectorXd affine_minimizer(const Eigen::MatrixXd& q) {
  const Eigen::Index s = q.cols();
  Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(s + 1, s + 1);
  kkt.topLeftCorner(s, s) = q.transpose() * q;
  kkt.block(0, s, s, 1).setOnes();
  kkt.block(s, 0, 1, s).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(s + 1);
  rhs(s) = 1.0;
  return kkt.colPivHouseholderQr().solve(rhs).head(s);
}

// Wolfe's minimum-norm-point algorithm on the columns of p: the point of
// conv(p) closest to the origin, with its convex coordinates.
Eigen::VectorXd min_norm_point(const Eigen::MatrixXd& p) {
  const Eigen::Index n = p.cols();
  const double scale2 = p.colwise().squaredNorm().maxCoeff();
  const double tol = 1e-28 * std::max(scale2, 1e-300);
  Eigen::VectorXd lambda = Eigen::VectorXd::Zero(n);
  Eigen::Index first = 0;
  p.colwise().squaredNorm().minCoeff(&first);
  lambda(first) = 1.0;
  std::vector<Eigen::Index> active{first};

  for (int outer = 0; outer < 50 * static_cast<int>(n) + 50; ++outer) {
    const Eigen::VectorXd x = p * lambda;
    const double xx = x.squaredNorm();
    if (xx <= tol) break;
    Eigen::Index enter = 0;
    const Eigen::VectorXd proj = p.transpose() * x;
    proj.minCoeff(&enter);
    if (proj(enter) >= xx - 1e-12 * scale2) break;
    if (std::find(active.begin(), active.end(), enter) != active.end()) break;
    active.push_back(enter);

    for (int inner = 0; inner < static_cast<int>(n) + 5; ++inner) {
      Eigen::MatrixXd q(p.rows(), static_cast<Eigen::Index>(active.size()));
      for (std::size_t c = 0; c < active.size(); ++c) q.col(static_cast<Eigen::Index>(c)) = p.col(active[c]);
      const Eigen::VectorXd alpha = affine_minimizer(q);
      if ((alpha.array() > 0.0).all()) {
        lambda.setZero();
        for (std::size_t c = 0; c < active.size(); ++c) lambda(active[c]) = alpha(static_cast<Eigen::Index>(c));
        break;
      }
      // Move from lambda toward alpha until a coordinate hits zero, then drop it.
      double theta = 1.0;
      for (std::size_t c = 0; c < active.size(); ++c) {
        const double a = alpha(static_cast<Eigen::Index>(c));
        const double l = lambda(active[c]);
        if (a <= 0.0 && l - a > 0.0) theta = std::min(theta, l / (l - a));
      }
      for (std::size_t c = 0; c < active.size(); ++c) {
        const double l = lambda(active[c]);
        lambda(active[c]) = l + theta * (alpha(static_cast<Eigen::Index>(c)) - l);
      }
      std::vector<Eigen::Index> kept;
      for (auto j : active) {
        if (lambda(j) <= 1e-15) {
          lambda(j) = 0.0;
        } else {
          kept.push_back(j);
        }
      }
      if (kept.empty()) {
        kept.push_back(enter);
        lambda(enter) = 1.0;
      }
      active = std::move(kept);
      lambda /= lambda.sum();
    }
  }
  return lambda;
}

}  // namespace

ConvexFit convex_coordinates(const std::vector<Point>& points, std::span<const double> target) {
  detail::validate_points(points);
  const std::size_t n = points.size();
  const std::size_t k = points.front().size();
  if (target.size() != k) throw Error(ErrorCode::DimensionMismatch, "target dimension");
  // Translate so the target is the origin; the closest hull point then gives
  // both the coordinates and the residual.
  Eigen::MatrixXd p(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t c = 0; c < k; ++c)
      p(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(i)) = points[i][c] - target[c];
  const Eigen::VectorXd lambda = min_norm_point(p);
  ConvexFit fit;
  fit.lambda.assign(lambda.data(), lambda.data() + n);
  Point combo(k, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t c = 0; c < k; ++c) combo[c] += fit.lambda[i] * points[i][c];
  fit.residual = euclidean_distance(combo, target);
  return fit;
}

bool in_convex_hull(const std::vector<Point>& points, std::span<const double> center, double tol) {
  const ConvexFit fit = convex_coordinates(points, center);
  double scale = 1.0;
  for (const auto& p : points) scale = std::max(scale, norm(p));
  return fit.residual <= tol * scale;
}

double variance_identity_residual(const std::vector<Point>& points, std::span<const double> weights) {
  detail::validate_points(points);
  if (weights.size() != points.size()) throw Error(ErrorCode::WeightsNotConvex, "one weight per point");
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw Error(ErrorCode::WeightsNotConvex, "negative weight");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) throw Error(ErrorCode::WeightsNotConvex, "weights do not sum to 1");
  const std::size_t k = points.front().size();
  Point c(k, 0.0);
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = 0; j < k; ++j) c[j] += weights[i] * points[i][j];
  double lhs = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) lhs += weights[i] * squared_distance(points[i], c);
  double rhs = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      rhs += weights[i] * weights[j] * squared_distance(points[i], points[j]);
  return std::abs(lhs - rhs) / (1.0 + std::abs(lhs));
}

RadiusDistortion radius_distortion(const std::vector<Point>& s, const std::vector<Point>& fs) {
  if (s.size() != fs.size()) throw Error(ErrorCode::DimensionMismatch, "s and f(s) differ in size");
  if (s.size() < 2) throw Error(ErrorCode::ParamOutOfRange, "radius distortion needs |s| >= 2");
  const double rho = miniball(s).radius;
  if (rho == 0.0) throw Error(ErrorCode::DegenerateInput, "rho(s) = 0");
  RadiusDistortion out;
  out.ratio = miniball(fs).radius / rho;
  out.eps_emp = max_pairwise_distortion(PointCloud::from_rows(s), PointCloud::from_rows(fs));
  out.holds = out.ratio >= 1.0 - out.eps_emp - 1e-9 && out.ratio <= 1.0 + out.eps_emp + 1e-9;
  return out;
}

}  // namespace gwtda
