#include <cmath>
#include <list>
#include <optional>

#include <Eigen/Dense>

#include "gwtda/geometry.hpp"
#include "geometry_detail.hpp"

namespace gwtda {

namespace detail {

void validate_points(const std::vector<Point>& points) {
  if (points.empty()) throw Error(ErrorCode::InvalidInput, "no points");
  const std::size_t k = points.front().size();
  if (k == 0) throw Error(ErrorCode::InvalidInput, "points of dimension 0");
  for (const auto& p : points) {
    if (p.size() != k) throw Error(ErrorCode::DimensionMismatch, "points of unequal dimension");
    for (double c : p) {
      if (!std::isfinite(c)) throw Error(ErrorCode::InvalidInput, "non-finite coordinate");
    }
  }
}

std::optional<SupportBall> support_ball(const std::vector<Point>& points,
                                        const std::vector<double>* weights,
                                        const std::vector<std::size_t>& support) {
  const std::size_t q = support.size();
  const std::size_t k = points.front().size();
  const Point& origin = points[support.front()];
  const double w0 = weights ? (*weights)[support.front()] : 0.0;
  SupportBall ball;
  ball.lambda.assign(q, 0.0);
  if (q == 1) {
    ball.center = origin;
    ball.radius_sq = w0 * w0;
    ball.lambda[0] = 1.0;
    return ball;
  }
  Eigen::MatrixXd v(k, q - 1);
  Eigen::VectorXd rhs(q - 1);
  for (std::size_t j = 1; j < q; ++j) {
    const Point& p = points[support[j]];
    double sq = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
      v(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(j - 1)) = p[c] - origin[c];
      sq += (p[c] - origin[c]) * (p[c] - origin[c]);
    }
    const double wj = weights ? (*weights)[support[j]] : 0.0;
    // Equal power distance to origin and p_j: 2 v_j . (c - o) = |v_j|^2 + w_j^2 - w_0^2.
    rhs(static_cast<Eigen::Index>(j - 1)) = 0.5 * (sq + wj * wj - w0 * w0);
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(v);
  qr.setThreshold(1e-12);
  if (qr.rank() < static_cast<Eigen::Index>(q - 1)) return std::nullopt;
  const Eigen::MatrixXd gram = v.transpose() * v;
  const Eigen::VectorXd mu = gram.ldlt().solve(rhs);
  if (!mu.allFinite()) return std::nullopt;
  const Eigen::VectorXd offset = v * mu;
  ball.center.resize(k);
  double r2 = w0 * w0;
  for (std::size_t c = 0; c < k; ++c) {
    ball.center[c] = origin[c] + offset(static_cast<Eigen::Index>(c));
    r2 += offset(static_cast<Eigen::Index>(c)) * offset(static_cast<Eigen::Index>(c));
  }
  ball.radius_sq = r2;
  double rest = 1.0;
  for (std::size_t j = 1; j < q; ++j) {
    ball.lambda[j] = mu(static_cast<Eigen::Index>(j - 1));
    rest -= ball.lambda[j];
  }
  ball.lambda[0] = rest;
  return ball;
}

std::vector<std::size_t> boundary_points(const std::vector<Point>& points, const Point& center,
                                         double radius, const std::vector<double>* weights) {
  std::vector<std::size_t> out;
  const double r2 = radius * radius;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double w = weights ? (*weights)[i] : 0.0;
    const double d2 = squared_distance(points[i], center) + w * w;
    if (d2 >= r2 * (1.0 - 1e-9)) out.push_back(i);
  }
  return out;
}

}  // namespace detail

namespace {

using detail::SupportBall;

class MoveToFrontSolver {
 public:
  explicit MoveToFrontSolver(const std::vector<Point>& points)
      : points_(points), dim_(points.front().size()) {
    for (std::size_t i = 0; i < points.size(); ++i) order_.push_back(i);
  }

  Ball solve() {
    std::vector<std::size_t> support;
    std::optional<SupportBall> ball;
    ball = recurse(order_.end(), support, std::nullopt);
    Ball out;
    out.center = ball->center;
    out.radius = std::sqrt(std::max(ball->radius_sq, 0.0));
    return out;
  }

 private:
  bool outside(const std::optional<SupportBall>& ball, const Point& p) const {
    if (!ball) return true;
    double sq = 0.0;
    for (std::size_t c = 0; c < dim_; ++c) sq += (p[c] - ball->center[c]) * (p[c] - ball->center[c]);
    return sq > ball->radius_sq * (1.0 + 1e-12);
  }

  // Smallest ball enclosing the points before `end` with `support` on its boundary.
  std::optional<SupportBall> recurse(std::list<std::size_t>::iterator end,
                                     std::vector<std::size_t>& support,
                                     std::optional<SupportBall> ball) {
    if (support.size() == dim_ + 1) return ball;
    for (auto it = order_.begin(); it != end;) {
      const auto next = std::next(it);
      if (outside(ball, points_[*it])) {
        support.push_back(*it);
        // An affinely dependent support point cannot be added; such points
        // sit on the current sphere up to rounding and are skipped.
        if (auto candidate = detail::support_ball(points_, nullptr, support)) {
          ball = recurse(it, support, std::move(candidate));
          order_.splice(order_.begin(), order_, it);
        }
        support.pop_back();
      }
      it = next;
    }
    return ball;
  }

  const std::vector<Point>& points_;
  std::size_t dim_;
  std::list<std::size_t> order_;
};

}  // namespace

Ball miniball(const std::vector<Point>& points) {
  detail::validate_points(points);
  if (points.size() > kMiniballExactCap) {
    WeightedPoints wp{points, std::vector<double>(points.size(), 0.0)};
    return miniball_weighted(wp, Tolerance(0.0, 1e-9));
  }
  MoveToFrontSolver solver(points);
  Ball ball = solver.solve();
  // Enclose everything exactly; this only absorbs rounding of the support solve.
  double worst = 0.0;
  for (const auto& p : points) worst = std::max(worst, squared_distance(p, ball.center));
  const double r = std::sqrt(worst);
  if (r > ball.radius * (1.0 + 1e-9) + 1e-300) {
    WeightedPoints wp{points, std::vector<double>(points.size(), 0.0)};
    return miniball_weighted(wp, Tolerance(0.0, 1e-9));
  }
  ball.radius = std::max(ball.radius, r);
  ball.support = detail::boundary_points(points, ball.center, ball.radius, nullptr);
  return ball;
}

}  // namespace gwtda
