#pragma once

#include <optional>
#include <vector>

#include "gwtda/geometry.hpp"

namespace gwtda::detail {

struct SupportBall {
  Point center;
  double radius_sq = 0.0;
  std::vector<double> lambda;  // affine coordinates of the centre over the support
};

void validate_points(const std::vector<Point>& points);

/// Ball whose boundary passes through all support points (in power distance
/// when weights are given), centred in their affine hull. Empty when the
/// support is affinely dependent at pivot tolerance 1e-12.
std::optional<SupportBall> support_ball(const std::vector<Point>& points,
                                        const std::vector<double>* weights,
                                        const std::vector<std::size_t>& support);

std::vector<std::size_t> boundary_points(const std::vector<Point>& points, const Point& center,
                                         double radius, const std::vector<double>* weights);

}  // namespace gwtda::detail
