#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>

#include "gwtda/geometry.hpp"
#include "gwtda/persistence.hpp"

namespace gwtda {

bool filtration_less(const Simplex& a, const Simplex& b) {
  if (a.value != b.value) return a.value < b.value;
  if (a.vertices.size() != b.vertices.size()) return a.vertices.size() < b.vertices.size();
  return a.vertices < b.vertices;
}

FilteredComplex::FilteredComplex(std::vector<Simplex> simplices) : simplices_(std::move(simplices)) {
  std::sort(simplices_.begin(), simplices_.end(), filtration_less);
}

std::size_t FilteredComplex::max_dim() const noexcept {
  std::size_t d = 0;
  for (const auto& s : simplices_) d = std::max(d, s.dim());
  return d;
}

namespace {

void check_filtration_args(double max_alpha) {
  if (!(max_alpha > 0.0)) throw Error(ErrorCode::ParamOutOfRange, "max_alpha must be positive");
}

// Depth-first clique enumeration in increasing vertex order.
std::vector<Simplex> rips_simplices(const DistanceMatrix& dist, std::size_t max_dim, double max_alpha,
                                    std::size_t cap) {
  const std::size_t n = dist.size();
  std::vector<Simplex> out;
  auto push = [&](Simplex s) {
    if (out.size() >= cap) {
      throw Error(ErrorCode::SizeBlowup, "more than " + std::to_string(cap) + " simplices");
    }
    out.push_back(std::move(s));
  };
  std::vector<Simplex> stack;
  for (std::size_t v = 0; v < n; ++v) {
    Simplex s{{static_cast<std::uint32_t>(v)}, 0.0};
    push(s);
    stack.push_back(std::move(s));
    while (!stack.empty()) {
      Simplex top = std::move(stack.back());
      stack.pop_back();
      if (top.dim() >= max_dim) continue;
      for (std::size_t u = top.vertices.back() + 1; u < n; ++u) {
        double value = top.value;
        bool ok = true;
        for (std::uint32_t w : top.vertices) {
          const double half = 0.5 * dist(w, u);
          if (half > max_alpha) {
            ok = false;
            break;
          }
          value = std::max(value, half);
        }
        if (!ok) continue;
        Simplex next{top.vertices, value};
        next.vertices.push_back(static_cast<std::uint32_t>(u));
        push(next);
        stack.push_back(std::move(next));
      }
    }
  }
  return out;
}

}  // namespace

FilteredComplex vr_filtration(const DistanceMatrix& dist, std::size_t max_dim, double max_alpha,
                              std::size_t cap) {
  check_filtration_args(max_alpha);
  return FilteredComplex(rips_simplices(dist, max_dim, max_alpha, cap));
}

FilteredComplex cech_filtration(const PointCloud& cloud, std::size_t max_dim, double max_alpha,
                                std::size_t cap) {
  check_filtration_args(max_alpha);
  const DistanceMatrix dist = pairwise_distances(cloud);
  // Čech at alpha is contained in Rips at alpha, so Rips candidates suffice.
  std::vector<Simplex> cand = rips_simplices(dist, max_dim, max_alpha, cap);
  std::stable_sort(cand.begin(), cand.end(), [](const Simplex& a, const Simplex& b) {
    return a.vertices.size() < b.vertices.size();
  });

#pragma omp parallel for schedule(dynamic, 64)
  for (std::ptrdiff_t ii = 0; ii < static_cast<std::ptrdiff_t>(cand.size()); ++ii) {
    Simplex& s = cand[static_cast<std::size_t>(ii)];
    if (s.dim() < 2) continue;  // vertices at 0, edges at half their length
    std::vector<Point> pts;
    pts.reserve(s.vertices.size());
    for (std::uint32_t v : s.vertices) {
      const auto p = cloud.point(v);
      pts.emplace_back(p.begin(), p.end());
    }
    s.value = miniball(pts).radius;
  }

  std::map<std::vector<std::uint32_t>, double> value_of;
  std::vector<Simplex> kept;
  kept.reserve(cand.size());
  for (auto& s : cand) {
    if (s.dim() >= 2) {
      std::vector<std::uint32_t> facet(s.vertices.size() - 1);
      for (std::size_t drop = 0; drop < s.vertices.size(); ++drop) {
        std::size_t w = 0;
        for (std::size_t i = 0; i < s.vertices.size(); ++i)
          if (i != drop) facet[w++] = s.vertices[i];
        const auto it = value_of.find(facet);
        if (it != value_of.end()) s.value = std::max(s.value, it->second);
      }
    }
    if (max_dim > s.dim()) value_of.emplace(s.vertices, s.value);
    if (s.value <= max_alpha) kept.push_back(std::move(s));
  }
  return FilteredComplex(std::move(kept));
}

void write_filtration(std::ostream& out, const FilteredComplex& fc) {
  out.precision(17);
  for (const auto& s : fc) {
    out << s.value << ',' << s.dim() << ',';
    for (std::size_t i = 0; i < s.vertices.size(); ++i) {
      if (i) out << ';';
      out << s.vertices[i];
    }
    out << '\n';
  }
}

}  // namespace gwtda
