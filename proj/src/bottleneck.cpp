#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "gwtda/persistence.hpp"

namespace gwtda {

namespace {

struct Split {
  std::vector<DiagramPoint> finite;
  std::vector<double> essential_births;
};

Split split(const PersistenceDiagram& d) {
  Split s;
  for (const auto& p : d.points) {
    if (std::isinf(p.death)) {
      s.essential_births.push_back(p.birth);
    } else {
      s.finite.push_back(p);
    }
  }
  std::sort(s.essential_births.begin(), s.essential_births.end());
  return s;
}

double linf(const DiagramPoint& a, const DiagramPoint& b) {
  return std::max(std::abs(a.birth - b.birth), std::abs(a.death - b.death));
}

double to_diagonal(const DiagramPoint& a) { return 0.5 * (a.death - a.birth); }

// Matching of `left` into `right` along edges with L-infinity cost <= t, by
// Hopcroft-Karp with adjacency scanned on the fly. Returns the matching size.
class Matcher {
 public:
  Matcher(const std::vector<DiagramPoint>& left, const std::vector<DiagramPoint>& right, double t)
      : left_(left), right_(right), t_(t), match_left_(left.size(), kNone), match_right_(right.size(), kNone),
        layer_(left.size()) {}

  std::size_t run() {
    std::size_t size = 0;
    while (bfs()) {
      for (std::size_t l = 0; l < left_.size(); ++l)
        if (match_left_[l] == kNone && dfs(l)) ++size;
    }
    return size;
  }

 private:
  static constexpr std::size_t kNone = SIZE_MAX;

  bool edge(std::size_t l, std::size_t r) const { return linf(left_[l], right_[r]) <= t_; }

  bool bfs() {
    std::vector<std::size_t> queue;
    for (std::size_t l = 0; l < left_.size(); ++l) {
      if (match_left_[l] == kNone) {
        layer_[l] = 0;
        queue.push_back(l);
      } else {
        layer_[l] = kNone;
      }
    }
    bool found = false;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const std::size_t l = queue[head];
      for (std::size_t r = 0; r < right_.size(); ++r) {
        if (!edge(l, r)) continue;
        const std::size_t next = match_right_[r];
        if (next == kNone) {
          found = true;
        } else if (layer_[next] == kNone) {
          layer_[next] = layer_[l] + 1;
          queue.push_back(next);
        }
      }
    }
    return found;
  }

  bool dfs(std::size_t l) {
    for (std::size_t r = 0; r < right_.size(); ++r) {
      if (!edge(l, r)) continue;
      const std::size_t next = match_right_[r];
      if (next == kNone || (layer_[next] == layer_[l] + 1 && dfs(next))) {
        match_left_[l] = r;
        match_right_[r] = l;
        return true;
      }
    }
    layer_[l] = kNone;
    return false;
  }

  const std::vector<DiagramPoint>& left_;
  const std::vector<DiagramPoint>& right_;
  double t_;
  std::vector<std::size_t> match_left_;
  std::vector<std::size_t> match_right_;
  std::vector<std::size_t> layer_;
};

// With diagonal copies, a perfect matching at threshold t exists iff some
// point-to-point matching covers every point farther than t from the
// diagonal. By the Mendelsohn-Dulmage theorem this holds iff the far points
// of each side can be matched into the other side separately.
bool saturates_far_points(const std::vector<DiagramPoint>& from, const std::vector<DiagramPoint>& into, double t) {
  std::vector<DiagramPoint> far;
  for (const auto& p : from)
    if (to_diagonal(p) > t) far.push_back(p);
  if (far.size() > into.size()) return false;
  return Matcher(far, into, t).run() == far.size();
}

bool feasible(const std::vector<DiagramPoint>& a, const std::vector<DiagramPoint>& b, double t) {
  return saturates_far_points(a, b, t) && saturates_far_points(b, a, t);
}

double finite_bottleneck(const std::vector<DiagramPoint>& a, const std::vector<DiagramPoint>& b) {
  if (a.empty() && b.empty()) return 0.0;
  std::vector<double> candidates{0.0};
  for (const auto& p : a) candidates.push_back(to_diagonal(p));
  for (const auto& q : b) candidates.push_back(to_diagonal(q));
  for (const auto& p : a)
    for (const auto& q : b) candidates.push_back(linf(p, q));
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  std::size_t lo = 0;
  std::size_t hi = candidates.size() - 1;  // matching everything to the diagonal is always feasible here
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (feasible(a, b, candidates[mid])) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return candidates[lo];
}

}  // namespace

double bottleneck(const PersistenceDiagram& a, const PersistenceDiagram& b) {
  const Split sa = split(a);
  const Split sb = split(b);
  if (sa.essential_births.size() != sb.essential_births.size()) return kInfinity;
  double essential = 0.0;
  for (std::size_t i = 0; i < sa.essential_births.size(); ++i) {
    essential = std::max(essential, std::abs(sa.essential_births[i] - sb.essential_births[i]));
  }
  return std::max(essential, finite_bottleneck(sa.finite, sb.finite));
}

double default_log_floor(const PersistenceDiagram& a, const PersistenceDiagram& b) {
  double smallest = kInfinity;
  for (const auto* d : {&a, &b}) {
    for (const auto& p : d->points) {
      if (p.birth > 0.0) smallest = std::min(smallest, p.birth);
      if (p.death > 0.0 && std::isfinite(p.death)) smallest = std::min(smallest, p.death);
    }
  }
  return std::isfinite(smallest) ? 0.5 * smallest : 1.0;
}

namespace {

PersistenceDiagram log_transform(const PersistenceDiagram& d, double floor) {
  PersistenceDiagram out;
  out.dim = d.dim;
  out.points.reserve(d.points.size());
  for (const auto& p : d.points) {
    const double b = std::log(std::max(p.birth, floor));
    const double e = std::isinf(p.death) ? kInfinity : std::log(std::max(p.death, floor));
    out.points.push_back({b, e});
  }
  return out;
}

}  // namespace

double log_bottleneck(const PersistenceDiagram& a, const PersistenceDiagram& b, double floor) {
  if (!(floor > 0.0) || !std::isfinite(floor)) {
    throw Error(ErrorCode::ParamOutOfRange, "log floor must be positive and finite");
  }
  return bottleneck(log_transform(a, floor), log_transform(b, floor));
}

bool interleaving_check(const PersistenceDiagram& a, const PersistenceDiagram& b, double eps,
                        double floor) {
  if (!(eps > 0.0 && eps < 1.0)) throw Error(ErrorCode::ParamOutOfRange, "eps must lie in (0, 1)");
  return log_bottleneck(a, b, floor) <= std::log(1.0 / (1.0 - eps)) + 1e-9;
}

void write_diagrams_csv(std::ostream& out, const std::vector<PersistenceDiagram>& dgms) {
  out.precision(17);
  out << "# dim,birth,death\n";
  for (const auto& d : dgms) {
    for (const auto& p : d.points) {
      out << d.dim << ',' << p.birth << ',';
      if (std::isinf(p.death)) {
        out << "inf";
      } else {
        out << p.death;
      }
      out << '\n';
    }
  }
}

std::vector<PersistenceDiagram> read_diagrams_csv(std::istream& in) {
  std::vector<PersistenceDiagram> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::stringstream ss(line);
    std::string dim_s, birth_s, death_s;
    if (!std::getline(ss, dim_s, ',') || !std::getline(ss, birth_s, ',') || !std::getline(ss, death_s)) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": expected dim,birth,death");
    }
    try {
      const std::size_t dim = std::stoul(dim_s);
      const double birth = std::stod(birth_s);
      const double death = (death_s == "inf" || death_s == "Inf") ? kInfinity : std::stod(death_s);
      if (out.size() <= dim) {
        const std::size_t old = out.size();
        out.resize(dim + 1);
        for (std::size_t p = old; p <= dim; ++p) out[p].dim = p;
      }
      out[dim].points.push_back({birth, death});
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": bad number");
    }
  }
  return out;
}

}  // namespace gwtda
