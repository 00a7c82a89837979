#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <vector>

#include "gwtda/core.hpp"

namespace gwtda {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();
inline constexpr std::size_t kDefaultSimplexCap = 20'000'000;

struct Simplex {
  std::vector<std::uint32_t> vertices;  // sorted ascending
  double value = 0.0;

  std::size_t dim() const noexcept { return vertices.size() - 1; }
};

/// Simplices sorted by (value, dimension, lexicographic vertices).
///
/// Filtration values follow the half-diameter convention: a Vietoris-Rips
/// simplex enters at alpha = max pairwise distance / 2, so an edge {x, y}
/// appears when |x - y| <= 2 alpha. Čech simplices enter at the radius of
/// their smallest enclosing ball.
class FilteredComplex {
 public:
  FilteredComplex() = default;
  /// Sorts the simplices into filtration order.
  explicit FilteredComplex(std::vector<Simplex> simplices);

  std::size_t size() const noexcept { return simplices_.size(); }
  const Simplex& operator[](std::size_t i) const { return simplices_[i]; }
  const std::vector<Simplex>& simplices() const noexcept { return simplices_; }
  std::size_t max_dim() const noexcept;

  auto begin() const { return simplices_.begin(); }
  auto end() const { return simplices_.end(); }

 private:
  std::vector<Simplex> simplices_;
};

bool filtration_less(const Simplex& a, const Simplex& b);

/// Vietoris-Rips filtration of all simplices with dim <= max_dim and value <= max_alpha.
FilteredComplex vr_filtration(const DistanceMatrix& dist, std::size_t max_dim, double max_alpha,
                              std::size_t cap = kDefaultSimplexCap);

/// Čech filtration. Candidates are the Rips simplices at the same scale; each
/// gets the radius of its smallest enclosing ball (edges: half their length).
/// Values are made monotone under faces by taking the max with the facets,
/// which only absorbs rounding.
FilteredComplex cech_filtration(const PointCloud& cloud, std::size_t max_dim, double max_alpha,
                                std::size_t cap = kDefaultSimplexCap);

struct PersistencePair {
  std::size_t dim = 0;
  double birth = 0.0;
  double death = kInfinity;
  std::size_t birth_index = 0;              // position of the creating simplex
  std::size_t death_index = SIZE_MAX;       // SIZE_MAX for essential classes

  bool essential() const noexcept { return death_index == SIZE_MAX; }
  bool zero_length() const noexcept { return !essential() && birth == death; }
};

struct PersistencePairs {
  std::vector<PersistencePair> pairs;
};

/// F2 column reduction with clearing, processing dimensions top-down.
/// Throws NonMonotoneFiltration if some face is missing or enters later.
PersistencePairs reduce_boundary(const FilteredComplex& fc);

struct DiagramPoint {
  double birth = 0.0;
  double death = kInfinity;
  friend bool operator==(const DiagramPoint&, const DiagramPoint&) = default;
};

struct PersistenceDiagram {
  std::size_t dim = 0;
  std::vector<DiagramPoint> points;  // multiset, sorted by (birth, death)
};

/// One diagram per dimension 0..max_dim; zero-length pairs are dropped.
std::vector<PersistenceDiagram> diagrams(const PersistencePairs& pairs, std::size_t max_dim);

/// Exact bottleneck distance (L-infinity ground cost, diagonal allowed).
/// +infinity when the numbers of essential points differ.
double bottleneck(const PersistenceDiagram& a, const PersistenceDiagram& b);

/// Half the smallest positive finite coordinate across both diagrams.
double default_log_floor(const PersistenceDiagram& a, const PersistenceDiagram& b);

/// Bottleneck distance after mapping every coordinate x to ln(max(x, floor)).
double log_bottleneck(const PersistenceDiagram& a, const PersistenceDiagram& b, double floor);

/// log_bottleneck(a, b, floor) <= ln(1 / (1 - eps)) + 1e-9.
bool interleaving_check(const PersistenceDiagram& a, const PersistenceDiagram& b, double eps,
                        double floor);

/// CSV rows `dim,birth,death` with `inf` for essential classes.
void write_diagrams_csv(std::ostream& out, const std::vector<PersistenceDiagram>& dgms);
std::vector<PersistenceDiagram> read_diagrams_csv(std::istream& in);

/// Rows `alpha,dim,v0;v1;...`.
void write_filtration(std::ostream& out, const FilteredComplex& fc);

}  // namespace gwtda
