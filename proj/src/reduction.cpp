#include <algorithm>
#include <cstdint>
#include <unordered_map>

#include "gwtda/persistence.hpp"

namespace gwtda {

namespace {

struct VertexHash {
  std::size_t operator()(const std::vector<std::uint32_t>& v) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::uint32_t x : v) {
      h ^= x;
      h *= 0x100000001b3ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

using Column = std::vector<std::size_t>;  // sorted row indices; the pivot is back()

std::vector<Column> boundary_columns(const FilteredComplex& fc) {
  std::unordered_map<std::vector<std::uint32_t>, std::size_t, VertexHash> position;
  position.reserve(fc.size() * 2);
  for (std::size_t i = 0; i < fc.size(); ++i) position.emplace(fc[i].vertices, i);

  std::vector<Column> cols(fc.size());
  std::vector<std::uint32_t> facet;
  for (std::size_t j = 0; j < fc.size(); ++j) {
    const auto& verts = fc[j].vertices;
    if (verts.size() < 2) continue;
    facet.resize(verts.size() - 1);
    for (std::size_t drop = 0; drop < verts.size(); ++drop) {
      std::size_t w = 0;
      for (std::size_t i = 0; i < verts.size(); ++i)
        if (i != drop) facet[w++] = verts[i];
      const auto it = position.find(facet);
      if (it == position.end()) {
        throw Error(ErrorCode::NonMonotoneFiltration, "simplex " + std::to_string(j) + " has a missing face");
      }
      if (it->second >= j) {
        throw Error(ErrorCode::NonMonotoneFiltration,
                    "face of simplex " + std::to_string(j) + " enters after it");
      }
      cols[j].push_back(it->second);
    }
    std::sort(cols[j].begin(), cols[j].end());
  }
  return cols;
}

void add_into(Column& target, const Column& source, Column& scratch) {
  scratch.clear();
  std::set_symmetric_difference(target.begin(), target.end(), source.begin(), source.end(),
                                std::back_inserter(scratch));
  target.swap(scratch);
}

}  // namespace

PersistencePairs reduce_boundary(const FilteredComplex& fc) {
  const std::size_t n = fc.size();
  std::vector<Column> cols = boundary_columns(fc);
  constexpr std::size_t kNone = SIZE_MAX;
  std::vector<std::size_t> pivot_owner(n, kNone);  // row -> column whose pivot it is
  std::vector<char> cleared(n, 0);
  std::vector<char> is_birth(n, 0);
  std::vector<char> is_death(n, 0);

  Column scratch;
  const std::size_t top = fc.max_dim();
  for (std::size_t p = top; p >= 1; --p) {
    for (std::size_t j = 0; j < n; ++j) {
      if (fc[j].dim() != p) continue;
      if (cleared[j]) {
        cols[j].clear();
        continue;
      }
      Column& col = cols[j];
      while (!col.empty() && pivot_owner[col.back()] != kNone) {
        add_into(col, cols[pivot_owner[col.back()]], scratch);
      }
      if (!col.empty()) {
        const std::size_t low = col.back();
        pivot_owner[low] = j;
        cleared[low] = 1;  // twist: the column of a paired birth reduces to zero
        is_birth[low] = 1;
        is_death[j] = 1;
      }
    }
    if (p == 1) break;
  }

  PersistencePairs out;
  for (std::size_t j = 0; j < n; ++j) {
    if (is_death[j]) {
      const std::size_t i = cols[j].back();
      out.pairs.push_back({fc[i].dim(), fc[i].value, fc[j].value, i, j});
    } else if (!is_birth[j]) {
      out.pairs.push_back({fc[j].dim(), fc[j].value, kInfinity, j, SIZE_MAX});
    }
  }
  std::sort(out.pairs.begin(), out.pairs.end(), [](const PersistencePair& a, const PersistencePair& b) {
    if (a.dim != b.dim) return a.dim < b.dim;
    return a.birth_index < b.birth_index;
  });
  return out;
}

std::vector<PersistenceDiagram> diagrams(const PersistencePairs& pairs, std::size_t max_dim) {
  std::vector<PersistenceDiagram> out(max_dim + 1);
  for (std::size_t p = 0; p <= max_dim; ++p) out[p].dim = p;
  for (const auto& pr : pairs.pairs) {
    if (pr.dim > max_dim || pr.zero_length()) continue;
    out[pr.dim].points.push_back({pr.birth, pr.death});
  }
  for (auto& dgm : out) {
    std::sort(dgm.points.begin(), dgm.points.end(), [](const DiagramPoint& a, const DiagramPoint& b) {
      return a.birth < b.birth || (a.birth == b.birth && a.death < b.death);
    });
  }
  return out;
}

}  // namespace gwtda
