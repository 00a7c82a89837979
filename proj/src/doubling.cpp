#include <algorithm>
#include <bit>
#include <cstdint>
#include <cmath>
#include <vector>

#include "gwtda/width.hpp"

namespace gwtda {

namespace {

using Word = std::uint64_t;

std::size_t words_for(std::size_t n) { return (n + 63) / 64; }

// Neighbours of every point sorted by distance, shared by all centres p.
std::vector<std::vector<std::uint32_t>> sorted_neighbours(const DistanceMatrix& dist) {
  const std::size_t n = dist.size();
  std::vector<std::vector<std::uint32_t>> out(n, std::vector<std::uint32_t>(n));
  for (std::size_t c = 0; c < n; ++c) {
    auto& o = out[c];
    for (std::size_t i = 0; i < n; ++i) o[i] = static_cast<std::uint32_t>(i);
    std::sort(o.begin(), o.end(), [&](std::uint32_t a, std::uint32_t b) {
      return dist(c, a) < dist(c, b) || (dist(c, a) == dist(c, b) && a < b);
    });
  }
  return out;
}

// Largest greedy cover size over all balls centred at p. Ball contents only
// change at the distances from p, and the smallest radius for given contents
// is the hardest to cover, so those radii suffice. The greedy step takes the
// centre covering most uncovered members, lowest index on ties; coverage sets
// B(c, R/2) are kept as bitsets grown incrementally as R increases.
std::size_t worst_cover_at(const DistanceMatrix& dist, const std::vector<std::vector<std::uint32_t>>& nbrs,
                           std::size_t p) {
  const std::size_t n = dist.size();
  const std::size_t nw = words_for(n);
  const auto& order = nbrs[p];
  std::vector<Word> masks(n * nw, 0);
  std::vector<std::size_t> filled(n, 0);
  std::vector<Word> ball(nw, 0), uncovered(nw);
  std::vector<std::size_t> centres;
  std::vector<std::pair<std::size_t, std::size_t>> heap;  // (gain, centre)
  const auto heap_less = [](const auto& a, const auto& b) {
    return a.first < b.first || (a.first == b.first && a.second > b.second);
  };
  std::size_t worst = 1;
  ball[order[0] / 64] |= Word{1} << (order[0] % 64);
  for (std::size_t k = 1; k < n; ++k) {
    ball[order[k] / 64] |= Word{1} << (order[k] % 64);
    const double radius = dist(p, order[k]);
    if (k + 1 < n && dist(p, order[k + 1]) == radius) continue;  // take all ties at once
    if (k + 1 <= worst) continue;  // a cover never needs more balls than members
    const double half = 0.5 * radius;
    centres.clear();
    for (std::size_t c = 0; c < n; ++c) {
      if (dist(p, c) > 1.5 * radius) continue;  // cannot reach the ball
      centres.push_back(c);
      Word* m = &masks[c * nw];
      const auto& oc = nbrs[c];
      std::size_t& f = filled[c];
      while (f < n && dist(c, oc[f]) <= half) {
        m[oc[f] / 64] |= Word{1} << (oc[f] % 64);
        ++f;
      }
    }
    // Lazy greedy: gains only shrink, so a stale heap top is re-evaluated
    // until it is fresh. Heap order (gain desc, index asc) keeps the eager
    // tie-breaking.
    uncovered = ball;
    auto gain_of = [&](std::size_t c) {
      const Word* m = &masks[c * nw];
      std::size_t g = 0;
      for (std::size_t w = 0; w < nw; ++w) g += static_cast<std::size_t>(std::popcount(m[w] & uncovered[w]));
      return g;
    };
    heap.clear();
    for (std::size_t c : centres) heap.push_back({gain_of(c), c});
    std::make_heap(heap.begin(), heap.end(), heap_less);
    std::size_t remaining = k + 1;
    std::size_t count = 0;
    while (remaining > 0) {
      while (true) {
        std::pop_heap(heap.begin(), heap.end(), heap_less);
        auto& top = heap.back();
        const std::size_t fresh = gain_of(top.second);
        if (fresh == top.first) break;
        top.first = fresh;
        std::push_heap(heap.begin(), heap.end(), heap_less);
      }
      const auto [gain, best] = heap.back();
      heap.pop_back();
      const Word* m = &masks[best * nw];
      for (std::size_t w = 0; w < nw; ++w) uncovered[w] &= ~m[w];
      remaining -= gain;
      ++count;
    }
    worst = std::max(worst, count);
  }
  return worst;
}

void check_cap(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::EmptySet, "doubling dimension of an empty set");
  if (n > kDoublingBruteForceCap) {
    throw Error(ErrorCode::TooLarge, "doubling dimension is brute force; n = " + std::to_string(n) +
                                         " exceeds " + std::to_string(kDoublingBruteForceCap));
  }
}

DoublingEstimate finish(std::size_t lambda) {
  return {lambda, std::log2(static_cast<double>(lambda))};
}

}  // namespace

DoublingEstimate doubling_dimension(const DistanceMatrix& dist) {
  const std::size_t n = dist.size();
  check_cap(n);
  const auto nbrs = sorted_neighbours(dist);
  std::vector<std::size_t> per_point(n, 1);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t p = 0; p < static_cast<std::ptrdiff_t>(n); ++p) {
    per_point[static_cast<std::size_t>(p)] = worst_cover_at(dist, nbrs, static_cast<std::size_t>(p));
  }
  return finish(*std::max_element(per_point.begin(), per_point.end()));
}

DoublingEstimate doubling_dimension(const PointCloud& cloud) {
  check_cap(cloud.size());
  return doubling_dimension(pairwise_distances(cloud));
}

namespace serial {
DoublingEstimate doubling_dimension(const DistanceMatrix& dist) {
  check_cap(dist.size());
  const auto nbrs = sorted_neighbours(dist);
  std::size_t lambda = 1;
  for (std::size_t p = 0; p < dist.size(); ++p) lambda = std::max(lambda, worst_cover_at(dist, nbrs, p));
  return finish(lambda);
}
}  // namespace serial

}  // namespace gwtda
