#include <bit>
#include <cmath>

#include "gwtda/transforms.hpp"

namespace gwtda {

bool is_power_of_two(std::size_t d) { return std::has_single_bit(d); }

std::size_t next_power_of_two(std::size_t d) { return std::bit_ceil(std::max<std::size_t>(d, 1)); }

void fwht_in_place(std::span<double> v) {
  const std::size_t d = v.size();
  if (!is_power_of_two(d)) {
    throw Error(ErrorCode::NotPowerOfTwo, "Hadamard transform length " + std::to_string(d));
  }
  // Unnormalized butterflies; level h combines blocks [x | y] -> [x + y | x - y],
  // which reproduces the block recursion H_k = [H H; H -H] / sqrt(2).
  for (std::size_t h = 1; h < d; h <<= 1) {
    for (std::size_t block = 0; block < d; block += 2 * h) {
      for (std::size_t k = block; k < block + h; ++k) {
        const double a = v[k];
        const double b = v[k + h];
        v[k] = a + b;
        v[k + h] = a - b;
      }
    }
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  for (double& x : v) x *= scale;
}

}  // namespace gwtda
