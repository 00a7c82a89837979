#include "gwtda/random.hpp"

namespace gwtda {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(RngSeed seed, Stream stream, std::uint64_t index) {
  std::uint64_t h = splitmix64(seed.value);
  h = splitmix64(h ^ static_cast<std::uint64_t>(stream));
  return splitmix64(h ^ splitmix64(index));
}

Engine make_engine(RngSeed seed, Stream stream, std::uint64_t index) {
  return Engine(derive_seed(seed, stream, index));
}

void fill_standard_normal(Engine& engine, std::span<double> out) {
  std::normal_distribution<double> normal(0.0, 1.0);
  for (double& v : out) v = normal(engine);
}

}  // namespace gwtda
