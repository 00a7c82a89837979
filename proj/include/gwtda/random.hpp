#pragma once

#include <cstdint>
#include <random>
#include <span>

#include "gwtda/core.hpp"

namespace gwtda {

/// Independent stream identifiers so that operator construction, Monte-Carlo
/// sampling and data generation never share random numbers.
enum class Stream : std::uint64_t {
  GaussianOperator = 1,
  SorsSigns = 2,
  SorsRows = 3,
  WidthSamples = 4,
  Generator = 5,
  Trials = 6,
  Noise = 7,
};

std::uint64_t splitmix64(std::uint64_t x);

/// Seed of substream `index` of `stream` under `seed`. Counter-based: any
/// substream can be reconstructed without touching the others.
std::uint64_t derive_seed(RngSeed seed, Stream stream, std::uint64_t index = 0);

using Engine = std::mt19937_64;

Engine make_engine(RngSeed seed, Stream stream, std::uint64_t index = 0);

/// Fills `out` with i.i.d. standard normals drawn from `engine`.
void fill_standard_normal(Engine& engine, std::span<double> out);

}  // namespace gwtda
