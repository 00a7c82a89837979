#include <cmath>
#include <numbers>
#include <numeric>

#include "gwtda/harness.hpp"
#include "gwtda/random.hpp"

namespace gwtda {

std::string to_string(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::Circle: return "circle";
    case GeneratorKind::Sphere: return "sphere";
    case GeneratorKind::Sparse: return "sparse";
    case GeneratorKind::LowRank: return "lowrank";
    case GeneratorKind::GaussianBlob: return "gaussian_blob";
  }
  return "unknown";
}

GeneratorKind generator_kind_from_string(const std::string& name) {
  for (auto k : {GeneratorKind::Circle, GeneratorKind::Sphere, GeneratorKind::Sparse,
                 GeneratorKind::LowRank, GeneratorKind::GaussianBlob}) {
    if (to_string(k) == name) return k;
  }
  throw Error(ErrorCode::ParamOutOfRange, "unknown generator kind '" + name + "'");
}

void GeneratorSpec::validate() const {
  auto fail = [](const std::string& msg) { throw Error(ErrorCode::ParamOutOfRange, msg); };
  if (n == 0) fail("generator needs n >= 1");
  if (d == 0) fail("generator needs d >= 1");
  if (!std::isfinite(noise) || noise < 0.0) fail("noise level must be finite and nonnegative");
  switch (kind) {
    case GeneratorKind::Circle:
    case GeneratorKind::Sphere:
      if (d < 2) fail("circle and sphere need d >= 2");
      break;
    case GeneratorKind::Sparse:
      if (s == 0 || s > d) fail("sparse generator needs 1 <= s <= d");
      break;
    case GeneratorKind::LowRank:
      if (d1 == 0 || d2 == 0 || d1 * d2 != d) fail("lowrank generator needs d = d1 * d2");
      if (rank == 0 || rank > std::min(d1, d2)) fail("lowrank generator needs 1 <= r <= min(d1, d2)");
      break;
    case GeneratorKind::GaussianBlob:
      break;
  }
}

namespace {

void normalize(std::span<double> v) {
  const double len = norm(v);
  for (double& x : v) x /= len;
}

void fill_point(const GeneratorSpec& spec, std::size_t i, std::span<double> out) {
  auto engine = make_engine(spec.seed, Stream::Generator, i);
  std::fill(out.begin(), out.end(), 0.0);
  switch (spec.kind) {
    case GeneratorKind::Circle: {
      double angle;
      if (spec.equispaced) {
        angle = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(spec.n);
      } else {
        angle = std::uniform_real_distribution<double>(0.0, 2.0 * std::numbers::pi)(engine);
      }
      out[0] = std::cos(angle);
      out[1] = std::sin(angle);
      break;
    }
    case GeneratorKind::Sphere:
      fill_standard_normal(engine, out);
      normalize(out);
      break;
    case GeneratorKind::Sparse: {
      std::vector<std::size_t> idx(spec.d);
      std::iota(idx.begin(), idx.end(), std::size_t{0});
      for (std::size_t k = 0; k < spec.s; ++k) {
        std::uniform_int_distribution<std::size_t> pick(k, spec.d - 1);
        std::swap(idx[k], idx[pick(engine)]);
      }
      std::vector<double> values(spec.s);
      fill_standard_normal(engine, values);
      for (std::size_t k = 0; k < spec.s; ++k) out[idx[k]] = values[k];
      normalize(out);
      break;
    }
    case GeneratorKind::LowRank: {
      // Sum of r Gaussian outer products, flattened row-major as d1 x d2.
      std::vector<double> u(spec.d1);
      std::vector<double> v(spec.d2);
      for (std::size_t r = 0; r < spec.rank; ++r) {
        fill_standard_normal(engine, u);
        fill_standard_normal(engine, v);
        for (std::size_t a = 0; a < spec.d1; ++a)
          for (std::size_t b = 0; b < spec.d2; ++b) out[a * spec.d2 + b] += u[a] * v[b];
      }
      normalize(out);
      break;
    }
    case GeneratorKind::GaussianBlob:
      fill_standard_normal(engine, out);
      break;
  }
  if (spec.noise > 0.0) {
    auto noise_engine = make_engine(spec.seed, Stream::Noise, i);
    std::vector<double> dir(spec.d);
    fill_standard_normal(noise_engine, dir);
    normalize(dir);
    const double len = spec.noise * std::uniform_real_distribution<double>(0.0, 1.0)(noise_engine);
    for (std::size_t k = 0; k < spec.d; ++k) out[k] += len * dir[k];
  }
}

}  // namespace

PointCloud generate(const GeneratorSpec& spec) {
  spec.validate();
  std::vector<double> coords(spec.n * spec.d);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t ii = 0; ii < static_cast<std::ptrdiff_t>(spec.n); ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    fill_point(spec, i, std::span<double>(coords.data() + i * spec.d, spec.d));
  }
  return PointCloud(spec.n, spec.d, std::move(coords));
}

}  // namespace gwtda
