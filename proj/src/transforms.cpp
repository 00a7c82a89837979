#include "gwtda/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gwtda/random.hpp"
#include "json.hpp"

namespace gwtda {

namespace {

void check_eps_delta(double eps, double delta) {
  if (!(eps > 0.0 && eps < 1.0)) throw Error(ErrorCode::ParamOutOfRange, "eps must lie in (0, 1)");
  if (!(delta > 0.0 && delta < 1.0)) throw Error(ErrorCode::ParamOutOfRange, "delta must lie in (0, 1)");
}

void check_width(double width) {
  if (!(width >= 0.0) || !std::isfinite(width)) {
    throw Error(ErrorCode::ParamOutOfRange, "width must be finite and nonnegative");
  }
}

// Ceiling that ignores relative rounding noise of 1e-12, so a bound that is
// mathematically an integer is not bumped to the next one.
std::size_t guarded_ceil(double x) {
  const double c = std::ceil(x * (1.0 - 1e-12));
  return static_cast<std::size_t>(std::max(c, 1.0));
}

}  // namespace

double em_constant(std::size_t m) {
  if (m == 0) throw Error(ErrorCode::ParamOutOfRange, "E_m needs m >= 1");
  const double half = 0.5 * static_cast<double>(m);
  return std::sqrt(2.0) * std::exp(std::lgamma(half + 0.5) - std::lgamma(half));
}

std::size_t target_dim_gaussian(double width, double eps, double delta) {
  check_width(width);
  check_eps_delta(eps, delta);
  const double t = width + std::sqrt(2.0 * std::log(2.0 / delta));
  return guarded_ceil(t * t / (eps * eps) + 1.0);
}

void SorsParams::validate() const {
  if (!(delta_bound > 0.0) || !std::isfinite(delta_bound)) {
    throw Error(ErrorCode::ParamOutOfRange, "SORS entry bound must be positive");
  }
  if (!(rip_constant > 0.0) || !std::isfinite(rip_constant)) {
    throw Error(ErrorCode::ParamOutOfRange, "SORS constant must be positive");
  }
}

double sors_dimension_bound(double width, double eps, double delta, double log_d,
                            const SorsParams& params) {
  check_width(width);
  check_eps_delta(eps, delta);
  params.validate();
  const double confidence = 1.0 + std::log(1.0 / delta);
  const double l2 = log_d * log_d;
  return params.rip_constant * params.delta_bound * params.delta_bound * confidence * confidence *
         l2 * l2 * width * width / (eps * eps);
}

SorsDimension target_dim_sors(double width, double eps, double delta, std::size_t d,
                              const SorsParams& params) {
  if (d < 2) throw Error(ErrorCode::ParamOutOfRange, "SORS sizing needs d >= 2");
  const double bound = sors_dimension_bound(width, eps, delta, std::log(static_cast<double>(d)), params);
  if (bound >= static_cast<double>(d)) return {d, bound > static_cast<double>(d)};
  return {std::min(guarded_ceil(bound), d), false};
}

std::string to_string(ScaleMode mode) {
  return mode == ScaleMode::InverseEm ? "inverse_em" : "inverse_sqrt_m";
}

ScaleMode scale_mode_from_string(const std::string& name) {
  if (name == "inverse_em") return ScaleMode::InverseEm;
  if (name == "inverse_sqrt_m") return ScaleMode::InverseSqrtM;
  throw Error(ErrorCode::ParamOutOfRange, "unknown scale mode '" + name + "'");
}

ProjectionOperator ProjectionOperator::gaussian(std::size_t m, std::size_t d, RngSeed seed,
                                                ScaleMode mode) {
  // m > d is allowed: the Gaussian bound holds for any m, and small-width
  // sizing can ask for more rows than the ambient dimension.
  if (m == 0 || d == 0) throw Error(ErrorCode::ParamOutOfRange, "Gaussian operator needs m, d >= 1");
  const double scale = mode == ScaleMode::InverseEm ? 1.0 / em_constant(m)
                                                    : 1.0 / std::sqrt(static_cast<double>(m));
  GaussianDense data{mode, std::vector<double>(m * d)};
  const auto rows = static_cast<std::ptrdiff_t>(m);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t r = 0; r < rows; ++r) {
    auto engine = make_engine(seed, Stream::GaussianOperator, static_cast<std::uint64_t>(r));
    std::span<double> row(data.coefficients.data() + static_cast<std::size_t>(r) * d, d);
    fill_standard_normal(engine, row);
    for (double& v : row) v *= scale;
  }
  return ProjectionOperator(m, d, seed, std::move(data));
}

ProjectionOperator ProjectionOperator::sors(std::size_t m, std::size_t d, RngSeed seed) {
  if (!is_power_of_two(d)) throw Error(ErrorCode::NotPowerOfTwo, "SORS source dimension " + std::to_string(d));
  if (m == 0 || m > d) throw Error(ErrorCode::ParamOutOfRange, "SORS needs 1 <= m <= d");
  Sors data;
  data.signs.resize(d);
  auto sign_engine = make_engine(seed, Stream::SorsSigns);
  std::bernoulli_distribution coin(0.5);
  for (double& s : data.signs) s = coin(sign_engine) ? 1.0 : -1.0;

  // Partial Fisher-Yates: the first m entries are a uniform m-subset.
  std::vector<std::size_t> perm(d);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  auto row_engine = make_engine(seed, Stream::SorsRows);
  for (std::size_t i = 0; i < m; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, d - 1);
    std::swap(perm[i], perm[pick(row_engine)]);
  }
  data.rows.assign(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(m));
  std::sort(data.rows.begin(), data.rows.end());
  return ProjectionOperator(m, d, seed, std::move(data));
}

void ProjectionOperator::apply(std::span<const double> x, std::span<double> out) const {
  if (x.size() != d_) {
    throw Error(ErrorCode::DimensionMismatch,
                "input length " + std::to_string(x.size()) + " != " + std::to_string(d_));
  }
  if (out.size() != m_) throw Error(ErrorCode::DimensionMismatch, "output length must equal m");
  if (const auto* g = std::get_if<GaussianDense>(&data_)) {
    for (std::size_t i = 0; i < m_; ++i) {
      out[i] = dot(std::span<const double>(g->coefficients.data() + i * d_, d_), x);
    }
    return;
  }
  const auto& s = std::get<Sors>(data_);
  std::vector<double> work(d_);
  for (std::size_t k = 0; k < d_; ++k) work[k] = s.signs[k] * x[k];
  fwht_in_place(work);
  const double scale = std::sqrt(static_cast<double>(d_) / static_cast<double>(m_));
  for (std::size_t i = 0; i < m_; ++i) out[i] = scale * work[s.rows[i]];
}

std::vector<double> ProjectionOperator::apply(std::span<const double> x) const {
  std::vector<double> out(m_);
  apply(x, out);
  return out;
}

std::vector<double> ProjectionOperator::dense_matrix() const {
  std::vector<double> mat(m_ * d_);
  std::vector<double> basis(d_, 0.0);
  std::vector<double> column(m_);
  for (std::size_t j = 0; j < d_; ++j) {
    basis[j] = 1.0;
    apply(basis, column);
    basis[j] = 0.0;
    for (std::size_t i = 0; i < m_; ++i) mat[i * d_ + j] = column[i];
  }
  return mat;
}

std::string ProjectionOperator::descriptor_json() const {
  nlohmann::json j;
  j["variant"] = is_sors() ? "sors" : "gaussian";
  j["m"] = m_;
  j["d"] = d_;
  j["seed"] = seed_.value;
  if (is_gaussian()) {
    j["scale_mode"] = to_string(gaussian_data().scale_mode);
  } else {
    j["scale_mode"] = nullptr;
  }
  return j.dump();
}

ProjectionOperator ProjectionOperator::from_descriptor_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("operator descriptor: ") + e.what());
  }
  try {
    const auto variant = j.at("variant").get<std::string>();
    const auto m = j.at("m").get<std::size_t>();
    const auto d = j.at("d").get<std::size_t>();
    const RngSeed seed{j.at("seed").get<std::uint64_t>()};
    if (variant == "gaussian") {
      ScaleMode mode = ScaleMode::InverseEm;
      if (j.contains("scale_mode") && !j["scale_mode"].is_null()) {
        mode = scale_mode_from_string(j["scale_mode"].get<std::string>());
      }
      return gaussian(m, d, seed, mode);
    }
    if (variant == "sors") return sors(m, d, seed);
    throw Error(ErrorCode::ParseError, "unknown operator variant '" + variant + "'");
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("operator descriptor: ") + e.what());
  }
}

namespace {

std::size_t padded_width(const ProjectionOperator& op, const PointCloud& cloud) {
  const std::size_t d = cloud.dim();
  if (d == op.source_dim()) return d;
  if (op.is_sors() && op.source_dim() == next_power_of_two(d)) return op.source_dim();
  throw Error(ErrorCode::DimensionMismatch, "cloud dimension " + std::to_string(d) +
                                                " does not match operator dimension " +
                                                std::to_string(op.source_dim()));
}

void project_point(const ProjectionOperator& op, const PointCloud& cloud, std::size_t i,
                   std::vector<double>& padded, std::span<double> out) {
  const auto p = cloud.point(i);
  if (padded.size() == p.size()) {
    op.apply(p, out);
    return;
  }
  std::copy(p.begin(), p.end(), padded.begin());
  std::fill(padded.begin() + static_cast<std::ptrdiff_t>(p.size()), padded.end(), 0.0);
  op.apply(padded, out);
}

}  // namespace

PointCloud project_cloud(const ProjectionOperator& op, const PointCloud& cloud) {
  const std::size_t width = padded_width(op, cloud);
  const std::size_t n = cloud.size();
  const std::size_t m = op.target_dim();
  std::vector<double> coords(n * m);
#pragma omp parallel
  {
    std::vector<double> padded(width);
#pragma omp for schedule(static)
    for (std::ptrdiff_t ii = 0; ii < static_cast<std::ptrdiff_t>(n); ++ii) {
      const auto i = static_cast<std::size_t>(ii);
      project_point(op, cloud, i, padded, std::span<double>(coords.data() + i * m, m));
    }
  }
  return PointCloud(n, m, std::move(coords), cloud.labels());
}

namespace serial {
PointCloud project_cloud(const ProjectionOperator& op, const PointCloud& cloud) {
  const std::size_t width = padded_width(op, cloud);
  const std::size_t n = cloud.size();
  const std::size_t m = op.target_dim();
  std::vector<double> coords(n * m);
  std::vector<double> padded(width);
  for (std::size_t i = 0; i < n; ++i) {
    project_point(op, cloud, i, padded, std::span<double>(coords.data() + i * m, m));
  }
  return PointCloud(n, m, std::move(coords), cloud.labels());
}
}  // namespace serial

}  // namespace gwtda
