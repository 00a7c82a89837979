#include <algorithm>
#include <chrono>
#include <cmath>
#include <optional>

#include "gwtda/harness.hpp"
#include "gwtda/persistence.hpp"
#include "gwtda/random.hpp"
#include "gwtda/width.hpp"

namespace gwtda {

std::string to_string(OperatorKind kind) { return kind == OperatorKind::Gaussian ? "gaussian" : "sors"; }

OperatorKind operator_kind_from_string(const std::string& name) {
  if (name == "gaussian") return OperatorKind::Gaussian;
  if (name == "sors") return OperatorKind::Sors;
  throw Error(ErrorCode::ParamOutOfRange, "unknown operator '" + name + "'");
}

std::string to_string(ComplexKind kind) { return kind == ComplexKind::VietorisRips ? "vr" : "cech"; }

ComplexKind complex_kind_from_string(const std::string& name) {
  if (name == "vr") return ComplexKind::VietorisRips;
  if (name == "cech") return ComplexKind::Cech;
  throw Error(ErrorCode::ParamOutOfRange, "unknown complex '" + name + "'");
}

nlohmann::json ExperimentReport::to_json() const {
  return {{"experiment", experiment}, {"config", config}, {"records", records}, {"aggregates", aggregates}};
}

namespace {

nlohmann::json spec_json(const GeneratorSpec& s) {
  nlohmann::json j{{"kind", to_string(s.kind)}, {"n", s.n}, {"d", s.d}, {"noise", s.noise},
                   {"seed", s.seed.value}};
  if (s.kind == GeneratorKind::Sparse) j["s"] = s.s;
  if (s.kind == GeneratorKind::LowRank) {
    j["r"] = s.rank;
    j["d1"] = s.d1;
    j["d2"] = s.d2;
  }
  if (s.kind == GeneratorKind::Circle) j["equispaced"] = s.equispaced;
  return j;
}

ProjectionOperator make_operator(OperatorKind kind, std::size_t m, std::size_t d, RngSeed seed,
                                 ScaleMode mode) {
  if (kind == OperatorKind::Gaussian) return ProjectionOperator::gaussian(m, d, seed, mode);
  return ProjectionOperator::sors(m, next_power_of_two(d), seed);
}

double distortion_or_zero(const PointCloud& x, const PointCloud& y) {
  return x.size() < 2 ? 0.0 : max_pairwise_distortion(x, y);
}

}  // namespace

double success_rate(const PointCloud& cloud, OperatorKind kind, std::size_t m, double eps,
                    std::size_t trials, RngSeed trial_seed, ScaleMode mode) {
  if (trials == 0) throw Error(ErrorCode::ParamOutOfRange, "need at least one trial");
  // Validates (m, d) before entering the parallel region.
  (void)make_operator(kind, m, cloud.dim(), trial_seed, mode);
  // Distances of the source cloud also reject duplicates up front.
  (void)distortion_or_zero(cloud, cloud);
  long successes = 0;
#pragma omp parallel for schedule(dynamic, 1) reduction(+ : successes)
  for (std::ptrdiff_t t = 0; t < static_cast<std::ptrdiff_t>(trials); ++t) {
    const RngSeed seed{derive_seed(trial_seed, Stream::Trials, static_cast<std::uint64_t>(t))};
    const auto op = make_operator(kind, m, cloud.dim(), seed, mode);
    const PointCloud projected = serial::project_cloud(op, cloud);
    if (distortion_or_zero(cloud, projected) <= eps) ++successes;
  }
  return static_cast<double>(successes) / static_cast<double>(trials);
}

ExperimentReport run_success_probability(const SuccessProbabilityConfig& config) {
  if (config.trials == 0) throw Error(ErrorCode::ParamOutOfRange, "need at least one trial");
  const PointCloud cloud = generate(config.data);
  const std::size_t d = cloud.dim();
  const std::size_t padded = next_power_of_two(d);

  ExperimentReport report;
  report.experiment = "succ-prob";
  report.config = {{"data", spec_json(config.data)},
                   {"eps", config.eps},
                   {"delta", config.delta},
                   {"trials", config.trials},
                   {"m_grid", config.m_grid},
                   {"scale_mode", to_string(config.scale_mode)},
                   {"trial_seed", config.trial_seed.value}};

  if (cloud.size() >= 2) {
    const WidthEstimate w = difference_width_mc(cloud, config.width_samples, config.data.seed);
    const double sizing_width = w.mean + 2.0 * w.std_error;
    report.aggregates["width"] = {{"mean", w.mean}, {"std_error", w.std_error}, {"k", w.num_samples}};
    report.aggregates["m_gaussian_theory"] = target_dim_gaussian(sizing_width, config.eps, config.delta);
  }
  report.aggregates["sors_padded_dim"] = padded;

  for (std::size_t m : config.m_grid) {
    if (m == 0 || m > padded) throw Error(ErrorCode::ParamOutOfRange, "m_grid entries must lie in [1, d]");
    nlohmann::json rec{{"m", m}, {"d", d}};
    if (config.gaussian) {
      rec["gaussian"] = success_rate(cloud, OperatorKind::Gaussian, m, config.eps, config.trials,
                                     config.trial_seed, config.scale_mode);
    }
    if (config.sors) {
      rec["sors"] = success_rate(cloud, OperatorKind::Sors, m, config.eps, config.trials,
                                 config.trial_seed, config.scale_mode);
    }
    report.records.push_back(rec);
  }
  return report;
}

namespace {

using Clock = std::chrono::steady_clock;

template <class F>
double time_us(F&& f) {
  const auto start = Clock::now();
  f();
  return std::chrono::duration<double, std::micro>(Clock::now() - start).count();
}

struct Summary {
  double median = 0.0;
  double iqr = 0.0;
};

Summary summarize(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  auto quantile = [&](double q) {
    const double pos = q * static_cast<double>(v.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = static_cast<std::size_t>(std::ceil(pos));
    return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
  };
  return {quantile(0.5), quantile(0.75) - quantile(0.25)};
}

// Median over reps after one discarded warm-up run.
template <class F>
Summary measure(std::size_t reps, F&& f) {
  (void)time_us(f);
  std::vector<double> t(reps);
  for (auto& x : t) x = time_us(f);
  return summarize(std::move(t));
}

PointCloud head(const PointCloud& cloud, std::size_t n) {
  const auto c = cloud.coords();
  return PointCloud(n, cloud.dim(), std::vector<double>(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(n * cloud.dim())));
}

volatile double g_sink = 0.0;

}  // namespace

ExperimentReport run_timing(const TimingConfig& config) {
  if (config.reps == 0) throw Error(ErrorCode::ParamOutOfRange, "need at least one repetition");
  if (config.n_grid.empty()) throw Error(ErrorCode::ParamOutOfRange, "empty n grid");
  std::vector<std::size_t> n_grid = config.n_grid;
  std::sort(n_grid.begin(), n_grid.end());
  if (n_grid.front() < 2) throw Error(ErrorCode::ParamOutOfRange, "n grid needs n >= 2");

  ExperimentReport report;
  report.experiment = "timing";
  report.config = {{"d_grid", config.d_grid}, {"m_fractions", config.m_fractions},
                   {"n_grid", n_grid},        {"reps", config.reps},
                   {"seed", config.seed.value}};
  report.aggregates["breakeven"] = nlohmann::json::array();

  for (std::size_t d : config.d_grid) {
    if (!is_power_of_two(d)) throw Error(ErrorCode::NotPowerOfTwo, "timing d grid entry " + std::to_string(d));
    GeneratorSpec spec;
    spec.kind = GeneratorKind::GaussianBlob;
    spec.n = n_grid.back();
    spec.d = d;
    spec.seed = config.seed;
    const PointCloud full = generate(spec);

    for (double frac : config.m_fractions) {
      if (!(frac > 0.0 && frac <= 1.0)) throw Error(ErrorCode::ParamOutOfRange, "m fraction must lie in (0, 1]");
      const auto m = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(frac * static_cast<double>(d))));
      const auto op = ProjectionOperator::sors(m, d, config.seed);

      std::optional<std::size_t> empirical;
      for (std::size_t n : n_grid) {
        const PointCloud cloud = head(full, n);
        const Summary direct = measure(config.reps, [&] {
          g_sink = g_sink + serial::pairwise_distances(cloud)(0, 1);
        });
        const Summary projected = measure(config.reps, [&] {
          const PointCloud low = serial::project_cloud(op, cloud);
          g_sink = g_sink + serial::pairwise_distances(low)(0, 1);
        });
        const bool unstable = direct.iqr > 0.2 * direct.median || projected.iqr > 0.2 * projected.median;
        report.records.push_back({{"d", d}, {"m", m}, {"n", n},
                                  {"direct_us", direct.median}, {"projected_us", projected.median},
                                  {"direct_iqr_us", direct.iqr}, {"projected_iqr_us", projected.iqr},
                                  {"unstable", unstable}});
        if (!empirical && projected.median < direct.median) empirical = n;
      }

      // Cost model from the largest cloud: f(d) per projected point, c(.) per distance.
      const std::size_t n = n_grid.back();
      const double pairs = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
      const Summary project_t = measure(config.reps, [&] {
        g_sink = g_sink + serial::project_cloud(op, full).coords()[0];
      });
      const PointCloud low = serial::project_cloud(op, full);
      const Summary dist_d = measure(config.reps, [&] { g_sink = g_sink + serial::pairwise_distances(full)(0, 1); });
      const Summary dist_m = measure(config.reps, [&] { g_sink = g_sink + serial::pairwise_distances(low)(0, 1); });
      const double f = project_t.median / static_cast<double>(n);
      const double cd = dist_d.median / pairs;
      const double cm = dist_m.median / pairs;
      nlohmann::json be{{"d", d}, {"m", m}, {"f_us", f}, {"c_d_us", cd}, {"c_m_us", cm}};
      if (cd > cm) {
        const double model = 2.0 * f / (cd - cm) + 1.0;
        be["model_n0"] = model;
        if (empirical) {
          const double ratio = std::max(model, static_cast<double>(*empirical)) /
                               std::min(model, static_cast<double>(*empirical));
          be["ratio"] = ratio;
          be["within_3x"] = ratio <= 3.0;
        }
      } else {
        be["model_n0"] = nullptr;
      }
      be["empirical_n0"] = empirical ? nlohmann::json(*empirical) : nlohmann::json(nullptr);
      report.aggregates["breakeven"].push_back(be);
    }
  }
  return report;
}

namespace {

FilteredComplex build_complex(ComplexKind kind, const PointCloud& cloud, std::size_t simplex_dim) {
  if (kind == ComplexKind::VietorisRips) {
    return vr_filtration(pairwise_distances(cloud), simplex_dim, kInfinity);
  }
  return cech_filtration(cloud, simplex_dim, kInfinity);
}

nlohmann::json diagram_json(const PersistenceDiagram& d) {
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& p : d.points) {
    pts.push_back({p.birth, std::isinf(p.death) ? nlohmann::json("inf") : nlohmann::json(p.death)});
  }
  return pts;
}

}  // namespace

ExperimentReport run_pipeline(const PipelineConfig& config) {
  if (!(config.eps > 0.0 && config.eps < 1.0) || !(config.delta > 0.0 && config.delta < 1.0)) {
    throw Error(ErrorCode::ParamOutOfRange, "eps and delta must lie in (0, 1)");
  }
  const PointCloud cloud = generate(config.data);
  const std::size_t d = cloud.dim();

  ExperimentReport report;
  report.experiment = "pipeline";
  report.config = {{"data", spec_json(config.data)},
                   {"eps", config.eps},
                   {"delta", config.delta},
                   {"complex", to_string(config.complex)},
                   {"operator", to_string(config.op)},
                   {"max_dim", config.max_dim},
                   {"op_seed", config.op_seed.value}};

  WidthEstimate width{0.0, 0.0, 0};
  if (cloud.size() >= 2) width = difference_width_mc(cloud, config.width_samples, config.data.seed);
  const double sizing_width = width.mean + 2.0 * width.std_error;

  std::size_t m = 0;
  bool saturated = false;
  if (config.op == OperatorKind::Gaussian) {
    m = target_dim_gaussian(sizing_width, config.eps, config.delta);
  } else {
    const std::size_t padded = std::max<std::size_t>(2, next_power_of_two(d));
    const SorsDimension sd = target_dim_sors(sizing_width, config.eps, config.delta, padded, config.sors_params);
    m = sd.m;
    saturated = sd.saturated;
  }
  const auto op = make_operator(config.op, m, d, config.op_seed, config.scale_mode);
  const PointCloud projected = project_cloud(op, cloud);
  const double eps_emp = distortion_or_zero(cloud, projected);

  const std::size_t simplex_dim = config.max_dim + 1;
  const auto dx = diagrams(reduce_boundary(build_complex(config.complex, cloud, simplex_dim)), config.max_dim);
  const auto dy = diagrams(reduce_boundary(build_complex(config.complex, projected, simplex_dim)), config.max_dim);

  const double bound = eps_emp < 1.0 ? std::log(1.0 / (1.0 - eps_emp)) : kInfinity;
  bool all_ok = true;
  for (std::size_t p = 0; p <= config.max_dim; ++p) {
    const double floor = default_log_floor(dx[p], dy[p]);
    const double lb = log_bottleneck(dx[p], dy[p], floor);
    bool ok;
    if (eps_emp >= 1.0) {
      ok = true;  // no guarantee to check
    } else if (eps_emp > 0.0) {
      ok = interleaving_check(dx[p], dy[p], eps_emp, floor);
    } else {
      ok = lb <= 1e-9;
    }
    all_ok = all_ok && ok;
    report.records.push_back({{"dim", p},
                              {"bottleneck", bottleneck(dx[p], dy[p])},
                              {"log_bottleneck", lb},
                              {"log_floor", floor},
                              {"bound", std::isinf(bound) ? nlohmann::json("inf") : nlohmann::json(bound)},
                              {"interleaved", ok},
                              {"diagram_x", diagram_json(dx[p])},
                              {"diagram_y", diagram_json(dy[p])}});
  }
  report.aggregates = {{"width", {{"mean", width.mean}, {"std_error", width.std_error}, {"k", width.num_samples}}},
                       {"m", m},
                       {"m_saturated", saturated},
                       {"operator", nlohmann::json::parse(op.descriptor_json())},
                       {"eps_emp", eps_emp},
                       {"guarantee_applies", eps_emp < 1.0},
                       {"all_interleaved", all_ok}};
  return report;
}

}  // namespace gwtda
