// Command-line front end: data generation, projection, width and doubling
// estimates, miniballs, persistence diagrams and the experiment drivers.

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "gwtda/core.hpp"
#include "gwtda/geometry.hpp"
#include "gwtda/harness.hpp"
#include "gwtda/io.hpp"
#include "gwtda/persistence.hpp"
#include "gwtda/transforms.hpp"
#include "gwtda/width.hpp"

using namespace gwtda;
using nlohmann::json;

namespace {

struct DataOptions {
  std::string kind = "circle";
  std::size_t n = 20;
  std::size_t d = 2;
  std::size_t s = 2;
  std::size_t r = 1;
  std::size_t d1 = 0;
  std::size_t d2 = 0;
  double noise = 0.0;
  bool uniform = false;

  void add_to(CLI::App* app) {
    app->add_option("--kind", kind, "circle | sphere | sparse | lowrank | gaussian_blob")->capture_default_str();
    app->add_option("--n", n, "number of points")->capture_default_str();
    app->add_option("--d", d, "ambient dimension")->capture_default_str();
    app->add_option("--s", s, "sparsity (sparse kind)")->capture_default_str();
    app->add_option("--r", r, "rank (lowrank kind)")->capture_default_str();
    app->add_option("--d1", d1, "rows (lowrank kind)");
    app->add_option("--d2", d2, "columns (lowrank kind)");
    app->add_option("--noise", noise, "perturbation norm bound")->capture_default_str();
    app->add_flag("--uniform", uniform, "uniform instead of equispaced circle angles");
  }

  GeneratorSpec spec(std::uint64_t seed) const {
    GeneratorSpec g;
    g.kind = generator_kind_from_string(kind);
    g.n = n;
    g.d = d;
    g.s = s;
    g.rank = r;
    g.d1 = d1;
    g.d2 = d2;
    if (g.kind == GeneratorKind::LowRank && g.d1 * g.d2 != 0 && g.d != g.d1 * g.d2) g.d = g.d1 * g.d2;
    g.noise = noise;
    g.equispaced = !uniform;
    g.seed = RngSeed{seed};
    return g;
  }
};

void print_json(const json& j) { std::cout << j.dump(2) << '\n'; }

json diagrams_json(const std::vector<PersistenceDiagram>& dgms) {
  json out = json::array();
  for (const auto& d : dgms) {
    json pts = json::array();
    for (const auto& p : d.points) pts.push_back({p.birth, std::isinf(p.death) ? json("inf") : json(p.death)});
    out.push_back({{"dim", d.dim}, {"points", pts}});
  }
  return out;
}

std::vector<PersistenceDiagram> read_diagrams_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
  return read_diagrams_csv(in);
}

void write_or_print(const std::string& out, const ExperimentReport& report) {
  if (!out.empty()) emit_report(report, out);
  print_json(report.to_json());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaussian-width random projections for persistent homology"};
  app.require_subcommand(1);

  std::uint64_t seed = 1;
  double eps = 0.3;
  double delta = 0.1;
  std::size_t m = 0;
  std::size_t max_dim = 1;
  double max_alpha = kInfinity;
  std::string complex_name = "vr";
  std::string operator_name = "gaussian";
  std::string out;
  std::size_t trials = 100;
  std::string input;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", seed, "random seed")->capture_default_str();
    sub->add_option("--out", out, "output path");
  };

  // generate
  DataOptions gen_data;
  auto* gen = app.add_subcommand("generate", "write a synthetic point cloud as CSV");
  gen_data.add_to(gen);
  add_common(gen);

  // project
  auto* proj = app.add_subcommand("project", "randomly project a CSV point cloud");
  proj->add_option("--in", input, "input CSV")->required();
  proj->add_option("--operator", operator_name, "gaussian | sors")->capture_default_str();
  proj->add_option("--m", m, "target dimension (default: sized from the MC width)");
  proj->add_option("--eps", eps, "distortion target")->capture_default_str();
  proj->add_option("--delta", delta, "failure probability")->capture_default_str();
  std::string scale_name = "inverse_em";
  proj->add_option("--scale", scale_name, "inverse_em | inverse_sqrt_m")->capture_default_str();
  add_common(proj);

  // distances
  auto* dist = app.add_subcommand("distances", "pairwise distance matrix");
  dist->add_option("--in", input, "input CSV")->required();
  add_common(dist);

  // width
  auto* width = app.add_subcommand("width", "Monte-Carlo Gaussian width of the normalized differences");
  width->add_option("--in", input, "input CSV")->required();
  std::size_t k = kDefaultWidthSamples;
  std::size_t sparsity = 0;
  double sparse_c = 1.0;
  bool with_doubling = false;
  width->add_option("--k", k, "Gaussian samples")->capture_default_str();
  width->add_option("--s", sparsity, "sparsity for the sparse-vector bound (0: omit)");
  width->add_option("--sparse-c", sparse_c, "constant of the sparse-vector bound")->capture_default_str();
  width->add_flag("--doubling", with_doubling, "also run the width / doubling-dimension check");
  add_common(width);

  // miniball
  auto* mb = app.add_subcommand("miniball", "smallest enclosing ball of a CSV point set");
  mb->add_option("--in", input, "input CSV")->required();
  add_common(mb);

  // phom
  auto* phom = app.add_subcommand("phom", "persistence diagrams of a CSV point cloud");
  phom->add_option("--in", input, "input CSV")->required();
  phom->add_option("--complex", complex_name, "vr | cech")->capture_default_str();
  phom->add_option("--max-dim", max_dim, "highest homology dimension")->capture_default_str();
  phom->add_option("--max-alpha", max_alpha, "largest filtration value (alpha = half diameter for vr)");
  std::string filtration_out;
  phom->add_option("--filtration-out", filtration_out, "dump the filtration as alpha,dim,v0;v1;...");
  add_common(phom);

  // compare
  auto* cmp = app.add_subcommand("compare", "bottleneck and log-bottleneck distances of two diagram CSVs");
  std::string diag_a, diag_b;
  double floor = 0.0;
  cmp->add_option("a", diag_a, "first diagram CSV")->required();
  cmp->add_option("b", diag_b, "second diagram CSV")->required();
  cmp->add_option("--eps", eps, "interleaving parameter to check")->capture_default_str();
  cmp->add_option("--floor", floor, "log floor (default: half the smallest positive coordinate)");
  add_common(cmp);

  // succ-prob
  DataOptions sp_data;
  sp_data.kind = "sparse";
  sp_data.n = 100;
  sp_data.d = 128;
  auto* sp = app.add_subcommand("succ-prob", "success probability of distance preservation vs m");
  sp_data.add_to(sp);
  std::vector<std::size_t> m_grid;
  sp->add_option("--eps", eps, "distortion target")->capture_default_str();
  sp->add_option("--delta", delta, "failure probability")->capture_default_str();
  sp->add_option("--m-grid", m_grid, "target dimensions to evaluate")->required()->delimiter(',');
  sp->add_option("--trials", trials, "trials per m")->capture_default_str();
  sp->add_option("--operator", operator_name, "gaussian | sors | both");
  add_common(sp);

  // timing
  auto* tm = app.add_subcommand("timing", "distance matrix vs SORS projection timing");
  TimingConfig timing;
  tm->add_option("--d-grid", timing.d_grid, "ambient dimensions (powers of two)")->delimiter(',');
  tm->add_option("--m-fractions", timing.m_fractions, "m / d ratios")->delimiter(',');
  tm->add_option("--n-grid", timing.n_grid, "sample counts")->delimiter(',');
  tm->add_option("--reps", timing.reps, "repetitions per measurement")->capture_default_str();
  add_common(tm);

  // pipeline
  DataOptions pl_data;
  auto* pl = app.add_subcommand("pipeline", "project, compute persistence and check the interleaving");
  pl_data.add_to(pl);
  pl->add_option("--eps", eps, "distortion target")->capture_default_str();
  pl->add_option("--delta", delta, "failure probability")->capture_default_str();
  pl->add_option("--complex", complex_name, "vr | cech")->capture_default_str();
  pl->add_option("--operator", operator_name, "gaussian | sors")->capture_default_str();
  pl->add_option("--max-dim", max_dim, "highest homology dimension")->capture_default_str();
  add_common(pl);

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      const PointCloud cloud = generate(gen_data.spec(seed));
      if (out.empty()) {
        write_cloud_csv(std::cout, cloud);
      } else {
        emit_cloud(cloud, out);
      }
    } else if (proj->parsed()) {
      const PointCloud cloud = ingest_csv(input);
      const OperatorKind kind = operator_kind_from_string(operator_name);
      std::size_t target = m;
      json sizing;
      if (target == 0) {
        const WidthEstimate w = difference_width_mc(cloud, kDefaultWidthSamples, RngSeed{seed});
        const double sizing_width = w.mean + 2.0 * w.std_error;
        sizing = {{"width", w.mean}, {"std_error", w.std_error}};
        if (kind == OperatorKind::Gaussian) {
          target = target_dim_gaussian(sizing_width, eps, delta);
        } else {
          const auto sd = target_dim_sors(sizing_width, eps, delta, std::max<std::size_t>(2, next_power_of_two(cloud.dim())));
          target = sd.m;
          sizing["saturated"] = sd.saturated;
        }
      }
      const auto op = kind == OperatorKind::Gaussian
                          ? make_gaussian_op(target, cloud.dim(), RngSeed{seed}, scale_mode_from_string(scale_name))
                          : make_sors_op(target, next_power_of_two(cloud.dim()), RngSeed{seed});
      const PointCloud projected = project_cloud(op, cloud);
      if (out.empty()) {
        write_cloud_csv(std::cout, projected);
      } else {
        emit_cloud(projected, out);
        json j{{"operator", json::parse(op.descriptor_json())}};
        if (cloud.size() >= 2) j["eps_emp"] = max_pairwise_distortion(cloud, projected);
        if (!sizing.is_null()) j["sizing"] = sizing;
        print_json(j);
      }
    } else if (dist->parsed()) {
      const DistanceMatrix dm = pairwise_distances(ingest_csv(input));
      if (out.empty()) {
        write_distance_csv(std::cout, dm);
      } else {
        std::ofstream f(out);
        write_distance_csv(f, dm);
      }
    } else if (width->parsed()) {
      const PointCloud cloud = ingest_csv(input);
      const WidthEstimate w = difference_width_mc(cloud, k, RngSeed{seed});
      const std::size_t t_size = cloud.size() * (cloud.size() - 1);
      json bounds{{"discrete", width_bound_discrete(t_size)}, {"sphere", width_bound_sphere(cloud.dim())}};
      bounds["sparse"] = sparsity > 0 ? json(width_bound_sparse(std::min(2 * sparsity, cloud.dim()), cloud.dim(), sparse_c))
                                      : json(nullptr);
      json j{{"mean", w.mean}, {"std_error", w.std_error}, {"k", w.num_samples}, {"bounds", bounds}};
      if (with_doubling) {
        const auto r = check_width_doubling(cloud, k, RngSeed{seed});
        j["doubling"] = {{"doubling_constant", r.doubling.doubling_constant},
                         {"dimension", r.doubling.dimension},
                         {"spread", r.spread.spread},
                         {"lhs", r.lhs}, {"w2", r.w2}, {"rhs", r.rhs},
                         {"w2_std_error", r.w2_std_error}, {"pass", r.pass}};
      }
      print_json(j);
    } else if (mb->parsed()) {
      const Ball b = miniball(ingest_csv(input).rows());
      json j{{"center", b.center}, {"radius", b.radius}, {"support", b.support}};
      if (!out.empty()) std::ofstream(out) << j.dump(2) << '\n';
      print_json(j);
    } else if (phom->parsed()) {
      const PointCloud cloud = ingest_csv(input);
      const ComplexKind kind = complex_kind_from_string(complex_name);
      const FilteredComplex fc = kind == ComplexKind::VietorisRips
                                     ? vr_filtration(pairwise_distances(cloud), max_dim + 1, max_alpha)
                                     : cech_filtration(cloud, max_dim + 1, max_alpha);
      if (!filtration_out.empty()) {
        std::ofstream f(filtration_out);
        write_filtration(f, fc);
      }
      const auto dgms = diagrams(reduce_boundary(fc), max_dim);
      if (out.empty()) {
        print_json({{"simplices", fc.size()}, {"diagrams", diagrams_json(dgms)}});
      } else {
        std::ofstream f(out);
        write_diagrams_csv(f, dgms);
      }
    } else if (cmp->parsed()) {
      const auto a = read_diagrams_file(diag_a);
      const auto b = read_diagrams_file(diag_b);
      json dims = json::array();
      bool all = true;
      for (std::size_t p = 0; p < std::max(a.size(), b.size()); ++p) {
        PersistenceDiagram da{p, {}}, db{p, {}};
        if (p < a.size()) da = a[p];
        if (p < b.size()) db = b[p];
        const double fl = floor > 0.0 ? floor : default_log_floor(da, db);
        const double lb = log_bottleneck(da, db, fl);
        const bool ok = interleaving_check(da, db, eps, fl);
        all = all && ok;
        const double bn = bottleneck(da, db);
        dims.push_back({{"dim", p},
                        {"bottleneck", std::isinf(bn) ? json("inf") : json(bn)},
                        {"log_bottleneck", std::isinf(lb) ? json("inf") : json(lb)},
                        {"log_floor", fl},
                        {"interleaved", ok}});
      }
      print_json({{"eps", eps}, {"bound", std::log(1.0 / (1.0 - eps))}, {"dims", dims}, {"interleaved", all}});
    } else if (sp->parsed()) {
      SuccessProbabilityConfig cfg;
      cfg.data = sp_data.spec(seed);
      cfg.eps = eps;
      cfg.delta = delta;
      cfg.m_grid = m_grid;
      cfg.trials = trials;
      cfg.trial_seed = RngSeed{seed + 1};
      if (sp->count("--operator")) {
        cfg.gaussian = operator_name == "gaussian" || operator_name == "both";
        cfg.sors = operator_name == "sors" || operator_name == "both";
      }
      write_or_print(out, run_success_probability(cfg));
    } else if (tm->parsed()) {
      timing.seed = RngSeed{seed};
      write_or_print(out, run_timing(timing));
    } else if (pl->parsed()) {
      PipelineConfig cfg;
      cfg.data = pl_data.spec(seed);
      cfg.eps = eps;
      cfg.delta = delta;
      cfg.complex = complex_kind_from_string(complex_name);
      cfg.op = operator_kind_from_string(operator_name);
      cfg.max_dim = max_dim;
      cfg.op_seed = RngSeed{seed + 1};
      write_or_print(out, run_pipeline(cfg));
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
