// Command-line front end: geometric phases of the interface-bound Majorana
// state of an FI/SC junction on a topological-insulator edge.
#include <CLI11.hpp>

#include <mzm/bdg.hpp>
#include <mzm/errors.hpp>
#include <mzm/evolution.hpp>
#include <mzm/holonomy.hpp>
#include <mzm/junction.hpp>
#include <mzm/lattice.hpp>
#include <mzm/threading.hpp>
#include <mzm/validate.hpp>

#include "config.hpp"
#include "output.hpp"

#include <clocale>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace mzm;
using cli::Config;
using cli::Emitter;
using cli::ordered_json;

namespace {

struct CommonOpts {
  std::string config_path;
  std::vector<std::string> overrides;
  std::string backend = "analytic";
  std::string region;   // "", "fi", "sc"
  std::string fixture;  // "", "two-level"
  std::string output;
  std::string format = "csv";
  bool degrees = false;

  Config load() const {
    Config cfg;
    if (!config_path.empty()) cfg = Config::from_file(config_path);
    for (const auto& o : overrides) cfg.apply_override(o);
    return cfg;
  }
  double in_angle(double v) const { return degrees ? v * pi / 180.0 : v; }
  double out_angle(double v) const { return degrees ? v * 180.0 / pi : v; }
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_backend) {
  cmd->add_option("--config", o.config_path, "Sectioned key = value run file");
  cmd->add_option("--set", o.overrides,
                  "Override a config entry, e.g. --set model.mu_fi=0.3");
  cmd->add_option("--output", o.output, "Write results here instead of stdout");
  cmd->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_flag("--degrees", o.degrees,
                "Angles in degrees (inputs theta/wobble, phase outputs)");
  if (with_backend) {
    cmd->add_option("--backend", o.backend, "State source")
        ->check(CLI::IsMember({"analytic", "lattice"}));
    cmd->add_option("--region", o.region,
                    "Restrict the state to one side of the interface")
        ->check(CLI::IsMember({"fi", "sc"}));
    cmd->add_option("--fixture", o.fixture,
                    "Analytic two-level test state instead of the junction")
        ->check(CLI::IsMember({"two-level"}));
  }
}

ModelParams model_from(const Config& cfg) {
  ModelParams m;
  m.v_f = cfg.number("model.v_f", m.v_f);
  m.mu_fi = cfg.number("model.mu_fi", m.mu_fi);
  m.mu_sc = cfg.number("model.mu_sc", m.mu_sc);
  m.m = cfg.number("model.m", m.m);
  m.delta = cfg.number("model.delta", m.delta);
  return m;
}

LatticeSpec lattice_from(const Config& cfg) {
  LatticeSpec spec;
  spec.n_sites = cfg.integer("lattice.n_sites", spec.n_sites);
  spec.a = cfg.number("lattice.a", spec.a);
  spec.wilson_r = cfg.number("lattice.wilson_r", spec.wilson_r);
  return spec;
}

Region parse_region(const std::string& s) {
  return s == "fi" ? Region::FI : Region::SC;
}

struct SamplerChoice {
  SpinorSampler sample;
  Sector sector = Sector::Full;  // sectors the phase walk must guard
};

SamplerChoice make_sampler(const CommonOpts& o, const Config& cfg,
                           double theta) {
  if (!o.fixture.empty())
    return {two_level_sampler(), Sector::Electron};
  ModelParams model = model_from(cfg);
  if (o.backend == "lattice") {
    LatticeSpec spec = lattice_from(cfg);
    if (o.region.empty()) return {lattice_sampler(model, spec), Sector::Full};
    return {lattice_sampler(model, spec, parse_region(o.region)),
            Sector::Full};
  }
  const ParamPoint base{theta, 0.0};
  const double lengths = cfg.number("grid.lengths", 12.0);
  if (o.region.empty()) {
    const int n = cfg.integer("grid.n", 4001);
    return {sampler(model, junction_grid(model, base, n, lengths)),
            Sector::Full};
  }
  const Region reg = parse_region(o.region);
  const int n = cfg.integer("grid.n", 2001);
  return {region_sampler(model, region_grid(model, base, reg, n, lengths), reg),
          Sector::Full};
}

int run_derive(const CommonOpts& o) {
  Config cfg = o.load();
  ModelParams model = model_from(cfg);
  const double theta = o.in_angle(cfg.number("point.theta", 0.5 * pi));
  const double alpha = o.in_angle(cfg.number("point.alpha", 0.0));
  DerivedParams d = derived_params(model, {theta, alpha});
  Emitter out;
  out.add_row({{"theta", o.out_angle(theta)},
               {"m_par", d.m_par},
               {"k_f", d.k_f},
               {"phi", o.out_angle(d.phi)},
               {"k_m", d.k_m},
               {"kappa_sc", d.kappa_sc},
               {"k_m_sc", d.k_m_sc}});
  out.write(o.format, o.output);
  return 0;
}

int run_loop(const CommonOpts& o) {
  Config cfg = o.load();
  const double theta = o.in_angle(cfg.number("loop.theta", 0.5 * pi));
  const double wobble = o.in_angle(cfg.number("loop.wobble", 0.0));
  const int steps = cfg.integer("loop.steps", 400);
  SamplerChoice s = make_sampler(o, cfg, theta);
  const ParamPath path = wobble != 0.0 ? modulated_loop(theta, wobble, steps)
                                       : alpha_loop(theta, steps);
  PhaseResult pr = path_phase(s.sample, path, s.sector);
  ordered_json row{{"backend", o.fixture.empty() ? o.backend : "fixture"},
                   {"region", o.region.empty() ? "full" : o.region},
                   {"theta", o.out_angle(theta)},
                   {"steps", steps}};
  if (s.sector != Sector::Hole) row["gamma_u"] = o.out_angle(pr.gamma_u);
  if (s.sector == Sector::Full) row["gamma_v"] = o.out_angle(pr.gamma_v);
  row["gamma_total"] = o.out_angle(pr.gamma_total);
  row["dynamical"] = pr.dynamical;
  row["closure_flip"] = pr.closure_flip;
  row["max_step_arg"] = o.out_angle(pr.max_step_arg);
  Emitter out;
  out.add_row(std::move(row));
  out.write(o.format, o.output);
  return 0;
}

int run_curvature(const CommonOpts& o) {
  Config cfg = o.load();
  const double t0 = o.in_angle(cfg.number("map.theta_min", 0.6));
  const double t1 = o.in_angle(cfg.number("map.theta_max", 2.5));
  const int tn = cfg.integer("map.theta_n", 8);
  const double a0 = o.in_angle(cfg.number("map.alpha_min", 0.0));
  const double a1 = o.in_angle(cfg.number("map.alpha_max", 6.0));
  const int an = cfg.integer("map.alpha_n", 8);
  const double delta = cfg.number("map.delta", 1e-3);
  const std::string sector_name = cfg.text("map.sector", "u");
  if (tn < 1 || an < 1)
    throw std::invalid_argument("curvature-map: grid sizes must be >= 1");
  const Sector sector = sector_name == "v"       ? Sector::Hole
                        : sector_name == "total" ? Sector::Full
                                                 : Sector::Electron;

  SamplerChoice s = make_sampler(o, cfg, 0.5 * (t0 + t1));
  std::vector<double> b(static_cast<size_t>(tn) * an);
  std::exception_ptr first_error;
  std::mutex err_mu;
  parallel_for(tn * an, [&](int idx) {
    try {
      const int i = idx / an, j = idx % an;
      const double th = tn == 1 ? t0 : t0 + (t1 - t0) * i / (tn - 1);
      const double al = an == 1 ? a0 : a0 + (a1 - a0) * j / (an - 1);
      b[idx] = curvature(s.sample, {th, al}, delta, sector);
    } catch (...) {
      std::lock_guard<std::mutex> lock(err_mu);
      if (!first_error) first_error = std::current_exception();
    }
  });
  if (first_error) std::rethrow_exception(first_error);

  Emitter out;
  for (int i = 0; i < tn; ++i)
    for (int j = 0; j < an; ++j) {
      const double th = tn == 1 ? t0 : t0 + (t1 - t0) * i / (tn - 1);
      const double al = an == 1 ? a0 : a0 + (a1 - a0) * j / (an - 1);
      out.add_row({{"theta", o.out_angle(th)},
                   {"alpha", o.out_angle(al)},
                   {"sector", sector_name},
                   {"curvature", b[static_cast<size_t>(i) * an + j]}});
    }
  out.write(o.format, o.output);
  return 0;
}

int run_evolve(const CommonOpts& o) {
  Config cfg = o.load();
  ModelParams model = model_from(cfg);
  LatticeSpec spec = lattice_from(cfg);
  const double theta = o.in_angle(cfg.number("evolve.theta", 0.5 * pi));
  const double total_time = cfg.number("evolve.total_time", 800.0);
  const int steps = cfg.integer("evolve.steps", 3200);
  if (total_time <= 0.0 || steps < 1)
    throw std::invalid_argument("evolve: need total_time > 0 and steps >= 1");

  ZeroModeReport zm =
      zero_mode_numeric(build_lattice(model, {theta, 0.0}, spec));
  VectorXcd psi0(4 * spec.n_sites);
  for (int j = 0; j < spec.n_sites; ++j)
    psi0.segment<4>(4 * j) = to_bdg_column(Vector4cd(zm.mode.comps.col(j)));
  psi0.normalize();
  Generator gen = [&](double t) {
    return build_lattice(model, {theta, 2.0 * pi * t / total_time}, spec).h;
  };
  EvolutionReport rep = evolve(gen, psi0, Schedule{total_time, steps});
  Emitter out;
  out.add_row({{"theta", o.out_angle(theta)},
               {"total_time", total_time},
               {"steps", steps},
               {"phi_u", o.out_angle(rep.phi_u)},
               {"phi_v", o.out_angle(rep.phi_v)},
               {"phi_total", o.out_angle(rep.phi_total)},
               {"overlap_abs", std::abs(rep.final_overlap)},
               {"norm_drift", rep.norm_drift},
               {"mode_residual", zm.energy}});
  out.write(o.format, o.output);
  return 0;
}

int run_validate(const CommonOpts& o) {
  std::ostringstream lines;
  const auto results = run_acceptance(&lines);
  std::cout << lines.str();
  int failed = 0;
  for (const auto& r : results)
    if (!r.pass) ++failed;
  std::cout << "ACCEPTANCE " << (failed == 0 ? "PASS" : "FAIL") << " ("
            << results.size() - failed << "/" << results.size()
            << " criteria)" << std::endl;
  if (!o.output.empty()) {
    std::ofstream f(o.output, std::ios::binary);
    f << lines.str();
  }
  return failed == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
  std::setlocale(LC_ALL, "C");
  CLI::App app{"Majorana interface-state geometric phases (FI/SC junction)"};
  app.require_subcommand(1);

  CommonOpts derive_o, loop_o, curv_o, evolve_o, validate_o;
  CLI::App* derive =
      app.add_subcommand("derive-params", "Interface scales from the model");
  add_common(derive, derive_o, false);
  CLI::App* loop = app.add_subcommand(
      "loop-phase", "Sector geometric phases around a magnetization loop");
  add_common(loop, loop_o, true);
  CLI::App* curv = app.add_subcommand(
      "curvature-map", "Berry curvature on a (theta, alpha) grid");
  add_common(curv, curv_o, true);
  CLI::App* evolve_cmd = app.add_subcommand(
      "evolve", "Nonadiabatic pump of the lattice zero mode");
  add_common(evolve_cmd, evolve_o, false);
  CLI::App* validate =
      app.add_subcommand("validate", "Run the acceptance criteria");
  add_common(validate, validate_o, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 1;
  }

  try {
    if (derive->parsed()) return run_derive(derive_o);
    if (loop->parsed()) return run_loop(loop_o);
    if (curv->parsed()) return run_curvature(curv_o);
    if (evolve_cmd->parsed()) return run_evolve(evolve_o);
    return run_validate(validate_o);
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << std::endl;
    return 2;
  } catch (const NumericalGuardError& e) {
    std::cerr << "numerical guard: " << e.what() << std::endl;
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
  }
}
