#include <mzm/bdg.hpp>
#include <mzm/errors.hpp>
#include <mzm/evolution.hpp>
#include <mzm/holonomy.hpp>
#include <mzm/junction.hpp>
#include <mzm/lattice.hpp>
#include <mzm/validate.hpp>

#include <chrono>
#include <cmath>
#include <random>
#include <sstream>

namespace mzm {

double circular_distance(double x, double y) {
  return std::abs(std::atan2(std::sin(x - y), std::cos(x - y)));
}

namespace {

using Clock = std::chrono::steady_clock;

double elapsed(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << x;
  return os.str();
}

ModelParams default_model() { return ModelParams{}; }  // mu=0, m=1, delta=1

// ---- criterion bodies -------------------------------------------------

// 1: the interface-phased FI restriction carries gamma_u = +pi and
//    gamma_v = -pi around one alpha loop at theta = pi/2.
CriterionResult c1(PhaseResult& out_fi) {
  CriterionResult r{1, "fi-restriction sector phases (+pi, -pi)"};
  const auto t0 = Clock::now();
  ModelParams model = default_model();
  ParamPoint base{0.5 * pi, 0.0};
  auto sample = region_sampler(model, region_grid(model, base, Region::FI),
                               Region::FI);
  out_fi = path_phase(sample, alpha_loop(0.5 * pi, 2000), Sector::Full);
  r.seconds = elapsed(t0);
  const double eu = std::abs(out_fi.gamma_u - pi);
  const double ev = std::abs(out_fi.gamma_v + pi);
  r.pass = eu < 1e-3 && ev < 1e-3 && r.seconds < 5.0;
  r.detail = "gamma_u=" + std::to_string(out_fi.gamma_u) +
             " gamma_v=" + std::to_string(out_fi.gamma_v) +
             " |du|=" + fmt(eu) + " |dv|=" + fmt(ev) +
             " t=" + std::to_string(r.seconds) + "s";
  return r;
}

// 2: the raw SC restriction is phase-inert: both sector phases vanish.
CriterionResult c2(PhaseResult& out_sc) {
  CriterionResult r{2, "sc-restriction sector phases vanish"};
  ModelParams model = default_model();
  ParamPoint base{0.5 * pi, 0.0};
  auto sample = region_sampler(model, region_grid(model, base, Region::SC),
                               Region::SC);
  out_sc = path_phase(sample, alpha_loop(0.5 * pi, 2000), Sector::Full);
  const double m = std::max(std::abs(out_sc.gamma_u), std::abs(out_sc.gamma_v));
  r.pass = m < 1e-6;
  r.detail = "max |gamma| = " + fmt(m);
  return r;
}

// 3: the full self-conjugate state has zero total phase around random
//    contractible admissible loops.
CriterionResult c3(std::vector<PhaseResult>& results) {
  CriterionResult r{3, "full-state total phase vanishes on random loops"};
  ModelParams model = default_model();
  GridPtr grid = junction_grid(model, {0.5 * pi, 0.0});
  auto sample = sampler(model, grid);
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  double worst = 0.0;
  for (int l = 0; l < 20; ++l) {
    const double tc = 0.8 + 1.5 * u01(rng);
    const double rt = 0.1 + 0.3 * u01(rng);
    const double ac = 2.0 * pi * u01(rng);
    const double ra = 0.1 + 0.9 * u01(rng);
    const double p1 = 2.0 * pi * u01(rng);
    const double p2 = 2.0 * pi * u01(rng);
    ParamPath path;
    path.closed = true;
    const int n = 400;
    for (int k = 0; k < n; ++k) {
      const double s = 2.0 * pi * k / n;
      path.points.push_back(
          {tc + rt * std::cos(s + p1), ac + ra * std::sin(s + p2)});
    }
    PhaseResult pr = path_phase(sample, path, Sector::Full);
    worst = std::max(worst, std::abs(pr.gamma_total));
    results.push_back(std::move(pr));
  }
  r.pass = worst < 1e-6;
  r.detail = "20 loops, max |gamma_total| = " + fmt(worst);
  return r;
}

// 4: electron and hole phases cancel pairwise on every path computed so far.
CriterionResult c4(const PhaseResult& fi, const PhaseResult& sc,
                   const std::vector<PhaseResult>& loops) {
  CriterionResult r{4, "sector phases cancel: gamma_u + gamma_v = 0"};
  double worst = std::max(std::abs(fi.gamma_u + fi.gamma_v),
                          std::abs(sc.gamma_u + sc.gamma_v));
  for (const auto& pr : loops)
    worst = std::max(worst, std::abs(pr.gamma_u + pr.gamma_v));
  r.pass = worst < 1e-10;
  r.detail = "max |gamma_u + gamma_v| = " + fmt(worst);
  return r;
}

// 5: the chain discretization reproduces criterion 1 and its mode is a
//    numerical zero mode.
CriterionResult c5() {
  CriterionResult r{5, "lattice backend reproduces the FI loop"};
  const auto t0 = Clock::now();
  ModelParams model = default_model();
  LatticeSpec spec{400, 0.1, 1.0};
  ZeroModeReport zm = zero_mode_numeric(
      build_lattice(model, {0.5 * pi, 0.0}, spec));
  auto sample = lattice_sampler(model, spec, Region::FI);
  PhaseResult pr = path_phase(sample, alpha_loop(0.5 * pi, 500), Sector::Full);
  r.seconds = elapsed(t0);
  const double eu = std::abs(pr.gamma_u - pi);
  const double ev = std::abs(pr.gamma_v + pi);
  r.pass = eu < 1e-2 && ev < 1e-2 && std::abs(zm.energy) < 1e-4 &&
           r.seconds < 120.0;
  r.detail = "gamma_u=" + std::to_string(pr.gamma_u) + " |du|=" + fmt(eu) +
             " |E0|=" + fmt(std::abs(zm.energy)) +
             " loc=" + std::to_string(zm.localization) +
             " t=" + std::to_string(r.seconds) + "s";
  return r;
}

// 6: closed-loop phases are invariant under single-valued gauges and under
//    the winding gauge Theta = alpha (mod 2 pi).
CriterionResult c6(const PhaseResult& fi_base) {
  CriterionResult r{6, "gauge invariance of closed-loop phases"};
  ModelParams model = default_model();
  ParamPoint base{0.5 * pi, 0.0};
  auto sample = region_sampler(model, region_grid(model, base, Region::FI),
                               Region::FI);
  ParamPath loop = alpha_loop(0.5 * pi, 2000);

  std::mt19937 rng(777);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  double worst = 0.0;
  for (int g = 0; g < 10; ++g) {
    double a[3], b[3], c[3], d[3];
    for (int j = 0; j < 3; ++j) {
      a[j] = coeff(rng);
      b[j] = coeff(rng);
      c[j] = coeff(rng);
      d[j] = coeff(rng);
    }
    auto theta_fn = [=](const ParamPoint& p) {
      double s = 0.0;
      for (int j = 0; j < 3; ++j)
        s += a[j] * std::cos((j + 1) * p.alpha) +
             b[j] * std::sin((j + 1) * p.alpha) +
             c[j] * std::cos((j + 1) * p.theta) +
             d[j] * std::sin((j + 1) * p.theta);
      return s;
    };
    PhaseResult pr =
        path_phase(gauge_transform(sample, theta_fn), loop, Sector::Full);
    worst = std::max(worst, circular_distance(pr.gamma_u, fi_base.gamma_u));
    worst = std::max(worst, circular_distance(pr.gamma_v, fi_base.gamma_v));
  }
  // Winding gauge: shifts the accumulated sums by exactly 2 pi.
  PhaseResult prw = path_phase(
      gauge_transform(sample, [](const ParamPoint& p) { return p.alpha; }),
      loop, Sector::Full);
  worst = std::max(worst, circular_distance(prw.gamma_u, fi_base.gamma_u));
  worst = std::max(worst, circular_distance(prw.gamma_v, fi_base.gamma_v));
  r.pass = worst < 1e-8;
  r.detail = "max circular drift = " + fmt(worst) +
             " (10 trig-polynomial gauges + winding alpha)";
  return r;
}

// 7: two-level fixture curvature -sin(theta)/2 and its Stokes consistency.
CriterionResult c7() {
  CriterionResult r{7, "two-level fixture curvature and Stokes check"};
  auto fix = two_level_sampler();
  double worst = 0.0;
  for (double th : {pi / 6.0, pi / 3.0, pi / 2.0}) {
    const double b = curvature(fix, {th, 0.7}, 1e-3, Sector::Electron);
    worst = std::max(worst, std::abs(b + 0.5 * std::sin(th)));
  }
  StokesReport st = stokes_check(fix, {0.9, 0.4}, 0.1, Sector::Electron);
  r.pass = worst < 1e-4 && st.diff < 1e-4;
  r.detail = "max |B + sin(theta)/2| = " + fmt(worst) +
             ", stokes diff = " + fmt(st.diff);
  return r;
}

// 8: the FI restriction is curvature-flat in the loop parameters while still
//    carrying the pi loop phase: the phase is holonomy, not flux.
CriterionResult c8(const PhaseResult& fi_base) {
  CriterionResult r{8, "fi-restriction: flat curvature, pi holonomy"};
  ModelParams model = default_model();
  ParamPoint base{0.5 * pi, 0.0};
  auto sample = region_sampler(model, region_grid(model, base, Region::FI),
                               Region::FI);
  double worst = 0.0;
  for (double th : {pi / 3.0, 0.5 * pi, 2.0 * pi / 3.0})
    for (double al : {0.5, 2.0, 4.0})
      worst = std::max(
          worst, std::abs(curvature(sample, {th, al}, 1e-3, Sector::Electron)));
  r.pass = worst < 1e-5 && std::abs(fi_base.gamma_u - pi) < 1e-3;
  r.detail = "max |B| = " + fmt(worst) +
             ", loop gamma_u = " + std::to_string(fi_base.gamma_u);
  return r;
}

// 9: nonadiabatic evolution converges to the adiabatic return phase pi as
//    the loop slows down; the stepped propagator stays unitary.
CriterionResult c9() {
  CriterionResult r{9, "nonadiabatic return phase converges to pi"};
  const auto t0 = Clock::now();
  ModelParams model = default_model();
  LatticeSpec spec{96, 0.25, 1.0};
  ZeroModeReport zm =
      zero_mode_numeric(build_lattice(model, {0.5 * pi, 0.0}, spec));
  VectorXcd psi0(4 * spec.n_sites);
  for (int j = 0; j < spec.n_sites; ++j)
    psi0.segment<4>(4 * j) = to_bdg_column(Vector4cd(zm.mode.comps.col(j)));

  double errs[3], drifts[3];
  const double horizons[3] = {50.0, 200.0, 800.0};
  for (int i = 0; i < 3; ++i) {
    const double T = horizons[i];
    Generator gen = [&, T](double t) {
      return build_lattice(model, {0.5 * pi, 2.0 * pi * t / T}, spec).h;
    };
    Schedule sched{T, static_cast<int>(T / 0.25)};
    EvolutionReport rep = evolve(gen, psi0, sched);
    errs[i] = circular_distance(rep.phi_u, pi);
    drifts[i] = rep.norm_drift;
  }
  r.seconds = elapsed(t0);
  const double max_drift = std::max({drifts[0], drifts[1], drifts[2]});
  r.pass = errs[0] > errs[1] && errs[1] > errs[2] && errs[2] < 0.05 &&
           max_drift < 1e-10 && r.seconds < 300.0;
  r.detail = "err(T=50,200,800) = " + fmt(errs[0]) + ", " + fmt(errs[1]) +
             ", " + fmt(errs[2]) + "; drift=" + fmt(max_drift) +
             "; t=" + std::to_string(r.seconds) + "s";
  return r;
}

// 10: the matched state is self-conjugate and spin-locked across an
//     admissible parameter grid.
CriterionResult c10() {
  CriterionResult r{10, "self-conjugacy and phase lock on a parameter grid"};
  double worst_maj = 0.0, worst_lock = 0.0, worst_res = 0.0;
  int count = 0;
  for (double mu : {0.0, 0.3, -0.4})
    for (double th : {pi / 3.0, 0.5 * pi, 2.0 * pi / 3.0})
      for (double al : {0.5, 2.0, 4.0}) {
        ModelParams model = default_model();
        model.mu_fi = mu;
        ParamPoint p{th, al};
        GridPtr grid = junction_grid(model, p);
        BoundState bs = bound_state(model, p, grid);
        worst_maj = std::max(worst_maj, bs.majorana_res);
        // Spin lock: arg(u_dn/u_up) in the FI channel equals alpha + phi.
        InterfaceSolution sol = match_interface(model, p);
        const double lock = std::arg(sol.e.chi(1) / sol.e.chi(0));
        worst_lock = std::max(
            worst_lock, circular_distance(lock, al + sol.derived.phi));
        worst_res = std::max(worst_res,
                             zero_energy_residual(model, p, bs.state));
        ++count;
      }
  r.pass = worst_maj < 1e-8 && worst_lock < 1e-8 && worst_res < 1e-6;
  r.detail = std::to_string(count) + " points: max majorana_res=" +
             fmt(worst_maj) + " max lock err=" + fmt(worst_lock) +
             " max H psi residual=" + fmt(worst_res);
  return r;
}

// 11: second-order convergence in both discretizations, measured where the
//     error actually scales. The pure alpha loop is discretely exact: on the
//     FI side |u_up| = |u_dn| pointwise, so each step arg is exactly
//     (d_alpha + d_phi)/2 and the sum telescopes to pi at ANY N. A
//     single-harmonic theta wobble is still exact -- the envelope overlap
//     phase is odd in the k_F increment, and theta = theta0 + w sin(alpha)
//     pairs every step with its reflection about alpha = pi/2 at equal decay
//     sum and opposite increment. A two-harmonic wobble breaks that
//     reflection and exposes the genuine O(N^-2) tail.
CriterionResult c11() {
  CriterionResult r{11, "convergence ratios: loop steps and time steps"};
  // Loop-step part: same observable as criterion 1 (FI-restriction gamma_u
  // -> pi), on a two-harmonic modulated loop where the discretization error
  // is measurable. mu_fi != 0 makes the spin-lock offset phi vary with theta.
  ModelParams model = default_model();
  model.mu_fi = 0.3;
  ParamPoint base{0.5 * pi, 0.0};
  auto sample = region_sampler(model, region_grid(model, base, Region::FI),
                               Region::FI);
  auto two_harmonic = [](int n) {
    ParamPath path;
    path.closed = true;
    path.points.reserve(n);
    for (int k = 0; k < n; ++k) {
      const double s = 2.0 * pi * k / n;
      path.points.push_back(
          {0.5 * pi + 0.25 * std::sin(s) + 0.2 * std::sin(2.0 * s), s});
    }
    return path;
  };
  double e[3];
  const int ns[3] = {100, 200, 400};
  for (int i = 0; i < 3; ++i) {
    PhaseResult pr = path_phase(sample, two_harmonic(ns[i]), Sector::Electron);
    e[i] = std::abs(pr.gamma_u - pi);
  }
  const double r_loop = e[0] / e[1];
  const double r_loop2 = e[1] / e[2];

  // The criterion-1 loop itself sits at the rounding floor for every N:
  // halving its step cannot shrink an error that is already zero. Assert the
  // exactness directly at N = 2000 and 4000.
  ModelParams c1_model = default_model();
  auto c1_sample = region_sampler(
      c1_model, region_grid(c1_model, base, Region::FI), Region::FI);
  const double exact_a =
      std::abs(path_phase(c1_sample, alpha_loop(0.5 * pi, 2000),
                          Sector::Electron)
                   .gamma_u -
               pi);
  const double exact_b =
      std::abs(path_phase(c1_sample, alpha_loop(0.5 * pi, 4000),
                          Sector::Electron)
                   .gamma_u -
               pi);

  // Time-step part: Richardson against an 8N reference at T = 50.
  ModelParams em = default_model();
  LatticeSpec spec{96, 0.25, 1.0};
  ZeroModeReport zm =
      zero_mode_numeric(build_lattice(em, {0.5 * pi, 0.0}, spec));
  VectorXcd psi0(4 * spec.n_sites);
  for (int j = 0; j < spec.n_sites; ++j)
    psi0.segment<4>(4 * j) = to_bdg_column(Vector4cd(zm.mode.comps.col(j)));
  const double T = 50.0;
  Generator gen = [&](double t) {
    return build_lattice(em, {0.5 * pi, 2.0 * pi * t / T}, spec).h;
  };
  double phi[3];
  const int steps[3] = {200, 400, 1600};
  for (int i = 0; i < 3; ++i)
    phi[i] = evolve(gen, psi0, Schedule{T, steps[i]}).phi_u;
  const double r_time = circular_distance(phi[0], phi[2]) /
                        circular_distance(phi[1], phi[2]);

  auto in_band = [](double x) { return x >= 3.0 && x <= 5.0; };
  r.pass = in_band(r_loop) && in_band(r_loop2) && in_band(r_time) &&
           exact_a < 1e-12 && exact_b < 1e-12;
  r.detail = "loop e(100/200/400)=" + fmt(e[0]) + "," + fmt(e[1]) + "," +
             fmt(e[2]) + " ratios=" + std::to_string(r_loop) + "," +
             std::to_string(r_loop2) +
             "; pure alpha loop exact: e(2000)=" + fmt(exact_a) +
             " e(4000)=" + fmt(exact_b) +
             "; time ratio=" + std::to_string(r_time);
  return r;
}

void emit(std::ostream* progress, const CriterionResult& r) {
  if (!progress) return;
  (*progress) << "CRITERION " << r.id << (r.pass ? " PASS " : " FAIL ")
              << r.name << " | " << r.detail << "\n";
  progress->flush();
}

template <typename Fn>
CriterionResult guarded(int id, const std::string& name, Fn&& fn) {
  try {
    return fn();
  } catch (const std::exception& ex) {
    CriterionResult r{id, name};
    r.pass = false;
    r.detail = std::string("exception: ") + ex.what();
    return r;
  }
}

} // namespace

std::vector<CriterionResult> run_acceptance(std::ostream* progress) {
  std::vector<CriterionResult> out;
  PhaseResult fi_base, sc_base;
  std::vector<PhaseResult> loops;

  out.push_back(guarded(1, "fi-restriction sector phases (+pi, -pi)",
                        [&] { return c1(fi_base); }));
  emit(progress, out.back());
  out.push_back(guarded(2, "sc-restriction sector phases vanish",
                        [&] { return c2(sc_base); }));
  emit(progress, out.back());
  out.push_back(guarded(3, "full-state total phase vanishes on random loops",
                        [&] { return c3(loops); }));
  emit(progress, out.back());
  out.push_back(guarded(4, "sector phases cancel: gamma_u + gamma_v = 0",
                        [&] { return c4(fi_base, sc_base, loops); }));
  emit(progress, out.back());
  out.push_back(guarded(5, "lattice backend reproduces the FI loop", c5));
  emit(progress, out.back());
  out.push_back(guarded(6, "gauge invariance of closed-loop phases",
                        [&] { return c6(fi_base); }));
  emit(progress, out.back());
  out.push_back(guarded(7, "two-level fixture curvature and Stokes check", c7));
  emit(progress, out.back());
  out.push_back(guarded(8, "fi-restriction: flat curvature, pi holonomy",
                        [&] { return c8(fi_base); }));
  emit(progress, out.back());
  out.push_back(guarded(9, "nonadiabatic return phase converges to pi", c9));
  emit(progress, out.back());
  out.push_back(guarded(10, "self-conjugacy and phase lock on a parameter grid",
                        c10));
  emit(progress, out.back());
  out.push_back(guarded(11, "convergence ratios: loop steps and time steps",
                        c11));
  emit(progress, out.back());
  return out;
}

bool all_passed(const std::vector<CriterionResult>& results) {
  for (const auto& r : results)
    if (!r.pass) return false;
  return true;
}

} // namespace mzm
