#include <mzm/bdg.hpp>
#include <mzm/errors.hpp>
#include <mzm/holonomy.hpp>

#include <cmath>

namespace mzm {

namespace {

constexpr double k_zero_overlap = 1e-12;

struct SectorAcc {
  bool wanted = false;
  double gamma = 0.0;
};

void accumulate(SectorAcc& acc, const NambuSpinor& a, const NambuSpinor& b,
                Sector s, StepDiag& diag, double& max_arg) {
  if (!acc.wanted) return;
  const cplx ov = inner_product(a, b, s);
  const double mag = std::abs(ov);
  if (mag < k_zero_overlap)
    throw ZeroOverlap("path_phase: sector overlap magnitude below 1e-12");
  const double arg = std::arg(ov);
  if (std::abs(arg) >= 0.5 * pi)
    throw StepTooCoarse("path_phase: per-step sector arg reached pi/2, "
                        "refine the path");
  acc.gamma += arg;
  max_arg = std::max(max_arg, std::abs(arg));
  if (s == Sector::Electron) {
    diag.arg_u = arg;
    diag.mag_u = mag;
  } else {
    diag.arg_v = arg;
    diag.mag_v = mag;
  }
}

} // namespace

PhaseResult path_phase(const SpinorSampler& sample, const ParamPath& path,
                       Sector sector) {
  const auto& pts = path.points;
  if (pts.size() < 2)
    throw DomainError("path_phase: need at least two path points");

  PhaseResult res;
  SectorAcc u{sector != Sector::Hole, 0.0};
  SectorAcc v{sector != Sector::Electron, 0.0};
  double total = 0.0;

  NambuSpinor start = sample(pts[0]);
  NambuSpinor prev = start;
  const std::size_t n_steps = pts.size() - 1 + (path.closed ? 1 : 0);
  res.steps.reserve(n_steps);

  for (std::size_t k = 1; k <= n_steps; ++k) {
    const bool closing = (k == pts.size());
    NambuSpinor cur = sample(closing ? pts[0] : pts[k]);

    cplx ov_full = inner_product(prev, cur);
    const double mag = std::abs(ov_full);
    if (mag < k_zero_overlap)
      throw ZeroOverlap("path_phase: full overlap magnitude below 1e-12");
    // Z2 alignment. A near-perpendicular pair has no meaningful sign.
    if (std::abs(std::real(ov_full)) < 1e-3 * mag)
      throw StepTooCoarse("path_phase: consecutive states nearly "
                          "perpendicular, Z2 alignment undefined");
    StepDiag diag;
    if (std::real(ov_full) < 0.0) {
      cur.comps = -cur.comps;
      ov_full = -ov_full;
      diag.sign_flip = true;
    }

    const double arg_t = std::arg(ov_full);
    total += arg_t;
    res.max_step_arg = std::max(res.max_step_arg, std::abs(arg_t));

    accumulate(u, prev, cur, Sector::Electron, diag, res.max_step_arg);
    accumulate(v, prev, cur, Sector::Hole, diag, res.max_step_arg);
    res.steps.push_back(diag);

    if (closing) {
      // cur is the aligned re-sample of the start; compare against the
      // original start frame to book the loop's Z2 parity.
      res.closure_flip = std::real(inner_product(start, cur)) < 0.0;
    }
    prev = std::move(cur);
  }

  res.gamma_u = u.gamma;
  res.gamma_v = v.gamma;
  res.gamma_total = total;
  res.dynamical = 0.0;  // zero-energy sector, identically
  return res;
}

TotalPhase total_spinor_phase(const SpinorSampler& sample,
                              const ParamPath& path) {
  PhaseResult r = path_phase(sample, path, Sector::Full);
  return TotalPhase{r.gamma_total, r.closure_flip};
}

ConnectionSample connection(const SpinorSampler& sample,
                            const ParamPoint& point, Dir dir, double h) {
  ParamPoint pp = point, pm = point;
  if (dir == Dir::Theta) {
    pp.theta += h;
    pm.theta -= h;
  } else {
    pp.alpha += h;
    pm.alpha -= h;
  }
  NambuSpinor c = sample(point);
  NambuSpinor p = sample(pp);
  NambuSpinor m = sample(pm);
  // Align the offset samples to the center frame.
  if (std::real(inner_product(c, p)) < 0.0) p.comps = -p.comps;
  if (std::real(inner_product(c, m)) < 0.0) m.comps = -m.comps;

  auto diff = [&](Sector s) -> cplx {
    const cplx num = inner_product(c, p, s) - inner_product(c, m, s);
    const cplx den = inner_product(c, c, s);
    if (std::abs(den) < k_zero_overlap)
      throw ZeroOverlap("connection: sector norm vanishes");
    return num / (2.0 * h * den);
  };

  ConnectionSample a;
  a.a_u = diff(Sector::Electron);
  a.a_v = diff(Sector::Hole);
  a.a_total = diff(Sector::Full);
  return a;
}

SpinorSampler gauge_transform(const SpinorSampler& sample,
                              std::function<double(const ParamPoint&)> theta) {
  return [sample, theta](const ParamPoint& p) {
    NambuSpinor psi = sample(p);
    psi.comps *= std::polar(1.0, theta(p));
    return psi;
  };
}

double curvature(const SpinorSampler& sample, const ParamPoint& point,
                 double delta, Sector sector) {
  // Plaquette centered on the requested point: a corner-anchored square
  // estimates B half a step away and picks up an O(delta) bias from the
  // curvature gradient; centering makes the estimator O(delta^2).
  const double h = 0.5 * delta;
  const ParamPoint c1{point.theta - h, point.alpha - h};
  const ParamPoint c2{point.theta - h, point.alpha + h};
  const ParamPoint c3{point.theta + h, point.alpha + h};
  const ParamPoint c4{point.theta + h, point.alpha - h};
  NambuSpinor s1 = sample(c1), s2 = sample(c2), s3 = sample(c3),
              s4 = sample(c4);
  const cplx prod = inner_product(s1, s2, sector) *
                    inner_product(s2, s3, sector) *
                    inner_product(s3, s4, sector) *
                    inner_product(s4, s1, sector);
  if (std::abs(prod) < k_zero_overlap)
    throw ZeroOverlap("curvature: plaquette product magnitude below 1e-12");
  return std::arg(prod) / (delta * delta);
}

StokesReport stokes_check(const SpinorSampler& sample, const ParamPoint& corner,
                          double side, Sector sector, int loop_steps,
                          int cells) {
  // Boundary loop, alpha-leg first, matching the plaquette orientation.
  ParamPath path;
  path.closed = true;
  const int per_edge = std::max(loop_steps / 4, 2);
  auto push_edge = [&](double t0, double a0, double t1, double a1) {
    for (int i = 0; i < per_edge; ++i) {
      const double f = static_cast<double>(i) / per_edge;
      path.points.push_back({t0 + f * (t1 - t0), a0 + f * (a1 - a0)});
    }
  };
  const double t = corner.theta, a = corner.alpha;
  push_edge(t, a, t, a + side);
  push_edge(t, a + side, t + side, a + side);
  push_edge(t + side, a + side, t + side, a);
  push_edge(t + side, a, t, a);

  StokesReport rep;
  const PhaseResult pr = path_phase(sample, path, sector);
  rep.loop = (sector == Sector::Electron) ? pr.gamma_u
             : (sector == Sector::Hole)   ? pr.gamma_v
                                          : pr.gamma_total;

  // Cell-center evaluation: with the centered plaquette the sampled corners
  // tile the patch exactly, so the plaquette args telescope against the
  // boundary loop (Fukui-Hatsugai) up to rounding.
  const double d = side / cells;
  double integral = 0.0;
  for (int i = 0; i < cells; ++i)
    for (int j = 0; j < cells; ++j)
      integral += curvature(sample, {t + (i + 0.5) * d, a + (j + 0.5) * d}, d,
                            sector) *
                  d * d;
  rep.integral = integral;
  rep.diff = std::abs(rep.loop - rep.integral);
  return rep;
}

SpinorSampler two_level_sampler() {
  GridPtr grid = make_uniform_grid(0.0, 1.0, 2);
  return [grid](const ParamPoint& p) {
    NambuSpinor psi;
    psi.grid = grid;
    psi.comps.setZero(4, 2);
    psi.comps(0, 0) = std::sin(0.5 * p.theta) * std::polar(1.0, p.alpha);
    psi.comps(1, 0) = -std::cos(0.5 * p.theta);
    return psi;
  };
}

ParamPath alpha_loop(double theta, int steps) {
  ParamPath path;
  path.closed = true;
  path.points.reserve(steps);
  for (int k = 0; k < steps; ++k)
    path.points.push_back({theta, 2.0 * pi * k / steps});
  return path;
}

ParamPath modulated_loop(double theta0, double wobble, int steps) {
  ParamPath path;
  path.closed = true;
  path.points.reserve(steps);
  for (int k = 0; k < steps; ++k) {
    const double s = 2.0 * pi * k / steps;
    path.points.push_back({theta0 + wobble * std::sin(s), s});
  }
  return path;
}

} // namespace mzm
