#include <mzm/bdg.hpp>
#include <mzm/errors.hpp>
#include <mzm/junction.hpp>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>

namespace mzm {

DerivedParams derived_params(const ModelParams& model, const ParamPoint& point) {
  DerivedParams d;
  const double v = model.hbar * model.v_f;
  d.m_par = model.m * std::abs(std::sin(point.theta));
  if (d.m_par < 1e-12)
    throw DegenerateInPlane(
        "derived_params: m sin(theta) = 0, the in-plane angle alpha is "
        "undefined");
  if (std::abs(model.mu_fi) >= d.m_par)
    throw EvanescentConditionViolated(
        "derived_params: |mu_fi| >= m |sin theta|, no evanescent FI window");
  d.k_f = std::sqrt(d.m_par * d.m_par - model.mu_fi * model.mu_fi) / v;
  d.phi = std::atan2(d.k_f * v, model.mu_fi);  // e^{i phi} = (mu + i k_f v)/m_par
  d.k_m = model.m * std::cos(point.theta) / v;
  d.kappa_sc = model.delta / v;
  d.k_m_sc = std::abs(model.mu_sc) / v;
  return d;
}

namespace {

// One 2x2 sub-pencil h0 + k h1 embedded at BdG rows (i0, i1).
void collect_block_modes(const Eigen::Matrix2cd& h0, const Eigen::Matrix2cd& h1,
                         int i0, int i1, Region region,
                         std::vector<EvanescentMode>& out) {
  Eigen::Matrix2cd a = -h1.inverse() * h0;
  Eigen::ComplexEigenSolver<Eigen::Matrix2cd> es(a);
  for (int j = 0; j < 2; ++j) {
    const cplx k = es.eigenvalues()(j);
    const cplx lambda = cplx(0.0, 1.0) * k;  // psi ~ e^{i k x} = e^{lambda x}
    const double re = std::real(lambda);
    const bool decays = (region == Region::FI) ? (re > 1e-9) : (re < -1e-9);
    if (!decays) continue;
    Eigen::Vector2cd w = es.eigenvectors().col(j).normalized();
    EvanescentMode m;
    m.lambda = lambda;
    m.region = region;
    m.chi.setZero();
    m.chi(i0) = w(0);
    m.chi(i1) = w(1);
    // Deterministic phase: first significant component real positive.
    for (int l = 0; l < 4; ++l) {
      if (std::abs(m.chi(l)) > 1e-8) {
        m.chi *= std::polar(1.0, -std::arg(m.chi(l)));
        break;
      }
    }
    out.push_back(m);
  }
}

} // namespace

std::vector<EvanescentMode> evanescent_modes(const ModelParams& model,
                                             const ParamPoint& point,
                                             Region region) {
  const Matrix4cd h0 = bdg_kernel(model, point, region, 0.0);
  const double v = model.hbar * model.v_f;

  std::vector<EvanescentMode> modes;
  if (region == Region::FI) {
    // Delta = 0: electron (rows 0,1) and hole (rows 2,3) blocks decouple.
    Eigen::Matrix2cd he = h0.block<2, 2>(0, 0);
    Eigen::Matrix2cd hh = h0.block<2, 2>(2, 2);
    Eigen::Matrix2cd kin_e = v * pauli(3);
    collect_block_modes(he, kin_e, 0, 1, region, modes);
    collect_block_modes(hh, -kin_e, 2, 3, region, modes);
  } else {
    // m = 0: pairing couples (0,2) and (1,3) only.
    Eigen::Matrix2cd hA, hB, kA, kB;
    hA << h0(0, 0), h0(0, 2), h0(2, 0), h0(2, 2);
    hB << h0(1, 1), h0(1, 3), h0(3, 1), h0(3, 3);
    kA << v, 0, 0, -v;   // +v k on phi1, -v k on phi3
    kB << -v, 0, 0, v;
    collect_block_modes(hA, kA, 0, 2, region, modes);
    collect_block_modes(hB, kB, 1, 3, region, modes);
  }
  if (modes.empty())
    throw NoDecayingMode("evanescent_modes: no decaying channel in region");
  return modes;
}

namespace {

// Self-conjugacy partner maps (Xi = C K with C = tau_y x sigma_y).
Vector4cd fi_partner(const Vector4cd& chi) { return ph_conj(chi); }
Vector4cd sc_partner(const Vector4cd& chi) {
  return cplx(0.0, -1.0) * ph_conj(chi);
}

struct Channels {
  EvanescentMode e, h, A, B;
};

Channels canonical_channels(const ModelParams& model, const ParamPoint& point) {
  auto fi = evanescent_modes(model, point, Region::FI);
  auto sc = evanescent_modes(model, point, Region::SC);
  if (fi.size() != 2 || sc.size() != 2)
    throw NoZeroMode("match_interface: expected two decaying channels per side");

  Channels ch;
  // Electron channel has support on rows 0,1; the A channel on rows 0,2.
  ch.e = (fi[0].chi.head<2>().norm() > 0.5) ? fi[0] : fi[1];
  ch.A = (std::abs(sc[0].chi(0)) > 0.5) ? sc[0] : sc[1];

  // Partners are *defined* through Xi so the coefficient ties (a, a^*) and
  // (c, i c^*) make the ansatz self-conjugate for any a, c.
  ch.h.region = Region::FI;
  ch.h.lambda = std::conj(ch.e.lambda);
  ch.h.chi = fi_partner(ch.e.chi);
  ch.B.region = Region::SC;
  ch.B.lambda = std::conj(ch.A.lambda);
  ch.B.chi = sc_partner(ch.A.chi);
  return ch;
}

} // namespace

InterfaceSolution match_interface(const ModelParams& model,
                                  const ParamPoint& point) {
  InterfaceSolution sol;
  sol.derived = derived_params(model, point);
  Channels ch = canonical_channels(model, point);

  // Continuity at x = 0 of a chi_e + a* chi_h - c chi_A - i c* chi_B as a
  // real-linear map of (Re a, Im a, Re c, Im c). Columns probed with unit
  // coefficients; the conjugation ties are baked into the probe.
  auto mismatch = [&](cplx a, cplx c) -> Vector4cd {
    return a * ch.e.chi + std::conj(a) * ch.h.chi - c * ch.A.chi -
           cplx(0.0, 1.0) * std::conj(c) * ch.B.chi;
  };
  Eigen::Matrix<double, 8, 4> m;
  const cplx probes[4][2] = {
      {{1, 0}, {0, 0}}, {{0, 1}, {0, 0}}, {{0, 0}, {1, 0}}, {{0, 0}, {0, 1}}};
  for (int col = 0; col < 4; ++col) {
    Vector4cd e = mismatch(probes[col][0], probes[col][1]);
    for (int r = 0; r < 4; ++r) {
      m(2 * r, col) = std::real(e(r));
      m(2 * r + 1, col) = std::imag(e(r));
    }
  }

  Eigen::JacobiSVD<Eigen::Matrix<double, 8, 4>> svd(
      m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  if (s(3) > 1e-8 * s(0))
    throw NoZeroMode("match_interface: continuity system has no null space");
  if (s(2) < 10.0 * s(3))
    throw DegenerateZeroMode(
        "match_interface: null space is not one-dimensional");

  Eigen::Vector4d nv = svd.matrixV().col(3);
  cplx a(nv(0), nv(1)), c(nv(2), nv(3));

  // Sign rule: the null vector is real-one-dimensional (a complex rescaling
  // would break the conjugation ties), so only a Z2 sign is free. Fix it
  // against Re a, tie-break on Im a, then the SC coefficient.
  double key = std::real(a);
  if (std::abs(key) < 1e-12) key = std::imag(a);
  if (std::abs(key) < 1e-12) key = std::real(c);
  if (std::abs(key) < 1e-12) key = std::imag(c);
  if (key < 0.0) {
    a = -a;
    c = -c;
  }

  sol.a = a;
  sol.c = c;
  sol.e = ch.e;
  sol.h = ch.h;
  sol.A = ch.A;
  sol.B = ch.B;
  sol.match_residual = (m * (key < 0 ? -nv : nv).eval()).norm();
  return sol;
}

GridPtr junction_grid(const ModelParams& model, const ParamPoint& point,
                      int n, double lengths) {
  DerivedParams d = derived_params(model, point);
  const double l_fi = lengths / d.k_f;
  const double l_sc = lengths / d.kappa_sc;
  return make_uniform_grid(-l_fi, l_sc, n);
}

GridPtr region_grid(const ModelParams& model, const ParamPoint& point,
                    Region region, int n, double lengths) {
  DerivedParams d = derived_params(model, point);
  if (region == Region::FI) return make_uniform_grid(-lengths / d.k_f, 0.0, n);
  return make_uniform_grid(0.0, lengths / d.kappa_sc, n);
}

namespace {

// Evaluate the matched two-channel form on grid points of one region.
void eval_side(const InterfaceSolution& sol, const VectorXd& x, bool fi_side,
               Eigen::Matrix<cplx, 4, Eigen::Dynamic>& comps) {
  const cplx w1 = fi_side ? sol.a : sol.c;
  const cplx w2 = fi_side ? std::conj(sol.a)
                          : cplx(0.0, 1.0) * std::conj(sol.c);
  const EvanescentMode& m1 = fi_side ? sol.e : sol.A;
  const EvanescentMode& m2 = fi_side ? sol.h : sol.B;
  for (int j = 0; j < x.size(); ++j) {
    const bool in_side = fi_side ? (x[j] < 0.0) : (x[j] >= 0.0);
    if (!in_side) continue;
    Vector4cd phi = w1 * m1.chi * std::exp(m1.lambda * x[j]) +
                    w2 * m2.chi * std::exp(m2.lambda * x[j]);
    comps.col(j) = from_bdg_column(phi);
  }
}

} // namespace

BoundState bound_state(const ModelParams& model, const ParamPoint& point,
                       const GridPtr& grid) {
  InterfaceSolution sol = match_interface(model, point);
  NambuSpinor psi;
  psi.grid = grid;
  psi.comps.setZero(4, grid->size());
  eval_side(sol, *grid, true, psi.comps);
  eval_side(sol, *grid, false, psi.comps);

  BoundState bs;
  bs.state = normalized(psi);
  bs.coeff_fi << sol.a, std::conj(sol.a);
  bs.coeff_sc << sol.c, cplx(0.0, 1.0) * std::conj(sol.c);
  bs.match_residual = sol.match_residual;
  bs.majorana_res = majorana_residual(bs.state);
  bs.derived = sol.derived;
  return bs;
}

SpinorSampler sampler(const ModelParams& model, const GridPtr& grid) {
  return [model, grid](const ParamPoint& point) {
    return bound_state(model, point, grid).state;
  };
}

SpinorSampler region_sampler(const ModelParams& model, const GridPtr& grid,
                             Region region) {
  if (region == Region::FI) {
    if ((*grid)(grid->size() - 1) > 1e-12)
      throw GridMismatch("region_sampler: FI grid must satisfy x <= 0");
    return [model, grid](const ParamPoint& point) {
      InterfaceSolution sol = match_interface(model, point);
      // Interface phasing: pull arg u_up(0-) out of the electron sector and
      // push it into the hole sector. Valid zero mode here because Delta = 0
      // on this side, and it keeps v = u^*.
      const cplx u0 = sol.a * sol.e.chi(0);
      const cplx ph = std::polar(1.0, -std::arg(u0));
      NambuSpinor psi;
      psi.grid = grid;
      psi.comps.setZero(4, grid->size());
      eval_side(sol, *grid, true, psi.comps);
      // Grid point x = 0 belongs to the FI closure here.
      if (std::abs((*grid)(grid->size() - 1)) <= 1e-12) {
        Vector4cd phi = sol.a * sol.e.chi + std::conj(sol.a) * sol.h.chi;
        psi.comps.col(grid->size() - 1) = from_bdg_column(phi);
      }
      psi.comps.row(0) *= ph;
      psi.comps.row(1) *= ph;
      psi.comps.row(2) *= std::conj(ph);
      psi.comps.row(3) *= std::conj(ph);
      return normalized(psi);
    };
  }
  if ((*grid)(0) < -1e-12)
    throw GridMismatch("region_sampler: SC grid must satisfy x >= 0");
  return [model, grid](const ParamPoint& point) {
    InterfaceSolution sol = match_interface(model, point);
    NambuSpinor psi;
    psi.grid = grid;
    psi.comps.setZero(4, grid->size());
    eval_side(sol, *grid, false, psi.comps);
    return normalized(psi);
  };
}

} // namespace mzm
