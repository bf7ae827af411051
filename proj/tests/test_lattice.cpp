#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <mzm/bdg.hpp>
#include <mzm/eigen_lapack.hpp>
#include <mzm/errors.hpp>
#include <mzm/holonomy.hpp>
#include <mzm/lattice.hpp>

#include <cmath>

using namespace mzm;

namespace {

ModelParams junction_model() {
  ModelParams model;
  model.mu_fi = 0.3;
  model.mu_sc = 0.1;
  return model;
}

int near_zero_count(const MatrixXcd& h, double cut) {
  EighResult es = eigh(h);
  int m = 0;
  for (int i = 0; i < es.values.size(); ++i)
    if (std::abs(es.values(i)) < cut) ++m;
  return m;
}

} // namespace

TEST_CASE("chain Hamiltonian: Hermitian with an exactly paired spectrum") {
  LatticeSpec spec{60, 0.3, 1.0};
  LatticeHamiltonian lat = build_lattice(junction_model(), {0.4 * pi, 0.9}, spec);
  CHECK((lat.h - lat.h.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
  EighResult es = eigh(lat.h);
  const int n = static_cast<int>(es.values.size());
  for (int i = 0; i < n; ++i)
    CHECK(std::abs(es.values(i) + es.values(n - 1 - i)) < 1e-10);
}

TEST_CASE("exact covariance: H(theta, alpha) = U H(theta, 0) U^+") {
  LatticeSpec spec{20, 0.5, 1.0};
  ModelParams model = junction_model();
  const double alpha = 1.234;
  LatticeHamiltonian h0 = build_lattice(model, {0.4 * pi, 0.0}, spec);
  LatticeHamiltonian ha = build_lattice(model, {0.4 * pi, alpha}, spec);
  VectorXcd u(4 * spec.n_sites);
  for (int j = 0; j < spec.n_sites; ++j) {
    u(4 * j + 0) = std::polar(1.0, -0.5 * alpha);
    u(4 * j + 1) = std::polar(1.0, +0.5 * alpha);
    u(4 * j + 2) = std::polar(1.0, -0.5 * alpha);
    u(4 * j + 3) = std::polar(1.0, +0.5 * alpha);
  }
  MatrixXcd rotated = u.asDiagonal() * h0.h * u.conjugate().asDiagonal();
  CHECK((ha.h - rotated).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("interface zero mode: localized, self-conjugate, spectrally isolated") {
  LatticeSpec spec{120, 0.2, 1.0};
  LatticeHamiltonian lat =
      build_lattice(junction_model(), {0.5 * pi, 0.7}, spec);
  ZeroModeReport rep = zero_mode_numeric(lat);
  CHECK(rep.n_zero == 2);
  CHECK(rep.energy < 1e-4);
  CHECK(rep.gap_ratio > 100.0);
  CHECK(rep.localization > 0.9);
  CHECK(majorana_residual(rep.mode) < 1e-10);
  // The mode dies off before the walls.
  CHECK(rep.mode.comps.col(0).norm() < 1e-3);
  CHECK(rep.mode.comps.col(rep.mode.size() - 1).norm() < 1e-3);
}

TEST_CASE("Wilson term: without it the doubler annihilates the zero mode") {
  // At r = 0 the chain carries a second interface channel at k ~ pi/a. The
  // sharp interface couples it to the k ~ 0 one, and the two would-be
  // Majoranas gap out: an even Majorana count leaves nothing protected. The
  // signature of the doubling disease here is a *missing* zero mode, and the
  // regulator restores exactly one pair of near-zero levels.
  ModelParams model = junction_model();
  ParamPoint p{0.5 * pi, 0.0};
  const double cut = 0.05;  // gap units: max(Delta, m) = 1
  LatticeSpec with{120, 0.2, 1.0};
  LatticeSpec without{120, 0.2, 0.0};
  CHECK(near_zero_count(build_lattice(model, p, with).h, cut) == 2);
  CHECK(near_zero_count(build_lattice(model, p, without).h, cut) == 0);
  CHECK_THROWS_AS((void)zero_mode_numeric(build_lattice(model, p, without)),
                  NoZeroMode);
}

TEST_CASE("covariant sampler agrees with a direct solve at finite alpha") {
  ModelParams model = junction_model();
  LatticeSpec spec{120, 0.2, 1.0};
  auto sample = lattice_sampler(model, spec);
  NambuSpinor via_rotation = sample({0.5 * pi, 1.37});
  NambuSpinor direct = lattice_state_direct(model, {0.5 * pi, 1.37}, spec);
  const double ov = std::abs(inner_product(via_rotation, direct));
  CHECK(ov > 1.0 - 1e-10);
}

TEST_CASE("lattice FI restriction: spin weights balance and gamma_u -> pi") {
  ModelParams model = junction_model();
  LatticeSpec spec{200, 0.2, 1.0};
  auto fi = lattice_sampler(model, spec, Region::FI);
  NambuSpinor s = fi({0.5 * pi, 0.9});
  const double wu = std::real(inner_product(s, s, Sector::Electron));
  double w_up = 0.0, w_dn = 0.0;
  // Trapezoid weights are uniform in the interior; compare plain row norms.
  w_up = s.comps.row(0).squaredNorm();
  w_dn = s.comps.row(1).squaredNorm();
  const double asym = std::abs(w_up - w_dn) / (w_up + w_dn);
  // At theta = pi/2 the chain has an exact antiunitary mirror (1 x sigma_x) K
  // -- it survives the Wilson term and both chemical potentials -- which
  // pins the spin weights equal at any lattice spacing. The quantization
  // below is therefore exact, not merely O(a^2).
  CHECK(wu > 0.0);
  CHECK(asym < 1e-12);

  PhaseResult pr = path_phase(fi, alpha_loop(0.5 * pi, 100));
  CHECK(std::abs(pr.gamma_u - pi) < 1e-12);
  CHECK(std::abs(pr.gamma_u + pr.gamma_v) < 1e-12);
}

TEST_CASE("degenerate or delocalized configurations are refused") {
  ModelParams model = junction_model();
  // Out-of-plane magnetization leaves the FI side metallic: any near-zero
  // weight is extended, never an interface mode.
  LatticeSpec spec{200, 0.2, 1.0};
  CHECK_THROWS_AS(
      (void)zero_mode_numeric(build_lattice(model, {0.0, 0.0}, spec)),
      DomainError);
  // A chain much shorter than the decay depth cannot bind the state.
  LatticeSpec tiny{16, 0.1, 1.0};
  CHECK_THROWS_AS(
      (void)zero_mode_numeric(build_lattice(model, {0.5 * pi, 0.0}, tiny)),
      DomainError);
}
