#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <mzm/bdg.hpp>
#include <mzm/eigen_lapack.hpp>
#include <mzm/errors.hpp>
#include <mzm/evolution.hpp>
#include <mzm/lattice.hpp>

#include <cmath>

using namespace mzm;

namespace {

double circ_dist(double a, double b) {
  return std::abs(std::remainder(a - b, 2.0 * pi));
}

ModelParams junction_model() {
  ModelParams model;
  model.mu_fi = 0.3;
  model.mu_sc = 0.1;
  return model;
}

VectorXcd to_chain(const NambuSpinor& mode) {
  VectorXcd psi(4 * mode.size());
  for (int j = 0; j < mode.size(); ++j)
    psi.segment<4>(4 * j) = to_bdg_column(Vector4cd(mode.comps.col(j)));
  return psi;
}

// Generator of the rotating in-plane magnetization: one eigensolve per theta
// would be wasteful here, so rebuild per call (test-sized chains only).
Generator rotating_junction(const ModelParams& model, const LatticeSpec& spec,
                            double theta, double period) {
  return [=](double t) {
    return build_lattice(model, {theta, 2.0 * pi * t / period}, spec).h;
  };
}

// J = (1 x sigma_z)/2 on the chain: generates the alpha rotation exactly.
VectorXd rotation_charges(int n_sites) {
  VectorXd q(4 * n_sites);
  for (int j = 0; j < n_sites; ++j) {
    q(4 * j + 0) = 0.5;
    q(4 * j + 1) = -0.5;
    q(4 * j + 2) = 0.5;
    q(4 * j + 3) = -0.5;
  }
  return q;
}

} // namespace

TEST_CASE("stepper against the exact rotating-frame solution") {
  // For alpha(t) = omega t the comoving frame is static:
  //   psi(T) = e^{-i 2 pi J} e^{-i (H(0) - omega J) T} psi(0),
  // and e^{-i 2 pi J} = -1 since J has half-integer charges. This closed form
  // checks the stepper against an independent matrix exponential.
  ModelParams model = junction_model();
  LatticeSpec spec{32, 0.4, 1.0};
  const double T = 12.0;
  Generator gen = rotating_junction(model, spec, 0.5 * pi, T);

  // A normalized interface-centered packet with all four components filled.
  const int dim = 4 * spec.n_sites;
  VectorXcd psi0(dim);
  for (int j = 0; j < spec.n_sites; ++j) {
    const double x = spec.site_x(j);
    const double env = std::exp(-0.5 * x * x);
    psi0.segment<4>(4 * j) << env, 0.6 * env * cplx(0.0, 1.0), -0.3 * env,
        env * cplx(0.2, 0.1);
  }
  psi0.normalize();

  MatrixXcd heff = build_lattice(model, {0.5 * pi, 0.0}, spec).h;
  const VectorXd q = rotation_charges(spec.n_sites);
  heff -= (2.0 * pi / T) * MatrixXcd(q.cast<cplx>().asDiagonal());
  EighResult es = eigh(heff);
  VectorXcd coeff = es.vectors.adjoint() * psi0;
  for (int i = 0; i < coeff.size(); ++i)
    coeff(i) *= std::exp(cplx(0.0, -es.values(i) * T));
  VectorXcd exact = -(es.vectors * coeff);

  VectorXcd stepped;
  auto err = [&](int steps) {
    EvolutionReport rep = evolve(gen, psi0, Schedule{T, steps}, &stepped);
    CHECK(rep.norm_drift < 1e-12);
    return (stepped - exact).norm();
  };
  const double e1 = err(300);
  const double e2 = err(600);
  MESSAGE("rotating-frame errors: ", e1, " ", e2);
  CHECK(e2 < 1e-3);
  CHECK(e1 / e2 > 3.0);  // midpoint rule: halving the step gains ~4x
}

TEST_CASE("slow pump returns the zero mode with phase pi in both sectors") {
  ModelParams model = junction_model();
  LatticeSpec spec{64, 0.3, 1.0};
  ZeroModeReport zm =
      zero_mode_numeric(build_lattice(model, {0.5 * pi, 0.0}, spec));
  VectorXcd psi0 = to_chain(zm.mode);
  psi0.normalize();
  const double T = 150.0;
  EvolutionReport rep =
      evolve(rotating_junction(model, spec, 0.5 * pi, T), psi0,
             Schedule{T, 600});
  CHECK(std::abs(rep.final_overlap) > 0.98);
  CHECK(rep.norm_drift < 1e-11);
  MESSAGE("phi_u = ", rep.phi_u, "  phi_v = ", rep.phi_v);
  CHECK(circ_dist(rep.phi_u, pi) < 0.1);
  CHECK(circ_dist(rep.phi_v, -pi) < 0.1);
  CHECK(circ_dist(rep.phi_total, pi) < 0.1);
}

TEST_CASE("overlap product: trivial for a static Hamiltonian") {
  ModelParams model = junction_model();
  LatticeSpec spec{80, 0.4, 1.0};
  MatrixXcd h = build_lattice(model, {0.5 * pi, 0.0}, spec).h;
  ZeroModeReport zm = zero_mode_numeric(build_lattice(model, {0.5 * pi, 0.0}, spec));
  VectorXcd ref = to_chain(zm.mode);
  ref.normalize();
  Generator gen = [&h](double) { return h; };
  OverlapProductResult r = overlap_product(gen, ref, Schedule{10.0, 20});
  CHECK(std::abs(r.value - cplx(1.0, 0.0)) < 1e-6);
  CHECK(r.min_overlap_mag > 1.0 - 1e-10);
  CHECK(r.max_dyn_dev < 1e-5);
}

TEST_CASE("overlap product around the pump: pure Z2 holonomy, no dynamics") {
  ModelParams model = junction_model();
  LatticeSpec spec{80, 0.4, 1.0};
  ZeroModeReport zm =
      zero_mode_numeric(build_lattice(model, {0.5 * pi, 0.0}, spec));
  VectorXcd ref = to_chain(zm.mode);
  ref.normalize();
  const double T = 50.0;
  OverlapProductResult r = overlap_product(
      rotating_junction(model, spec, 0.5 * pi, T), ref, Schedule{T, 200});
  MESSAGE("|value| = ", std::abs(r.value), " arg = ", std::arg(r.value),
          " dyn dev = ", r.max_dyn_dev);
  CHECK(circ_dist(std::arg(r.value), pi) < 0.05);
  CHECK(r.min_overlap_mag > 0.99);
  // The tracked state never leaves the zero-energy window: the dynamical
  // factors stay at unity and the pi above is geometric.
  CHECK(r.max_dyn_dev < 1e-4);
  CHECK(static_cast<int>(r.factors.size()) == 200);
}

TEST_CASE("guard: non-Hermitian generators are rejected") {
  MatrixXcd bad = MatrixXcd::Zero(4, 4);
  bad(0, 1) = 1.0;  // no conjugate partner
  VectorXcd psi0 = VectorXcd::Unit(4, 0);
  Generator gen = [&bad](double) { return bad; };
  CHECK_THROWS_AS((void)evolve(gen, psi0, Schedule{1.0, 10}),
                  NonHermitianGenerator);
}

TEST_CASE("guard: a quarter-period spin flip destroys the return overlap") {
  MatrixXcd h = MatrixXcd::Zero(4, 4);
  h(0, 1) = h(1, 0) = 1.0;
  h(2, 3) = h(3, 2) = 1.0;
  VectorXcd psi0 = VectorXcd::Unit(4, 0);
  Generator gen = [&h](double) { return h; };
  CHECK_THROWS_AS((void)evolve(gen, psi0, Schedule{0.5 * pi, 64}),
                  OverlapVanishes);
}

TEST_CASE("guard: reference must be an eigenstate; coarse tracking is refused") {
  ModelParams model = junction_model();
  LatticeSpec spec{80, 0.4, 1.0};
  ZeroModeReport zm =
      zero_mode_numeric(build_lattice(model, {0.5 * pi, 0.0}, spec));
  VectorXcd ref = to_chain(zm.mode);
  ref.normalize();
  const double T = 50.0;
  Generator gen = rotating_junction(model, spec, 0.5 * pi, T);

  VectorXcd garbage = VectorXcd::Random(4 * spec.n_sites).normalized();
  CHECK_THROWS_AS((void)overlap_product(gen, garbage, Schedule{T, 100}),
                  BasisDiscontinuity);
  // Two samples per loop put consecutive zero modes at alpha and alpha+pi:
  // orthogonal, untrackable.
  CHECK_THROWS_AS((void)overlap_product(gen, ref, Schedule{T, 2}),
                  BasisDiscontinuity);
}
