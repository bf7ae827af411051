#pragma once

#include <Eigen/Dense>
#include <complex>
#include <memory>
#include <vector>

namespace mzm {

using cplx = std::complex<double>;
using Eigen::Matrix4cd;
using Eigen::MatrixXcd;
using Eigen::Vector2cd;
using Eigen::Vector4cd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

inline constexpr double pi = 3.141592653589793238462643383279502884;

// Natural units throughout: hbar = v_f = 1, energies in units of the SC gap
// Delta, lengths in hbar v_f / Delta. The fields are kept so formulas read
// like the physics, but the library fixes them to 1.
struct ModelParams {
  double v_f = 1.0;
  double hbar = 1.0;
  double mu_fi = 0.0;  // chemical potential, ferromagnetic-insulator side
  double mu_sc = 0.0;  // chemical potential, superconducting side
  double m = 1.0;      // magnetization magnitude (FI side)
  double delta = 1.0;  // s-wave pair potential (SC side)
};

// A point on the magnetization sphere: m-hat = (sin t cos a, sin t sin a, cos t).
struct ParamPoint {
  double theta = 0.0;
  double alpha = 0.0;
};

struct ParamPath {
  std::vector<ParamPoint> points;
  bool closed = false;
};

enum class Sector { Electron, Hole, Full };

enum class Region { FI, SC };

// Shared immutable spatial grid. Spinors sampled along a parameter path all
// point at the same grid, so compatibility checks are pointer-fast.
using GridPtr = std::shared_ptr<const VectorXd>;

GridPtr make_uniform_grid(double x_min, double x_max, int n);

// Bogoliubov quasiparticle amplitudes on a grid, stored row-wise as
// (u_up, u_dn, v_up, v_dn). The labels follow
//   gamma^dag = \int dx [ u_up psi_up^dag + u_dn psi_dn^dag
//                       + v_up psi_up    + v_dn psi_dn ],
// so the self-conjugacy (Majorana) condition is simply v_s = u_s^*.
struct NambuSpinor {
  GridPtr grid;
  Eigen::Matrix<cplx, 4, Eigen::Dynamic> comps;

  int size() const { return static_cast<int>(comps.cols()); }
};

// Scales of the interface problem, all in natural units.
struct DerivedParams {
  double m_par = 0.0;   // in-plane magnetization m |sin theta|
  double k_f = 0.0;     // FI transverse momentum sqrt(m_par^2 - mu_fi^2)
  double phi = 0.0;     // FI spin-locking offset, e^{i phi} = (mu_fi + i k_f)/m_par
  double k_m = 0.0;     // FI oscillation m cos theta
  double kappa_sc = 0.0; // SC decay Delta / (hbar v_f)
  double k_m_sc = 0.0;  // SC oscillation |mu_sc| / (hbar v_f)
};

// One evanescent channel: psi(x) ~ chi e^{+lambda x} (FI, x<0, Re lambda > 0)
// or chi e^{+lambda x} with Re lambda < 0 (SC, x>0).
struct EvanescentMode {
  cplx lambda;
  Vector4cd chi;   // BdG column ordering (phi1..phi4)
  Region region;
};

// Matched interface zero mode. Invariants established by the solver:
//   match_residual  : interface continuity, < 1e-10
//   majorana_res    : || Xi psi - psi || / || psi ||, < 1e-8
struct BoundState {
  NambuSpinor state;
  Vector2cd coeff_fi;   // electron/hole FI channel coefficients (a, a^*)
  Vector2cd coeff_sc;   // SC channel coefficients (c, i c^*)
  double match_residual = 0.0;
  double majorana_res = 0.0;
  DerivedParams derived;
};

// Per-step record from a discrete holonomy walk.
struct StepDiag {
  double arg_u = 0.0;
  double arg_v = 0.0;
  double mag_u = 0.0;      // |<u_k|u_{k+1}>| after alignment
  double mag_v = 0.0;
  bool sign_flip = false;  // Z2 alignment flipped the incoming frame
};

// Sector-resolved geometric phases of one path. `dynamical` is identically
// zero for zero-energy states and is kept explicit so downstream reports can
// state that the phases are purely geometric.
struct PhaseResult {
  double gamma_u = 0.0;
  double gamma_v = 0.0;
  double gamma_total = 0.0;
  double dynamical = 0.0;
  bool closure_flip = false;  // Z2 parity of a closed walk (antiperiodic frame)
  double max_step_arg = 0.0;
  std::vector<StepDiag> steps;
};

// Berry-connection components at one parameter point (one direction).
struct ConnectionSample {
  cplx a_u;
  cplx a_v;
  cplx a_total;
};

/// Finite chain: n_sites sites with spacing a, interface between sites
// n_sites/2 - 1 and n_sites/2 (x = 0 falls mid-bond, no site sits on it).
struct LatticeSpec {
  int n_sites = 400;
  double a = 0.1;
  double wilson_r = 1.0;

  double site_x(int j) const { return (j - n_sites / 2 + 0.5) * a; }
  int interface_site() const { return n_sites / 2 - 1; }  // last FI site
};

struct LatticeHamiltonian {
  MatrixXcd h;
  LatticeSpec spec;
  ModelParams model;
  ParamPoint point;
};

struct ZeroModeReport {
  double energy = 0.0;       // residual ||H psi||; bounds the mode splitting
  NambuSpinor mode;
  double gap_ratio = 0.0;    // first |E| outside the cluster over the residual
  double localization = 0.0; // weight within 10 decay lengths of the interface
  int n_zero = 0;            // size of the near-zero cluster
};

// Time grid for nonadiabatic evolution: N uniform steps over [0, T].
struct Schedule {
  double total_time = 800.0;
  int steps = 3200;

  double dt() const { return total_time / steps; }
};

struct EvolutionReport {
  cplx final_overlap;     // <psi(0)|psi(T)>
  double phi_total = 0.0; // arg of final_overlap
  double phi_u = 0.0;     // electron-sector return phase arg<u(0)|u(T)>
  double phi_v = 0.0;
  double norm_drift = 0.0;
  int steps = 0;
};

struct OverlapProductResult {
  cplx value;
  std::vector<cplx> factors;
  double min_overlap_mag = 1.0;
  // max_k |e^{-i E_k eps} - 1| over the tracked chain: how far the followed
  // state is from accumulating any dynamical phase at all.
  double max_dyn_dev = 0.0;
};

} // namespace mzm
