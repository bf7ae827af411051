#pragma once

#include <mzm/junction.hpp>
#include <mzm/types.hpp>

namespace mzm {

// Sign convention
// ---------------
// The geometric phase of a sector chi along a parameter path is
//
//   gamma = + Im \int <chi | d/dR chi> / <chi | chi> dR,
//
// matching the exponent convention of the amplitude functions this library
// reports (an alpha loop at theta = pi/2 gives gamma_u = +pi for the
// interface-phased FI state). This is the OPPOSITE sign of the textbook
// Berry phase i <n | d n>; anyone comparing against that convention must
// flip signs. The discrete accumulator below, sum_k arg <chi_k | chi_{k+1}>,
// is the consistent discretization of the same convention.

// Discrete holonomy along a path of sampler states.
//  - Consecutive full spinors are Z2-aligned: the incoming state is negated
//    when Re <psi_k | psi_{k+1}> < 0. Overlaps of self-conjugate states are
//    exactly real, so this removes the only gauge freedom such samplers have.
//  - Closed paths append an aligned re-sample of the first point. Whether
//    that re-sample comes back negated (the frame is antiperiodic around the
//    loop) is booked in closure_flip, never folded into sector phases.
//  - sector selects which sector sums are accumulated and guarded:
//    Electron -> gamma_u, Hole -> gamma_v, Full -> both. gamma_total (the
//    full-spinor phase) is always accumulated. Unrequested sector fields
//    are left at zero.
//  - Guards: ZeroOverlap when a requested overlap magnitude falls below
//    1e-12, StepTooCoarse when a per-step |arg| reaches pi/2 or the full
//    overlap is too close to perpendicular for the Z2 alignment to mean
//    anything.
// The dynamical phase of a zero-energy state vanishes identically; the
// result keeps the field explicit (always 0) so reports can say so.
PhaseResult path_phase(const SpinorSampler& sample, const ParamPath& path,
                       Sector sector = Sector::Full);

// Full-spinor loop phase plus the Z2 closure parity.
struct TotalPhase {
  double gamma = 0.0;
  bool closure_flip = false;
};
TotalPhase total_spinor_phase(const SpinorSampler& sample,
                              const ParamPath& path);

// Berry connection components at `point` by central difference with spacing
// h in the given direction; the +/- samples are Z2-aligned against the
// center. Sector components are normalized by the sector norm, the total by
// the full norm.
enum class Dir { Theta, Alpha };
ConnectionSample connection(const SpinorSampler& sample,
                            const ParamPoint& point, Dir dir, double h);

// chi -> e^{i Theta(R)} chi. Closed-loop phases are invariant for any
// single-valued Theta (the per-step shifts telescope); a winding
// Theta = alpha shifts them by exactly 2 pi, invisible mod 2 pi.
SpinorSampler gauge_transform(const SpinorSampler& sample,
                              std::function<double(const ParamPoint&)> theta);

// Berry curvature from one gauge-invariant plaquette product,
//   B = arg[ <1|2><2|3><3|4><4|1> ] / delta^2,
// over a delta-sided square centered on the requested point (corners at
// theta +/- delta/2, alpha +/- delta/2), ordered alpha-leg first. Centering
// makes the estimator O(delta^2); per-corner phases and Z2 signs cancel in
// the cycle.
double curvature(const SpinorSampler& sample, const ParamPoint& point,
                 double delta, Sector sector);

// Loop phase around the boundary of a square patch vs the integrated
// curvature over its interior, same orientation as `curvature`.
struct StokesReport {
  double loop = 0.0;
  double integral = 0.0;
  double diff = 0.0;
};
StokesReport stokes_check(const SpinorSampler& sample, const ParamPoint& corner,
                          double side, Sector sector, int loop_steps = 400,
                          int cells = 10);

// Analytic two-level fixture: the lower eigenstate of m-hat . sigma embedded
// in the electron sector of a trivial two-site grid (hole components are
// identically zero, so hole-sector requests trip ZeroOverlap by design).
// Closed forms: alpha-loop phase pi (1 - cos theta), curvature -sin(theta)/2.
SpinorSampler two_level_sampler();

// Path builders. Loops do not duplicate the start point; path_phase closes
// them itself.
ParamPath alpha_loop(double theta, int steps);
// theta(s) = theta0 + wobble * sin s, alpha(s) = s, s in [0, 2 pi).
ParamPath modulated_loop(double theta0, double wobble, int steps);

} // namespace mzm
