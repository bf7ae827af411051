#pragma once

#include <mzm/junction.hpp>
#include <mzm/types.hpp>

namespace mzm {

// Independent discretization of the junction: a finite chain with 4 BdG
// components per site, central-difference kinetics v sin(ka)/a, and a Wilson
// regulator W(k) = (r/a)(1 - cos ka) acting in the pairing channel
// (tau_x x 1). That channel choice matters for three reasons:
//  - C (tau_x x 1)^* C = -(tau_x x 1): particle-hole symmetry stays exact at
//    any a, so the spectrum pairs +/-E to machine precision;
//  - it anticommutes with the kinetic matrix tau_z x sigma_z, gapping the
//    k = pi/a doublers by 2r/a (wilson_r = 0 restores them: negative control);
//  - it commutes with the rotation generator J = (1 x sigma_z)/2, so
//      H(theta, alpha) = e^{-i alpha J} H(theta, 0) e^{+i alpha J}
//    holds exactly on the lattice. The sampler exploits this: one eigensolve
//    per theta, then exact diagonal rotations per alpha. (In the FI region
//    the regulator reads as a spin-symmetric O(a k^2) induced pairing whose
//    backreaction on the spinor structure is second order.)
LatticeHamiltonian build_lattice(const ModelParams& model,
                                 const ParamPoint& point,
                                 const LatticeSpec& spec);

// Interface zero mode from a dense eigensolve.
//  - The near-zero cluster (|E| < 0.05 in gap units) always has even size on
//    a finite chain; the interface mode pairs with a far-wall partner, and a
//    degenerate solver may hand back arbitrary mixtures of the two. The mode
//    is therefore chosen by rotating within the cluster subspace to maximize
//    the weight inside the interface window (10 decay lengths).
//  - The selected vector is then gauge-fixed to its self-conjugate form,
//    psi -> e^{i delta} psi with delta = arg<psi|Xi psi>/2, and the overall
//    sign pinned by Re u_up at the last FI site.
// Throws NoZeroMode (empty cluster), NoLocalizedZeroMode (best cluster
// vector keeps < 0.8 of its weight near the interface).
ZeroModeReport zero_mode_numeric(const LatticeHamiltonian& lat);

// Pure-map sampler over (theta, alpha) backed by the chain. One eigensolve
// per distinct theta (memoized), exact J-rotation per alpha; the rotation
// preserves the self-conjugate gauge (C J C = -J), so only the sign rule is
// re-applied per point. With a region:
//  - FI: restriction to x < 0 sites, interface-phased at the last FI site
//    (same gauge as the analytic FI restriction);
//  - SC: raw restriction to x > 0 sites.
SpinorSampler lattice_sampler(const ModelParams& model, const LatticeSpec& spec);
SpinorSampler lattice_sampler(const ModelParams& model, const LatticeSpec& spec,
                              Region region);

// Direct per-point solve (no covariance shortcut); used to cross-check the
// rotated states. Expensive: one dense eigensolve per call.
NambuSpinor lattice_state_direct(const ModelParams& model,
                                 const ParamPoint& point,
                                 const LatticeSpec& spec);

} // namespace mzm
