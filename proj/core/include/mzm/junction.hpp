#pragma once

#include <mzm/types.hpp>

#include <functional>

namespace mzm {

// FI/SC interface at x = 0: ferromagnetic insulator on x < 0 (gap from the
// in-plane magnetization), s-wave superconductor on x > 0 (gap Delta). A
// single zero-energy state binds to the interface; its electron and hole
// amplitudes inherit the magnetization angles (theta, alpha) in a way the
// samplers below expose to the holonomy layer.

// Interface scales. Throws DegenerateInPlane when m sin theta = 0 and
// EvanescentConditionViolated when |mu_fi| >= m |sin theta| (no common decay
// window for both spin components).
DerivedParams derived_params(const ModelParams& model, const ParamPoint& point);

// Zero-energy evanescent channels of one homogeneous region, from the linear
// pencil H(k) = H0 + k H1 (H1 = v tau_z sigma_z is invertible, so the
// k-eigenproblem is -H1^{-1} H0). The pencil decouples into exact 2x2 blocks
// (electron/hole in the FI where Delta = 0, spin pairs in the SC where m = 0),
// which is also what keeps the doubly degenerate SC case (mu_sc = 0)
// well-posed. Convention: psi ~ chi e^{lambda x}; FI keeps Re lambda > 0
// (decay toward -inf), SC keeps Re lambda < 0. Deterministic spinor phases
// (first significant component real positive). Does not pre-validate
// parameters: an empty decaying set throws NoDecayingMode.
std::vector<EvanescentMode> evanescent_modes(const ModelParams& model,
                                             const ParamPoint& point,
                                             Region region);

// Matched interface solution. Coefficients are tied by self-conjugacy:
// FI side a chi_e e^{l_e x} + a* chi_h e^{l_h x} with chi_h = C chi_e^*,
// SC side c chi_A e^{l_A x} + i c* chi_B e^{l_B x} with chi_B = -i C chi_A^*.
// Continuity at x = 0 is an 8x4 real-linear system in (Re a, Im a, Re c,
// Im c); its one-dimensional null space is the bound state. Guards: smallest
// singular value must be < 1e-8 of the largest (else NoZeroMode) and the
// second-smallest must exceed 10x the smallest (else DegenerateZeroMode).
// The null vector's overall real sign is fixed by the sign rule
// Re a > 0 (ties broken by Im a, then the SC coefficient).
struct InterfaceSolution {
  cplx a, c;
  EvanescentMode e, h, A, B;
  double match_residual = 0.0;
  DerivedParams derived;
};

InterfaceSolution match_interface(const ModelParams& model,
                                  const ParamPoint& point);

// Uniform grid spanning `lengths` decay depths on each side of the interface.
GridPtr junction_grid(const ModelParams& model, const ParamPoint& point,
                      int n = 4001, double lengths = 12.0);
GridPtr region_grid(const ModelParams& model, const ParamPoint& point,
                    Region region, int n = 2001, double lengths = 12.0);

// Matched state evaluated on a grid, unit-normalized. Invariants:
// match_residual < 1e-10, majorana_res < 1e-8.
BoundState bound_state(const ModelParams& model, const ParamPoint& point,
                       const GridPtr& grid);

// A sampler is a pure map from a parameter point to a spinor on a fixed
// grid; all holonomy routines consume samplers.
using SpinorSampler = std::function<NambuSpinor(const ParamPoint&)>;

// Full junction state in the self-conjugate gauge with the deterministic
// sign rule. Pointwise alpha-periodic (the interface coefficients half-wind
// with alpha; the sign rule absorbs the Z2 flip at alpha -> alpha + 2 pi).
SpinorSampler sampler(const ModelParams& model, const GridPtr& grid);

// Restrictions of the interface state to one side, on a grid that lives
// entirely in that region.
//  - FI: interface-phased gauge. u is rotated by e^{-i theta0} and v by
//    e^{+i theta0} with theta0 = arg u_up(0-). This keeps v = u^* (a valid
//    zero mode of the Delta = 0 region) while pinning u_up(0-) real positive,
//    so the electron sector exposes its full alpha winding: gamma_u = +pi,
//    gamma_v = -pi over one alpha loop.
//  - SC: raw self-conjugate gauge. The two tied channels carry equal weight
//    pointwise, making every parallel-transport overlap real: both sector
//    phases vanish identically.
SpinorSampler region_sampler(const ModelParams& model, const GridPtr& grid,
                             Region region);

} // namespace mzm
