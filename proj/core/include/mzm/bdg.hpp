#pragma once

#include <mzm/types.hpp>

namespace mzm {

// Basis and conventions
// ---------------------
// Nambu column Phi = (phi1, phi2, phi3, phi4) in the basis
//   Psi = (psi_up, psi_dn, psi_dn^dag, -psi_up^dag),
// chosen so that the magnetization enters both electron and hole blocks with
// the same sign and the s-wave pairing is a plain Delta * identity:
//
//   H(k) = [ v k sigma_z - mu + m.sigma        Delta * 1 ]
//          [ Delta * 1            -v k sigma_z + mu + m.sigma ]
//
// with m.sigma = m (sin t cos a, sin t sin a, cos t) . sigma. The kinetic
// term locks spin to momentum along sigma_z (the polar axis of the
// magnetization sphere), which is what makes the in-plane angle alpha act as
// a pure phase twist on the spin components.
//
// Particle-hole symmetry: Xi = C K with C = tau_y x sigma_y. C H^* C = -H
// holds exactly, including the magnetization (tested).
//
// Amplitude labels: gamma^dag = \int [u_up psi_up^dag + u_dn psi_dn^dag
// + v_up psi_up + v_dn psi_dn] gives
//   phi1 = u_up, phi2 = u_dn, phi3 = v_dn, phi4 = -v_up,
// and NambuSpinor stores (u_up, u_dn, v_up, v_dn). Self-conjugacy Xi psi =
// psi reads v_s = u_s^* in stored components.

Eigen::Matrix2cd pauli(int i);  // 0..3 -> 1, sx, sy, sz

// Momentum-space BdG matrix for a homogeneous region. FI: delta = 0,
// mu = mu_fi, magnetization on. SC: m = 0, mu = mu_sc, delta on.
Matrix4cd bdg_kernel(const ModelParams& model, const ParamPoint& point,
                     Region region, double k);

// Xi acting on a BdG column (C Phi^*).
Vector4cd ph_conj(const Vector4cd& phi);

// Xi acting on stored components: (u_up, u_dn, v_up, v_dn) ->
// (v_up^*, v_dn^*, u_up^*, u_dn^*), i.e. swap sectors and conjugate.
NambuSpinor ph_conj(const NambuSpinor& psi);

// Stored components <-> BdG column at one grid point.
Vector4cd to_bdg_column(const Vector4cd& stored);
Vector4cd from_bdg_column(const Vector4cd& phi);

// Trapezoidal <a|b> over the common grid (all four components or one sector).
// Throws GridMismatch if the grids differ.
cplx inner_product(const NambuSpinor& a, const NambuSpinor& b);
cplx inner_product(const NambuSpinor& a, const NambuSpinor& b, Sector s);

// Keep one sector, zero the other. Grid is shared, not copied.
NambuSpinor project(const NambuSpinor& psi, Sector s);

double norm(const NambuSpinor& psi);
NambuSpinor normalized(const NambuSpinor& psi);

// || Xi psi - psi || / || psi ||. Zero iff the state is its own conjugate.
double majorana_residual(const NambuSpinor& psi);

// Real-space BdG action H psi on a uniform grid, with the region selected by
// sign(x): x < 0 is FI, x >= 0 is SC. The derivative uses a 4th-order central
// stencil; one-sided points near the ends are left untouched and should be
// excluded by the caller (see zero_energy_residual).
NambuSpinor apply_bdg(const ModelParams& model, const ParamPoint& point,
                      const NambuSpinor& psi);

// || H psi || / || psi || restricted to interior points, excluding a stencil
// margin at the chain ends and a window |x| <= 2.5 h around the interface
// where the coefficient jump makes psi' discontinuous and any fixed-order
// stencil meaningless.
double zero_energy_residual(const ModelParams& model, const ParamPoint& point,
                            const NambuSpinor& psi);

} // namespace mzm
