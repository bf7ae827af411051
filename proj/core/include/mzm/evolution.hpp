#pragma once

#include <mzm/types.hpp>

#include <functional>

namespace mzm {

// Time-dependent generator on the chain, t -> H(t) (dense Hermitian).
using Generator = std::function<MatrixXcd(double)>;

// Nonadiabatic evolution by exact exponentials of the midpoint-frozen
// generator: psi_{k+1} = exp(-i H(t_k + eps/2) eps) psi_k, each exponential
// through a dense spectral decomposition. The stepping error is O(eps^2) in
// the generator's time variation; the per-step map is exactly unitary, so the
// norm drift it reports is pure roundoff (~1e-15), kept as an invariant
// check rather than a convergence knob.
//
// Guards: a non-Hermitian H(t) throws NonHermitianGenerator (checked every
// step); a final overlap magnitude below 1e-6 throws OverlapVanishes. The
// overlap may legitimately pass through zero mid-loop (it does, at the
// antipodal point of a magnetization loop), so only the final value is
// guarded.
EvolutionReport evolve(const Generator& h_of_t, const VectorXcd& psi0,
                       const Schedule& schedule,
                       VectorXcd* final_state = nullptr);

// Product of propagator matrix elements along a chain of states transported
// through the low-energy subspace:
//
//   value = prod_k <m_k| e^{-i H(t_k) eps} |m_{k-1}>,   m_0 = psi_ref,
//
// where m_k (k < N) is the normalized projection of m_{k-1} onto the span of
// the `track_window` eigenstates of H(t_k) nearest zero energy, and m_N is
// psi_ref itself, closing the chain. The window must cover exactly the
// protected subspace -- the +/-E pair of a single Majorana mode, hence the
// default of 2. Widening it into the quasi-continuum is counterproductive:
// gap-edge levels reshuffle between steps and bleed the retained weight. Projection transport carries no
// eigenvector phase freedom -- each m_k inherits its phase from m_{k-1} --
// which matters for a Majorana mode: once the exponentially small +/-E
// splitting is resolved, single eigenvectors are equal mixtures of the
// interface mode and its far partner, and eigenvector tracking would shed
// 1/sqrt(2) per step. Subspace transport follows the self-conjugate state
// itself. Each propagator factor is evaluated exactly in the full eigenbasis.
//
// For an adiabatic pump of a zero mode, |value| is 1 up to subspace leakage
// and arg(value) is the geometric phase (pi for one magnetization loop);
// max_dyn_dev records the amplitude-weighted distance of the within-window
// dynamical factors from unity, i.e. how little dynamical phase the chain
// could have accumulated. Retained weight below 0.5 at any step throws
// BasisDiscontinuity (this also rejects a psi_ref outside the low-energy
// subspace of H(0)).
OverlapProductResult overlap_product(const Generator& h_of_t,
                                     const VectorXcd& psi_ref,
                                     const Schedule& schedule,
                                     int track_window = 2);

} // namespace mzm
