#include <mzm/eigen_lapack.hpp>
#include <mzm/errors.hpp>
#include <mzm/evolution.hpp>

#include <algorithm>
#include <cmath>

namespace mzm {

EvolutionReport evolve(const Generator& h_of_t, const VectorXcd& psi0,
                       const Schedule& schedule, VectorXcd* final_state) {
  const int n_steps = schedule.steps;
  const double eps = schedule.dt();
  const double n0 = psi0.norm();

  VectorXcd psi = psi0 / n0;
  double drift = 0.0;
  for (int k = 0; k < n_steps; ++k) {
    const double t_mid = (k + 0.5) * eps;
    EighResult es = eigh(h_of_t(t_mid));  // throws NonHermitianGenerator
    VectorXcd coeff = es.vectors.adjoint() * psi;
    for (int i = 0; i < coeff.size(); ++i)
      coeff(i) *= std::polar(1.0, -es.values(i) * eps);
    psi = es.vectors * coeff;
    drift = std::max(drift, std::abs(psi.norm() - 1.0));
  }

  EvolutionReport rep;
  rep.steps = n_steps;
  rep.norm_drift = drift;
  rep.final_overlap = (psi0 / n0).dot(psi);
  if (std::abs(rep.final_overlap) < 1e-6)
    throw OverlapVanishes(
        "evolve: final overlap magnitude below 1e-6, the state left the "
        "tracked ray");
  rep.phi_total = std::arg(rep.final_overlap);

  // Sector return phases from the per-site BdG layout (u on components 0,1).
  cplx ov_u(0, 0), ov_v(0, 0);
  for (int j = 0; j < psi.size() / 4; ++j) {
    ov_u += std::conj(psi0(4 * j + 0) / n0) * psi(4 * j + 0) +
            std::conj(psi0(4 * j + 1) / n0) * psi(4 * j + 1);
    ov_v += std::conj(psi0(4 * j + 2) / n0) * psi(4 * j + 2) +
            std::conj(psi0(4 * j + 3) / n0) * psi(4 * j + 3);
  }
  rep.phi_u = std::arg(ov_u);
  rep.phi_v = std::arg(ov_v);
  if (final_state) *final_state = psi;
  return rep;
}

OverlapProductResult overlap_product(const Generator& h_of_t,
                                     const VectorXcd& psi_ref,
                                     const Schedule& schedule,
                                     int track_window) {
  const int n_steps = schedule.steps;
  const double eps = schedule.dt();

  OverlapProductResult res;
  res.value = cplx(1.0, 0.0);
  res.factors.reserve(n_steps);

  const VectorXcd ref = psi_ref.normalized();
  VectorXcd prev = ref;

  for (int k = 1; k <= n_steps; ++k) {
    EighResult es = eigh(h_of_t(k * eps));
    VectorXcd coeff = es.vectors.adjoint() * prev;

    // e^{-i H(t_k) eps} |m_{k-1}>, exact in the eigenbasis.
    VectorXcd propagated = coeff;
    for (int i = 0; i < propagated.size(); ++i)
      propagated(i) *= std::polar(1.0, -es.values(i) * eps);

    VectorXcd m_k;
    if (k == n_steps) {
      m_k = ref;  // close the chain on the reference state itself
    } else {
      // Normalized projection of m_{k-1} onto the near-zero window.
      std::vector<int> order(static_cast<size_t>(es.values.size()));
      for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
      std::sort(order.begin(), order.end(), [&](int a, int b) {
        return std::abs(es.values(a)) < std::abs(es.values(b));
      });
      const int window =
          std::min<int>(track_window, static_cast<int>(order.size()));
      VectorXcd kept = VectorXcd::Zero(prev.size());
      double weight2 = 0.0, dyn_dev = 0.0;
      for (int w = 0; w < window; ++w) {
        const int idx = order[w];
        const double p = std::norm(coeff(idx));
        kept += coeff(idx) * es.vectors.col(idx);
        weight2 += p;
        dyn_dev +=
            p * std::abs(std::polar(1.0, -es.values(idx) * eps) - 1.0);
      }
      const double mag = std::sqrt(weight2);
      res.min_overlap_mag = std::min(res.min_overlap_mag, mag);
      if (mag < 0.5)
        throw BasisDiscontinuity(
            "overlap_product: retained weight below 0.5 in the tracked "
            "window at step " + std::to_string(k));
      res.max_dyn_dev = std::max(res.max_dyn_dev, dyn_dev / weight2);
      m_k = kept / mag;
    }

    const cplx factor = m_k.dot(es.vectors * propagated);
    if (k == n_steps) {
      res.min_overlap_mag = std::min(res.min_overlap_mag, std::abs(factor));
      if (std::abs(factor) < 0.5)
        throw BasisDiscontinuity(
            "overlap_product: tracked state lost at loop closure");
    }
    res.factors.push_back(factor);
    res.value *= factor;
    prev = m_k;
  }
  return res;
}

} // namespace mzm
