#include <mzm/bdg.hpp>
#include <mzm/errors.hpp>

#include <cmath>

namespace mzm {

GridPtr make_uniform_grid(double x_min, double x_max, int n) {
  auto g = std::make_shared<VectorXd>(n);
  const double h = (x_max - x_min) / (n - 1);
  for (int j = 0; j < n; ++j) (*g)[j] = x_min + j * h;
  return g;
}

Eigen::Matrix2cd pauli(int i) {
  Eigen::Matrix2cd s = Eigen::Matrix2cd::Zero();
  const cplx I(0.0, 1.0);
  switch (i) {
    case 0: s << 1, 0, 0, 1; break;
    case 1: s << 0, 1, 1, 0; break;
    case 2: s << 0, -I, I, 0; break;
    case 3: s << 1, 0, 0, -1; break;
  }
  return s;
}

Matrix4cd bdg_kernel(const ModelParams& model, const ParamPoint& point,
                     Region region, double k) {
  const double v = model.hbar * model.v_f;
  const double mu = (region == Region::FI) ? model.mu_fi : model.mu_sc;
  const double m = (region == Region::FI) ? model.m : 0.0;
  const double delta = (region == Region::FI) ? 0.0 : model.delta;

  Eigen::Matrix2cd msigma =
      m * (std::sin(point.theta) * std::cos(point.alpha) * pauli(1) +
           std::sin(point.theta) * std::sin(point.alpha) * pauli(2) +
           std::cos(point.theta) * pauli(3));
  Eigen::Matrix2cd kin = v * k * pauli(3);
  Eigen::Matrix2cd id = pauli(0);

  Matrix4cd h = Matrix4cd::Zero();
  h.block<2, 2>(0, 0) = kin - mu * id + msigma;
  h.block<2, 2>(2, 2) = -kin + mu * id + msigma;
  h.block<2, 2>(0, 2) = delta * id;
  h.block<2, 2>(2, 0) = delta * id;
  return h;
}

Vector4cd ph_conj(const Vector4cd& phi) {
  // C = tau_y x sigma_y acting on the conjugate column.
  Vector4cd out;
  out(0) = -std::conj(phi(3));
  out(1) = std::conj(phi(2));
  out(2) = std::conj(phi(1));
  out(3) = -std::conj(phi(0));
  return out;
}

NambuSpinor ph_conj(const NambuSpinor& psi) {
  NambuSpinor out;
  out.grid = psi.grid;
  out.comps.resize(4, psi.size());
  out.comps.row(0) = psi.comps.row(2).conjugate();
  out.comps.row(1) = psi.comps.row(3).conjugate();
  out.comps.row(2) = psi.comps.row(0).conjugate();
  out.comps.row(3) = psi.comps.row(1).conjugate();
  return out;
}

Vector4cd to_bdg_column(const Vector4cd& stored) {
  Vector4cd phi;
  phi << stored(0), stored(1), stored(3), -stored(2);
  return phi;
}

Vector4cd from_bdg_column(const Vector4cd& phi) {
  Vector4cd stored;
  stored << phi(0), phi(1), -phi(3), phi(2);
  return stored;
}

namespace {

void require_same_grid(const NambuSpinor& a, const NambuSpinor& b) {
  if (a.grid == b.grid) return;  // shared grid, common fast path
  if (!a.grid || !b.grid || a.grid->size() != b.grid->size() ||
      !a.grid->isApprox(*b.grid))
    throw GridMismatch("inner_product: spinors live on different grids");
}

// Trapezoid weights on a (possibly nonuniform) grid.
double trap_weight(const VectorXd& x, int j) {
  const int n = static_cast<int>(x.size());
  if (j == 0) return 0.5 * (x[1] - x[0]);
  if (j == n - 1) return 0.5 * (x[n - 1] - x[n - 2]);
  return 0.5 * (x[j + 1] - x[j - 1]);
}

cplx weighted_dot(const NambuSpinor& a, const NambuSpinor& b, int r0, int r1) {
  const VectorXd& x = *a.grid;
  cplx acc(0.0, 0.0);
  for (int j = 0; j < a.size(); ++j) {
    cplx s(0.0, 0.0);
    for (int r = r0; r <= r1; ++r)
      s += std::conj(a.comps(r, j)) * b.comps(r, j);
    acc += trap_weight(x, j) * s;
  }
  return acc;
}

} // namespace

cplx inner_product(const NambuSpinor& a, const NambuSpinor& b) {
  require_same_grid(a, b);
  return weighted_dot(a, b, 0, 3);
}

cplx inner_product(const NambuSpinor& a, const NambuSpinor& b, Sector s) {
  require_same_grid(a, b);
  switch (s) {
    case Sector::Electron: return weighted_dot(a, b, 0, 1);
    case Sector::Hole: return weighted_dot(a, b, 2, 3);
    default: return weighted_dot(a, b, 0, 3);
  }
}

NambuSpinor project(const NambuSpinor& psi, Sector s) {
  NambuSpinor out;
  out.grid = psi.grid;
  out.comps = psi.comps;
  if (s == Sector::Electron) {
    out.comps.row(2).setZero();
    out.comps.row(3).setZero();
  } else if (s == Sector::Hole) {
    out.comps.row(0).setZero();
    out.comps.row(1).setZero();
  }
  return out;
}

double norm(const NambuSpinor& psi) {
  return std::sqrt(std::real(inner_product(psi, psi)));
}

NambuSpinor normalized(const NambuSpinor& psi) {
  NambuSpinor out;
  out.grid = psi.grid;
  const double n = norm(psi);
  out.comps = psi.comps / n;
  return out;
}

double majorana_residual(const NambuSpinor& psi) {
  NambuSpinor xi = ph_conj(psi);
  xi.comps -= psi.comps;
  return norm(xi) / norm(psi);
}

NambuSpinor apply_bdg(const ModelParams& model, const ParamPoint& point,
                      const NambuSpinor& psi) {
  const VectorXd& x = *psi.grid;
  const int n = psi.size();
  const double h = x[1] - x[0];
  const double v = model.hbar * model.v_f;

  NambuSpinor out;
  out.grid = psi.grid;
  out.comps.setZero(4, n);

  // BdG columns site by site; derivative on stored components first.
  Eigen::Matrix<cplx, 4, Eigen::Dynamic> dpsi(4, n);
  dpsi.setZero();
  for (int j = 2; j < n - 2; ++j) {
    dpsi.col(j) = (-psi.comps.col(j + 2) + 8.0 * psi.comps.col(j + 1) -
                   8.0 * psi.comps.col(j - 1) + psi.comps.col(j - 2)) /
                  (12.0 * h);
  }

  const cplx I(0.0, 1.0);
  for (int j = 0; j < n; ++j) {
    const Region region = (x[j] < 0.0) ? Region::FI : Region::SC;
    Matrix4cd h0 = bdg_kernel(model, point, region, 0.0);
    // v k sigma_z with k = -i d/dx, sign flipped in the hole block.
    Vector4cd phi = to_bdg_column(psi.comps.col(j));
    Vector4cd dphi = to_bdg_column(dpsi.col(j));
    Vector4cd hphi = h0 * phi;
    hphi(0) += -I * v * dphi(0);
    hphi(1) += +I * v * dphi(1);
    hphi(2) += +I * v * dphi(2);
    hphi(3) += -I * v * dphi(3);
    out.comps.col(j) = from_bdg_column(hphi);
  }
  return out;
}

double zero_energy_residual(const ModelParams& model, const ParamPoint& point,
                            const NambuSpinor& psi) {
  const VectorXd& x = *psi.grid;
  const int n = psi.size();
  const double h = x[1] - x[0];
  NambuSpinor hpsi = apply_bdg(model, point, psi);

  double num = 0.0, den = 0.0;
  for (int j = 3; j < n - 3; ++j) {
    if (std::abs(x[j]) <= 2.5 * h) continue;  // psi' jumps at the interface
    const double w = trap_weight(x, j);
    num += w * hpsi.comps.col(j).squaredNorm();
    den += w * psi.comps.col(j).squaredNorm();
  }
  return std::sqrt(num / den);
}

} // namespace mzm
