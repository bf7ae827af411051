#include <mzm/eigen_lapack.hpp>
#include <mzm/errors.hpp>

#include <lapacke.h>

namespace mzm {

EighResult eigh(const MatrixXcd& a, double herm_tol) {
  const int n = static_cast<int>(a.rows());
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  const double defect = (a - a.adjoint()).cwiseAbs().maxCoeff();
  if (defect > herm_tol * scale)
    throw NonHermitianGenerator("eigh: matrix is not Hermitian (defect " +
                                std::to_string(defect) + ")");

  EighResult r;
  r.vectors = 0.5 * (a + a.adjoint());
  r.values.resize(n);
  // Eigen stores column-major, which is LAPACK's native layout.
  int info = LAPACKE_zheevd(
      LAPACK_COL_MAJOR, 'V', 'L', n,
      reinterpret_cast<lapack_complex_double*>(r.vectors.data()), n,
      r.values.data());
  if (info != 0)
    throw NumericalGuardError("eigh: zheevd failed with info " +
                              std::to_string(info));
  return r;
}

} // namespace mzm
