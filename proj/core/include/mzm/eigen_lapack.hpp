#pragma once

#include <mzm/types.hpp>

namespace mzm {

struct EighResult {
  VectorXd values;   // ascending
  MatrixXcd vectors; // columns
};

// Dense Hermitian eigensolve (divide and conquer). The input is symmetrized
// as (A + A^dag)/2 before the call; a residual Hermiticity defect beyond
// `herm_tol` throws NonHermitianGenerator since it signals a broken builder,
// not roundoff.
EighResult eigh(const MatrixXcd& a, double herm_tol = 1e-10);

} // namespace mzm
