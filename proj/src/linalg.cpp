#include "pscheb/linalg.hpp"

#include <complex>
#include <string>
#include <vector>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include "pscheb/errors.hpp"

namespace pscheb {

RVector singular_values(const CMatrix& a) {
  const lapack_int m = static_cast<lapack_int>(a.rows());
  const lapack_int n = static_cast<lapack_int>(a.cols());
  const lapack_int k = std::min(m, n);
  RVector s(k);
  if (k == 0) return s;
  CMatrix work = a;  // zgesvd overwrites its input
  std::vector<double> superb(std::max<lapack_int>(k - 1, 1));
  const lapack_int info = LAPACKE_zgesvd(
      LAPACK_COL_MAJOR, 'N', 'N', m, n,
      work.data(), m, s.data(),
      nullptr, 1, nullptr, 1, superb.data());
  if (info != 0)
    throw NumericalFailure("zgesvd failed with info = " + std::to_string(info));
  return s;
}

}  // namespace pscheb
