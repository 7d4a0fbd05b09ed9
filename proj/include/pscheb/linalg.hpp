#pragma once

#include "pscheb/types.hpp"

namespace pscheb {

/// Singular values in descending order (LAPACK zgesvd, no vectors).
RVector singular_values(const CMatrix& a);

inline double norm2(const CMatrix& a) {
  return a.size() == 0 ? 0.0 : singular_values(a)(0);
}

}  // namespace pscheb
