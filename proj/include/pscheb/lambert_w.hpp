#pragma once

#include "pscheb/types.hpp"

namespace pscheb {

/// Branch k of the Lambert W function: w e^w = x. Branch cuts and the values
/// taken on them follow the usual convention (cuts approached from above, so
/// W_0 and W_{-1} are complex conjugates for real x < -1/e).
cplx lambert_w(int k, cplx x);

}  // namespace pscheb
