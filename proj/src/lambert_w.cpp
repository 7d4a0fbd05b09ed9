#include "pscheb/lambert_w.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "pscheb/errors.hpp"

namespace pscheb {

namespace {

// 1/e split into a double and its rounding error.
constexpr double inv_e_hi = 0.36787944117144233;
constexpr double inv_e_lo = -1.2428753672788363e-17;

// Series in p = sqrt(2 (e x + 1)) about the branch point; sign = +1 for W_0,
// -1 for W_{-1}.
cplx branch_point_series(cplx p, double sign) {
  static constexpr double c[] = {-1.0,          1.0,           -1.0 / 3.0,
                                 11.0 / 72.0,   -43.0 / 540.0, 769.0 / 17280.0,
                                 -221.0 / 8505.0};
  const cplx q = sign * p;
  cplx r = c[6];
  for (int i = 5; i >= 0; --i) r = r * q + c[i];
  return r;
}

cplx asymptotic(int k, cplx x) {
  const cplx l1 = std::log(x) + cplx{0.0, 2.0 * std::numbers::pi * k};
  const cplx l2 = std::log(l1);
  return l1 - l2 + l2 / l1;
}

}  // namespace

cplx lambert_w(int k, cplx x) {
  if (!std::isfinite(x.real()) || !std::isfinite(x.imag()))
    throw InvalidArgument("lambert_w: argument must be finite");
  if (x.imag() == 0.0) x = {x.real(), 0.0};  // -0 imaginary counts as on the cut
  if (x == cplx{0.0, 0.0}) {
    if (k == 0) return 0.0;
    throw InvalidArgument("lambert_w: branch " + std::to_string(k) +
                          " is singular at 0");
  }

  // e x + 1 without cancellation near the branch point.
  const cplx shifted = (x + inv_e_hi) + inv_e_lo;
  const bool near_branch = std::abs(shifted) < 0.3 * inv_e_hi;
  const bool series_branch =
      near_branch && (k == 0 || (k == -1 && x.imag() >= 0.0));
  // The series still makes a good W_0 starting point well past the region
  // where it is returned directly; it converges for |e x + 1| < 2 pi.
  const bool series_guess =
      series_branch || (k == 0 && std::abs(std::numbers::e * shifted) < 2.0);

  cplx w;
  if (series_guess) {
    if (std::abs(shifted) <= 4 * std::numeric_limits<double>::epsilon() * inv_e_hi)
      return -1.0;
    const cplx p = std::sqrt(2.0 * std::numbers::e * shifted);
    w = branch_point_series(p, k == 0 ? 1.0 : -1.0);
    if (series_branch && std::abs(p) < 1e-3) return w;
  } else if (k == 0 && std::abs(x) < 20.0) {
    const cplx l = std::log(1.0 + x);
    w = l * (1.0 - std::log(1.0 + l) / (2.0 + l));
  } else {
    w = asymptotic(k, x);
  }

  // Halley iteration.
  cplx best = w;
  double best_res = std::abs(w * std::exp(w) - x);
  for (int it = 0; it < 100; ++it) {
    const cplx ew = std::exp(w);
    const cplx f = w * ew - x;
    const cplx wp1 = w + 1.0;
    const cplx step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
    if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
    w -= step;
    const double res = std::abs(w * std::exp(w) - x);
    if (res < best_res) {
      best_res = res;
      best = w;
    }
    if (std::abs(step) <= 4 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(w)))
      break;
  }
  if (!(best_res <= 1e-12 * (1.0 + std::abs(x))))
    throw NumericalFailure("lambert_w: Halley iteration did not converge for k = " +
                           std::to_string(k));
  return best;
}

}  // namespace pscheb
