#include "pscheb/pseudospectrum.hpp"

#include <cmath>
#include <cstdio>

#include "pscheb/errors.hpp"
#include "pscheb/linalg.hpp"
#include "pscheb/parallel.hpp"

namespace pscheb {

double PseudospectrumField::cell_diagonal() const {
  const double dx = re_axis.size() > 1 ? re_axis[1] - re_axis[0] : 0.0;
  const double dy = im_axis.size() > 1 ? im_axis[1] - im_axis[0] : 0.0;
  return std::hypot(dx, dy);
}

std::size_t PseudospectrumField::count_at_or_below(double eps) const {
  return static_cast<std::size_t>((values.array() <= eps).count());
}

double sigma_min(const CMatrix& h, cplx z) {
  CMatrix a = -h;
  a.diagonal().array() += z;
  try {
    const RVector s = singular_values(a);
    return s.size() ? s(s.size() - 1) : 0.0;
  } catch (const NumericalFailure& e) {
    char buf[96];
    std::snprintf(buf, sizeof buf, " at z = (%.17g, %.17g)", z.real(), z.imag());
    throw NumericalFailure(e.what() + std::string(buf));
  }
}

std::vector<double> grid_axis(double lo, double hi, int count) {
  std::vector<double> ax(count);
  for (int i = 0; i < count; ++i)
    ax[i] = lo + (hi - lo) * (static_cast<double>(i) / (count - 1));
  ax.back() = hi;
  return ax;
}

namespace {

PseudospectrumField prepare(const CMatrix& h, const Window& w, int resolution) {
  if (w.empty()) throw InvalidArgument("pseudospectrum window is empty");
  if (resolution < 2) throw InvalidArgument("pseudospectrum resolution must be >= 2");
  if (h.rows() != h.cols()) throw InvalidArgument("pseudospectrum: matrix not square");
  PseudospectrumField f;
  f.re_axis = grid_axis(w.re_min, w.re_max, resolution);
  f.im_axis = grid_axis(w.im_min, w.im_max, resolution);
  f.values.resize(resolution, resolution);
  return f;
}

}  // namespace

PseudospectrumField field(const CMatrix& h, const Window& window,
                          int resolution) {
  PseudospectrumField f = prepare(h, window, resolution);
  const std::int64_t n = resolution;
  parallel_for(n * n, [&](std::int64_t k) {
    const std::int64_t a = k / n, b = k % n;
    f.values(a, b) = sigma_min(h, {f.re_axis[a], f.im_axis[b]});
  });
  return f;
}

namespace serial {

PseudospectrumField field(const CMatrix& h, const Window& window,
                          int resolution) {
  PseudospectrumField f = prepare(h, window, resolution);
  for (int a = 0; a < resolution; ++a)
    for (int b = 0; b < resolution; ++b)
      f.values(a, b) = sigma_min(h, {f.re_axis[a], f.im_axis[b]});
  return f;
}

}  // namespace serial

std::vector<double> default_levels() {
  return {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7};
}

}  // namespace pscheb
