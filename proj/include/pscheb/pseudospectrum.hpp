#pragma once

#include <span>
#include <vector>

#include "pscheb/hamiltonian.hpp"

namespace pscheb {

/// sigma_min(z I - H) sampled on a regular grid; values(a, b) belongs to
/// (re_axis[a], im_axis[b]).
struct PseudospectrumField {
  std::vector<double> re_axis, im_axis;
  RMatrix values;

  double cell_diagonal() const;
  std::size_t count_at_or_below(double eps) const;
};

double sigma_min(const CMatrix& h, cplx z);

/// Regular axis of `count` points from lo to hi inclusive.
std::vector<double> grid_axis(double lo, double hi, int count);

/// resolution points per axis; grid points are evaluated in parallel.
PseudospectrumField field(const CMatrix& h, const Window& window,
                          int resolution);

namespace serial {
PseudospectrumField field(const CMatrix& h, const Window& window,
                          int resolution);
}

struct ContourLine {
  double level = 0;
  std::vector<cplx> vertices;
  bool closed = false;
};

/// Default decade ladder 1e-1 ... 1e-7.
std::vector<double> default_levels();

/// Marching squares on log10 sigma_min; levels positive, strictly descending.
std::vector<ContourLine> contours(const PseudospectrumField& f,
                                  std::span<const double> levels);

}  // namespace pscheb
