#pragma once

#include <vector>

#include "pscheb/types.hpp"

namespace pscheb {

/// Chebyshev-Gauss-Lobatto nodes x_j = L cos(j pi / N), j = 0..N (descending).
struct ChebGrid {
  int order = 0;
  double half_width = 1.0;
  std::vector<double> nodes;

  std::vector<double> interior() const {
    return {nodes.begin() + 1, nodes.end() - 1};
  }
};

struct DiffMatrix {
  int order = 0;
  RMatrix entries;
};

struct TrimmedSecondDiff {
  int order = 0;
  double half_width = 1.0;
  RMatrix entries;
};

/// Unit half-width split of the trimmed second-derivative matrix into
/// (c_even + c_odd)^2 + a_part + b_part.
struct CdmDecomposition {
  RMatrix c_even, c_odd, a_part, b_part;

  RMatrix reconstruct() const {
    RMatrix c = c_even + c_odd;
    return c * c + a_part + b_part;
  }
};

struct SymmetryReport {
  double asymmetry = 0;          // Frobenius norm of M - M^T
  double centro_residual = 0;    // max |M_ij - M_flip(i)flip(j)| / max |M|
  double max_rel_imag_eigenvalue = 0;
};

ChebGrid cheb_points(int order, double half_width = 1.0);
DiffMatrix cdm(int order);
TrimmedSecondDiff second_order_trimmed(int order, double half_width = 1.0);
CdmDecomposition decompose(int order);
SymmetryReport symmetry_report(const TrimmedSecondDiff& m);

}  // namespace pscheb
