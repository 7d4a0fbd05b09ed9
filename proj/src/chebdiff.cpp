#include "pscheb/chebdiff.hpp"

#include <cmath>
#include <numbers>

#include "pscheb/errors.hpp"

namespace pscheb {

namespace {

// sin(pi (N - 2j) / 2N) equals cos(j pi / N) but is odd in j about N/2 to the
// last bit, so node pairs are exact negatives.
std::vector<double> unit_nodes(int n) {
  std::vector<double> x(n + 1);
  for (int j = 0; j <= n; ++j)
    x[j] = std::sin(std::numbers::pi * (n - 2 * j) / (2.0 * n));
  return x;
}

void require_order(int n, int min_order) {
  if (n < min_order)
    throw InvalidArgument("Chebyshev order must be >= " +
                          std::to_string(min_order) + ", got " +
                          std::to_string(n));
}

}  // namespace

ChebGrid cheb_points(int order, double half_width) {
  require_order(order, 2);
  if (!(half_width > 0) || !std::isfinite(half_width))
    throw InvalidArgument("half-width must be positive and finite");
  ChebGrid g;
  g.order = order;
  g.half_width = half_width;
  g.nodes = unit_nodes(order);
  for (double& x : g.nodes) x *= half_width;
  return g;
}

DiffMatrix cdm(int order) {
  require_order(order, 2);
  const int n = order;
  const auto x = unit_nodes(n);
  RMatrix d(n + 1, n + 1);
  auto c = [n](int i) { return (i == 0 || i == n) ? 2.0 : 1.0; };
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) {
      if (i == j) continue;
      const double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
      d(i, j) = c(i) / c(j) * sign / (x[i] - x[j]);
    }
  }
  const double corner = (2.0 * n * n + 1.0) / 6.0;
  d(0, 0) = corner;
  d(n, n) = -corner;
  for (int j = 1; j < n; ++j) d(j, j) = -x[j] / (2.0 * (1.0 - x[j] * x[j]));
  return {n, std::move(d)};
}

TrimmedSecondDiff second_order_trimmed(int order, double half_width) {
  require_order(order, 2);
  if (!(half_width > 0) || !std::isfinite(half_width))
    throw InvalidArgument("half-width must be positive and finite");
  const RMatrix d = cdm(order).entries;
  const RMatrix d2 = d * d;
  const int m = order - 1;
  TrimmedSecondDiff t;
  t.order = order;
  t.half_width = half_width;
  t.entries = d2.block(1, 1, m, m) / (half_width * half_width);
  return t;
}

CdmDecomposition decompose(int order) {
  require_order(order, 3);
  const int n = order, m = n - 1;
  const auto x = unit_nodes(n);
  const RMatrix d = cdm(n).entries;
  CdmDecomposition out;
  out.c_even = RMatrix::Zero(m, m);
  out.c_odd = RMatrix::Zero(m, m);
  out.a_part.resize(m, m);
  out.b_part.resize(m, m);
  for (int i = 0; i < m; ++i) {
    const double xi = x[i + 1];
    out.c_even(i, i) = d(i + 1, i + 1);
    for (int j = 0; j < m; ++j) {
      const double xj = x[j + 1];
      const double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
      if (i != j) out.c_odd(i, j) = d(i + 1, j + 1);
      out.a_part(i, j) = -sign / ((1.0 - xi) * (1.0 - xj));
      out.b_part(i, j) = -sign / ((1.0 + xi) * (1.0 + xj));
    }
  }
  return out;
}

SymmetryReport symmetry_report(const TrimmedSecondDiff& m) {
  const RMatrix& a = m.entries;
  SymmetryReport r;
  const Eigen::Index k = a.rows();
  if (k == 0) return r;
  r.asymmetry = (a - a.transpose()).norm();
  const double scale = a.cwiseAbs().maxCoeff();
  double centro = 0;
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j)
      centro = std::max(centro, std::abs(a(i, j) - a(k - 1 - i, k - 1 - j)));
  r.centro_residual = scale > 0 ? centro / scale : centro;
  Eigen::EigenSolver<RMatrix> es(a, false);
  const CVector ev = es.eigenvalues();
  const double big = ev.cwiseAbs().maxCoeff();
  r.max_rel_imag_eigenvalue =
      big > 0 ? ev.imag().cwiseAbs().maxCoeff() / big : 0.0;
  return r;
}

}  // namespace pscheb
