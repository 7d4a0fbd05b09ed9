#include "pscheb/perturbation.hpp"

#include <cmath>
#include <numbers>

#include "pscheb/errors.hpp"
#include "pscheb/spectral.hpp"

namespace pscheb {

namespace {

constexpr cplx I{0.0, 1.0};

double rel(double num, double den) { return den > 0 ? num / den : num; }

}  // namespace

CMatrix commutator(const CMatrix& a, const CMatrix& b) { return a * b - b * a; }

PerturbationSplit split_hamiltonian(const PotentialSpec& spec,
                                    const DomainSpec& domain) {
  if (spec.kind != PotentialKind::liouville)
    throw UnsupportedModel("split_hamiltonian: only the Liouville potential is supported");
  spec.validate();
  domain.validate();
  const int n = domain.order, m = n - 1;
  const double l = domain.half_width;
  const RMatrix k = kinetic_matrix(n, l);
  PerturbationSplit s;
  s.v0 = spec.v0;
  s.half_width = l;
  s.nodes = cheb_points(n, l).interior();
  s.kinetic_antisym = (k - k.transpose()) / 2.0;
  s.kinetic_defect = s.kinetic_antisym.norm();
  s.h0 = ((k + k.transpose()) / 2.0).cast<cplx>();
  s.h1 = CMatrix::Zero(m, m);
  for (int j = 0; j < m; ++j) {
    const double x = s.nodes[j];
    s.h0(j, j) += spec.v0 * std::cos(2 * x);
    s.h1(j, j) = I * spec.v0 * std::sin(2 * x);
  }
  s.momentum = (-I / l) * cdm(n).entries.block(1, 1, m, m).cast<cplx>();
  return s;
}

CMatrix solve_commutator(const CMatrix& h0, const CMatrix& rhs, double gap_tol) {
  if (h0.rows() != h0.cols() || rhs.rows() != h0.rows() || rhs.cols() != h0.cols())
    throw InvalidArgument("solve_commutator: dimension mismatch");
  const double scale = h0.norm();
  if ((h0 - h0.adjoint()).norm() > 1e-10 * std::max(scale, 1.0))
    throw InvalidArgument("solve_commutator: h0 is not Hermitian");
  const Eigen::Index n = h0.rows();
  if (n == 0) return rhs;
  Eigen::SelfAdjointEigenSolver<CMatrix> es((h0 + h0.adjoint()) / 2.0);
  if (es.info() != Eigen::Success)
    throw NumericalFailure("solve_commutator: eigensolver failed");
  const RVector& lam = es.eigenvalues();
  const CMatrix& u = es.eigenvectors();
  if (gap_tol < 0) gap_tol = 1e-8 * lam.cwiseAbs().maxCoeff();
  const double rnorm = rhs.norm();
  const CMatrix r = u.adjoint() * rhs * u;
  CMatrix q = CMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double gap = lam(i) - lam(j);
      if (std::abs(gap) > gap_tol) {
        q(i, j) = r(i, j) / gap;
      } else if (std::abs(r(i, j)) > gap_tol * rnorm) {
        throw ObstructionError(
            "solve_commutator: resonant right-hand side at eigenbasis entry (" +
            std::to_string(i) + ", " + std::to_string(j) + "), |R| = " +
            std::to_string(std::abs(r(i, j))));
      }
    }
  }
  return u * q * u.adjoint();
}

namespace {

double residual(const CMatrix& h0, const CMatrix& q, const CMatrix& r) {
  return rel((commutator(h0, q) - r).norm(), r.norm());
}

ClosedFormGaps closed_form_gaps(const PerturbationSplit& s, const CMatrix& q1,
                                const CMatrix& h2) {
  ClosedFormGaps g;
  const Eigen::Index m = q1.rows();
  const Eigen::Index lo = closed_form_margin, hi = m - closed_form_margin;
  if (hi <= lo) return g;
  const CMatrix minus_p = -s.momentum;
  double cos_scale = 0;
  for (Eigen::Index i = lo; i < hi; ++i)
    cos_scale = std::max(cos_scale, std::abs(0.5 * s.v0 * std::cos(2 * s.nodes[i])));
  for (Eigen::Index i = lo; i < hi; ++i) {
    g.q1_row_gap = std::max(g.q1_row_gap, rel((q1.row(i) - minus_p.row(i)).norm(),
                                              minus_p.row(i).norm()));
    const cplx target = -0.5 * s.v0 * std::cos(2 * s.nodes[i]);
    g.h2_diagonal_gap =
        std::max(g.h2_diagonal_gap, rel(std::abs(h2(i, i) - target), cos_scale));
  }
  // Smooth Dirichlet modes sin(n pi (x + L) / 2L), n = 1..4.
  const double big_l = s.half_width;
  CVector cos_diag(m);
  for (Eigen::Index i = 0; i < m; ++i) cos_diag(i) = -0.5 * s.v0 * std::cos(2 * s.nodes[i]);
  for (int n = 1; n <= 4; ++n) {
    CVector phi(m);
    for (Eigen::Index i = 0; i < m; ++i)
      phi(i) = std::sin(n * std::numbers::pi * (s.nodes[i] + big_l) / (2 * big_l));
    const CVector want_q = minus_p * phi;
    const CVector got_q = q1 * phi;
    const CVector want_h = cos_diag.cwiseProduct(phi);
    const CVector got_h = h2 * phi;
    const auto seg = [&](const CVector& v) { return v.segment(lo, hi - lo); };
    g.q1_action_gap = std::max(
        g.q1_action_gap, rel((seg(got_q) - seg(want_q)).norm(), seg(want_q).norm()));
    g.h2_action_gap = std::max(
        g.h2_action_gap, rel((seg(got_h) - seg(want_h)).norm(), seg(want_h).norm()));
  }
  return g;
}

}  // namespace

PerturbationResult series_terms(const PerturbationSplit& s, double gap_tol) {
  PerturbationResult r;
  const CMatrix& h0 = s.h0;
  const CMatrix& h1 = s.h1;
  const CMatrix rhs1 = 2.0 * h1;
  r.q1 = solve_commutator(h0, rhs1, gap_tol);
  const CMatrix c1 = commutator(h1, r.q1);
  r.h2 = -0.25 * c1;
  const CMatrix rhs3 = (-1.0 / 6.0) * commutator(r.q1, c1);
  r.q3 = solve_commutator(h0, rhs3, gap_tol);
  r.h4 = -0.25 * commutator(h1, r.q3) +
         (1.0 / 192.0) * commutator(r.q1, commutator(r.q1, c1));
  const CMatrix rhs5 =
      (-1.0 / 6.0) * (commutator(r.q1, commutator(h1, r.q3)) + commutator(r.q3, c1)) +
      (1.0 / 360.0) * commutator(r.q1, commutator(r.q1, commutator(r.q1, c1)));
  try {
    r.q5 = solve_commutator(h0, rhs5, gap_tol);
    r.residuals.q5 = residual(h0, *r.q5, rhs5);
  } catch (const ObstructionError& e) {
    r.q5_error = e.what();
  }

  r.residuals.q1 = residual(h0, r.q1, rhs1);
  r.residuals.q3 = residual(h0, r.q3, rhs3);
  const Eigen::Index m = h0.rows();
  const Eigen::Index lo = residual_margin, len = m - 2 * residual_margin;
  if (len > 0) {
    const CMatrix d = commutator(h0, r.q1) - rhs1;
    r.residuals.q1_interior = rel(d.block(lo, lo, len, len).norm(), h1.norm());
  }
  r.closed_form_gaps = closed_form_gaps(s, r.q1, r.h2);
  return r;
}

ShiftReport shift_check(const PotentialSpec& spec, const DomainSpec& domain,
                        double eps, int level_count) {
  if (!(eps > 0 && eps < 1))
    throw InvalidArgument("shift_check: eps must lie strictly inside (0, 1)");
  if (level_count < 1) throw InvalidArgument("shift_check: level_count must be >= 1");
  spec.validate();
  domain.validate();
  ShiftReport rep;
  rep.epsilon = eps;
  rep.shift = 0.5 * std::atanh(eps);
  rep.amplitude_factor = std::sqrt((1 - eps) / (1 + eps));
  rep.closed_form_amplitude = std::sqrt(1 - eps * eps);
  const cplx shift{0.0, rep.shift};

  const auto nodes = cheb_points(domain.order, domain.half_width).interior();
  for (double x : nodes) {
    const cplx v = evaluate_potential(spec, x);
    const cplx vs = evaluate_potential(spec, x + shift);
    rep.unshifted_gap = std::max(rep.unshifted_gap, std::abs(vs - v));
    rep.potential_gap = std::max(rep.potential_gap, std::abs(vs - rep.amplitude_factor * v));
  }

  const HamiltonianMatrix shifted = assemble_shifted(spec, domain, shift);
  const auto lv = eigenpairs(shifted).real_levels(level_count);
  rep.levels = lv;
  const double l = domain.half_width;
  for (int n = 1; n <= static_cast<int>(lv.size()); ++n) {
    const double ref = std::pow(n * std::numbers::pi / (2 * l), 2);
    rep.reference_levels.push_back(ref);
    rep.max_relative_deviation =
        std::max(rep.max_relative_deviation, std::abs(lv[n - 1] - ref) / ref);
  }

  if (spec.kind == PotentialKind::liouville) {
    // Deformed potential v0 (cos 2z + i eps sin 2z) evaluated at x + i shift.
    double gap = 0;
    CMatrix h = kinetic_matrix(domain.order, l).cast<cplx>();
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      const cplx z = nodes[j] + shift;
      const cplx v = spec.v0 * (std::cos(2.0 * z) + I * eps * std::sin(2.0 * z));
      gap = std::max(gap, std::abs(v - rep.closed_form_amplitude * spec.v0 *
                                           std::cos(2 * nodes[j])));
      h(j, j) += v;
    }
    rep.deformed_gap = gap;
    rep.deformed_levels = eigenpairs(h).real_levels(level_count);
    for (std::size_t n = 0; n < rep.deformed_levels.size() && n < rep.reference_levels.size(); ++n)
      rep.deformed_relative_deviation =
          std::max(rep.deformed_relative_deviation,
                   std::abs(rep.deformed_levels[n] - rep.reference_levels[n]) /
                       rep.reference_levels[n]);
  }
  return rep;
}

}  // namespace pscheb
