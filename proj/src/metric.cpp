#include "pscheb/metric.hpp"

#include <cmath>

#include "pscheb/errors.hpp"

namespace pscheb {

namespace {

double max_abs_minus_identity(const CMatrix& m) {
  return (m - CMatrix::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff();
}

double relative(double num, double den) { return den > 0 ? num / den : num; }

}  // namespace

BasisInverse basis_inverse(const SpectrumResult& spectrum) {
  const CMatrix& v = spectrum.eigenvectors;
  BasisInverse out;
  if (v.size() == 0) return out;
  const Eigen::BDCSVD<CMatrix> svd(v);
  const auto& sv = svd.singularValues();
  const double smin = sv(sv.size() - 1);
  out.condition = smin > 0 ? sv(0) / smin : std::numeric_limits<double>::infinity();
  if (!(out.condition < defective_condition))
    throw NearDefectiveError(
        "eigenvector matrix is numerically defective (condition estimate " +
            std::to_string(out.condition) + ")",
        out.condition);
  out.s = v.fullPivLu().inverse();
  out.residual = max_abs_minus_identity(out.s * v);
  return out;
}

CMatrix metric_operator(const CMatrix& s) {
  const CMatrix eta = s.adjoint() * s;
  return (eta + eta.adjoint()) / 2.0;
}

MetricResult hermitian_equivalent(const CMatrix& h, const CMatrix& eta) {
  if (h.rows() != eta.rows() || h.cols() != eta.cols())
    throw InvalidArgument("hermitian_equivalent: dimension mismatch");
  MetricResult r;
  r.eta = eta;
  r.diagnostics.eta_defect = (eta - eta.adjoint()).norm();
  const CMatrix herm = (eta + eta.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(herm);
  if (es.info() != Eigen::Success)
    throw NumericalFailure("Hermitian eigensolver failed on the metric");
  const RVector mu = es.eigenvalues();
  r.diagnostics.eta_min_eigenvalue = mu.size() ? mu.minCoeff() : 0.0;
  if (mu.size() && !(mu.minCoeff() > 0))
    throw NotPositiveDefinite("metric has a nonpositive eigenvalue " +
                              std::to_string(mu.minCoeff()));
  const CMatrix& u = es.eigenvectors();
  r.rho = u * mu.cwiseSqrt().cast<cplx>().asDiagonal() * u.adjoint();
  r.rho_inv = u * mu.cwiseSqrt().cwiseInverse().cast<cplx>().asDiagonal() *
              u.adjoint();
  r.h = r.rho * h * r.rho_inv;
  r.diagnostics.hermiticity_defect =
      relative((r.h - r.h.adjoint()).norm(), r.h.norm());
  r.diagnostics.rho_square_residual =
      relative((r.rho * r.rho - eta).norm(), eta.norm());
  return r;
}

CompletenessReport completeness_report(const SpectrumResult& spectrum,
                                       const CMatrix& eta) {
  const CMatrix& v = spectrum.eigenvectors;
  if (v.rows() != eta.rows())
    throw InvalidArgument("completeness_report: dimension mismatch");
  CompletenessReport c;
  c.naive_gram = v.adjoint() * v;
  c.metric_gram = v.adjoint() * eta * v;
  if (v.size() == 0) return c;
  c.naive_defect = max_abs_minus_identity(c.naive_gram);
  c.metric_defect = max_abs_minus_identity(c.metric_gram);
  CMatrix off = c.naive_gram;
  off.diagonal().setZero();
  c.naive_offdiag_max = off.cwiseAbs().maxCoeff();
  return c;
}

double pseudo_hermiticity_defect(const CMatrix& h, const CMatrix& eta) {
  const CMatrix lhs = eta * h * eta.fullPivLu().inverse();
  return relative((lhs - h.adjoint()).norm(), h.norm());
}

double spectral_gap(const CVector& a, const CVector& b) {
  if (a.size() != b.size())
    throw InvalidArgument("spectral_gap: spectra have different sizes");
  double gap = 0;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    gap = std::max(gap, std::abs(a(i) - b(i)) / std::max(std::abs(a(i)), 1.0));
  return gap;
}

MetricPipeline metric_pipeline(const CMatrix& h) {
  MetricPipeline p;
  p.spectrum = eigenpairs(h);
  p.basis = basis_inverse(p.spectrum);
  const CMatrix eta = metric_operator(p.basis.s);
  p.metric = hermitian_equivalent(h, eta);
  p.completeness = completeness_report(p.spectrum, eta);
  auto& d = p.metric.diagnostics;
  d.naive_gram_defect = p.completeness.naive_defect;
  d.metric_gram_defect = p.completeness.metric_defect;
  d.pseudo_hermiticity_defect = pseudo_hermiticity_defect(h, eta);
  d.basis_condition = p.basis.condition;
  d.isospectral_gap =
      spectral_gap(p.spectrum.eigenvalues, eigenpairs(p.metric.h).eigenvalues);
  return p;
}

}  // namespace pscheb
