#pragma once

#include <optional>

#include "pscheb/spectral.hpp"

namespace pscheb {

/// Condition estimate of V at or above which the eigenbasis counts as
/// numerically defective.
inline constexpr double defective_condition = 1e12;

struct BasisInverse {
  CMatrix s;                // S = V^{-1}
  double condition = 0;     // sigma_max(V) / sigma_min(V)
  double residual = 0;      // max |S V - I|
};

BasisInverse basis_inverse(const SpectrumResult& spectrum);

/// eta = S^dagger S, Hermitian by construction.
CMatrix metric_operator(const CMatrix& s);

struct MetricDiagnostics {
  double hermiticity_defect = 0;      // ||h - h^dagger||_F / ||h||_F
  double eta_defect = 0;              // ||eta - eta^dagger||_F
  double eta_min_eigenvalue = 0;
  double rho_square_residual = 0;     // ||rho^2 - eta||_F / ||eta||_F
  std::optional<double> naive_gram_defect;   // max |V^dagger V - I|
  std::optional<double> metric_gram_defect;  // max |V^dagger eta V - I|
  std::optional<double> pseudo_hermiticity_defect;
  std::optional<double> isospectral_gap;
  std::optional<double> basis_condition;
};

struct MetricResult {
  CMatrix eta, rho, rho_inv, h;
  MetricDiagnostics diagnostics;
};

/// rho = principal square root of eta, h = rho H rho^{-1}.
MetricResult hermitian_equivalent(const CMatrix& h, const CMatrix& eta);

struct CompletenessReport {
  CMatrix naive_gram;   // V^dagger V
  CMatrix metric_gram;  // V^dagger eta V
  double naive_offdiag_max = 0;
  double naive_defect = 0;   // max |V^dagger V - I|
  double metric_defect = 0;  // max |V^dagger eta V - I|
};

CompletenessReport completeness_report(const SpectrumResult& spectrum,
                                       const CMatrix& eta);

/// ||eta H eta^{-1} - H^dagger||_F / ||H||_F.
double pseudo_hermiticity_defect(const CMatrix& h, const CMatrix& eta);

/// Max relative gap between the sorted spectra of two matrices.
double spectral_gap(const CVector& sorted_a, const CVector& sorted_b);

/// eigenpairs, S, eta, h and every diagnostic in one call.
struct MetricPipeline {
  SpectrumResult spectrum;
  BasisInverse basis;
  MetricResult metric;
  CompletenessReport completeness;
};

MetricPipeline metric_pipeline(const CMatrix& h);

}  // namespace pscheb
