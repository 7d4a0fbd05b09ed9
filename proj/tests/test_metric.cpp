#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "pscheb/errors.hpp"
#include "pscheb/hamiltonian.hpp"
#include "pscheb/metric.hpp"
#include "pscheb/spectral.hpp"
#include "support.hpp"

using namespace pscheb;

namespace {

SpectrumResult identity_spectrum(int n) {
  SpectrumResult s;
  s.eigenvalues = CVector::LinSpaced(n, 1.0, double(n));
  s.eigenvectors = CMatrix::Identity(n, n);
  s.resolved.assign(n, true);
  return s;
}

const std::pair<PotentialSpec, DomainSpec> paper_models[] = {
    {PotentialSpec::harmonic(1.0), {8.0, 70, std::nullopt}},
    {PotentialSpec::liouville(1.0), DomainSpec::periodic(1, 70)},
    {PotentialSpec::liouville(1.0), DomainSpec::periodic(2, 70)},
    {PotentialSpec::geometric_liouville(1.0), DomainSpec::periodic(1, 70)},
};

}  // namespace

TEST_CASE("basis_inverse examples") {
  const auto b = basis_inverse(identity_spectrum(3));
  CHECK(testing::max_abs(b.s - CMatrix::Identity(3, 3)) == 0.0);

  const CMatrix h = testing::hermitian(6, 7);
  const auto s = eigenpairs(h);
  const auto bi = basis_inverse(s);
  CHECK(testing::max_abs(bi.s - s.eigenvectors.adjoint()) <= 1e-10);
  CHECK(testing::max_abs(metric_operator(bi.s) - CMatrix::Identity(6, 6)) <= 1e-10);

  const auto liou = eigenpairs(assemble_hamiltonian(PotentialSpec::liouville(1.0), DomainSpec::periodic(1, 70)));
  CHECK(basis_inverse(liou).residual <= 1e-8);
}

TEST_CASE("near-defective basis is rejected") {
  CMatrix j(2, 2);
  j << 0.0, 1.0, 1e-30, 0.0;
  CHECK_THROWS_AS(basis_inverse(eigenpairs(j)), NearDefectiveError);
}

TEST_CASE("metric_operator examples") {
  CHECK(testing::max_abs(metric_operator(CMatrix::Identity(2, 2)) - CMatrix::Identity(2, 2)) == 0.0);
  CMatrix s = CMatrix::Zero(2, 2);
  s(0, 0) = 2.0;
  s(1, 1) = 1.0;
  const CMatrix eta = metric_operator(s);
  CHECK(eta(0, 0) == cplx{4, 0});
  CHECK(eta(1, 1) == cplx{1, 0});
  CHECK(eta(0, 1) == cplx{0, 0});

  const auto osc = metric_pipeline(
      assemble_hamiltonian(PotentialSpec::harmonic(1.0), {8.0, 70, std::nullopt}).entries);
  CHECK(osc.metric.diagnostics.eta_min_eigenvalue > 0);
}

TEST_CASE("hermitian_equivalent with the identity metric") {
  const auto h = assemble_hamiltonian(PotentialSpec::harmonic(1.0), {8.0, 12, std::nullopt}).entries;
  const auto r = hermitian_equivalent(h, CMatrix::Identity(h.rows(), h.cols()));
  CHECK(testing::max_abs(r.h - h) <= 1e-14 * testing::max_abs(h));
  CHECK(r.diagnostics.hermiticity_defect ==
        doctest::Approx((h - h.adjoint()).norm() / h.norm()).epsilon(1e-10));
  const CMatrix herm = testing::hermitian(5, 3);
  CHECK(hermitian_equivalent(herm, CMatrix::Identity(5, 5)).diagnostics.hermiticity_defect <= 1e-12);
}

TEST_CASE("indefinite metric is rejected") {
  CMatrix eta = CMatrix::Identity(2, 2);
  eta(1, 1) = -1.0;
  CHECK_THROWS_AS(hermitian_equivalent(CMatrix::Identity(2, 2), eta), NotPositiveDefinite);
}

TEST_CASE("completeness_report trivial cases") {
  const auto r = completeness_report(identity_spectrum(3), CMatrix::Identity(3, 3));
  CHECK(testing::max_abs(r.naive_gram - CMatrix::Identity(3, 3)) == 0.0);
  CHECK(testing::max_abs(r.metric_gram - CMatrix::Identity(3, 3)) == 0.0);
  CMatrix one(1, 1);
  one(0, 0) = cplx{2, 1};
  const auto p = metric_pipeline(one);
  CHECK(std::abs(p.completeness.naive_gram(0, 0) - 1.0) < 1e-15);
  CHECK(std::abs(p.completeness.metric_gram(0, 0) - 1.0) < 1e-15);
}

TEST_CASE("oscillator completeness is broken naively and restored by the metric") {
  const auto p = metric_pipeline(
      assemble_hamiltonian(PotentialSpec::harmonic(1.0), {8.0, 70, std::nullopt}).entries);
  CHECK(p.completeness.naive_offdiag_max > 1e-6);
  CHECK(p.completeness.metric_defect <= 1e-8);
}

TEST_CASE("metric identities on the model Hamiltonians") {
  for (const auto& [spec, dom] : paper_models) {
    CAPTURE(to_string(spec.kind));
    CAPTURE(dom.half_width);
    const CMatrix h = assemble_hamiltonian(spec, dom).entries;
    const auto p = metric_pipeline(h);
    const auto& d = p.metric.diagnostics;
    const auto lam = eigenpairs(h).eigenvalues;
    const bool real_spectrum =
        lam.imag().cwiseAbs().maxCoeff() <= 1e-10 * lam.cwiseAbs().maxCoeff();
    CAPTURE(real_spectrum);
    CHECK(p.completeness.metric_defect <= 1e-8);
    if (real_spectrum) {
      CHECK(*d.pseudo_hermiticity_defect <= 1e-8);
      CHECK(d.hermiticity_defect <= 1e-8);
      CHECK(*d.isospectral_gap <= 1e-6);
    } else {
      // eta H eta^-1 - H^dagger picks up the imaginary parts of the eigenvalues.
      CHECK(*d.pseudo_hermiticity_defect > 1e-8);
    }
    CHECK(d.eta_defect <= 1e-12 * p.metric.eta.norm());
    CHECK(d.eta_min_eigenvalue > 0);
    CHECK(d.rho_square_residual <= 1e-10);
    CHECK(testing::max_abs(p.metric.rho - p.metric.rho.adjoint()) <= 1e-12 * testing::max_abs(p.metric.rho));
  }
}
