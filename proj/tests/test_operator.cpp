#include <doctest.h>

#include <cmath>
#include <numbers>

#include "pscheb/errors.hpp"
#include "pscheb/hamiltonian.hpp"
#include "pscheb/spectral.hpp"
#include "support.hpp"

using namespace pscheb;
using std::numbers::pi;

TEST_CASE("evaluate_potential examples") {
  CHECK(std::abs(evaluate_potential(PotentialSpec::liouville(1.0), 0.0) - cplx{1, 0}) < 1e-15);
  CHECK(std::abs(evaluate_potential(PotentialSpec::geometric_liouville(1.0), 0.0) - cplx{0.5, 0}) <
        1e-15);
  const cplx v = evaluate_potential(PotentialSpec::bender_liouville(1, 0, 1), pi / 2);
  CHECK(std::abs(v - cplx{0, pi / 2}) < 1e-14);
  CHECK(std::abs(evaluate_potential(PotentialSpec::harmonic(2.0), cplx{1, 1}) - cplx{0, 4}) < 1e-14);
  CHECK(std::abs(evaluate_potential(PotentialSpec::power_pt(2), cplx{3, 0}) - cplx{9, 0}) < 1e-13);
}

TEST_CASE("non-integer powers use the principal branch") {
  // (iz)^{1/2} at z = 1: principal root of i is e^{i pi/4}.
  const cplx v = evaluate_potential(PotentialSpec::power_pt(0.5), 1.0);
  CHECK(std::abs(v + std::exp(cplx{0, pi / 4})) < 1e-14);
}

TEST_CASE("geometric Liouville pole raises SingularityError") {
  CHECK_THROWS_AS(evaluate_potential(PotentialSpec::geometric_liouville(1.0), pi / 2),
                  SingularityError);
  // N = 3 on [-pi, pi] puts an interior node at pi/2.
  DomainSpec d{pi, 3, std::nullopt};
  CHECK_THROWS_AS(assemble_hamiltonian(PotentialSpec::geometric_liouville(1.0), d),
                  SingularityError);
}

TEST_CASE("potential derivative matches a central difference") {
  const PotentialSpec specs[] = {PotentialSpec::harmonic(1.3), PotentialSpec::liouville(0.7),
                                 PotentialSpec::geometric_liouville(1.0),
                                 PotentialSpec::bender_liouville(1.0, 0.5, 3),
                                 PotentialSpec::power_pt(2.5)};
  const cplx z{0.3, 0.2}, h{1e-6, 0};
  for (const auto& s : specs) {
    const cplx fd = (evaluate_potential(s, z + h) - evaluate_potential(s, z - h)) / (2.0 * h);
    CHECK(std::abs(potential_derivative(s, z) - fd) <= 1e-7 * (1 + std::abs(fd)));
  }
}

TEST_CASE("spec and domain validation") {
  PotentialSpec bad = PotentialSpec::power_pt(2);
  bad.power = -1;
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
  bad = PotentialSpec::harmonic(std::nan(""));
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
  CHECK_THROWS_AS((DomainSpec{0.0, 10, std::nullopt}.validate()), InvalidArgument);
  CHECK_THROWS_AS((DomainSpec{1.0, 10, 1}.validate()), InvalidArgument);
  CHECK_NOTHROW(DomainSpec::periodic(3, 20).validate());
  CHECK(DomainSpec::periodic(3, 20).half_width == doctest::Approx(3 * pi / 2));
}

TEST_CASE("assemble_hamiltonian small examples") {
  const DomainSpec d{1.0, 2, std::nullopt};
  const auto free = assemble_hamiltonian(PotentialSpec::harmonic(0.0), d);
  REQUIRE(free.size() == 1);
  CHECK(std::abs(free.entries(0, 0) - cplx{2, 0}) < 1e-14);
  const auto osc = assemble_hamiltonian(PotentialSpec::harmonic(1.0), d);
  CHECK(std::abs(osc.entries(0, 0) - cplx{2, 0}) < 1e-14);

  const auto liou = assemble_hamiltonian(PotentialSpec::liouville(1.0), DomainSpec::periodic(1, 4));
  const RMatrix k = kinetic_matrix(4, pi / 2);
  for (int j = 1; j <= 3; ++j) {
    const double x = (pi / 2) * std::cos(j * pi / 4);
    const cplx diag = liou.entries(j - 1, j - 1) - k(j - 1, j - 1);
    CHECK(std::abs(diag - std::exp(cplx{0, 2 * x})) < 1e-14);
  }
  CHECK(std::abs(liou.entries(1, 1) - k(1, 1) - 1.0) < 1e-15);
}

TEST_CASE("harmonic matrix is real but not Hermitian") {
  for (int n : {4, 10, 70}) {
    const auto h = assemble_hamiltonian(PotentialSpec::harmonic(1.0), {8.0, n, std::nullopt});
    CHECK(h.entries.imag().cwiseAbs().maxCoeff() == 0.0);
    CHECK((h.entries - h.entries.adjoint()).norm() > 0);
  }
}

TEST_CASE("Liouville matrix is free kinetic plus unit-modulus diagonal") {
  for (int k = 1; k <= 4; ++k) {
    const auto dom = DomainSpec::periodic(k, 30);
    const auto h = assemble_hamiltonian(PotentialSpec::liouville(1.0), dom);
    const CMatrix diff = h.entries - kinetic_matrix(30, dom.half_width).cast<cplx>();
    CHECK((diff - CMatrix(diff.diagonal().asDiagonal())).norm() == 0.0);
    const RMatrix kin = kinetic_matrix(30, dom.half_width);
    for (Eigen::Index i = 0; i < diff.rows(); ++i)
      CHECK(std::abs(std::abs(diff(i, i)) - 1) < 4e-16 * (1 + std::abs(kin(i, i))));
  }
}

TEST_CASE("oscillator ground level converges between N=40 and N=70") {
  const auto lo = eigenpairs(assemble_hamiltonian(PotentialSpec::harmonic(1.0), {8.0, 40, std::nullopt}));
  const auto hi = eigenpairs(assemble_hamiltonian(PotentialSpec::harmonic(1.0), {8.0, 70, std::nullopt}));
  CHECK(std::abs(lo.eigenvalues(0) - hi.eigenvalues(0)) <= 1e-6);
}
