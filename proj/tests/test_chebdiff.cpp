#include <doctest.h>

#include <cmath>

#include "pscheb/chebdiff.hpp"
#include "pscheb/errors.hpp"
#include "support.hpp"

using namespace pscheb;

TEST_CASE("cheb_points: small grids") {
  const auto g2 = cheb_points(2, 1.0);
  REQUIRE(g2.nodes.size() == 3);
  CHECK(g2.nodes[0] == doctest::Approx(1.0));
  CHECK(g2.nodes[1] == 0.0);
  CHECK(g2.nodes[2] == doctest::Approx(-1.0));

  const auto g4 = cheb_points(4, 1.0);
  const double r = std::sqrt(2.0) / 2;
  const double expect[] = {1, r, 0, -r, -1};
  for (int j = 0; j < 5; ++j) CHECK(std::abs(g4.nodes[j] - expect[j]) < 1e-15);

  const auto g8 = cheb_points(2, 8.0);
  CHECK(g8.nodes[0] == doctest::Approx(8.0));
  CHECK(g8.nodes[1] == 0.0);
  CHECK(g8.nodes[2] == doctest::Approx(-8.0));
}

TEST_CASE("cheb_points: nodes are symmetric to the last bit") {
  for (int n : {5, 6, 31, 70}) {
    const auto g = cheb_points(n, 2.5);
    for (int j = 0; j <= n; ++j) CHECK(g.nodes[j] == -g.nodes[n - j]);
  }
}

TEST_CASE("cheb_points and cdm reject bad input") {
  CHECK_THROWS_AS(cheb_points(1, 1.0), InvalidArgument);
  CHECK_THROWS_AS(cheb_points(4, 0.0), InvalidArgument);
  CHECK_THROWS_AS(cheb_points(4, -1.0), InvalidArgument);
  CHECK_THROWS_AS(cdm(1), InvalidArgument);
  CHECK_THROWS_AS(second_order_trimmed(1, 1.0), InvalidArgument);
  CHECK_THROWS_AS(decompose(2), InvalidArgument);
}

TEST_CASE("cdm(2) entries") {
  const RMatrix d = cdm(2).entries;
  const double expect[3][3] = {{1.5, -2, 0.5}, {0.5, 0, -0.5}, {-0.5, 2, -1.5}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(std::abs(d(i, j) - expect[i][j]) <= 1e-14);
}

TEST_CASE("cdm corner and interior antisymmetry") {
  CHECK(cdm(4).entries(0, 0) == doctest::Approx(5.5).epsilon(1e-15));
  const RMatrix d3 = cdm(3).entries;
  CHECK(d3(1, 2) == -d3(2, 1));
}

TEST_CASE("cdm differentiates low-degree monomials") {
  for (int n = 2; n <= 40; ++n) {
    const auto x = cheb_points(n, 1.0).nodes;
    const RMatrix d = cdm(n).entries;
    for (int k = 0; k <= std::min(5, n); ++k) {
      RVector f(n + 1);
      for (int j = 0; j <= n; ++j) f(j) = std::pow(x[j], k);
      const RVector df = d * f;
      for (int j = 1; j < n; ++j) {
        const double exact = k == 0 ? 0.0 : k * std::pow(x[j], k - 1);
        CHECK(std::abs(df(j) - exact) <= 1e-8 * std::max(1.0, std::abs(exact)));
      }
    }
  }
}

TEST_CASE("second_order_trimmed small cases") {
  CHECK(second_order_trimmed(2, 1.0).entries(0, 0) == doctest::Approx(-2.0).epsilon(1e-14));
  CHECK(second_order_trimmed(2, 2.0).entries(0, 0) == doctest::Approx(-0.5).epsilon(1e-14));
  const RMatrix m = second_order_trimmed(6, 1.0).entries;
  CHECK((m - m.transpose()).norm() > 0);
}

TEST_CASE("decompose: A entry, hollow odd part, reconstruction") {
  const auto c3 = decompose(3);
  CHECK(c3.a_part(0, 0) == doctest::Approx(-4.0).epsilon(1e-14));
  for (int n : {3, 5, 12, 40}) {
    const auto c = decompose(n);
    for (Eigen::Index i = 0; i < c.c_odd.rows(); ++i) CHECK(c.c_odd(i, i) == 0.0);
    CHECK(c.c_even.isApprox(c.c_even.transpose(), 0.0));
    CHECK((c.c_even - c.c_even.transpose()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((c.c_odd + c.c_odd.transpose()).cwiseAbs().maxCoeff() == 0.0);
  }
  const auto c5 = decompose(5);
  CHECK((c5.reconstruct() - second_order_trimmed(5, 1.0).entries).norm() <= 1e-10);
}

TEST_CASE("symmetry_report") {
  CHECK(symmetry_report(second_order_trimmed(2, 1.0)).asymmetry == 0.0);
  CHECK(symmetry_report(second_order_trimmed(10, 1.0)).centro_residual <= 1e-12);
  CHECK(symmetry_report(second_order_trimmed(30, 1.0)).max_rel_imag_eigenvalue <= 1e-8);
  for (int n = 3; n <= 70; n += 7) {
    const auto r = symmetry_report(second_order_trimmed(n, 1.3));
    CHECK(r.centro_residual <= 1e-12);
    CHECK(r.max_rel_imag_eigenvalue <= 1e-8);
  }
}
