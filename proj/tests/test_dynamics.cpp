#include <doctest.h>

#include <cmath>
#include <numbers>

#include "pscheb/dynamics.hpp"
#include "pscheb/errors.hpp"
#include "pscheb/lambert_w.hpp"

using namespace pscheb;
using std::numbers::pi;

namespace {

const cplx I{0, 1};

cplx sample_at(const Trajectory& tr, double t) {
  for (const auto& s : tr.samples)
    if (std::abs(s.t - t) < 1e-12) return s.z;
  FAIL("no sample at t = " << t);
  return {};
}

}  // namespace

TEST_CASE("oscillator flow reproduces sin 2t") {
  FlowOptions o;
  o.t_max = pi;
  o.sample_interval = pi / 16;
  const auto tr = flow(PotentialSpec::harmonic(1.0), 1.0, 0.0, 1, o);
  CHECK(tr.status == FlowStatus::completed);
  CHECK(std::abs(sample_at(tr, pi / 4) - 1.0) <= 1e-6);
  for (const auto& s : tr.samples) CHECK(std::abs(s.z - std::sin(2 * s.t)) <= 1e-6);
  CHECK(tr.energy_drift(PotentialSpec::harmonic(1.0)) <= 1e-6 * 2);
}

TEST_CASE("flow errors") {
  CHECK_THROWS_AS(flow(PotentialSpec::harmonic(1.0), 1.0, 1.0, 1), InvalidArgument);
  CHECK_THROWS_AS(flow(PotentialSpec::harmonic(1.0), 1.0, 0.0, 2), InvalidArgument);
  FlowOptions o;
  o.max_steps = 3;
  o.initial_step = 1e-6;
  CHECK_THROWS_AS(flow(PotentialSpec::harmonic(1.0), 1.0, 0.0, 1, o), StiffnessError);
}

TEST_CASE("Liouville flow below a fixed point runs off to negative imaginary infinity") {
  FlowOptions o;
  o.t_max = 20;
  const auto spec = PotentialSpec::liouville(1.0);
  const auto tr = flow(spec, 1.0, cplx{0.0, -0.05}, 1, o);
  double lowest = 0;
  for (const auto& s : tr.samples) lowest = std::min(lowest, s.z.imag());
  CHECK(lowest < -10);
  CHECK(tr.status == FlowStatus::escaped);
}

TEST_CASE("energy is conserved on every trajectory of a bundle") {
  const std::pair<PotentialSpec, double> models[] = {
      {PotentialSpec::harmonic(1.0), 1.0},
      {PotentialSpec::liouville(1.0), 1.0},
      {PotentialSpec::geometric_liouville(1.0), 0.3},
      {PotentialSpec::bender_liouville(1.0, 0.0, 1), 0.1},
  };
  std::vector<FlowSeed> seeds;
  for (double re : {-1.3, -0.4, 0.6, 1.7})
    for (double im : {-0.5, 0.35})
      for (int sheet : {1, -1}) seeds.push_back({{re, im}, sheet});
  FlowOptions o;
  o.t_max = 5;
  for (const auto& [spec, e] : models) {
    for (const auto& tr : flow_bundle(spec, e, seeds, o)) {
      if (tr.status == FlowStatus::failed) continue;
      CHECK(tr.energy_drift(spec) <= 1e-6 * (1 + std::abs(e)));
    }
  }
}

TEST_CASE("reversing the sheet seed reverses the initial velocity") {
  const auto spec = PotentialSpec::liouville(1.0);
  FlowOptions o;
  o.t_max = 1e-3;
  const auto up = flow(spec, 1.0, cplx{0.4, 0.2}, 1, o);
  const auto down = flow(spec, 1.0, cplx{0.4, 0.2}, -1, o);
  CHECK(std::abs(up.samples.front().w + down.samples.front().w) < 1e-15);
  const cplx du = up.samples.back().z - up.samples.front().z;
  const cplx dd = down.samples.back().z - down.samples.front().z;
  // The first-order terms cancel; what remains is -2 V'(z0) t^2.
  CHECK(std::abs(du + dd) <= 1e-2 * std::abs(du));
}

TEST_CASE("fixed points") {
  const Window w{-4, 4, -3, 3};
  const auto osc = fixed_points(PotentialSpec::harmonic(1.0), 1.0, w);
  REQUIRE(osc.points.size() == 2);
  CHECK(std::abs(osc.points[0].z + 1.0) < 1e-14);
  CHECK(std::abs(osc.points[1].z - 1.0) < 1e-14);

  const auto liou = fixed_points(PotentialSpec::liouville(1.0), 1.0, w);
  CHECK(liou.points.size() == 3);  // -pi, 0, pi
  for (const auto& p : liou.points) {
    CHECK(std::abs(p.z.imag()) < 1e-15);
    CHECK(std::abs(std::remainder(p.z.real(), pi)) < 1e-14);
  }

  const auto geo = fixed_points(PotentialSpec::geometric_liouville(1.0), 0.3, w);
  for (const auto& p : geo.points)
    CHECK(std::abs(0.3 - evaluate_potential(PotentialSpec::geometric_liouville(1.0), p.z)) <= 1e-10 * 1.3);
  for (const auto& s : geo.singularities) CHECK(std::abs(std::remainder(s.z.real() - pi / 2, pi)) < 1e-14);

  const double e = 0.5;
  const auto bl = fixed_points(PotentialSpec::bender_liouville(2 * std::numbers::e * e, 0, 1), e, w);
  REQUIRE_FALSE(bl.points.empty());
  for (const auto& p : bl.points) CHECK(std::abs(p.z - 0.5 * I) <= 1e-7);
  CHECK_THROWS_AS(fixed_points(PotentialSpec::bender_liouville(1, 0, 3), 1.0, w), UnsupportedModel);
}

TEST_CASE("winding indices") {
  const auto osc = PotentialSpec::harmonic(1.0);
  for (int sheet : {1, -1}) {
    const auto r = winding_index(osc, 1.0, 1.0, 0.3, sheet);
    CHECK(std::abs(r.index - 0.5) <= 0.05);
  }
  const double sum = winding_index(osc, 1.0, 1.0, 0.3, 1).index + winding_index(osc, 1.0, -1.0, 0.3, 1).index;
  CHECK(std::abs(sum - 1.0) <= 0.1);
  CHECK(std::abs(winding_index(PotentialSpec::liouville(1.0), 1.0, 0.0, 0.3, 1).index - 0.5) <= 0.05);
  CHECK_THROWS_AS(winding_index(osc, 1.0, 1.0, 0.3, 1, 8), InvalidArgument);
  CHECK_THROWS_AS(winding_index(osc, 1.0, 1.0, -0.3, 1), InvalidArgument);
}

TEST_CASE("branch cut traces") {
  const auto osc = PotentialSpec::harmonic(1.0);
  const auto ray = branch_cut_trace(osc, 1.0, 1.0, 1.0, 2.0, 1e-2);
  CHECK(ray.status == TraceStatus::completed);
  CHECK(ray.vertices.size() > 100);
  for (cplx z : ray.vertices) {
    CHECK(std::abs(z.imag()) <= 1e-8);
    CHECK(z.real() >= 1.0 - 1e-12);
  }
  const auto off = branch_cut_trace(osc, 1.0, 1.0, I, 2.0, 1e-2);
  CHECK(off.status == TraceStatus::no_cut);

  const auto liou = PotentialSpec::liouville(1.0);
  const auto down = branch_cut_trace(liou, 1.0, 0.0, -I, 3.0, 1e-2);
  CHECK(down.vertices.size() > 100);
  for (cplx z : down.vertices) {
    CHECK(std::abs(z.real()) <= 1e-8);
    const cplx f = 1.0 - evaluate_potential(liou, z);
    CHECK(std::abs(f.imag()) <= 2e-8);
    CHECK(f.real() <= 1e-12);
  }

  const Window w{-0.5, 0.5, -1, 1};
  CHECK(branch_cut_trace(liou, 1.0, 0.0, -I, 10.0, 1e-2, &w).status == TraceStatus::left_window);
}

TEST_CASE("bifurcation regimes and merge") {
  const double e = std::numbers::e;
  const std::vector<double> ratios{e, 2 * e, 10 * e};
  const auto scan = bifurcation_scan(ratios);
  CHECK(scan[0].regime == Regime::conjugate);
  CHECK(std::abs(scan[0].z_0.imag() - scan[0].z_minus1.imag()) < 1e-12);
  CHECK(std::abs(scan[0].z_0.real() + scan[0].z_minus1.real()) < 1e-12);
  CHECK(scan[1].regime == Regime::merged);
  CHECK(std::abs(scan[1].z_0 - 0.5 * I) <= 1e-8);
  CHECK(std::abs(scan[1].z_minus1 - 0.5 * I) <= 1e-8);
  CHECK(scan[2].regime == Regime::imaginary);
  CHECK(scan[2].z_0.real() == 0.0);
  CHECK(scan[2].z_minus1.real() == 0.0);
  CHECK(scan[2].z_0.imag() != scan[2].z_minus1.imag());

  const double r = find_merge_ratio(2.0, 30.0);
  CHECK(std::abs(r - 2 * e) <= 1e-6);
  CHECK(std::abs(-0.5 * I * lambert_w(0, -2.0 / r) - 0.5 * I) <= 1e-8);
  CHECK_THROWS_AS(find_merge_ratio(10.0, 30.0), InvalidArgument);
  const std::vector<double> bad{-1.0};
  CHECK_THROWS_AS(bifurcation_scan(bad), InvalidArgument);
}
