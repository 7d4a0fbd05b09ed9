#include <doctest.h>

#include <omp.h>

#include <stdexcept>

#include "pscheb/dynamics.hpp"
#include "pscheb/hamiltonian.hpp"
#include "pscheb/parallel.hpp"
#include "pscheb/pseudospectrum.hpp"
#include "pscheb/spectral.hpp"

using namespace pscheb;

TEST_CASE("parallel field matches the serial reference bitwise") {
  const auto h = assemble_hamiltonian(PotentialSpec::bender_liouville(1, 0, 3), {3.0, 30, std::nullopt});
  const Window w{-10, 30, -15, 15};
  const auto ref = serial::field(h.entries, w, 33);
  for (int threads : {1, 2, 4}) {
    omp_set_num_threads(threads);
    const auto par = field(h.entries, w, 33);
    CHECK(par.re_axis == ref.re_axis);
    CHECK(par.im_axis == ref.im_axis);
    CHECK((par.values.array() == ref.values.array()).all());
  }
}

TEST_CASE("parallel evolution norms match the serial reference bitwise") {
  const auto h = assemble_hamiltonian(PotentialSpec::liouville(1.0), DomainSpec::periodic(1, 24));
  const std::vector<double> t{0, 0.5, 1, 2, 4, 8, 16};
  const auto ref = serial::evolution_norm(h.entries, t);
  for (int threads : {1, 3}) {
    omp_set_num_threads(threads);
    const auto par = evolution_norm(h.entries, t);
    CHECK(par.norms == ref.norms);
    CHECK(par.times == ref.times);
  }
}

TEST_CASE("parallel flow bundle matches the serial reference bitwise") {
  const auto spec = PotentialSpec::liouville(1.0);
  std::vector<FlowSeed> seeds;
  for (double re = -2; re <= 2; re += 0.5) seeds.push_back({{re, 0.3}, re < 0 ? 1 : -1});
  seeds.push_back({{0.0, 0.0}, 1});  // branch point: reported as failed
  FlowOptions o;
  o.t_max = 3;
  o.sample_interval = 0.05;
  const auto ref = serial::flow_bundle(spec, 1.0, seeds, o);
  CHECK(ref.back().status == FlowStatus::failed);
  CHECK_FALSE(ref.back().message.empty());
  for (int threads : {1, 4}) {
    omp_set_num_threads(threads);
    const auto par = flow_bundle(spec, 1.0, seeds, o);
    REQUIRE(par.size() == ref.size());
    for (std::size_t i = 0; i < par.size(); ++i) {
      REQUIRE(par[i].samples.size() == ref[i].samples.size());
      CHECK(par[i].status == ref[i].status);
      for (std::size_t k = 0; k < par[i].samples.size(); ++k) {
        CHECK(par[i].samples[k].z == ref[i].samples[k].z);
        CHECK(par[i].samples[k].w == ref[i].samples[k].w);
      }
    }
  }
}

TEST_CASE("parallel_for rethrows the lowest-index failure") {
  omp_set_num_threads(4);
  try {
    parallel_for(100, [](std::size_t i) {
      if (i % 7 == 3) throw std::runtime_error("item " + std::to_string(i));
    });
    FAIL("expected an exception");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()) == "item 3");
  }
}
