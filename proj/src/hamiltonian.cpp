#include "pscheb/hamiltonian.hpp"

#include <cstdio>

#include "pscheb/errors.hpp"

namespace pscheb {

RMatrix kinetic_matrix(int order, double half_width) {
  return -second_order_trimmed(order, half_width).entries;
}

HamiltonianMatrix assemble_shifted(const PotentialSpec& spec,
                                   const DomainSpec& domain, cplx shift) {
  spec.validate();
  domain.validate();
  HamiltonianMatrix h;
  h.spec = spec;
  h.domain = domain;
  h.grid = cheb_points(domain.order, domain.half_width);
  h.entries = kinetic_matrix(domain.order, domain.half_width).cast<cplx>();
  for (int j = 1; j < domain.order; ++j) {
    const double x = h.grid.nodes[j];
    cplx v;
    try {
      v = evaluate_potential(spec, x + shift);
    } catch (const SingularityError& e) {
      char buf[160];
      std::snprintf(buf, sizeof buf,
                    "potential singular at interior node %d (x = %.17g): ", j,
                    x);
      throw SingularityError(buf + std::string(e.what()));
    }
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      char buf[120];
      std::snprintf(buf, sizeof buf,
                    "potential not finite at interior node %d (x = %.17g)", j,
                    x);
      throw SingularityError(buf);
    }
    h.entries(j - 1, j - 1) += v;
  }
  return h;
}

HamiltonianMatrix assemble_hamiltonian(const PotentialSpec& spec,
                                       const DomainSpec& domain) {
  return assemble_shifted(spec, domain, 0.0);
}

}  // namespace pscheb
