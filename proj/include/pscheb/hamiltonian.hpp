#pragma once

#include "pscheb/chebdiff.hpp"
#include "pscheb/potential.hpp"

namespace pscheb {

/// H = -D2~ / L^2 + diag(V(x_j)) over interior nodes (Dirichlet by trimming).
struct HamiltonianMatrix {
  CMatrix entries;
  ChebGrid grid;
  PotentialSpec spec;
  DomainSpec domain;

  Eigen::Index size() const { return entries.rows(); }
};

/// -D2~ / L^2 as a real matrix.
RMatrix kinetic_matrix(int order, double half_width);

HamiltonianMatrix assemble_hamiltonian(const PotentialSpec& spec,
                                       const DomainSpec& domain);

/// Same kinetic part, potential replaced by V(x + shift).
HamiltonianMatrix assemble_shifted(const PotentialSpec& spec,
                                   const DomainSpec& domain, cplx shift);

}  // namespace pscheb
