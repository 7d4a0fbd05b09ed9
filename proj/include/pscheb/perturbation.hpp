#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pscheb/hamiltonian.hpp"

namespace pscheb {

/// H = h0 + h1 + kinetic_antisym with h0 Hermitian and h1 anti-Hermitian.
struct PerturbationSplit {
  CMatrix h0, h1;
  RMatrix kinetic_antisym;  // (K - K^T) / 2, dropped from h0
  double kinetic_defect = 0;  // ||kinetic_antisym||_F
  double epsilon = 1.0;
  std::vector<double> nodes;  // interior nodes
  CMatrix momentum;           // p = -i D / L on interior nodes
  double v0 = 1.0;
  double half_width = 1.0;
};

/// Liouville only: h0 = sym(K) + diag(v0 cos 2x), h1 = diag(i v0 sin 2x).
PerturbationSplit split_hamiltonian(const PotentialSpec& spec,
                                    const DomainSpec& domain);

/// Solves [h0, Q] = rhs in the eigenbasis of Hermitian h0. gap_tol < 0 picks
/// 1e-8 times the spectral radius of h0.
CMatrix solve_commutator(const CMatrix& h0, const CMatrix& rhs,
                         double gap_tol = -1);

struct SeriesResiduals {
  double q1 = 0, q3 = 0;  // ||[h0, Q] - R||_F / ||R||_F
  std::optional<double> q5;
  double q1_interior = 0;  // ||([h0, Q1] - 2 h1)_interior||_F / ||h1||_F
};

/// Deviations from the closed forms Q1 = -p and h2 = -(1/2) v0 cos 2x on
/// interior rows that exclude the 4 nodes nearest each boundary.
struct ClosedFormGaps {
  double q1_row_gap = 0;        // max_i ||(Q1 + p)_i|| / ||p_i||
  double h2_diagonal_gap = 0;   // max_i |h2_ii + v0 cos 2x_i / 2| / max |v0 cos 2x / 2|
  double q1_action_gap = 0;     // same comparisons applied to smooth box modes
  double h2_action_gap = 0;
};

struct PerturbationResult {
  CMatrix q1, q3, h2, h4;
  std::optional<CMatrix> q5;
  std::string q5_error;
  SeriesResiduals residuals;
  ClosedFormGaps closed_form_gaps;
};

/// Boundary nodes excluded from closed-form comparisons on each side.
inline constexpr int closed_form_margin = 4;
/// Boundary nodes excluded from the Q1 interior residual on each side.
inline constexpr int residual_margin = 2;

PerturbationResult series_terms(const PerturbationSplit& split,
                                double gap_tol = -1);

CMatrix commutator(const CMatrix& a, const CMatrix& b);

struct ShiftReport {
  double epsilon = 0;
  double shift = 0;                   // imaginary shift artanh(eps) / 2
  double amplitude_factor = 0;        // sqrt((1 - eps) / (1 + eps))
  double closed_form_amplitude = 0;   // sqrt(1 - eps^2)
  double unshifted_gap = 0;           // max |V(x + i shift) - V(x)|
  double potential_gap = 0;           // max |V(x + i shift) - factor V(x)|
  std::optional<double> deformed_gap; // Liouville: max |V_eps(x + i shift) - sqrt(1-eps^2) v0 cos 2x|
  std::vector<double> levels;         // shifted-potential spectrum (real parts)
  std::vector<double> deformed_levels;
  std::vector<double> reference_levels;  // (n pi / 2L)^2
  double max_relative_deviation = 0;
  double deformed_relative_deviation = 0;
};

ShiftReport shift_check(const PotentialSpec& spec, const DomainSpec& domain,
                        double eps, int level_count = 5);

}  // namespace pscheb
