#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "pscheb/hamiltonian.hpp"

namespace pscheb {

/// Eigenpairs sorted by (Re, Im); columns unit-norm with the largest
/// component real and positive.
struct SpectrumResult {
  CVector eigenvalues;
  CMatrix eigenvectors;
  std::vector<bool> resolved;
  double max_residual = 0;  // max_i ||H v_i - l_i v_i|| / ||H||_F

  Eigen::Index size() const { return eigenvalues.size(); }

  /// Real parts of the lowest `count` levels (all levels when count == 0).
  std::vector<double> real_levels(std::size_t count = 0,
                                  bool resolved_only = false) const;
};

SpectrumResult eigenpairs(const CMatrix& h);
inline SpectrumResult eigenpairs(const HamiltonianMatrix& h) {
  return eigenpairs(h.entries);
}

/// Eigenpairs at order N, with resolved[i] set when order N + delta_n has an
/// eigenvalue within tol (1 + |l_i|).
SpectrumResult filter_resolved(const PotentialSpec& spec,
                               const DomainSpec& domain, int delta_n,
                               double tol);

enum class FitModel { linear, quadratic };

std::string_view to_string(FitModel m);
FitModel parse_fit_model(std::string_view name);

/// linear: E_n = c (n + d); quadratic: E_n = c (n + d)^2; n = 1, 2, ...
struct FitResult {
  FitModel model = FitModel::linear;
  double c = 0, d = 0, rms_residual = 0;
};

FitResult fit_linear(std::span<const double> levels);

/// Least squares in E itself, started from fit_quadratic_linearized.
FitResult fit_quadratic(std::span<const double> levels);

/// Linear least squares on sqrt(E_n) = a (n + d), c = a^2.
FitResult fit_quadratic_linearized(std::span<const double> levels);

FitResult fit(FitModel model, std::span<const double> levels);

struct EvolutionTrace {
  std::vector<double> times;
  std::vector<double> norms;  // ||exp(-i t H)||_2
  std::optional<double> overflow_time;
};

/// Threshold above which the propagator norm counts as overflow.
inline constexpr double evolution_overflow = 1e300;

double propagator_norm(const CMatrix& h, double t);

/// Evaluates times in parallel; identical to serial::evolution_norm.
EvolutionTrace evolution_norm(const CMatrix& h, std::span<const double> times);

namespace serial {
EvolutionTrace evolution_norm(const CMatrix& h, std::span<const double> times);
}

}  // namespace pscheb
