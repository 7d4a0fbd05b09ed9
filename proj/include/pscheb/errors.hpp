#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace pscheb {

struct InvalidArgument : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct UnsupportedModel : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NumericalFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Potential evaluated at (or within the guard distance of) a pole.
struct SingularityError : NumericalFailure {
  using NumericalFailure::NumericalFailure;
};

struct NearDefectiveError : NumericalFailure {
  NearDefectiveError(const std::string& what, double condition)
      : NumericalFailure(what), condition(condition) {}
  double condition;
};

struct NotPositiveDefinite : NumericalFailure {
  using NumericalFailure::NumericalFailure;
};

struct SingularFit : NumericalFailure {
  using NumericalFailure::NumericalFailure;
};

/// Resonant right-hand side in a commutator equation.
struct ObstructionError : NumericalFailure {
  using NumericalFailure::NumericalFailure;
};

/// Winding computation lost branch continuity; more samples are needed.
struct ResolutionError : NumericalFailure {
  using NumericalFailure::NumericalFailure;
};

struct StiffnessError : NumericalFailure {
  StiffnessError(const std::string& what, double t, std::complex<double> z,
                 std::complex<double> w)
      : NumericalFailure(what), t(t), z(z), w(w) {}
  double t;
  std::complex<double> z, w;
};

struct ConfigError : std::runtime_error {
  ConfigError(const std::string& what, int line = 0, int column = 0)
      : std::runtime_error(what), line(line), column(column) {}
  int line, column;
};

}  // namespace pscheb
