#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "pscheb/types.hpp"

namespace pscheb {

enum class PotentialKind {
  harmonic,             // v0 z^2
  liouville,            // v0 e^{2iz}
  geometric_liouville,  // v0 / (1 + e^{2iz})
  bender_liouville,     // -v1 (iz)^n e^{2iz} + v2 e^{2iz}
  power_pt,             // -(iz)^n
};

std::string_view to_string(PotentialKind kind);
PotentialKind parse_potential_kind(std::string_view name);

struct PotentialSpec {
  PotentialKind kind = PotentialKind::harmonic;
  double v0 = 1.0;
  double v1 = 1.0;
  double v2 = 0.0;
  double power = 0.0;

  static PotentialSpec harmonic(double v0 = 1.0);
  static PotentialSpec liouville(double v0 = 1.0);
  static PotentialSpec geometric_liouville(double v0 = 1.0);
  static PotentialSpec bender_liouville(double v1, double v2, double power);
  static PotentialSpec power_pt(double power);

  void validate() const;
};

/// Distance below which |1 + e^{2iz}| counts as a pole.
inline constexpr double pole_guard = 1e-14;

cplx evaluate_potential(const PotentialSpec& spec, cplx z);
cplx potential_derivative(const PotentialSpec& spec, cplx z);

struct DomainSpec {
  double half_width = 1.0;
  int order = 70;
  std::optional<int> periodic_index;

  /// L = pi k / 2.
  static DomainSpec periodic(int k, int order);
  void validate() const;
};

}  // namespace pscheb
