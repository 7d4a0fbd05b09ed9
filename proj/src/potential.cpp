#include "pscheb/potential.hpp"

#include <cmath>
#include <numbers>

#include "pscheb/errors.hpp"

namespace pscheb {

namespace {

constexpr cplx I{0.0, 1.0};

bool is_small_integer(double p) {
  return p == std::floor(p) && p >= 0 && p <= 64;
}

// (iz)^n on the principal branch; integer powers by repeated product so that
// (iz)^0 = 1 and no logarithm is taken.
cplx ipow(cplx u, double n) {
  if (is_small_integer(n)) {
    cplx r = 1.0;
    for (int k = 0; k < static_cast<int>(n); ++k) r *= u;
    return r;
  }
  if (u == cplx{0.0, 0.0}) return 0.0;
  return std::exp(n * std::log(u));
}

cplx geometric_denominator(cplx z) {
  const cplx den = 1.0 + std::exp(2.0 * I * z);
  if (std::abs(den) < pole_guard)
    throw SingularityError("geometric Liouville potential has a pole at z = (" +
                           std::to_string(z.real()) + ", " +
                           std::to_string(z.imag()) + ")");
  return den;
}

}  // namespace

std::string_view to_string(PotentialKind kind) {
  switch (kind) {
    case PotentialKind::harmonic: return "harmonic";
    case PotentialKind::liouville: return "liouville";
    case PotentialKind::geometric_liouville: return "geometric_liouville";
    case PotentialKind::bender_liouville: return "bender_liouville";
    case PotentialKind::power_pt: return "power_pt";
  }
  return "unknown";
}

PotentialKind parse_potential_kind(std::string_view name) {
  for (auto k : {PotentialKind::harmonic, PotentialKind::liouville,
                 PotentialKind::geometric_liouville,
                 PotentialKind::bender_liouville, PotentialKind::power_pt})
    if (to_string(k) == name) return k;
  throw UnsupportedModel("unknown potential kind '" + std::string(name) + "'");
}

PotentialSpec PotentialSpec::harmonic(double v0) {
  return {PotentialKind::harmonic, v0, 1.0, 0.0, 0.0};
}
PotentialSpec PotentialSpec::liouville(double v0) {
  return {PotentialKind::liouville, v0, 1.0, 0.0, 0.0};
}
PotentialSpec PotentialSpec::geometric_liouville(double v0) {
  return {PotentialKind::geometric_liouville, v0, 1.0, 0.0, 0.0};
}
PotentialSpec PotentialSpec::bender_liouville(double v1, double v2,
                                              double power) {
  return {PotentialKind::bender_liouville, 1.0, v1, v2, power};
}
PotentialSpec PotentialSpec::power_pt(double power) {
  return {PotentialKind::power_pt, 1.0, 1.0, 0.0, power};
}

void PotentialSpec::validate() const {
  if (!std::isfinite(v0) || !std::isfinite(v1) || !std::isfinite(v2))
    throw InvalidArgument("potential amplitudes must be finite");
  if (!std::isfinite(power) || power < 0)
    throw InvalidArgument("potential power must be finite and >= 0");
}

cplx evaluate_potential(const PotentialSpec& s, cplx z) {
  switch (s.kind) {
    case PotentialKind::harmonic: return s.v0 * z * z;
    case PotentialKind::liouville: return s.v0 * std::exp(2.0 * I * z);
    case PotentialKind::geometric_liouville:
      return s.v0 / geometric_denominator(z);
    case PotentialKind::bender_liouville: {
      const cplx e = std::exp(2.0 * I * z);
      return -s.v1 * ipow(I * z, s.power) * e + s.v2 * e;
    }
    case PotentialKind::power_pt: return -ipow(I * z, s.power);
  }
  return 0.0;
}

cplx potential_derivative(const PotentialSpec& s, cplx z) {
  switch (s.kind) {
    case PotentialKind::harmonic: return 2.0 * s.v0 * z;
    case PotentialKind::liouville: return 2.0 * I * s.v0 * std::exp(2.0 * I * z);
    case PotentialKind::geometric_liouville: {
      const cplx den = geometric_denominator(z);
      return -2.0 * I * s.v0 * std::exp(2.0 * I * z) / (den * den);
    }
    case PotentialKind::bender_liouville: {
      // d/dz (iz)^n = i n (iz)^{n-1}
      const cplx e = std::exp(2.0 * I * z);
      const cplx u = I * z;
      const cplx p = ipow(u, s.power);
      const cplx dp = s.power == 0 ? cplx{0.0} : I * s.power * ipow(u, s.power - 1);
      return -s.v1 * (dp + 2.0 * I * p) * e + 2.0 * I * s.v2 * e;
    }
    case PotentialKind::power_pt: {
      if (s.power == 0) return 0.0;
      return -I * s.power * ipow(I * z, s.power - 1);
    }
  }
  return 0.0;
}

DomainSpec DomainSpec::periodic(int k, int order) {
  DomainSpec d;
  d.half_width = std::numbers::pi * k / 2.0;
  d.order = order;
  d.periodic_index = k;
  return d;
}

void DomainSpec::validate() const {
  if (!(half_width > 0) || !std::isfinite(half_width))
    throw InvalidArgument("domain half-width must be positive and finite");
  if (order < 2)
    throw InvalidArgument("domain order must be >= 2, got " +
                          std::to_string(order));
  if (periodic_index) {
    const double expected = std::numbers::pi * *periodic_index / 2.0;
    if (*periodic_index < 1 || std::abs(half_width - expected) > 1e-12)
      throw InvalidArgument("half-width does not match pi k / 2 for k = " +
                            std::to_string(*periodic_index));
  }
}

}  // namespace pscheb
