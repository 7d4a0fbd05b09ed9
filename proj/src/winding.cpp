#include <cmath>
#include <numbers>

#include "pscheb/dynamics.hpp"
#include "pscheb/errors.hpp"

namespace pscheb {

IndexResult winding_index(const PotentialSpec& spec, double energy, cplx center,
                          double radius, int sheet, int samples) {
  spec.validate();
  if (!(radius > 0)) throw InvalidArgument("winding_index: radius must be positive");
  if (samples < 16) throw InvalidArgument("winding_index: need at least 16 samples");
  if (sheet != 1 && sheet != -1) throw InvalidArgument("sheet must be +1 or -1");

  constexpr double two_pi = 2 * std::numbers::pi;
  const double delta = two_pi / samples;
  auto point = [&](double theta) { return center + std::polar(radius, theta); };
  auto rest = [&](double theta) { return energy - evaluate_potential(spec, point(theta)); };

  // Locate where E - V crosses the negative real axis (the principal cut) so
  // the open arc can leave its gap there.
  double gap_at = 0.0;
  for (int m = 0; m < samples; ++m) {
    const double t0 = m * delta, t1 = (m + 1) * delta;
    const cplx f0 = rest(t0), f1 = rest(t1);
    if (f0.imag() * f1.imag() <= 0 && f0.real() < 0 && f1.real() < 0 &&
        f0.imag() != f1.imag()) {
      gap_at = t0 + delta * f0.imag() / (f0.imag() - f1.imag());
      break;
    }
  }

  const double start = gap_at + delta / 2;
  const double sweep = two_pi - delta;
  cplx prev = static_cast<double>(sheet) * std::sqrt(rest(start));
  if (prev == cplx{0.0, 0.0})
    throw InvalidArgument("winding_index: circle passes through a branch point");
  double total = 0;
  for (int j = 1; j < samples; ++j) {
    const double theta = start + sweep * (static_cast<double>(j) / (samples - 1));
    const cplx root = std::sqrt(rest(theta));
    const cplx w = std::abs(root - prev) <= std::abs(root + prev) ? root : -root;
    const double step = std::arg(w / prev);
    if (std::abs(step) > std::numbers::pi / 2)
      throw ResolutionError(
          "winding_index: direction jumped by more than pi/2 between samples; "
          "increase samples or shrink the radius");
    total += step;
    prev = w;
  }
  return {center, radius, total, total / two_pi, sheet};
}

std::string_view to_string(TraceStatus s) {
  switch (s) {
    case TraceStatus::completed: return "completed";
    case TraceStatus::left_window: return "left_window";
    case TraceStatus::no_cut: return "no_cut";
    case TraceStatus::corrector_failed: return "corrector_failed";
    case TraceStatus::sign_change: return "sign_change";
    case TraceStatus::critical_point: return "critical_point";
  }
  return "unknown";
}

BranchCut branch_cut_trace(const PotentialSpec& spec, double energy, cplx start,
                           cplx direction, double max_len, double step,
                           const Window* window) {
  spec.validate();
  if (!(max_len > 0) || !(step > 0))
    throw InvalidArgument("branch_cut_trace: max_len and step must be positive");
  if (std::abs(direction) == 0)
    throw InvalidArgument("branch_cut_trace: direction must be nonzero");
  const double tol = 1e-8 * (1.0 + std::abs(energy));
  auto rest = [&](cplx z) { return energy - evaluate_potential(spec, z); };
  auto slope = [&](cplx z) { return -potential_derivative(spec, z); };

  // Along the level set Im F = 0 the step h must make F' h real; the branch
  // with Re F decreasing is h ~ -conj(F').
  auto tangent = [&](cplx z, cplx& t) {
    const cplx d = slope(z);
    if (std::abs(d) < 1e-300) return false;
    t = -std::conj(d) / std::abs(d);
    return true;
  };

  BranchCut cut;
  cut.vertices.push_back(start);
  cplx t;
  if (!tangent(start, t)) {
    cut.status = TraceStatus::critical_point;
    return cut;
  }
  const cplx dir = direction / std::abs(direction);
  if (std::real(t * std::conj(dir)) < std::cos(std::numbers::pi / 4)) {
    cut.status = TraceStatus::no_cut;
    return cut;
  }

  cplx z = start;
  double length = 0;
  const long budget = static_cast<long>(10 * max_len / step) + 100;
  for (long iter = 0; length < max_len - 1e-12 * max_len; ++iter) {
    if (iter > budget) {
      cut.status = TraceStatus::corrector_failed;
      return cut;
    }
    const double h = std::min(step, max_len - length);
    cplx tz;
    if (!tangent(z, tz)) {
      cut.status = TraceStatus::critical_point;
      return cut;
    }
    cplx next = z + h * tz;
    // Newton on Im F along its gradient i conj(F').
    bool ok = false;
    for (int it = 0; it < 30; ++it) {
      const double g = rest(next).imag();
      if (std::abs(g) <= 1e-3 * tol) {
        ok = true;
        break;
      }
      const cplx grad = cplx{0.0, 1.0} * std::conj(slope(next));
      const double g2 = std::norm(grad);
      if (g2 == 0) break;
      next -= g / g2 * grad;
    }
    if (!ok) ok = std::abs(rest(next).imag()) <= tol;
    if (!ok) {
      cut.status = TraceStatus::corrector_failed;
      return cut;
    }
    if (rest(next).real() > tol) {
      cut.status = TraceStatus::sign_change;
      return cut;
    }
    if (window && !window->contains(next)) {
      cut.status = TraceStatus::left_window;
      return cut;
    }
    length += std::abs(next - z);
    z = next;
    cut.vertices.push_back(z);
  }
  cut.status = TraceStatus::completed;
  return cut;
}

}  // namespace pscheb
