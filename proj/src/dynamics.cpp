#include "pscheb/dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include <boost/numeric/odeint.hpp>

#include "pscheb/errors.hpp"
#include "pscheb/lambert_w.hpp"
#include "pscheb/parallel.hpp"

namespace pscheb {

namespace odeint = boost::numeric::odeint;

namespace {

using State = std::array<double, 4>;  // Re z, Im z, Re w, Im w

cplx z_of(const State& s) { return {s[0], s[1]}; }
cplx w_of(const State& s) { return {s[2], s[3]}; }

}  // namespace

std::string_view to_string(FlowStatus s) {
  switch (s) {
    case FlowStatus::completed: return "completed";
    case FlowStatus::escaped: return "escaped";
    case FlowStatus::captured: return "captured";
    case FlowStatus::failed: return "failed";
  }
  return "unknown";
}

int sheet_of(const PotentialSpec& spec, double energy, cplx z, cplx w) {
  const cplx s = std::sqrt(energy - evaluate_potential(spec, z));
  return std::abs(w - s) <= std::abs(w + s) ? 1 : -1;
}

double Trajectory::energy_drift(const PotentialSpec& spec) const {
  double drift = 0;
  for (const auto& p : samples)
    drift = std::max(drift,
                     std::abs(p.w * p.w + evaluate_potential(spec, p.z) - energy));
  return drift;
}

Trajectory flow(const PotentialSpec& spec, double energy, cplx z0, int sheet,
                const FlowOptions& opts) {
  spec.validate();
  if (sheet != 1 && sheet != -1) throw InvalidArgument("sheet must be +1 or -1");
  if (!(opts.t_max > 0) || !(opts.tol > 0))
    throw InvalidArgument("flow: t_max and tol must be positive");
  const cplx f0 = energy - evaluate_potential(spec, z0);
  if (std::abs(f0) <= 1e-14 * (1.0 + std::abs(energy)))
    throw InvalidArgument("flow: start point is a branch point (E - V(z0) = 0)");

  Trajectory tr;
  tr.sheet_seed = sheet;
  tr.energy = energy;
  State x{z0.real(), z0.imag(), 0, 0};
  const cplx w0 = static_cast<double>(sheet) * std::sqrt(f0);
  x[2] = w0.real();
  x[3] = w0.imag();

  auto rhs = [&spec](const State& s, State& d, double) {
    const cplx dz = 2.0 * w_of(s);
    const cplx dw = -potential_derivative(spec, z_of(s));
    d = {dz.real(), dz.imag(), dw.real(), dw.imag()};
  };
  auto record = [&](double t, const State& s) {
    const cplx z = z_of(s), w = w_of(s);
    tr.samples.push_back({t, z, w, sheet_of(spec, energy, z, w)});
  };
  auto project = [&](State& s) {
    const cplx target = energy - evaluate_potential(spec, z_of(s));
    const cplx r = std::sqrt(target);
    // Close to a turning point both roots are tiny and the choice is ambiguous.
    if (std::abs(r) <= 1e-3 * std::sqrt(1.0 + std::abs(energy))) return;
    const cplx w = w_of(s);
    const cplx pick = std::abs(w - r) <= std::abs(w + r) ? r : -r;
    s[2] = pick.real();
    s[3] = pick.imag();
  };

  auto stepper = odeint::make_controlled<odeint::runge_kutta_dopri5<State>>(
      opts.tol, opts.tol);
  State dxdt;
  double t = 0, dt = std::min(opts.initial_step, opts.t_max);
  rhs(x, dxdt, t);
  record(t, x);
  long out_index = 1;
  double next_out = opts.sample_interval > 0 ? opts.sample_interval : opts.t_max;

  for (long step = 0;; ++step) {
    if (step >= opts.max_steps)
      throw StiffnessError("flow: step budget exhausted", t, z_of(x), w_of(x));
    const double remaining = std::min(next_out, opts.t_max) - t;
    const bool clipped = dt >= remaining;
    double h = clipped ? remaining : dt;
    const auto res = stepper.try_step(rhs, x, dxdt, t, h);
    if (res == odeint::fail) {
      dt = h;
      if (dt < opts.min_step)
        throw StiffnessError("flow: step size underflow", t, z_of(x), w_of(x));
      continue;
    }
    // On success h holds the proposed next step; a clipped step keeps the
    // previous (larger) estimate and lands exactly on the output time.
    if (clipped)
      t = std::min(next_out, opts.t_max);
    else
      dt = h;
    if (opts.project_energy) {
      project(x);
      rhs(x, dxdt, t);
    }
    const cplx z = z_of(x), w = w_of(x);
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) ||
        !std::isfinite(w.real()) || !std::isfinite(w.imag()))
      throw NumericalFailure("flow: state became non-finite");

    const bool at_output = opts.sample_interval <= 0 || clipped;
    const bool escaped = std::abs(z) > opts.escape_radius ||
                         std::abs(evaluate_potential(spec, z)) > opts.escape_potential;
    // A turning point with V' != 0 is passed through; only a stall with
    // both w and w' vanishing counts as capture.
    const bool captured = std::abs(w) < opts.capture_speed &&
                          std::abs(potential_derivative(spec, z)) < opts.capture_speed;
    const bool done = t >= opts.t_max;
    if (at_output || escaped || captured || done) record(t, x);
    if (escaped) {
      tr.status = FlowStatus::escaped;
      break;
    }
    if (captured) {
      tr.status = FlowStatus::captured;
      break;
    }
    if (done) break;
    if (clipped && opts.sample_interval > 0)
      next_out = static_cast<double>(++out_index) * opts.sample_interval;
  }
  return tr;
}

namespace {

Trajectory guarded_flow(const PotentialSpec& spec, double energy,
                        const FlowSeed& seed, const FlowOptions& opts) {
  try {
    return flow(spec, energy, seed.z0, seed.sheet, opts);
  } catch (const std::exception& e) {
    Trajectory tr;
    tr.sheet_seed = seed.sheet;
    tr.energy = energy;
    tr.status = FlowStatus::failed;
    tr.message = e.what();
    return tr;
  }
}

}  // namespace

std::vector<Trajectory> flow_bundle(const PotentialSpec& spec, double energy,
                                    std::span<const FlowSeed> seeds,
                                    const FlowOptions& opts) {
  std::vector<Trajectory> out(seeds.size());
  parallel_for(static_cast<std::int64_t>(seeds.size()), [&](std::int64_t i) {
    out[i] = guarded_flow(spec, energy, seeds[i], opts);
  });
  return out;
}

namespace serial {

std::vector<Trajectory> flow_bundle(const PotentialSpec& spec, double energy,
                                    std::span<const FlowSeed> seeds,
                                    const FlowOptions& opts) {
  std::vector<Trajectory> out;
  out.reserve(seeds.size());
  for (const auto& s : seeds) out.push_back(guarded_flow(spec, energy, s, opts));
  return out;
}

}  // namespace serial

namespace {

constexpr double pi = std::numbers::pi;

// Integers k with lo <= base + k * period <= hi.
std::pair<long, long> copy_range(double base, double period, double lo, double hi) {
  return {static_cast<long>(std::ceil((lo - base) / period)),
          static_cast<long>(std::floor((hi - base) / period))};
}

void add_periodic(std::vector<FixedPoint>& out, cplx base, const Window& w,
                  const char* label) {
  if (base.imag() < w.im_min || base.imag() > w.im_max) return;
  const auto [k0, k1] = copy_range(base.real(), pi, w.re_min, w.re_max);
  for (long k = k0; k <= k1; ++k)
    out.push_back({base + static_cast<double>(k) * pi, label, static_cast<int>(k)});
}

}  // namespace

FixedPointSet fixed_points(const PotentialSpec& spec, double energy,
                           const Window& window, int kmin, int kmax) {
  spec.validate();
  FixedPointSet out;
  const cplx I{0.0, 1.0};
  switch (spec.kind) {
    case PotentialKind::harmonic: {
      if (spec.v0 == 0) break;
      const cplx r = std::sqrt(cplx{energy / spec.v0, 0.0});
      for (cplx z : {r, -r})
        if (window.contains(z)) out.points.push_back({z, "branch-point", 0});
      break;
    }
    case PotentialKind::liouville: {
      if (energy == 0 || spec.v0 == 0)
        throw InvalidArgument("fixed_points: Liouville needs E != 0 and v0 != 0");
      const cplx base = -0.5 * I * std::log(cplx{energy / spec.v0, 0.0});
      add_periodic(out.points, base, window, "branch-point");
      break;
    }
    case PotentialKind::geometric_liouville: {
      if (energy == 0)
        throw InvalidArgument("fixed_points: geometric Liouville needs E != 0");
      const cplx arg{spec.v0 / energy - 1.0, 0.0};
      if (arg != cplx{0.0, 0.0})
        add_periodic(out.points, std::log(arg) / (2.0 * I), window, "branch-point");
      add_periodic(out.singularities, cplx{pi / 2, 0.0}, window, "singularity");
      break;
    }
    case PotentialKind::bender_liouville: {
      if (spec.power != 1 || spec.v2 != 0)
        throw UnsupportedModel(
            "fixed_points: bender_liouville only supported for n = 1, v2 = 0");
      if (energy == 0 || spec.v1 == 0)
        throw InvalidArgument("fixed_points: bender_liouville needs E != 0 and v1 != 0");
      for (int k = kmin; k <= kmax; ++k) {
        const cplx z = -0.5 * I * lambert_w(k, cplx{-2.0 * energy / spec.v1, 0.0});
        if (window.contains(z)) out.points.push_back({z, "branch-point", k});
      }
      break;
    }
    case PotentialKind::power_pt: {
      const double n = spec.power;
      if (n == 0 || energy == 0) break;
      // (iz)^n = -E on the principal branch; try every root phase and keep
      // the ones the principal power reproduces.
      const cplx minus_e{-energy, 0.0};
      const double mod = std::pow(std::abs(minus_e), 1.0 / n);
      const long span = static_cast<long>(std::ceil(n)) + 1;
      for (long m = -span; m <= span; ++m) {
        const double phase = (std::arg(minus_e) + 2 * pi * m) / n;
        if (phase <= -pi || phase > pi) continue;
        const cplx z = -I * std::polar(mod, phase);
        if (!window.contains(z)) continue;
        if (std::abs(energy - evaluate_potential(spec, z)) >
            1e-10 * (1.0 + std::abs(energy)))
          continue;
        out.points.push_back({z, "branch-point", static_cast<int>(m)});
      }
      break;
    }
  }
  // Keep only points that satisfy the defining equation to tolerance.
  std::erase_if(out.points, [&](const FixedPoint& p) {
    return std::abs(energy - evaluate_potential(spec, p.z)) >
           1e-10 * (1.0 + std::abs(energy));
  });
  auto by_position = [](const FixedPoint& a, const FixedPoint& b) {
    if (a.z.real() != b.z.real()) return a.z.real() < b.z.real();
    return a.z.imag() < b.z.imag();
  };
  std::sort(out.points.begin(), out.points.end(), by_position);
  std::sort(out.singularities.begin(), out.singularities.end(), by_position);
  return out;
}

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::conjugate: return "conjugate";
    case Regime::merged: return "merged";
    case Regime::imaginary: return "imaginary";
  }
  return "unknown";
}

std::vector<BifurcationPoint> bifurcation_scan(std::span<const double> ratios) {
  const double critical = 2.0 * std::numbers::e;
  const cplx I{0.0, 1.0};
  std::vector<BifurcationPoint> out;
  out.reserve(ratios.size());
  for (double r : ratios) {
    if (!(r > 0) || !std::isfinite(r))
      throw InvalidArgument("bifurcation_scan: ratios must be positive");
    const cplx x{-2.0 / r, 0.0};
    BifurcationPoint p;
    p.ratio = r;
    p.z_minus1 = -0.5 * I * lambert_w(-1, x);
    p.z_0 = -0.5 * I * lambert_w(0, x);
    if (std::abs(r - critical) <= 1e-9)
      p.regime = Regime::merged;
    else
      p.regime = r < critical ? Regime::conjugate : Regime::imaginary;
    out.push_back(p);
  }
  return out;
}

double find_merge_ratio(double lo, double hi, double tol) {
  auto real_branch = [](double r) {
    return lambert_w(0, cplx{-2.0 / r, 0.0}).imag() == 0.0;
  };
  if (!(lo > 0) || !(hi > lo) || real_branch(lo) || !real_branch(hi))
    throw InvalidArgument("find_merge_ratio: [lo, hi] must bracket the merge");
  while (hi - lo > tol * hi) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (real_branch(mid) ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace pscheb
