#pragma once

#include <span>
#include <string>
#include <vector>

#include "pscheb/potential.hpp"

namespace pscheb {

/// One sample of the complexified flow z' = 2w, w' = -V'(z), w^2 = E - V(z).
struct FlowSample {
  double t = 0;
  cplx z, w;
  int sheet = 1;  // +1 when w is the principal root of E - V(z), else -1
};

enum class FlowStatus { completed, escaped, captured, failed };

std::string_view to_string(FlowStatus s);

struct FlowOptions {
  double t_max = 10.0;
  double tol = 1e-9;
  double escape_radius = 50.0;
  double escape_potential = 1e9;  // |V(z)| beyond this also counts as escape
  double capture_speed = 1e-6;    // |w| and |V'| both below this counts as capture
  double sample_interval = 0.0;   // 0: record every accepted step
  double initial_step = 1e-3;
  double min_step = 1e-13;
  long max_steps = 2'000'000;
  bool project_energy = true;
};

struct Trajectory {
  std::vector<FlowSample> samples;
  int sheet_seed = 1;
  double energy = 0;
  FlowStatus status = FlowStatus::completed;
  std::string message;  // error text when status == failed

  /// max |w^2 + V(z) - E| over samples.
  double energy_drift(const PotentialSpec& spec) const;
};

/// +1 if w is closer to the principal sqrt(E - V(z)) than to its negative.
int sheet_of(const PotentialSpec& spec, double energy, cplx z, cplx w);

Trajectory flow(const PotentialSpec& spec, double energy, cplx z0, int sheet,
                const FlowOptions& opts = {});

struct FlowSeed {
  cplx z0;
  int sheet = 1;
};

/// Seeds integrated in parallel; a seed that errors yields status failed.
std::vector<Trajectory> flow_bundle(const PotentialSpec& spec, double energy,
                                    std::span<const FlowSeed> seeds,
                                    const FlowOptions& opts = {});

namespace serial {
std::vector<Trajectory> flow_bundle(const PotentialSpec& spec, double energy,
                                    std::span<const FlowSeed> seeds,
                                    const FlowOptions& opts = {});
}

struct FixedPoint {
  cplx z;
  std::string label;
  int branch = 0;  // periodic copy index or Lambert-W branch
};

struct FixedPointSet {
  std::vector<FixedPoint> points;         // zeros of E - V
  std::vector<FixedPoint> singularities;  // poles of V
};

/// Branches kmin..kmax are used for Lambert-W based models.
FixedPointSet fixed_points(const PotentialSpec& spec, double energy,
                           const Window& window, int kmin = -1, int kmax = 0);

struct IndexResult {
  cplx center;
  double radius = 0;
  double total_rotation = 0;
  double index = 0;
  int sheet_seed = 1;
};

IndexResult winding_index(const PotentialSpec& spec, double energy, cplx center,
                          double radius, int sheet, int samples = 2000);

enum class TraceStatus {
  completed,         // reached max_len
  left_window,
  no_cut,            // requested direction is not along a valid cut
  corrector_failed,
  sign_change,       // Re(E - V) became positive
  critical_point,    // V' vanished on the cut
};

std::string_view to_string(TraceStatus s);

struct BranchCut {
  std::vector<cplx> vertices;
  TraceStatus status = TraceStatus::completed;
};

/// Follows Im(E - V) = 0 with Re(E - V) <= 0 from `start`. The requested
/// direction must lie within 45 degrees of the cut tangent.
BranchCut branch_cut_trace(const PotentialSpec& spec, double energy, cplx start,
                           cplx direction, double max_len, double step = 1e-2,
                           const Window* window = nullptr);

enum class Regime { conjugate, merged, imaginary };

std::string_view to_string(Regime r);

struct BifurcationPoint {
  double ratio = 0;  // v1 / E
  cplx z_minus1, z_0;
  Regime regime = Regime::conjugate;
};

/// Central branch points of -v1 (iz) e^{2iz} for each ratio v1 / E.
std::vector<BifurcationPoint> bifurcation_scan(std::span<const double> ratios);

/// Bisects for the ratio at which W_0(-2/ratio) turns real, i.e. where the two
/// central branch points merge. Requires lo < 2e < hi.
/// Bisects down to adjacent doubles when tol is 0.
double find_merge_ratio(double lo, double hi, double tol = 0);

}  // namespace pscheb
