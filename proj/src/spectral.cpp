#include "pscheb/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <unsupported/Eigen/MatrixFunctions>

#include "pscheb/errors.hpp"
#include "pscheb/linalg.hpp"
#include "pscheb/parallel.hpp"

namespace pscheb {

namespace {

void phase_fix(CMatrix& v) {
  for (Eigen::Index c = 0; c < v.cols(); ++c) {
    auto col = v.col(c);
    const double nrm = col.norm();
    if (nrm > 0) col /= nrm;
    Eigen::Index k = 0;
    col.cwiseAbs().maxCoeff(&k);
    const double mag = std::abs(col(k));
    if (mag == 0) continue;
    col *= std::conj(col(k)) / mag;
    col(k) = mag;
  }
}

// Ordinary least squares y = a x + b.
std::pair<double, double> line_fit(std::span<const double> x,
                                   std::span<const double> y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  const double a = sxy / sxx;
  return {a, my - a * mx};
}

std::vector<double> level_index(std::size_t m) {
  std::vector<double> n(m);
  std::iota(n.begin(), n.end(), 1.0);
  return n;
}

void require_levels(std::span<const double> levels) {
  if (levels.size() < 3)
    throw InvalidArgument("level fit needs at least 3 levels, got " +
                          std::to_string(levels.size()));
  for (double e : levels)
    if (!std::isfinite(e)) throw InvalidArgument("level fit: non-finite level");
}

double rms(std::span<const double> levels, FitModel model, double c, double d) {
  double s = 0;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const double u = static_cast<double>(i + 1) + d;
    const double r = (model == FitModel::linear ? c * u : c * u * u) - levels[i];
    s += r * r;
  }
  return std::sqrt(s / static_cast<double>(levels.size()));
}

}  // namespace

std::vector<double> SpectrumResult::real_levels(std::size_t count,
                                                bool resolved_only) const {
  std::vector<double> out;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    if (count && out.size() == count) break;
    if (resolved_only && !(i < static_cast<Eigen::Index>(resolved.size()) &&
                           resolved[i]))
      continue;
    out.push_back(eigenvalues(i).real());
  }
  return out;
}

SpectrumResult eigenpairs(const CMatrix& h) {
  if (h.rows() != h.cols()) throw InvalidArgument("eigenpairs: matrix not square");
  if (!h.allFinite()) throw InvalidArgument("eigenpairs: matrix has non-finite entries");
  const Eigen::Index n = h.rows();
  SpectrumResult r;
  r.resolved.assign(n, true);
  if (n == 0) return r;

  Eigen::ComplexEigenSolver<CMatrix> es(h, true);
  if (es.info() != Eigen::Success)
    throw NumericalFailure("complex eigensolver did not converge (n = " +
                           std::to_string(n) + ", ||H||_F = " +
                           std::to_string(h.norm()) + ")");

  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  const CVector& ev = es.eigenvalues();
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
    if (ev(a).real() != ev(b).real()) return ev(a).real() < ev(b).real();
    return ev(a).imag() < ev(b).imag();
  });
  r.eigenvalues.resize(n);
  r.eigenvectors.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    r.eigenvalues(i) = ev(order[i]);
    r.eigenvectors.col(i) = es.eigenvectors().col(order[i]);
  }
  phase_fix(r.eigenvectors);

  const double scale = std::max(h.norm(), std::numeric_limits<double>::min());
  const CMatrix res = h * r.eigenvectors -
                      r.eigenvectors * r.eigenvalues.asDiagonal();
  r.max_residual = res.colwise().norm().maxCoeff() / scale;
  return r;
}

SpectrumResult filter_resolved(const PotentialSpec& spec,
                               const DomainSpec& domain, int delta_n,
                               double tol) {
  if (delta_n < 2)
    throw InvalidArgument("filter_resolved: delta_n must be >= 2");
  if (!(tol > 0)) throw InvalidArgument("filter_resolved: tol must be positive");
  SpectrumResult base = eigenpairs(assemble_hamiltonian(spec, domain));
  DomainSpec fine = domain;
  fine.order += delta_n;
  fine.periodic_index = domain.periodic_index;
  const CVector ref = eigenpairs(assemble_hamiltonian(spec, fine)).eigenvalues;
  for (Eigen::Index i = 0; i < base.size(); ++i) {
    const cplx l = base.eigenvalues(i);
    const double dist = (ref.array() - l).abs().minCoeff();
    base.resolved[i] = dist <= tol * (1.0 + std::abs(l));
  }
  return base;
}

std::string_view to_string(FitModel m) {
  return m == FitModel::linear ? "linear" : "quadratic";
}

FitModel parse_fit_model(std::string_view name) {
  if (name == "linear") return FitModel::linear;
  if (name == "quadratic") return FitModel::quadratic;
  throw InvalidArgument("unknown fit model '" + std::string(name) + "'");
}

FitResult fit_linear(std::span<const double> levels) {
  require_levels(levels);
  const auto n = level_index(levels.size());
  const auto [a, b] = line_fit(n, levels);
  const double scale = std::abs(*std::max_element(
      levels.begin(), levels.end(),
      [](double x, double y) { return std::abs(x) < std::abs(y); }));
  if (!(std::abs(a) > 1e-14 * std::max(scale, 1e-300)))
    throw SingularFit("linear fit: levels are degenerate (zero slope)");
  FitResult f{FitModel::linear, a, b / a, 0};
  f.rms_residual = rms(levels, f.model, f.c, f.d);
  return f;
}

FitResult fit_quadratic_linearized(std::span<const double> levels) {
  require_levels(levels);
  std::vector<double> root(levels.size());
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (!(levels[i] > 0))
      throw InvalidArgument("quadratic fit: level " + std::to_string(i + 1) +
                            " is not positive");
    root[i] = std::sqrt(levels[i]);
  }
  const auto n = level_index(levels.size());
  const auto [a, b] = line_fit(n, root);
  if (!(std::abs(a) > 0))
    throw SingularFit("quadratic fit: levels are degenerate (zero slope)");
  FitResult f{FitModel::quadratic, a * a, b / a, 0};
  f.rms_residual = rms(levels, f.model, f.c, f.d);
  return f;
}

FitResult fit_quadratic(std::span<const double> levels) {
  FitResult f = fit_quadratic_linearized(levels);
  const std::size_t m = levels.size();
  auto cost = [&](double c, double d) {
    double s = 0;
    for (std::size_t i = 0; i < m; ++i) {
      const double u = static_cast<double>(i + 1) + d;
      const double r = c * u * u - levels[i];
      s += r * r;
    }
    return s;
  };
  double c = f.c, d = f.d, current = cost(c, d);
  // Gauss-Newton with step halving.
  for (int it = 0; it < 200 && current > 0; ++it) {
    Eigen::MatrixXd j(m, 2);
    Eigen::VectorXd r(m);
    for (std::size_t i = 0; i < m; ++i) {
      const double u = static_cast<double>(i + 1) + d;
      j(i, 0) = u * u;
      j(i, 1) = 2 * c * u;
      r(i) = c * u * u - levels[i];
    }
    const Eigen::Vector2d step = j.colPivHouseholderQr().solve(-r);
    double lambda = 1.0, trial = 0;
    bool improved = false;
    for (int h = 0; h < 40; ++h, lambda *= 0.5) {
      trial = cost(c + lambda * step(0), d + lambda * step(1));
      if (trial < current) {
        improved = true;
        break;
      }
    }
    if (!improved) break;
    c += lambda * step(0);
    d += lambda * step(1);
    const double rel = std::abs(lambda * step(0)) / std::abs(c) +
                       std::abs(lambda * step(1)) / (1.0 + std::abs(d));
    current = trial;
    if (rel < 1e-15) break;
  }
  f.c = c;
  f.d = d;
  f.rms_residual = rms(levels, f.model, c, d);
  return f;
}

FitResult fit(FitModel model, std::span<const double> levels) {
  return model == FitModel::linear ? fit_linear(levels) : fit_quadratic(levels);
}

double propagator_norm(const CMatrix& h, double t) {
  if (t == 0) return 1.0;
  const CMatrix a = (cplx{0.0, -t} * h).eval();
  const CMatrix u = a.exp();
  if (!u.allFinite()) return std::numeric_limits<double>::infinity();
  return norm2(u);
}

namespace {

void check_times(std::span<const double> times) {
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(times[i] >= 0) || !std::isfinite(times[i]))
      throw InvalidArgument("evolution times must be finite and nonnegative");
    if (i > 0 && times[i] < times[i - 1])
      throw InvalidArgument("evolution times must be ascending");
  }
}

EvolutionTrace truncate(std::span<const double> times, std::vector<double> norms) {
  EvolutionTrace tr;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(norms[i] <= evolution_overflow)) {
      tr.overflow_time = times[i];
      break;
    }
    tr.times.push_back(times[i]);
    tr.norms.push_back(norms[i]);
  }
  return tr;
}

}  // namespace

EvolutionTrace evolution_norm(const CMatrix& h, std::span<const double> times) {
  check_times(times);
  std::vector<double> norms(times.size());
  parallel_for(static_cast<std::int64_t>(times.size()),
               [&](std::int64_t i) { norms[i] = propagator_norm(h, times[i]); });
  return truncate(times, std::move(norms));
}

namespace serial {

EvolutionTrace evolution_norm(const CMatrix& h, std::span<const double> times) {
  check_times(times);
  std::vector<double> norms(times.size());
  for (std::size_t i = 0; i < times.size(); ++i)
    norms[i] = propagator_norm(h, times[i]);
  return truncate(times, std::move(norms));
}

}  // namespace serial

}  // namespace pscheb
