#include "pscheb/run.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <numbers>

#include "pscheb/dynamics.hpp"
#include "pscheb/errors.hpp"
#include "pscheb/io.hpp"
#include "pscheb/lambert_w.hpp"
#include "pscheb/metric.hpp"
#include "pscheb/perturbation.hpp"
#include "pscheb/pseudospectrum.hpp"
#include "pscheb/spectral.hpp"
#include "pscheb/svg.hpp"

namespace pscheb {

using ojson = nlohmann::ordered_json;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const char* const palette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                               "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

// Typed access to task params; problems become ConfigError with a position.
class Params {
 public:
  Params(const json& p, std::string_view source) : p_(p), src_(source) {}

  bool has(const char* key) const { return p_.contains(key); }

  [[noreturn]] void fail(const char* key, const std::string& msg) const {
    const std::string quoted = "\"" + std::string(key) + "\"";
    auto pos = src_.find(quoted);
    if (pos == std::string_view::npos) pos = src_.find("\"params\"");
    int line = 1, col = 1;
    for (std::size_t i = 0; pos != std::string_view::npos && i < pos; ++i) {
      if (src_[i] == '\n') ++line, col = 1;
      else ++col;
    }
    throw ConfigError("params." + std::string(key) + ": " + msg, line, col);
  }

  const json& require(const char* key) const {
    if (!p_.contains(key)) fail(key, "required parameter is missing");
    return p_.at(key);
  }

  double number(const char* key, std::optional<double> fallback = std::nullopt) const {
    if (!p_.contains(key)) {
      if (fallback) return *fallback;
      fail(key, "required parameter is missing");
    }
    if (!p_.at(key).is_number()) fail(key, "must be a number");
    return p_.at(key).get<double>();
  }

  int integer(const char* key, std::optional<int> fallback = std::nullopt) const {
    if (!p_.contains(key)) {
      if (fallback) return *fallback;
      fail(key, "required parameter is missing");
    }
    if (!p_.at(key).is_number_integer()) fail(key, "must be an integer");
    return p_.at(key).get<int>();
  }

  bool boolean(const char* key, bool fallback) const {
    if (!p_.contains(key)) return fallback;
    if (!p_.at(key).is_boolean()) fail(key, "must be true or false");
    return p_.at(key).get<bool>();
  }

  std::string string(const char* key, std::optional<std::string> fallback = std::nullopt) const {
    if (!p_.contains(key)) {
      if (fallback) return *fallback;
      fail(key, "required parameter is missing");
    }
    if (!p_.at(key).is_string()) fail(key, "must be a string");
    return p_.at(key).get<std::string>();
  }

  std::vector<double> numbers(const char* key) const {
    const json& v = require(key);
    if (!v.is_array()) fail(key, "must be an array of numbers");
    std::vector<double> out;
    for (const auto& x : v) {
      if (!x.is_number()) fail(key, "must be an array of numbers");
      out.push_back(x.get<double>());
    }
    return out;
  }

  static bool is_pair(const json& v) {
    return v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number();
  }

  cplx complex(const json& v, const char* key) const {
    if (!is_pair(v)) fail(key, "must be a [re, im] pair");
    return {v[0].get<double>(), v[1].get<double>()};
  }

  Window window(const char* key = "window") const {
    const auto v = numbers(key);
    if (v.size() != 4) fail(key, "must be [re_min, re_max, im_min, im_max]");
    Window w{v[0], v[1], v[2], v[3]};
    if (w.empty()) fail(key, "window is empty");
    return w;
  }

  const json& raw() const { return p_; }

 private:
  const json& p_;
  std::string_view src_;
};

class Outputs {
 public:
  void add(std::string name, std::string content) {
    files_.emplace_back(std::move(name), std::move(content));
  }
  void add_json(std::string name, const ojson& j) { add(std::move(name), j.dump(2) + "\n"); }
  void add_svg(std::string name, const svg::Figure& fig) {
    add(std::move(name), fig.render());
    for (const auto& w : fig.warnings()) warnings.push_back(name_of_last() + ": " + w);
  }

  std::vector<std::string> flush(const RunConfig& cfg) const {
    fs::create_directories(cfg.output_dir);
    ojson manifest;
    manifest["task"] = std::string(to_string(cfg.task));
    manifest["config_hash"] = "fnv1a64:" + io::hex64(io::fnv1a64(cfg.source));
    ojson list = ojson::array();
    std::vector<std::string> names;
    for (const auto& [name, content] : files_) {
      io::write_file((fs::path(cfg.output_dir) / name).string(), content);
      list.push_back({{"path", name},
                      {"bytes", content.size()},
                      {"fnv1a64", io::hex64(io::fnv1a64(content))}});
      names.push_back(name);
    }
    manifest["files"] = list;
    io::write_file((fs::path(cfg.output_dir) / "manifest.json").string(),
                   manifest.dump(2) + "\n");
    names.push_back("manifest.json");
    return names;
  }

  std::vector<std::string> warnings;

 private:
  std::string name_of_last() const { return files_.empty() ? "" : files_.back().first; }
  std::vector<std::pair<std::string, std::string>> files_;
};

ojson complex_json(cplx z) { return ojson::array({z.real(), z.imag()}); }

ojson fit_json(const FitResult& f) {
  ojson j;
  j["model"] = std::string(to_string(f.model));
  j["c"] = f.c;
  j["d"] = f.d;
  j["rms_residual"] = f.rms_residual;
  return j;
}

std::vector<double> select_levels(const std::vector<double>& re, const std::vector<bool>& resolved,
                                  std::size_t count, bool resolved_only) {
  std::vector<double> out;
  for (std::size_t i = 0; i < re.size(); ++i) {
    if (count && out.size() == count) break;
    if (resolved_only && !resolved[i]) continue;
    out.push_back(re[i]);
  }
  return out;
}

std::string level_key(double eps) { return io::format_double(eps); }

svg::Figure eigenvalue_figure(const SpectrumResult& s, const std::string& title) {
  svg::Figure fig(1, 1, title);
  std::vector<svg::Point> good, bad;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    (s.resolved[i] ? good : bad).push_back({s.eigenvalues(i).real(), s.eigenvalues(i).imag()});
  auto& p = fig.panel();
  p.set_labels("Re E", "Im E");
  p.scatter(good, {"#d62728", "#d62728", 1.0, 1.0}, 3.0);
  p.scatter(bad, {"#7f7f7f", "none", 1.0, 1.0}, 3.0);
  return fig;
}

// --- tasks ---------------------------------------------------------------

void task_spectrum(const RunConfig& cfg, const Params& p, Outputs& out) {
  const int delta_n = p.integer("delta_n", 10);
  const double tol = p.number("resolution_tol", 1e-6);
  const std::string fit_name = p.string("fit", "none");
  const std::size_t count = static_cast<std::size_t>(p.integer("fit_count", 0));
  const bool resolved_only = p.boolean("resolved_only", true);
  std::optional<FitModel> model;
  if (fit_name != "none") {
    try {
      model = parse_fit_model(fit_name);
    } catch (const InvalidArgument& e) {
      p.fail("fit", e.what());
    }
  }
  const SpectrumResult s = filter_resolved(cfg.model, cfg.domain, delta_n, tol);
  const std::string csv = io::spectrum_csv(s);
  out.add("spectrum.csv", csv);
  if (model) {
    // Fit from the serialized values so that task=fit on spectrum.csv matches.
    const auto rows = io::parse_spectrum_csv(csv);
    std::vector<double> re;
    std::vector<bool> ok;
    for (const auto& r : rows) re.push_back(r.re), ok.push_back(r.resolved);
    out.add_json("fit.json", fit_json(fit(*model, select_levels(re, ok, count, resolved_only))));
  }
  out.add_svg("spectrum.svg", eigenvalue_figure(s, "spectrum"));
}

void task_fit(const RunConfig& cfg, const Params& p, Outputs& out) {
  FitModel model;
  try {
    model = parse_fit_model(p.string("model"));
  } catch (const InvalidArgument& e) {
    p.fail("model", e.what());
  }
  const std::size_t count = static_cast<std::size_t>(p.integer("count", 0));
  std::vector<double> levels;
  if (p.has("levels")) {
    levels = p.numbers("levels");
    if (count && levels.size() > count) levels.resize(count);
  } else if (p.has("levels_file")) {
    const fs::path path = fs::path(cfg.base_dir) / p.string("levels_file");
    const auto rows = io::parse_spectrum_csv(io::read_file(path.string()));
    std::vector<double> re;
    std::vector<bool> ok;
    for (const auto& r : rows) re.push_back(r.re), ok.push_back(r.resolved);
    levels = select_levels(re, ok, count, p.boolean("resolved_only", true));
  } else {
    p.fail("levels", "give either 'levels' or 'levels_file'");
  }
  out.add_json("fit.json", fit_json(fit(model, levels)));
}

void task_pseudospectrum(const RunConfig& cfg, const Params& p, Outputs& out) {
  const Window w = p.window();
  const int res = p.integer("resolution", 101);
  if (res < 2) p.fail("resolution", "must be >= 2");
  std::vector<double> levels = p.has("levels") ? p.numbers("levels") : default_levels();
  for (std::size_t i = 0; i < levels.size(); ++i)
    if (!(levels[i] > 0) || (i && !(levels[i] < levels[i - 1])))
      p.fail("levels", "must be positive and strictly descending");
  const SpectrumResult s = filter_resolved(cfg.model, cfg.domain, p.integer("delta_n", 10),
                                           p.number("resolution_tol", 1e-6));
  const HamiltonianMatrix h = assemble_hamiltonian(cfg.model, cfg.domain);
  const PseudospectrumField f = field(h.entries, w, res);
  const auto lines = contours(f, levels);

  out.add("field.csv", io::field_csv(f));
  out.add("contours.csv", io::contours_csv(lines));
  out.add("spectrum.csv", io::spectrum_csv(s));

  ojson summary;
  summary["window"] = {w.re_min, w.re_max, w.im_min, w.im_max};
  summary["resolution"] = res;
  summary["min_sigma"] = f.values.minCoeff();
  summary["max_sigma"] = f.values.maxCoeff();
  ojson counts = ojson::object();
  for (double eps : levels) counts[level_key(eps)] = f.count_at_or_below(eps);
  summary["counts_at_or_below"] = counts;
  summary["contour_lines"] = lines.size();
  out.add_json("pseudospectrum.json", summary);

  svg::Figure fig(1, 1, "pseudospectrum");
  auto& panel = fig.panel();
  panel.set_limits(w.re_min, w.re_max, w.im_min, w.im_max);
  panel.set_labels("Re z", "Im z");
  for (const auto& line : lines) {
    std::size_t li = 0;
    while (li < levels.size() && levels[li] != line.level) ++li;
    std::vector<svg::Point> pts;
    for (cplx z : line.vertices) pts.push_back({z.real(), z.imag()});
    panel.polyline(pts, {palette[li % 10], "none", 1.0, 1.0}, line.closed);
  }
  std::vector<svg::Point> ev;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (w.contains(s.eigenvalues(i))) ev.push_back({s.eigenvalues(i).real(), s.eigenvalues(i).imag()});
  panel.scatter(ev, {"#ff7f0e", "#ff7f0e", 1.0, 1.0}, 2.5);
  out.add_svg("overlay.svg", fig);
}

RMatrix magnitude(const CMatrix& m) { return m.cwiseAbs(); }

void task_metric(const RunConfig& cfg, const Params& p, Outputs& out) {
  (void)p;
  const HamiltonianMatrix h = assemble_hamiltonian(cfg.model, cfg.domain);
  const MetricPipeline mp = metric_pipeline(h.entries);
  const auto& d = mp.metric.diagnostics;
  ojson j;
  j["hermiticity_defect"] = d.hermiticity_defect;
  j["eta_defect"] = d.eta_defect;
  j["eta_min_eigenvalue"] = d.eta_min_eigenvalue;
  j["rho_square_residual"] = d.rho_square_residual;
  j["naive_gram_defect"] = *d.naive_gram_defect;
  j["naive_gram_offdiag_max"] = mp.completeness.naive_offdiag_max;
  j["metric_gram_defect"] = *d.metric_gram_defect;
  j["pseudo_hermiticity_defect"] = *d.pseudo_hermiticity_defect;
  j["isospectral_gap"] = *d.isospectral_gap;
  j["basis_condition"] = mp.basis.condition;
  j["basis_inverse_residual"] = mp.basis.residual;
  j["input_hermiticity_defect"] =
      (h.entries - h.entries.adjoint()).norm() / h.entries.norm();
  out.add_json("metric.json", j);
  out.add("eta.csv", io::matrix_csv(mp.metric.eta));
  out.add("h.csv", io::matrix_csv(mp.metric.h));
  out.add("naive_gram.csv", io::matrix_csv(mp.completeness.naive_gram));
  out.add("metric_gram.csv", io::matrix_csv(mp.completeness.metric_gram));

  svg::Figure fig(2, 2, "metric and completeness");
  const std::pair<const char*, RMatrix> panels[] = {
      {"|V^dagger V|", magnitude(mp.completeness.naive_gram)},
      {"|V^dagger eta V|", magnitude(mp.completeness.metric_gram)},
      {"|eta|", magnitude(mp.metric.eta)},
      {"|h - h^dagger|", magnitude(mp.metric.h - mp.metric.h.adjoint())}};
  for (int k = 0; k < 4; ++k) {
    auto& panel = fig.panel(k / 2, k % 2);
    panel.set_title(panels[k].first);
    const double top = panels[k].second.maxCoeff();
    panel.heatmap(panels[k].second, -16.0, top > 0 ? std::ceil(std::log10(top)) : 0.0);
  }
  out.add_svg("metric.svg", fig);
}

void task_evolve(const RunConfig& cfg, const Params& p, Outputs& out) {
  std::vector<double> times;
  if (p.has("times")) {
    times = p.numbers("times");
  } else {
    const double t_max = p.number("t_max");
    const int steps = p.integer("steps", 101);
    if (steps < 2) p.fail("steps", "must be >= 2");
    if (!(t_max > 0)) p.fail("t_max", "must be positive");
    times = grid_axis(0.0, t_max, steps);
  }
  HamiltonianMatrix h = assemble_hamiltonian(cfg.model, cfg.domain);
  if (p.boolean("hermitian_part", false))
    h.entries = ((h.entries + h.entries.adjoint()) / 2.0).eval();
  const EvolutionTrace tr = evolution_norm(h.entries, times);
  out.add("evolution.csv", io::evolution_csv(tr));
  ojson j;
  j["samples"] = tr.times.size();
  j["overflow_time"] = tr.overflow_time ? ojson(*tr.overflow_time) : ojson(nullptr);
  j["max_norm"] = tr.norms.empty() ? 0.0 : *std::max_element(tr.norms.begin(), tr.norms.end());
  out.add_json("evolution.json", j);

  svg::Figure fig(1, 1, "propagator norm");
  auto& panel = fig.panel();
  panel.set_labels("t", "log10 ||exp(-itH)||");
  std::vector<svg::Point> pts;
  for (std::size_t i = 0; i < tr.times.size(); ++i) pts.push_back({tr.times[i], std::log10(tr.norms[i])});
  panel.polyline(pts, {"#1f77b4", "none", 1.5, 1.0});
  out.add_svg("evolution.svg", fig);
}

void task_portrait(const RunConfig& cfg, const Params& p, Outputs& out) {
  const double energy = p.number("energy");
  const Window w = p.window();
  const json& seeds_json = p.require("seeds");
  if (!seeds_json.is_array()) p.fail("seeds", "must be an array of [re, im] pairs");
  std::vector<int> sheets{1, -1};
  if (p.has("sheets")) {
    sheets.clear();
    for (double s : p.numbers("sheets")) {
      if (s != 1 && s != -1) p.fail("sheets", "entries must be 1 or -1");
      sheets.push_back(static_cast<int>(s));
    }
  }
  FlowOptions opts;
  opts.t_max = p.number("t_max", 10.0);
  opts.tol = p.number("tol", 1e-9);
  opts.escape_radius = p.number("escape_radius", 50.0);
  opts.sample_interval = p.number("sample_interval", 0.01);
  std::vector<FlowSeed> seeds;
  for (int sheet : sheets)
    for (const auto& s : seeds_json) seeds.push_back({p.complex(s, "seeds"), sheet});

  const auto trajectories = flow_bundle(cfg.model, energy, seeds, opts);

  FixedPointSet fps;
  std::string fp_note;
  try {
    fps = fixed_points(cfg.model, energy, w, p.integer("kmin", -1), p.integer("kmax", 0));
  } catch (const UnsupportedModel& e) {
    fp_note = e.what();
    out.warnings.push_back(fp_note);
  }

  std::vector<BranchCut> cuts;
  const double diag = std::hypot(w.re_max - w.re_min, w.im_max - w.im_min);
  const double cut_step = p.number("cut_step", 1e-2);
  if (p.boolean("auto_cuts", true)) {
    for (const auto& fp : fps.points) {
      const cplx d = -std::conj(-potential_derivative(cfg.model, fp.z));
      if (std::abs(d) == 0) continue;
      cuts.push_back(branch_cut_trace(cfg.model, energy, fp.z, d, diag, cut_step, &w));
    }
  }
  if (p.has("cuts")) {
    const json& cj = p.raw().at("cuts");
    if (!cj.is_array()) p.fail("cuts", "must be an array of objects");
    for (const auto& c : cj) {
      if (!c.is_object() || !c.contains("start") || !c.contains("direction"))
        p.fail("cuts", "each cut needs 'start' and 'direction'");
      const double len = c.contains("max_len") && c["max_len"].is_number()
                             ? c["max_len"].get<double>() : diag;
      cuts.push_back(branch_cut_trace(cfg.model, energy, p.complex(c["start"], "cuts"),
                                      p.complex(c["direction"], "cuts"), len, cut_step, &w));
    }
  }

  ojson j;
  j["energy"] = energy;
  ojson fpj = ojson::array();
  for (const auto& fp : fps.points)
    fpj.push_back({{"z", complex_json(fp.z)}, {"label", fp.label}, {"branch", fp.branch}});
  j["fixed_points"] = fpj;
  ojson sj = ojson::array();
  for (const auto& fp : fps.singularities)
    sj.push_back({{"z", complex_json(fp.z)}, {"label", fp.label}, {"branch", fp.branch}});
  j["singularities"] = sj;
  if (!fp_note.empty()) j["fixed_point_note"] = fp_note;

  std::string fp_csv = "kind,re,im,label,branch\n";
  for (const auto& fp : fps.points)
    fp_csv += "point," + io::format_double(fp.z.real()) + ',' + io::format_double(fp.z.imag()) +
              ',' + fp.label + ',' + std::to_string(fp.branch) + '\n';
  for (const auto& fp : fps.singularities)
    fp_csv += "singularity," + io::format_double(fp.z.real()) + ',' +
              io::format_double(fp.z.imag()) + ',' + fp.label + ',' + std::to_string(fp.branch) + '\n';
  out.add("fixed_points.csv", fp_csv);

  std::string cut_csv = "cut,vertex,re,im,status\n";
  ojson cj = ojson::array();
  for (std::size_t c = 0; c < cuts.size(); ++c) {
    for (std::size_t v = 0; v < cuts[c].vertices.size(); ++v)
      cut_csv += std::to_string(c) + ',' + std::to_string(v) + ',' +
                 io::format_double(cuts[c].vertices[v].real()) + ',' +
                 io::format_double(cuts[c].vertices[v].imag()) + ',' +
                 std::string(to_string(cuts[c].status)) + '\n';
    cj.push_back({{"start", complex_json(cuts[c].vertices.front())},
                  {"vertices", cuts[c].vertices.size()},
                  {"status", std::string(to_string(cuts[c].status))}});
  }
  j["cuts"] = cj;
  out.add("cuts.csv", cut_csv);

  svg::Figure fig(1, 2, "phase portrait, E = " + io::format_double(energy));
  auto& upper = fig.panel(0, 0);
  auto& lower = fig.panel(0, 1);
  upper.set_title("upper sheet");
  lower.set_title("lower sheet");
  for (auto* panel : {&upper, &lower}) {
    panel->set_limits(w.re_min, w.re_max, w.im_min, w.im_max);
    panel->set_labels("Re z", "Im z");
  }

  ojson tj = ojson::array();
  const std::size_t per_sheet = seeds_json.size();
  for (std::size_t i = 0; i < trajectories.size(); ++i) {
    const auto& tr = trajectories[i];
    char name[64];
    std::snprintf(name, sizeof name, "traj_%s_%03zu.csv", tr.sheet_seed > 0 ? "upper" : "lower",
                  i % std::max<std::size_t>(per_sheet, 1));
    ojson entry{{"file", name},
                {"seed", complex_json(seeds[i].z0)},
                {"sheet_seed", tr.sheet_seed},
                {"status", std::string(to_string(tr.status))},
                {"samples", tr.samples.size()}};
    if (tr.status == FlowStatus::failed) {
      entry["message"] = tr.message;
    } else {
      entry["energy_drift"] = tr.energy_drift(cfg.model);
    }
    tj.push_back(entry);
    out.add(name, io::trajectory_csv(tr));

    // Split into runs on each sheet.
    const std::string colour = palette[(i % std::max<std::size_t>(per_sheet, 1)) % 10];
    std::vector<svg::Point> run;
    int run_sheet = 0;
    auto flush = [&] {
      if (run.size() > 1) (run_sheet > 0 ? upper : lower).polyline(run, {colour, "none", 1.0, 0.9});
      run.clear();
    };
    for (const auto& s : tr.samples) {
      if (s.sheet != run_sheet) {
        if (!run.empty()) run.push_back({s.z.real(), s.z.imag()});
        flush();
        run_sheet = s.sheet;
      }
      run.push_back({s.z.real(), s.z.imag()});
    }
    flush();
  }
  j["trajectories"] = tj;
  out.add_json("portrait.json", j);

  for (auto* panel : {&upper, &lower}) {
    for (const auto& c : cuts) {
      std::vector<svg::Point> pts;
      for (cplx z : c.vertices) pts.push_back({z.real(), z.imag()});
      if (pts.size() > 1) panel->polyline(pts, {"#000000", "none", 2.0, 0.6});
    }
    std::vector<svg::Point> fp, sg;
    for (const auto& f : fps.points) fp.push_back({f.z.real(), f.z.imag()});
    for (const auto& f : fps.singularities) sg.push_back({f.z.real(), f.z.imag()});
    panel->scatter(fp, {"#d62728", "#d62728", 1.0, 1.0}, 4.0);
    panel->scatter(sg, {"#000000", "none", 1.5, 1.0}, 4.0);
  }
  out.add_svg("portrait.svg", fig);
}

void task_index(const RunConfig& cfg, const Params& p, Outputs& out) {
  const double energy = p.number("energy");
  const int samples = p.integer("samples", 2000);
  const json& pts = p.require("points");
  if (!pts.is_array() || pts.empty()) p.fail("points", "must be a non-empty array");
  ojson results = ojson::array();
  for (const auto& pt : pts) {
    if (!pt.is_object() || !pt.contains("center") || !pt.contains("radius"))
      p.fail("points", "each point needs 'center' and 'radius'");
    const cplx c = p.complex(pt["center"], "points");
    if (!pt["radius"].is_number()) p.fail("points", "'radius' must be a number");
    const int sheet = pt.contains("sheet") && pt["sheet"].is_number_integer() ? pt["sheet"].get<int>() : 1;
    const IndexResult r = winding_index(cfg.model, energy, c, pt["radius"].get<double>(), sheet, samples);
    results.push_back({{"center", complex_json(r.center)},
                       {"radius", r.radius},
                       {"sheet", r.sheet_seed},
                       {"total_rotation", r.total_rotation},
                       {"index", r.index}});
  }
  ojson j;
  j["energy"] = energy;
  j["samples"] = samples;
  j["results"] = results;
  out.add_json("index.json", j);
}

void task_bifurcation(const RunConfig& cfg, const Params& p, Outputs& out) {
  (void)cfg;
  std::vector<double> ratios;
  if (p.has("ratios")) {
    ratios = p.numbers("ratios");
  } else {
    const double lo = p.number("ratio_min"), hi = p.number("ratio_max");
    const int steps = p.integer("steps", 101);
    if (!(lo > 0) || !(hi > lo)) p.fail("ratio_min", "need 0 < ratio_min < ratio_max");
    if (steps < 2) p.fail("steps", "must be >= 2");
    ratios = grid_axis(lo, hi, steps);
  }
  if (ratios.empty()) p.fail("ratios", "must not be empty");
  const auto scan = bifurcation_scan(ratios);
  std::string csv = "ratio,re_z_minus1,im_z_minus1,re_z_0,im_z_0,regime\n";
  for (const auto& b : scan)
    csv += io::format_double(b.ratio) + ',' + io::format_double(b.z_minus1.real()) + ',' +
           io::format_double(b.z_minus1.imag()) + ',' + io::format_double(b.z_0.real()) + ',' +
           io::format_double(b.z_0.imag()) + ',' + std::string(to_string(b.regime)) + '\n';
  out.add("bifurcation.csv", csv);

  ojson j;
  j["points"] = scan.size();
  const double critical = 2 * std::numbers::e;
  const auto [mn, mx] = std::minmax_element(ratios.begin(), ratios.end());
  if (*mn < critical && *mx > critical) {
    const double r = find_merge_ratio(*mn, *mx);
    j["merge_ratio"] = r;
    j["merged_point"] = complex_json(cplx{0.0, -0.5} * lambert_w(0, cplx{-2.0 / r, 0.0}));
  } else {
    j["merge_ratio"] = nullptr;
  }
  out.add_json("bifurcation.json", j);

  svg::Figure fig(1, 1, "central branch points vs v1/E");
  auto& panel = fig.panel();
  panel.set_labels("Re z", "Im z");
  std::vector<svg::Point> a, b;
  for (const auto& s : scan) {
    a.push_back({s.z_minus1.real(), s.z_minus1.imag()});
    b.push_back({s.z_0.real(), s.z_0.imag()});
  }
  panel.polyline(a, {"#1f77b4", "none", 1.5, 1.0});
  panel.polyline(b, {"#d62728", "none", 1.5, 1.0});
  panel.scatter(a, {"#1f77b4", "#1f77b4", 1.0, 1.0}, 1.5);
  panel.scatter(b, {"#d62728", "#d62728", 1.0, 1.0}, 1.5);
  out.add_svg("bifurcation.svg", fig);
}

ojson matrix_summary(const CMatrix& m) {
  return {{"rows", m.rows()}, {"frobenius_norm", m.norm()},
          {"hermiticity_defect", m.norm() > 0 ? (m - m.adjoint()).norm() / m.norm() : 0.0}};
}

void task_perturb(const RunConfig& cfg, const Params& p, Outputs& out) {
  const double gap_tol = p.number("gap_tol", -1.0);
  const double eps = p.number("epsilon", 0.99);
  const int shift_levels = p.integer("shift_levels", 5);
  const PerturbationSplit split = split_hamiltonian(cfg.model, cfg.domain);
  const PerturbationResult r = series_terms(split, gap_tol);
  const ShiftReport sr = shift_check(cfg.model, cfg.domain, eps, shift_levels);

  ojson j;
  j["kinetic_defect"] = split.kinetic_defect;
  j["residuals"] = {{"q1", r.residuals.q1},
                    {"q1_interior", r.residuals.q1_interior},
                    {"q3", r.residuals.q3},
                    {"q5", r.residuals.q5 ? ojson(*r.residuals.q5) : ojson(nullptr)}};
  if (!r.q5_error.empty()) j["q5_error"] = r.q5_error;
  j["closed_form_gaps"] = {{"q1_row_gap", r.closed_form_gaps.q1_row_gap},
                           {"h2_diagonal_gap", r.closed_form_gaps.h2_diagonal_gap},
                           {"q1_action_gap", r.closed_form_gaps.q1_action_gap},
                           {"h2_action_gap", r.closed_form_gaps.h2_action_gap}};
  j["q1"] = matrix_summary(r.q1);
  j["q3"] = matrix_summary(r.q3);
  j["h2"] = matrix_summary(r.h2);
  j["h4"] = matrix_summary(r.h4);
  j["shift_check"] = {{"epsilon", sr.epsilon},
                      {"shift", sr.shift},
                      {"amplitude_factor", sr.amplitude_factor},
                      {"closed_form_amplitude", sr.closed_form_amplitude},
                      {"unshifted_gap", sr.unshifted_gap},
                      {"potential_gap", sr.potential_gap},
                      {"deformed_gap", sr.deformed_gap ? ojson(*sr.deformed_gap) : ojson(nullptr)},
                      {"levels", sr.levels},
                      {"deformed_levels", sr.deformed_levels},
                      {"reference_levels", sr.reference_levels},
                      {"max_relative_deviation", sr.max_relative_deviation},
                      {"deformed_relative_deviation", sr.deformed_relative_deviation}};
  out.add_json("perturb.json", j);
  if (p.boolean("write_matrices", false)) {
    out.add("q1.csv", io::matrix_csv(r.q1));
    out.add("q3.csv", io::matrix_csv(r.q3));
    out.add("h2.csv", io::matrix_csv(r.h2));
    out.add("h4.csv", io::matrix_csv(r.h4));
  }
}

}  // namespace

RunOutcome run(const RunConfig& cfg) {
  RunOutcome outcome;
  try {
    const Params p(cfg.params, cfg.source);
    Outputs out;
    switch (cfg.task) {
      case Task::spectrum: task_spectrum(cfg, p, out); break;
      case Task::fit: task_fit(cfg, p, out); break;
      case Task::pseudospectrum: task_pseudospectrum(cfg, p, out); break;
      case Task::metric: task_metric(cfg, p, out); break;
      case Task::evolve: task_evolve(cfg, p, out); break;
      case Task::portrait: task_portrait(cfg, p, out); break;
      case Task::index: task_index(cfg, p, out); break;
      case Task::bifurcation: task_bifurcation(cfg, p, out); break;
      case Task::perturb: task_perturb(cfg, p, out); break;
    }
    outcome.files = out.flush(cfg);
    for (const auto& w : out.warnings) outcome.message += "warning: " + w + "\n";
  } catch (const ConfigError& e) {
    outcome.status = 2;
    outcome.message = "config error at line " + std::to_string(e.line) + ", column " +
                      std::to_string(e.column) + ": " + e.what();
  } catch (const std::exception& e) {
    outcome.status = 1;
    outcome.message = e.what();
  }
  return outcome;
}

}  // namespace pscheb
