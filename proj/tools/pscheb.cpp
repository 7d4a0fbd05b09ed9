#include <iostream>

#include <CLI11.hpp>
#include <omp.h>

#include "pscheb/config.hpp"
#include "pscheb/errors.hpp"
#include "pscheb/run.hpp"

int main(int argc, char** argv) {
  CLI::App app{"pscheb: Chebyshev spectra, pseudospectra and complex flows"};
  app.require_subcommand(1, 1);

  std::string config_path, out_dir;
  int threads = 0;
  for (const char* name : {"spectrum", "fit", "pseudospectrum", "metric", "evolve", "portrait",
                           "index", "bifurcation", "perturb"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config,-c", config_path, "JSON run configuration")->required();
    sub->add_option("--out,-o", out_dir, "output directory (overrides output_dir)");
    sub->add_option("--threads,-t", threads, "OpenMP thread count")->check(CLI::PositiveNumber);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }
  const std::string task = app.get_subcommands().front()->get_name();
  if (threads > 0) omp_set_num_threads(threads);

  pscheb::RunConfig cfg;
  try {
    cfg = pscheb::load_config(config_path);
    if (pscheb::to_string(cfg.task) != task)
      throw pscheb::ConfigError("config task '" + std::string(pscheb::to_string(cfg.task)) +
                                    "' does not match command '" + task + "'",
                                1, 1);
  } catch (const pscheb::ConfigError& e) {
    std::cerr << config_path << ":" << e.line << ":" << e.column << ": " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << config_path << ": " << e.what() << "\n";
    return 2;
  }
  if (!out_dir.empty()) cfg.output_dir = out_dir;

  const pscheb::RunOutcome r = pscheb::run(cfg);
  if (r.status != 0) {
    std::cerr << "error: " << r.message << "\n";
    return r.status;
  }
  if (!r.message.empty()) std::cerr << r.message;
  for (const auto& f : r.files) std::cout << cfg.output_dir << "/" << f << "\n";
  return 0;
}
