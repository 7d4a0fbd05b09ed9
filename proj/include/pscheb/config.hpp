#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "pscheb/potential.hpp"

namespace pscheb {

enum class Task {
  spectrum,
  fit,
  pseudospectrum,
  metric,
  evolve,
  portrait,
  index,
  bifurcation,
  perturb,
};

std::string_view to_string(Task t);
Task parse_task(std::string_view name);

struct RunConfig {
  Task task = Task::spectrum;
  PotentialSpec model;
  DomainSpec domain;
  nlohmann::json params = nlohmann::json::object();
  std::string output_dir = "out";
  std::string base_dir = ".";  // relative paths in params resolve against this
  std::string source;          // raw config text (hashed into the manifest)
};

/// Throws ConfigError carrying the 1-based line and column of the problem.
RunConfig parse_config(std::string_view text, std::string_view base_dir = ".");
RunConfig load_config(const std::string& path);

}  // namespace pscheb
