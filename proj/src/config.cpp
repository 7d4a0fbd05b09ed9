#include "pscheb/config.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "pscheb/errors.hpp"

namespace pscheb {

using nlohmann::json;

namespace {

constexpr Task all_tasks[] = {Task::spectrum, Task::fit,       Task::pseudospectrum,
                              Task::metric,   Task::evolve,    Task::portrait,
                              Task::index,    Task::bifurcation, Task::perturb};

std::pair<int, int> line_column(std::string_view text, std::size_t offset) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

// Semantic errors have no parser position; point at the first occurrence of
// the offending key instead.
[[noreturn]] void fail_at_key(std::string_view text, std::string_view key,
                              const std::string& msg) {
  const std::string quoted = "\"" + std::string(key) + "\"";
  const auto pos = text.find(quoted);
  const auto [line, col] =
      line_column(text, pos == std::string_view::npos ? 0 : pos);
  throw ConfigError(msg, line, col);
}

double number(std::string_view text, const json& obj, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number()) fail_at_key(text, key, std::string("'") + key + "' must be a number");
  return v.get<double>();
}

}  // namespace

std::string_view to_string(Task t) {
  switch (t) {
    case Task::spectrum: return "spectrum";
    case Task::fit: return "fit";
    case Task::pseudospectrum: return "pseudospectrum";
    case Task::metric: return "metric";
    case Task::evolve: return "evolve";
    case Task::portrait: return "portrait";
    case Task::index: return "index";
    case Task::bifurcation: return "bifurcation";
    case Task::perturb: return "perturb";
  }
  return "unknown";
}

Task parse_task(std::string_view name) {
  for (Task t : all_tasks)
    if (to_string(t) == name) return t;
  throw ConfigError("unknown task '" + std::string(name) + "'");
}

RunConfig parse_config(std::string_view text, std::string_view base_dir) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
    throw ConfigError(std::string("invalid JSON: ") + e.what(), line, col);
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object", 1, 1);

  RunConfig cfg;
  cfg.source = std::string(text);
  cfg.base_dir = std::string(base_dir);

  if (doc.contains("task")) {
    if (!doc["task"].is_string()) fail_at_key(text, "task", "'task' must be a string");
    try {
      cfg.task = parse_task(doc["task"].get<std::string>());
    } catch (const ConfigError& e) {
      fail_at_key(text, "task", e.what());
    }
  }

  if (doc.contains("model")) {
    const json& m = doc["model"];
    if (!m.is_object()) fail_at_key(text, "model", "'model' must be an object");
    if (!m.contains("kind") || !m["kind"].is_string())
      fail_at_key(text, "model", "'model.kind' is required and must be a string");
    try {
      cfg.model.kind = parse_potential_kind(m["kind"].get<std::string>());
    } catch (const std::exception& e) {
      fail_at_key(text, "kind", e.what());
    }
    cfg.model.v0 = number(text, m, "v0", 1.0);
    cfg.model.v1 = number(text, m, "v1", 1.0);
    cfg.model.v2 = number(text, m, "v2", 0.0);
    cfg.model.power = number(text, m, "power", 0.0);
    try {
      cfg.model.validate();
    } catch (const std::exception& e) {
      fail_at_key(text, "model", e.what());
    }
  }

  if (doc.contains("domain")) {
    const json& d = doc["domain"];
    if (!d.is_object()) fail_at_key(text, "domain", "'domain' must be an object");
    if (d.contains("order")) {
      if (!d["order"].is_number_integer())
        fail_at_key(text, "order", "'domain.order' must be an integer");
      cfg.domain.order = d["order"].get<int>();
    }
    if (d.contains("periodic_index")) {
      if (!d["periodic_index"].is_number_integer())
        fail_at_key(text, "periodic_index", "'domain.periodic_index' must be an integer");
      const int k = d["periodic_index"].get<int>();
      if (d.contains("half_width"))
        fail_at_key(text, "half_width",
                    "give either 'half_width' or 'periodic_index', not both");
      cfg.domain = DomainSpec::periodic(k, cfg.domain.order);
    } else {
      cfg.domain.half_width = number(text, d, "half_width", cfg.domain.half_width);
    }
    try {
      cfg.domain.validate();
    } catch (const std::exception& e) {
      fail_at_key(text, "domain", e.what());
    }
  }

  if (doc.contains("params")) {
    if (!doc["params"].is_object()) fail_at_key(text, "params", "'params' must be an object");
    cfg.params = doc["params"];
  }
  if (doc.contains("output_dir")) {
    if (!doc["output_dir"].is_string())
      fail_at_key(text, "output_dir", "'output_dir' must be a string");
    cfg.output_dir = doc["output_dir"].get<std::string>();
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  const auto dir = std::filesystem::path(path).parent_path();
  return parse_config(ss.str(), dir.empty() ? "." : dir.string());
}

}  // namespace pscheb
