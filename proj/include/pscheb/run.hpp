#pragma once

#include <string>
#include <vector>

#include "pscheb/config.hpp"

namespace pscheb {

struct RunOutcome {
  int status = 0;                  // 0 ok, 1 computation error, 2 config error
  std::vector<std::string> files;  // emitted paths relative to output_dir
  std::string message;             // error text, or warnings on success
};

/// Runs one task and writes its artifacts plus manifest.json into
/// cfg.output_dir. Never throws.
RunOutcome run(const RunConfig& cfg);

}  // namespace pscheb
