#pragma once

#include <cstdint>
#include <exception>
#include <limits>

namespace pscheb {

/// Runs body(i) for i in [0, n) under OpenMP. If any iteration throws, the
/// exception from the lowest failing index is rethrown after the loop, so the
/// error reported does not depend on the schedule.
template <class Body>
void parallel_for(std::int64_t n, Body&& body) {
  std::exception_ptr error;
  std::int64_t error_index = std::numeric_limits<std::int64_t>::max();
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      body(i);
    } catch (...) {
#pragma omp critical(pscheb_parallel_for)
      if (i < error_index) {
        error_index = i;
        error = std::current_exception();
      }
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace pscheb
