#pragma once

#include <algorithm>
#include <cmath>

#include "pscheb/types.hpp"

namespace testing {

template <class Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.cwiseAbs().maxCoeff();
}

inline double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// Random Hermitian matrix from a fixed linear congruential stream.
inline pscheb::CMatrix hermitian(int n, unsigned seed) {
  auto next = [&] {
    seed = seed * 1664525u + 1013904223u;
    return (seed >> 8) / double(1u << 24) - 0.5;
  };
  pscheb::CMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = {next(), next()};
  return (a + a.adjoint()) / 2.0;
}

}  // namespace testing
