#pragma once

#include <complex>

#include <Eigen/Dense>

namespace pscheb {

using cplx = std::complex<double>;
using RMatrix = Eigen::MatrixXd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using CVector = Eigen::VectorXcd;

/// Axis-aligned rectangle in the complex plane.
struct Window {
  double re_min = 0, re_max = 0, im_min = 0, im_max = 0;

  bool contains(cplx z) const {
    return z.real() >= re_min && z.real() <= re_max && z.imag() >= im_min &&
           z.imag() <= im_max;
  }
  bool empty() const { return !(re_max > re_min) || !(im_max > im_min); }
};

}  // namespace pscheb
