#pragma once

#include <cstddef>
#include <vector>

#include "hrvauth/error.hpp"

namespace hrvauth {

// Cubic spline interpolant with not-a-knot end conditions (the MATLAB
// spline/interp1 convention; reproduces polynomials up to degree 3
// exactly). Needs at least 4 knots. Queries outside the knot range
// return the nearest endpoint value instead of extrapolating.
class CubicSpline {
 public:
  CubicSpline(const std::vector<double>& x, const std::vector<double>& y);

  double operator()(double t) const;

  size_t size() const { return x_.size(); }

 private:
  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<double> m_;  // second derivatives at the knots
};

}  // namespace hrvauth
