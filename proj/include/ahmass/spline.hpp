#pragma once

#include <vector>

#include "ahmass/util.hpp"

namespace ahmass {

// C2 cubic interpolation spline with not-a-knot end conditions.
// Derivatives come from the polynomial coefficients, never from
// differencing node values.
class CubicSpline {
 public:
  CubicSpline() = default;
  CubicSpline(std::vector<double> x, std::vector<double> y);

  double value(double x) const;
  double deriv(double x) const;
  double deriv2(double x) const;

  // Integral of the spline from x_front to x.
  double integral(double x) const;

  double lo() const { return x_.front(); }
  double hi() const { return x_.back(); }
  size_t size() const { return x_.size(); }
  const std::vector<double>& nodes() const { return x_; }
  const std::vector<double>& values() const { return y_; }

 private:
  size_t interval(double x) const;

  std::vector<double> x_, y_;
  // On [x_i, x_{i+1}]: y_i + b_i t + c_i t^2 + d_i t^3, t = x - x_i.
  std::vector<double> b_, c_, d_;
  std::vector<double> cumint_;  // prefix integrals at nodes
};

}  // namespace ahmass
