#pragma once

#include <functional>
#include <memory>

#include "ahmass/spline.hpp"
#include "ahmass/util.hpp"

namespace ahmass {

// A twice-differentiable function of the radius, shared immutably.
// Backed either by closed-form callables or by a cubic spline.
class RadialCurve {
 public:
  RadialCurve() = default;

  static RadialCurve closed_form(std::function<double(double)> v,
                                 std::function<double(double)> d1,
                                 std::function<double(double)> d2,
                                 Interval dom);
  static RadialCurve constant(double c,
                              Interval dom = {0.0, 1e30});
  static RadialCurve spline(std::vector<double> x, std::vector<double> y);
  static RadialCurve from_spline(CubicSpline s);

  bool valid() const { return impl_ != nullptr; }
  double value(double r) const;
  double deriv(double r) const;
  double deriv2(double r) const;
  Interval domain() const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

}  // namespace ahmass
