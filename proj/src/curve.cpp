#include "ahmass/curve.hpp"

#include <cmath>

namespace ahmass {

struct RadialCurve::Impl {
  std::function<double(double)> v, d1, d2;
  std::shared_ptr<CubicSpline> sp;
  Interval dom{0.0, 0.0};

  double value(double r) const { return sp ? sp->value(r) : v(r); }
  double deriv(double r) const { return sp ? sp->deriv(r) : d1(r); }
  double deriv2(double r) const { return sp ? sp->deriv2(r) : d2(r); }
};

RadialCurve RadialCurve::closed_form(std::function<double(double)> v,
                                     std::function<double(double)> d1,
                                     std::function<double(double)> d2,
                                     Interval dom) {
  auto impl = std::make_shared<Impl>();
  impl->v = std::move(v);
  impl->d1 = std::move(d1);
  impl->d2 = std::move(d2);
  impl->dom = dom;
  RadialCurve c;
  c.impl_ = impl;
  return c;
}

RadialCurve RadialCurve::constant(double cval, Interval dom) {
  return closed_form([cval](double) { return cval; },
                     [](double) { return 0.0; },
                     [](double) { return 0.0; }, dom);
}

RadialCurve RadialCurve::spline(std::vector<double> x, std::vector<double> y) {
  return from_spline(CubicSpline(std::move(x), std::move(y)));
}

RadialCurve RadialCurve::from_spline(CubicSpline s) {
  auto impl = std::make_shared<Impl>();
  impl->sp = std::make_shared<CubicSpline>(std::move(s));
  impl->dom = {impl->sp->lo(), impl->sp->hi()};
  RadialCurve c;
  c.impl_ = impl;
  return c;
}

double RadialCurve::value(double r) const { return impl_->value(r); }
double RadialCurve::deriv(double r) const { return impl_->deriv(r); }
double RadialCurve::deriv2(double r) const { return impl_->deriv2(r); }
Interval RadialCurve::domain() const { return impl_->dom; }

}  // namespace ahmass
