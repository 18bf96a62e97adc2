#pragma once

#include <map>
#include <optional>
#include <string>

#include "ahmass/curve.hpp"

namespace ahmass {

// Reference model: warp c*sinh(r), scal = -n(n-1). The cone factor
// c = omega/(2 pi) is only meaningful for n = 2; c = 1 is required above.
struct ReferenceModel {
  int n = 3;
  double cone = 1.0;

  double omega() const { return cone * 2.0 * kPi; }
  double warp(double r) const;
  double warp_d(double r) const;
  std::string describe() const;

  static ReferenceModel hyperbolic(int n);
  static ReferenceModel conic(double omega);
};

enum class OriginClass { SmoothOrigin, Annulus };

// Rotationally symmetric metric g = a(r)^2 dr^2 + s(r)^2 sigma on [lo, hi].
// The warp is stored as the relative deviation from the cone-sinh model,
//   s(r) = cone * sinh(r) * (1 + q(r)),
// which keeps every asymptotic difference evaluable without cancellation.
// Arclength gauge <=> lapse is absent (a == 1).
struct RadialMetric {
  int n = 3;
  double cone = 1.0;
  Interval dom{0.0, 0.0};
  OriginClass origin = OriginClass::SmoothOrigin;
  RadialCurve q;
  RadialCurve lapse;            // invalid() in arclength gauge
  RadialCurve defect_override;  // scal + n(n-1) when known exactly (e.g. Yamabe output)
  // Exact asymptotic shift and the deviation in the *aligned* chart, when the
  // construction knows them analytically (conformal metrics). The aligned
  // curve is built in one shot, so it has no cancelling-constant noise floor
  // and the mass integrands stay clean out to large radius.
  std::optional<double> beta_hint;
  RadialCurve aligned_q;
  std::string label;

  bool arclength() const { return !lapse.valid(); }
  double a(double r) const { return lapse.valid() ? lapse.value(r) : 1.0; }
  double shat(double r) const { return cone * std::sinh(r); }
  double s(double r) const { return shat(r) * (1.0 + q.value(r)); }
  double s_d(double r) const;
  double s_dd(double r) const;
  // cubic coefficient of the odd Taylor model s = x + s3 x^3 at the origin
  double origin_s3() const;
};

// Pointwise curvature quantities. `scal_defect` is scal + n(n-1) through the
// cancellation-free path (or the override when the metric carries one);
// `scalar_curvature` is -n(n-1) + scal_defect. The *_geometric variants
// always recompute from the warp, ignoring any override.
double scal_defect(const RadialMetric& m, double r);
double scal_defect_geometric(const RadialMetric& m, double r);
double scalar_curvature(const RadialMetric& m, double r);
double scalar_curvature_geometric(const RadialMetric& m, double r);

// Components of Ric + (n-1)g: (dr^2 coefficient, sigma coefficient).
std::pair<double, double> einstein_deviation(const RadialMetric& m, double r);

// Gauge normalization to a == 1 via u(r) = integral of a. Closed-form inputs
// stay closed-form (exact reparametrization); spline inputs are resampled
// onto a uniform arclength grid.
RadialMetric regauge_arclength(const RadialMetric& m);

// Chart translation: s_sh(r) = s(r - delta) on [lo+delta, hi+delta].
// Requires lo + delta >= 0 and an arclength input.
RadialMetric shift_metric(const RadialMetric& m, double delta);

// e^{2w} g, regauged to arclength. `defect` optionally pins scal + n(n-1)
// of the result (as a function of the *output* arclength radius).
RadialMetric conformal_metric(const RadialMetric& base, const RadialCurve& w,
                              std::optional<RadialCurve> defect = std::nullopt);

// Catalog factory. Names: hyperbolic, conic2d, bump, radial-conformal.
// (CSV-sampled metrics are built by io::read_profile_csv.)
//   hyperbolic: n
//   conic2d: omega
//   bump: n, amp, center, width [, omega when n = 2]
//   radial-conformal: n, profile in {gaussian, exp, cosh-power}, amp,
//                     and center/width (gaussian) or rate (exp, cosh-power)
struct CatalogParams {
  std::map<std::string, double> num;
  std::string profile;
};
RadialMetric make_catalog_metric(const std::string& name, const CatalogParams& p);

// Conformal scal defect of e^{2w} ghat as a function of the *base* radius.
// n >= 3 uses the phi form of the conformal scalar relation; n = 2 uses the
// two-dimensional one. `r` is the base (hyperbolic/conic) radial coordinate.
double conformal_defect_value(const ReferenceModel& ref, const RadialCurve& w, double r);

namespace detail {
// q under the chart translation r -> r - beta with a cone-factor ratio rho:
// q_new(r) = rho (1 + q(r - beta)) (cosh b - coth(r) sinh b) - 1.
RadialCurve shifted_q_view(const RadialCurve& q, double beta, double rho, Interval dom);
}  // namespace detail

}  // namespace ahmass
