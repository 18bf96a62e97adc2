#include "ahmass/alignment.hpp"

#include <cmath>

namespace ahmass {

Alignment align_to_reference(const RadialMetric& m, const ReferenceModel& ref,
                             const AlignOptions& opt) {
  if (!m.arclength())
    throw std::runtime_error("align_to_reference: arclength gauge required");
  if (m.n != ref.n)
    throw std::invalid_argument("align_to_reference: dimension mismatch");
  if (ref.n >= 3 && ref.cone != 1.0)
    throw std::invalid_argument("align_to_reference: cone factor requires n = 2");

  double span = std::min(m.dom.width(), opt.fit_hi_cap);
  double lo = m.dom.lo + opt.window_lo_frac * span;
  double hi = m.dom.lo + opt.window_hi_frac * span;

  Alignment al;
  if (m.beta_hint && m.aligned_q.valid() && m.cone == ref.cone) {
    al.beta = *m.beta_hint;
  } else {
    // y(r) = log[s(r) e^{-r}/(c_ref/2)] = log(c_m/c_ref) + log1p(q) + log1p(-e^{-2r})
    double lc = std::log(m.cone / ref.cone);
    std::vector<double> R, y;
    for (double r : linspace(lo, hi, opt.samples)) {
      double qv = m.q.value(r);
      if (!(1.0 + qv > 0.0))
        throw std::runtime_error("align_to_reference: warp ratio not positive on tail");
      R.push_back(r);
      y.push_back(lc + std::log1p(qv) + std::log1p(-std::exp(-2.0 * r)));
    }
    TailFit fit = extrapolate_tail(R, y, 1e-3);
    if (fit.divergent || !std::isfinite(fit.limit))
      throw std::runtime_error(
          "align_to_reference: no plateau of s e^{-r}; metric not asymptotic to the reference");
    al.beta = fit.limit;
  }
  al.arclength_map = RadialCurve::closed_form([](double r) { return r; },
                                              [](double) { return 1.0; },
                                              [](double) { return 0.0; }, m.dom);
  al.aligned_domain = {m.dom.lo + al.beta, m.dom.hi + al.beta};

  // Residual decay of the aligned difference measured in the invariant norm
  // |h|_ghat = |s^2 - shat^2|/shat^2 = |q(2+q)|; this is the weighted-Holder
  // order delta (the coordinate difference s - shat decays one rate lower).
  RadialMetric view = aligned_view(m, ref, al);
  std::vector<std::pair<double, double>> samples;
  double vspan = std::min(view.dom.width(), opt.fit_hi_cap);
  double vlo = view.dom.lo + opt.window_lo_frac * vspan;
  double vhi = view.dom.lo + opt.window_hi_frac * vspan;
  for (double r : linspace(vlo, vhi, opt.samples)) {
    double qv = view.q.value(r);
    samples.push_back({r, qv * (2.0 + qv)});
  }
  al.residual_rate = fit_decay_rate(samples);
  if (!al.residual_rate.below_floor && al.residual_rate.rate <= 0.0)
    throw std::runtime_error("align_to_reference: fitted residual rate <= 0");
  return al;
}

RadialMetric aligned_view(const RadialMetric& m, const ReferenceModel& ref,
                          const Alignment& al) {
  RadialMetric out = m;
  out.cone = ref.cone;
  out.dom = {m.dom.lo + al.beta, m.dom.hi + al.beta};
  if (m.aligned_q.valid() && m.beta_hint && m.cone == ref.cone &&
      std::fabs(al.beta - *m.beta_hint) < 1e-12) {
    out.q = m.aligned_q;
  } else {
    out.q = detail::shifted_q_view(m.q, al.beta, m.cone / ref.cone, out.dom);
  }
  out.beta_hint = 0.0;
  out.aligned_q = out.q;
  out.defect_override = RadialCurve();
  if (m.defect_override.valid()) {
    RadialCurve base = m.defect_override;
    double beta = al.beta;
    out.defect_override = RadialCurve::closed_form(
        [base, beta](double r) { return base.value(r - beta); },
        [base, beta](double r) { return base.deriv(r - beta); },
        [base, beta](double r) { return base.deriv2(r - beta); }, out.dom);
  }
  out.label = m.label + " [aligned]";
  return out;
}

}  // namespace ahmass
