#include "ahmass/mass.hpp"

#include <cmath>
#include <memory>

#include "ahmass/quadrature.hpp"

namespace ahmass {

namespace {

double coth(double r) { return 1.0 / std::tanh(r); }

// sign-aware small integer power
double intpow(double x, int k) {
  if (k < 0) return 1.0 / intpow(x, -k);
  double v = 1.0;
  while (k--) v *= x;
  return v;
}

// (1+q)^k - 1 without cancellation
double pm1(double q, int k) {
  if (k == 0) return 0.0;
  if (std::fabs(q) < 0.5) return std::expm1(double(k) * std::log1p(q));
  return intpow(1.0 + q, k) - 1.0;
}

// Evaluation frame over the aligned chart: g relative to a reference warp.
struct Frame {
  int n = 3;
  double c = 1.0;       // model cone factor (reference warp c sinh)
  double omega = 0.0;   // unit-sphere volume
  double g_lo = 0.0;    // aligned lower end of the g chart
  double g_hi = 0.0;
  double r_switch = 1.0;

  RadialCurve q;                        // aligned relative deviation
  std::function<double(double)> sg;     // g warp in the aligned chart (direct)
  std::function<double(double)> sg_d;

  // reference warp; for the model case these are c sinh / c cosh
  std::function<double(double)> sr, sr_d;
  // log-derivative of the reference warp at the boundary radius
  std::function<double(double)> sr_logd;

  double shn1(double r) const { return intpow(sr(r), n - 1); }
};

Frame model_frame(const RadialMetric& g, const ReferenceModel& ref, const Alignment& al) {
  Frame f;
  f.n = g.n;
  f.c = ref.cone;
  f.omega = sphere_volume(g.n);
  f.g_lo = g.dom.lo + al.beta;
  f.g_hi = g.dom.hi + al.beta;
  f.r_switch = std::max(1.0, f.g_lo + 0.5);
  RadialMetric view = aligned_view(g, ref, al);
  f.q = view.q;
  double beta = al.beta;
  RadialMetric gc = g;
  f.sg = [gc, beta](double rhat) { return gc.s(rhat - beta); };
  f.sg_d = [gc, beta](double rhat) { return gc.s_d(rhat - beta); };
  double c = ref.cone;
  f.sr = [c](double r) { return c * std::sinh(r); };
  f.sr_d = [c](double r) { return c * std::cosh(r); };
  f.sr_logd = [](double r) { return coth(r); };
  return f;
}

double adm_at(const Frame& f, double R) {
  double qv = f.q.value(R), qp = f.q.deriv(R);
  double T = (f.n - 1.0) * qv * (2.0 + qv);
  double Tp = 2.0 * (f.n - 1.0) * (1.0 + qv) * qp;
  return f.omega * f.shn1(R) * (-f.sr_logd(R) * T - Tp);
}

double rv_at(const Frame& f, double R, double tol) {
  if (R <= f.r_switch) {
    double a = integrate([&](double r) { return intpow(f.sg(r), f.n - 1); }, f.g_lo, R, tol);
    double b = integrate([&](double r) { return f.shn1(r); }, 0.0, R, tol);
    return f.omega * (a - b);
  }
  double head = integrate([&](double r) { return intpow(f.sg(r), f.n - 1); }, f.g_lo,
                          f.r_switch, tol) -
                integrate([&](double r) { return f.shn1(r); }, 0.0, f.r_switch, tol);
  double tail = integrate(
      [&](double r) { return f.shn1(r) * pm1(f.q.value(r), f.n - 1); }, f.r_switch, R, tol);
  return f.omega * (head + tail);
}

// B = s' s^{n-2} - shat' shat^{n-2}
double b_direct(const Frame& f, double r) {
  return f.sg_d(r) * intpow(f.sg(r), f.n - 2) - f.sr_d(r) * intpow(f.sr(r), f.n - 2);
}

double b_stable(const Frame& f, double r) {
  double qv = f.q.value(r), qp = f.q.deriv(r);
  return f.shn1(r) * (f.sr_logd(r) * pm1(qv, f.n - 1) + qp * intpow(1.0 + qv, f.n - 2));
}

// integrand of the defect integral after integrating by parts (model identity
// subtracted): Phi = (n-1)(n-2)[s^{n-3}(1+s'^2) - ...] + n(n-1)[s^{n-1} - ...]
double phi_direct(const Frame& f, double r) {
  int n = f.n;
  double s = f.sg(r), sp = f.sg_d(r), sh = f.sr(r), shp = f.sr_d(r);
  double first = 0.0;
  if (n >= 3)
    first = (n - 1.0) * (n - 2.0) *
            (intpow(s, n - 3) * (1.0 + sp * sp) - intpow(sh, n - 3) * (1.0 + shp * shp));
  return first + double(n) * (n - 1.0) * (intpow(s, n - 1) - intpow(sh, n - 1));
}

double phi_stable(const Frame& f, double r) {
  int n = f.n;
  double qv = f.q.value(r), qp = f.q.deriv(r);
  double sh = f.sr(r), shp = f.sr_d(r);
  double first = 0.0;
  if (n >= 3) {
    double bkt = pm1(qv, n - 3) + shp * shp * pm1(qv, n - 1) +
                 intpow(1.0 + qv, n - 3) *
                     (2.0 * sh * shp * (1.0 + qv) * qp + sh * sh * qp * qp);
    first = (n - 1.0) * (n - 2.0) * intpow(sh, n - 3) * bkt;
  }
  return first + double(n) * (n - 1.0) * f.shn1(r) * pm1(qv, n - 1);
}

// integrand of the action prelimit (defect integral minus 2(n-1) rv collapsed)
double psi_direct(const Frame& f, double r) {
  int n = f.n;
  if (n == 2) return 0.0;
  double s = f.sg(r), sp = f.sg_d(r), sh = f.sr(r), shp = f.sr_d(r);
  return (n - 1.0) * (n - 2.0) *
         (intpow(s, n - 3) * (1.0 + sp * sp + s * s) -
          intpow(sh, n - 3) * (1.0 + shp * shp + sh * sh));
}

double psi_stable(const Frame& f, double r) {
  int n = f.n;
  if (n == 2) return 0.0;
  double qv = f.q.value(r), qp = f.q.deriv(r);
  double sh = f.sr(r), shp = f.sr_d(r);
  double bkt = pm1(qv, n - 3) + (shp * shp + sh * sh) * pm1(qv, n - 1) +
               intpow(1.0 + qv, n - 3) *
                   (2.0 * sh * shp * (1.0 + qv) * qp + sh * sh * qp * qp);
  return (n - 1.0) * (n - 2.0) * intpow(sh, n - 3) * bkt;
}

double defect_int_at(const Frame& f, double R, double tol) {
  double sw = std::min(f.r_switch, R);
  double body = integrate([&](double r) { return phi_direct(f, r); }, f.g_lo, sw, tol);
  if (R > sw)
    body += integrate([&](double r) { return phi_stable(f, r); }, sw, R, tol);
  double bR = (R > f.r_switch) ? b_stable(f, R) : b_direct(f, R);
  return f.omega * (-2.0 * (f.n - 1.0) * (bR - b_direct(f, f.g_lo)) + body);
}

double eh_prelimit_at(const Frame& f, double R, double tol) {
  int n = f.n;
  double sw = std::min(f.r_switch, R);
  double body = integrate([&](double r) { return psi_direct(f, r); }, f.g_lo, sw, tol);
  if (R > sw)
    body += integrate([&](double r) { return psi_stable(f, r); }, sw, R, tol);
  // reference cap volume between the two chart origins, signed
  double cap = integrate([&](double r) { return intpow(f.sr(r), n - 1); }, 0.0, f.g_lo, tol);
  double qv = f.q.value(R), qp = f.q.deriv(R);
  double bd = f.sr_logd(R) * (qv * (2.0 + qv) - 2.0 * pm1(qv, n - 1)) -
              2.0 * qp * (1.0 + qv) * pm1(qv, n - 3);
  return f.omega * ((n - 1.0) * f.shn1(R) * bd + 2.0 * (n - 1.0) * b_direct(f, f.g_lo) +
                    2.0 * (n - 1.0) * cap + body);
}

std::vector<double> geometric_schedule(double lo, double hi, int k) {
  std::vector<double> R(k);
  for (int i = 0; i < k; ++i) R[i] = hi * std::pow(lo / hi, double(k - 1 - i) / (k - 1));
  return R;
}

}  // namespace

double adm_boundary_term(const RadialMetric& g, const ReferenceModel& ref,
                         const Alignment& al, double R) {
  if (!g.arclength()) throw std::runtime_error("adm_boundary_term: arclength gauge required");
  Frame f = model_frame(g, ref, al);
  if (R <= f.g_lo || R > f.g_hi + 1e-12)
    throw std::out_of_range("adm_boundary_term: R outside the aligned domain");
  if (std::fabs(ref.warp(R)) < 1e-300)
    throw std::runtime_error("adm_boundary_term: reference warp underflow");
  return adm_at(f, R);
}

double renormalized_volume(const RadialMetric& g, const ReferenceModel& ref,
                           const Alignment& al, double R, double quad_tol) {
  Frame f = model_frame(g, ref, al);
  if (R <= f.g_lo || R > f.g_hi + 1e-12)
    throw std::out_of_range("renormalized_volume: R outside the aligned domain");
  return rv_at(f, R, quad_tol);
}

double scal_defect_integral_upto(const RadialMetric& g, const ReferenceModel& ref,
                                 const Alignment& al, double R, double quad_tol) {
  Frame f = model_frame(g, ref, al);
  return defect_int_at(f, R, quad_tol);
}

double eh_action_prelimit(const RadialMetric& g, const ReferenceModel& ref,
                          const Alignment& al, double R, double quad_tol) {
  Frame f = model_frame(g, ref, al);
  return eh_prelimit_at(f, R, quad_tol);
}

namespace {

struct DefectClass {
  bool integrable = true;
  bool zero = false;
  int sign = 0;  // sign of the tail when single-signed
  double rate = std::numeric_limits<double>::infinity();
};

DefectClass classify_defect(const RadialMetric& g) {
  DefectClass out;
  double lo = g.dom.lo + 0.6 * g.dom.width();
  double hi = g.dom.lo + 0.92 * g.dom.width();
  std::vector<std::pair<double, double>> s;
  bool pos = false, neg = false;
  for (double r : linspace(lo, hi, 40)) {
    double d = scal_defect(g, r);
    s.push_back({r, d});
    if (d > 1e-14) pos = true;
    if (d < -1e-14) neg = true;
  }
  DecayFit fit = fit_decay_rate(s);
  if (fit.below_floor) {
    out.zero = true;
    return out;
  }
  out.rate = fit.rate;
  if (fit.rate <= (g.n - 1.0) + 1e-3) {
    out.integrable = false;
    if (pos && !neg) out.sign = +1;
    if (neg && !pos) out.sign = -1;
  }
  return out;
}

MassReport run_mass_pipeline(const Frame& f, const std::string& ref_name, double beta,
                             double residual_rate, const DefectClass& dc,
                             const MassOptions& opt, bool with_action) {
  MassReport rep;
  rep.n = f.n;
  rep.reference = ref_name;
  rep.beta = beta;
  rep.residual_rate = residual_rate;

  double r_hi = std::min(f.g_lo + opt.r_hi_frac * (f.g_hi - f.g_lo), opt.r_hi_cap);
  double r_lo = std::max(0.35 * r_hi, f.r_switch + 1.0);
  if (!(r_hi > r_lo + 0.5))
    throw std::runtime_error("volume_renormalized_mass: domain too short for the R-schedule");
  auto R = geometric_schedule(r_lo, r_hi, opt.schedule_points);

  std::vector<double> comb, ehs, dfs;
  for (double Rk : R) {
    double adm = adm_at(f, Rk);
    double rv = rv_at(f, Rk, opt.quad_tol);
    MassSample ms = MassSample::make(f.n, Rk, adm, rv);
    rep.samples.push_back(ms);
    comb.push_back(ms.combined);
    if (with_action) {
      ehs.push_back(eh_prelimit_at(f, Rk, opt.quad_tol));
      dfs.push_back(defect_int_at(f, Rk, opt.quad_tol));
    }
  }

  double kappa_min = 1e-3;
  if (std::isfinite(residual_rate)) {
    double k1 = 2.0 * residual_rate - (f.n - 1.0);
    double k2 = std::isfinite(dc.rate) ? dc.rate - (f.n - 1.0) : k1;
    kappa_min = std::max(1e-3, std::min(k1, k2) - 0.2);
  }

  if (!dc.integrable && dc.sign != 0) {
    // single-signed non-integrable defect: the mass is +-infinity
    rep.m_vr = dc.sign > 0 ? std::numeric_limits<double>::infinity()
                           : -std::numeric_limits<double>::infinity();
    rep.err_estimate = std::numeric_limits<double>::infinity();
    rep.flags.push_back(dc.sign > 0 ? "divergent+" : "divergent-");
    rep.extrapolation_model = "divergent-by-classification";
  } else {
    if (!dc.integrable) rep.flags.push_back("conditionally-convergent");
    TailFit fit = extrapolate_tail(R, comb, kappa_min);
    if (fit.divergent) {
      rep.m_vr = fit.limit;
      rep.err_estimate = std::numeric_limits<double>::infinity();
      rep.flags.push_back(fit.model);
      rep.extrapolation_model = fit.model;
    } else {
      rep.m_vr = fit.limit;
      rep.err_estimate = fit.err;
      rep.extrapolation_model = fit.model;
    }
  }

  if (with_action) {
    TailFit fe = extrapolate_tail(R, ehs, kappa_min);
    rep.s_action = fe.limit;
    rep.s_action_err = fe.err;
    if (dc.integrable || dc.sign == 0) {
      TailFit fd = extrapolate_tail(R, dfs, kappa_min);
      rep.scal_defect_integral = fd.limit;
    } else {
      rep.scal_defect_integral = rep.m_vr;  // +-infinity, same classification
    }
  }
  return rep;
}

}  // namespace

MassReport volume_renormalized_mass(const RadialMetric& g, const ReferenceModel& ref,
                                    const MassOptions& opt) {
  if (!g.arclength())
    throw std::runtime_error("volume_renormalized_mass: arclength gauge required");
  Alignment al = align_to_reference(g, ref, opt.align);
  double rate = al.residual_rate.faster_than_any()
                    ? std::numeric_limits<double>::infinity()
                    : al.residual_rate.rate;
  if (rate <= 0.5 * (g.n - 1.0))
    throw std::runtime_error(
        "volume_renormalized_mass: aligned decay rate below the APE threshold (n-1)/2");
  DefectClass dc = classify_defect(g);
  Frame f = model_frame(g, ref, al);
  MassReport rep = run_mass_pipeline(f, ref.describe(), al.beta, rate, dc, opt, true);
  double upper = 0.5 * (g.n - 1.0) + 0.5 * std::sqrt((g.n + 3.0) * (g.n - 1.0));
  if (std::isfinite(rate) && rate > upper)
    rep.flags.push_back("ape-rate-above-technical-bound");
  return rep;
}

MassReport volume_renormalized_mass_rel(const RadialMetric& g, const RadialMetric& g_mid,
                                        const MassOptions& opt) {
  if (!g.arclength() || !g_mid.arclength())
    throw std::runtime_error("volume_renormalized_mass_rel: arclength gauge required");
  if (g.n != g_mid.n || g.cone != g_mid.cone)
    throw std::invalid_argument("volume_renormalized_mass_rel: incompatible pair");

  // relative alignment: plateau of log[(1+q_g)/(1+q_mid)]
  double span = std::min(g.dom.width(), g_mid.dom.width());
  double lo = std::max(g.dom.lo, g_mid.dom.lo);
  std::vector<double> R0, y;
  for (double r : linspace(lo + 0.6 * span, lo + 0.95 * span, 48)) {
    R0.push_back(r);
    y.push_back(std::log1p(g.q.value(r)) - std::log1p(g_mid.q.value(r)));
  }
  TailFit bf = extrapolate_tail(R0, y, 1e-3);
  if (bf.divergent) throw std::runtime_error("mass_rel: metrics not mutually asymptotic");
  double beta = bf.limit;

  RadialCurve qg_shift = detail::shifted_q_view(g.q, beta, 1.0,
                                                {g.dom.lo + beta, g.dom.hi + beta});
  RadialCurve qm = g_mid.q;
  auto qrel_val = [qg_shift, qm](double r) {
    return (qg_shift.value(r) - qm.value(r)) / (1.0 + qm.value(r));
  };
  auto qrel_d1 = [qg_shift, qm](double r) {
    double u = 1.0 + qm.value(r);
    return (qg_shift.deriv(r) * u - (1.0 + qg_shift.value(r)) * qm.deriv(r)) / (u * u);
  };

  Frame f;
  f.n = g.n;
  f.c = g.cone;
  f.omega = sphere_volume(g.n);
  f.g_lo = g.dom.lo + beta;
  f.g_hi = std::min(g.dom.hi + beta, g_mid.dom.hi);
  f.r_switch = std::max({1.0, f.g_lo + 0.5, g_mid.dom.lo + 0.5});
  f.q = RadialCurve::closed_form(qrel_val, qrel_d1,
                              [qrel_d1](double r) {
                                double h = 1e-5;
                                return (qrel_d1(r + h) - qrel_d1(r - h)) / (2.0 * h);
                              },
                              {f.g_lo, f.g_hi});
  RadialMetric gc = g, mc = g_mid;
  f.sg = [gc, beta](double r) { return gc.s(r - beta); };
  f.sg_d = [gc, beta](double r) { return gc.s_d(r - beta); };
  f.sr = [mc](double r) { return mc.s(r); };
  f.sr_d = [mc](double r) { return mc.s_d(r); };
  f.sr_logd = [mc](double r) { return coth(r) + mc.q.deriv(r) / (1.0 + mc.q.value(r)); };

  DefectClass dc = classify_defect(g);
  return run_mass_pipeline(f, "metric:" + g_mid.label, beta,
                           std::numeric_limits<double>::infinity(), dc, opt, false);
}

double eh_action(const RadialMetric& g, const ReferenceModel& ref, const MassOptions& opt) {
  return volume_renormalized_mass(g, ref, opt).s_action;
}

double check_additivity(const RadialMetric& g, const RadialMetric& g_mid,
                        const ReferenceModel& ref, const MassOptions& opt) {
  double m_ref_g = volume_renormalized_mass(g, ref, opt).m_vr;
  double m_mid_g = volume_renormalized_mass_rel(g, g_mid, opt).m_vr;
  double m_ref_mid = volume_renormalized_mass(g_mid, ref, opt).m_vr;
  return std::fabs(m_ref_g - m_mid_g - m_ref_mid);
}

RadialMetric perturb_metric(const RadialMetric& g, const RadialPerturbation& h, double t) {
  if (!g.arclength()) throw std::runtime_error("perturb_metric: arclength gauge required");
  RadialMetric out = g;
  out.defect_override = RadialCurve();
  RadialCurve q0 = g.q;
  double c = g.cone;

  if (h.h_sph.valid()) {
    RadialCurve hs = h.h_sph;
    auto wm1 = [q0, hs, t, c](double r) {
      double qv = q0.value(r);
      double sh = c * std::sinh(r);
      return qv * (2.0 + qv) + t * hs.value(r) / (sh * sh);
    };
    auto wp = [q0, hs, t, c](double r) {
      double sh = c * std::sinh(r);
      return 2.0 * (1.0 + q0.value(r)) * q0.deriv(r) +
             t * (hs.deriv(r) - 2.0 * coth(r) * hs.value(r)) / (sh * sh);
    };
    auto wpp = [q0, hs, t, c](double r) {
      double sh = c * std::sinh(r);
      double cth = coth(r);
      double csch2 = 1.0 / (sh / c * sh / c);
      double qp = q0.deriv(r);
      return 2.0 * qp * qp + 2.0 * (1.0 + q0.value(r)) * q0.deriv2(r) +
             t * (hs.deriv2(r) + 2.0 * csch2 * hs.value(r) - 4.0 * cth * hs.deriv(r) +
                  4.0 * cth * cth * hs.value(r)) /
                 (sh * sh);
    };
    auto qt = [wm1](double r) {
      double w = wm1(r);
      double W = 1.0 + w;
      if (!(W > 0.0)) throw std::runtime_error("perturb_metric: degenerate warp");
      return w / (1.0 + std::sqrt(W));
    };
    auto qt_d1 = [wm1, wp](double r) { return wp(r) / (2.0 * std::sqrt(1.0 + wm1(r))); };
    auto qt_d2 = [wm1, wp, wpp](double r) {
      double W = 1.0 + wm1(r);
      double sq = std::sqrt(W);
      return wpp(r) / (2.0 * sq) - wp(r) * wp(r) / (4.0 * W * sq);
    };
    out.q = RadialCurve::closed_form(qt, qt_d1, qt_d2, g.dom);
    for (double r : linspace(g.dom.lo + 1e-3, g.dom.hi, 257))
      if (!(1.0 + wm1(r) > 0.0))
        throw std::runtime_error("perturb_metric: degenerate warp");
  }

  if (h.h_rad.valid()) {
    RadialCurve hr = h.h_rad;
    auto av = [hr, t](double r) {
      double v = 1.0 + t * hr.value(r);
      if (!(v > 0.0)) throw std::runtime_error("perturb_metric: degenerate lapse");
      return std::sqrt(v);
    };
    auto ad1 = [hr, t, av](double r) { return t * hr.deriv(r) / (2.0 * av(r)); };
    auto ad2 = [hr, t, av](double r) {
      double a = av(r);
      double ap = t * hr.deriv(r) / (2.0 * a);
      return t * hr.deriv2(r) / (2.0 * a) - ap * ap / a;
    };
    out.lapse = RadialCurve::closed_form(av, ad1, ad2, g.dom);
    out = regauge_arclength(out);
  }
  out.label = g.label + " perturbed";
  return out;
}

VariationCheck first_variation_S(const RadialMetric& g, const RadialPerturbation& h,
                                 const ReferenceModel& ref, double t0,
                                 const MassOptions& opt) {
  if (!g.arclength()) throw std::runtime_error("first_variation_S: arclength gauge required");

  // analytic gradient pairing: A = Ric - scal/2 g - (n-1)(n-2)/2 g
  // radial components A_r = E_rad - defect/2, A_sigma = E_sph - s^2 defect/2
  Interval supp{std::min(h.h_rad.valid() ? h.h_rad.domain().lo : 1e30,
                         h.h_sph.valid() ? h.h_sph.domain().lo : 1e30),
                std::max(h.h_rad.valid() ? h.h_rad.domain().hi : -1e30,
                         h.h_sph.valid() ? h.h_sph.domain().hi : -1e30)};
  supp.lo = std::max(supp.lo, g.dom.lo + 1e-6);
  supp.hi = std::min(supp.hi, g.dom.hi);
  double omega = sphere_volume(g.n);
  int n = g.n;
  auto integrand = [&](double r) {
    auto [e_rad, e_sph] = einstein_deviation(g, r);
    double defect = scal_defect(g, r);
    double s = g.s(r);
    double ar = e_rad - 0.5 * defect;
    double as = e_sph - 0.5 * s * s * defect;
    double pair = 0.0;
    if (h.h_rad.valid()) pair += ar * h.h_rad.value(r);
    if (h.h_sph.valid()) pair += (n - 1.0) * as * h.h_sph.value(r) / intpow(s, 4);
    return pair * intpow(s, n - 1) * omega;
  };
  VariationCheck out;
  out.analytic = -integrate(integrand, supp.lo, supp.hi, opt.quad_tol);

  auto S_of = [&](double t) {
    if (t == 0.0) return eh_action(g, ref, opt);
    return eh_action(perturb_metric(g, h, t), ref, opt);
  };
  out.finite_diff = richardson_diff(S_of, t0);
  out.fd_step = t0;
  return out;
}

TwoDimIdentity mass_identity_2d(const RadialMetric& g, double omega,
                                const MassOptions& opt) {
  if (g.n != 2) throw std::invalid_argument("mass_identity_2d: n must be 2");
  if (g.origin != OriginClass::SmoothOrigin)
    throw std::invalid_argument("mass_identity_2d: smooth-origin metric required (chi = 2)");
  ReferenceModel ref = ReferenceModel::conic(omega);
  TwoDimIdentity out;
  out.report = volume_renormalized_mass(g, ref, opt);
  out.lhs = out.report.m_vr + 2.0 * (2.0 * kPi - omega);
  out.rhs = out.report.scal_defect_integral;
  return out;
}

}  // namespace ahmass
