#include "ahmass/metric.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ahmass/quadrature.hpp"

namespace ahmass {

namespace {

constexpr double kCatalogRmax = 40.0;

double coth(double r) { return 1.0 / std::tanh(r); }
double csch2(double r) {
  double s = std::sinh(r);
  return 1.0 / (s * s);
}

}  // namespace

double ReferenceModel::warp(double r) const { return cone * std::sinh(r); }
double ReferenceModel::warp_d(double r) const { return cone * std::cosh(r); }

std::string ReferenceModel::describe() const {
  std::ostringstream os;
  if (n == 2 && cone != 1.0)
    os << "conic(n=2, omega=" << omega() << ")";
  else
    os << "hyperbolic(n=" << n << ")";
  return os.str();
}

ReferenceModel ReferenceModel::hyperbolic(int n) {
  if (n < 2) throw std::invalid_argument("ReferenceModel: n must be >= 2");
  return ReferenceModel{n, 1.0};
}

ReferenceModel ReferenceModel::conic(double omega) {
  if (!(omega > 0.0)) throw std::invalid_argument("ReferenceModel: omega must be > 0");
  return ReferenceModel{2, omega / (2.0 * kPi)};
}

double RadialMetric::s_d(double r) const {
  double sh = cone * std::sinh(r), ch = cone * std::cosh(r);
  return ch * (1.0 + q.value(r)) + sh * q.deriv(r);
}

double RadialMetric::s_dd(double r) const {
  double sh = cone * std::sinh(r), ch = cone * std::cosh(r);
  return sh * (1.0 + q.value(r)) + 2.0 * ch * q.deriv(r) + sh * q.deriv2(r);
}

double RadialMetric::origin_s3() const {
  if (!arclength())
    throw std::runtime_error("origin_s3: arclength gauge required");
  auto fit = [&](double eta) { return (s(dom.lo + eta) - eta) / (eta * eta * eta); };
  double eta = 0.1;
  return (4.0 * fit(0.5 * eta) - fit(eta)) / 3.0;
}

namespace {

// W1 = s_uu/s - 1 and W2 = (1 - s_u^2 + s^2)/s^2 in arclength gauge,
// through the q-form (exact zero on the model, no large-r cancellation).
// Offset origins (1 + q -> 0) fall back to the odd Taylor model.
struct Warp2 {
  double w1, w2;
};

Warp2 warp_invariants(const RadialMetric& m, double r) {
  double r_eff = std::max(r, m.dom.lo + 1e-9);
  double qv = m.q.value(r_eff);

  if (1.0 + qv < 0.5 && m.origin == OriginClass::SmoothOrigin) {
    // near an offset origin: s = x + s3 x^3, x = r - lo
    double s3 = m.origin_s3();
    double x = std::max(r - m.dom.lo, 1e-9);
    double x2 = x * x;
    double sp = 1.0 + 3.0 * s3 * x2;
    double sv = x * (1.0 + s3 * x2);
    double w1 = 6.0 * s3 / (1.0 + s3 * x2) - 1.0;
    double w2 = (1.0 - sp * sp + sv * sv) / (sv * sv);
    return {w1, w2};
  }

  double qp = m.q.deriv(r_eff);
  double qpp = m.q.deriv2(r_eff);
  double one_q = 1.0 + qv;
  double cth = coth(r_eff);
  double cq = (qp == 0.0) ? 0.0 : cth * qp;

  if (m.arclength()) {
    double w1 = (2.0 * cq + qpp) / one_q;
    // [1 - c^2 (1+q)^2] / s^2 with c(1+q) - 1 kept in expm1 form
    double e = std::expm1(std::log(m.cone) + std::log1p(qv));
    double sv = m.shat(r_eff) * one_q;
    double w2 = -e * (e + 2.0) / (sv * sv) - 2.0 * cq / one_q - (qp * qp) / (one_q * one_q);
    return {w1, w2};
  }

  // general lapse: direct arclength derivatives
  double a = m.lapse.value(r_eff);
  double ap = m.lapse.deriv(r_eff);
  double sv = m.s(r_eff), spv = m.s_d(r_eff), sppv = m.s_dd(r_eff);
  double su = spv / a;
  double suu = (sppv * a - spv * ap) / (a * a * a);
  double w1 = suu / sv - 1.0;
  double w2 = (1.0 - su * su + sv * sv) / (sv * sv);
  return {w1, w2};
}

}  // namespace

double scal_defect_geometric(const RadialMetric& m, double r) {
  auto [w1, w2] = warp_invariants(m, r);
  double nn = m.n;
  return -2.0 * (nn - 1.0) * w1 + (nn - 1.0) * (nn - 2.0) * w2;
}

double scal_defect(const RadialMetric& m, double r) {
  if (m.defect_override.valid()) return m.defect_override.value(r);
  return scal_defect_geometric(m, r);
}

double scalar_curvature(const RadialMetric& m, double r) {
  if (!m.dom.contains(r))
    throw std::out_of_range("scalar_curvature: r outside metric domain");
  double v = -double(m.n) * (m.n - 1.0) + scal_defect(m, r);
  if (!std::isfinite(v)) throw std::runtime_error("scalar_curvature: non-finite value");
  return v;
}

double scalar_curvature_geometric(const RadialMetric& m, double r) {
  if (!m.dom.contains(r))
    throw std::out_of_range("scalar_curvature: r outside metric domain");
  return -double(m.n) * (m.n - 1.0) + scal_defect_geometric(m, r);
}

std::pair<double, double> einstein_deviation(const RadialMetric& m, double r) {
  if (!m.dom.contains(r))
    throw std::out_of_range("einstein_deviation: r outside metric domain");
  auto [w1, w2] = warp_invariants(m, r);
  double nn = m.n;
  double sv = m.s(std::max(r, m.dom.lo + 1e-9));
  double e_rad = -(nn - 1.0) * w1;
  double e_sph = sv * sv * (-w1 + (nn - 2.0) * w2);
  return {e_rad, e_sph};
}

namespace detail {

// View of q under the chart translation r -> r - beta plus a cone-factor
// ratio: q_new(r) = rho (1 + q(r - beta)) (cosh b - coth(r) sinh b) - 1.
// Exact at the asymptotic end: the constant parts cancel through expm1.
RadialCurve shifted_q_view(const RadialCurve& q, double beta, double rho,
                           Interval dom) {
  double chb = std::cosh(beta), shb = std::sinh(beta);
  double log_rho = std::log(rho);
  auto val = [=](double r) {
    double rr = (std::fabs(r) < 1e-12) ? 1e-12 : r;
    double P = chb - coth(rr) * shb;
    double qv = q.value(r - beta);
    if (P < 0.5) return rho * (1.0 + qv) * P - 1.0;
    return std::expm1(log_rho + std::log1p(qv) + std::log(P));
  };
  auto d1 = [=](double r) {
    double rr = (std::fabs(r) < 1e-12) ? 1e-12 : r;
    double P = chb - coth(rr) * shb;
    double Pp = csch2(rr) * shb;
    return rho * (q.deriv(r - beta) * P + (1.0 + q.value(r - beta)) * Pp);
  };
  auto d2 = [=](double r) {
    double rr = (std::fabs(r) < 1e-12) ? 1e-12 : r;
    double P = chb - coth(rr) * shb;
    double Pp = csch2(rr) * shb;
    double Ppp = -2.0 * csch2(rr) * coth(rr) * shb;
    return rho * (q.deriv2(r - beta) * P + 2.0 * q.deriv(r - beta) * Pp +
                  (1.0 + q.value(r - beta)) * Ppp);
  };
  return RadialCurve::closed_form(val, d1, d2, dom);
}

}  // namespace detail

RadialMetric shift_metric(const RadialMetric& m, double delta) {
  if (!m.arclength()) throw std::runtime_error("shift_metric: arclength gauge required");
  if (m.dom.lo + delta < -1e-12)
    throw std::invalid_argument("shift_metric: shift would push the origin below r = 0");
  RadialMetric out = m;
  out.dom = {m.dom.lo + delta, m.dom.hi + delta};
  out.q = detail::shifted_q_view(m.q, delta, 1.0, out.dom);
  // the aligned chart is translation-invariant; only the shift moves
  if (m.beta_hint) out.beta_hint = *m.beta_hint - delta;
  out.defect_override = RadialCurve();
  if (m.defect_override.valid()) {
    RadialCurve base = m.defect_override;
    out.defect_override = RadialCurve::closed_form(
        [base, delta](double r) { return base.value(r - delta); },
        [base, delta](double r) { return base.deriv(r - delta); },
        [base, delta](double r) { return base.deriv2(r - delta); }, out.dom);
  }
  out.label = m.label + " shifted";
  return out;
}

namespace {

// Arclength map u(r) = r + A(r), A = integral of (a - 1) from dom.lo.
struct ArclengthMap {
  CubicSpline A;  // small, smooth
  Interval dom;

  double u_of_r(double r) const { return r + A.value(r); }
  double r_of_u(double u) const {
    double r = u - A.value(std::clamp(u, dom.lo, dom.hi));
    for (int it = 0; it < 60; ++it) {
      r = std::clamp(r, dom.lo, dom.hi);
      double f = r + A.value(r) - u;
      double df = 1.0 + A.deriv(r);
      double step = f / df;
      r -= step;
      if (std::fabs(step) < 1e-14 * (1.0 + std::fabs(u))) break;
    }
    return std::clamp(r, dom.lo, dom.hi);
  }
};

ArclengthMap build_arclength_map(const RadialMetric& m, int nodes = 2001) {
  std::vector<double> xs = linspace(m.dom.lo, m.dom.hi, nodes);
  std::vector<double> As(nodes, 0.0);
  auto am1 = [&](double r) { return m.lapse.value(r) - 1.0; };
  for (int i = 1; i < nodes; ++i)
    As[i] = As[i - 1] + integrate(am1, xs[i - 1], xs[i], 1e-14, 200);
  return ArclengthMap{CubicSpline(xs, As), m.dom};
}

}  // namespace

RadialMetric regauge_arclength(const RadialMetric& m) {
  if (m.arclength()) return m;
  for (double r : linspace(m.dom.lo, m.dom.hi, 257)) {
    double a = m.lapse.value(r);
    if (!(a > 0.0) || !std::isfinite(a))
      throw std::runtime_error("regauge_arclength: lapse must be positive and finite");
  }
  auto map = std::make_shared<ArclengthMap>(build_arclength_map(m));
  double u_hi = map->u_of_r(m.dom.hi);
  Interval udom{m.dom.lo, u_hi};
  // clamp just inside the origin: the singular 1/sinh pieces below cancel in
  // exact arithmetic, and every consumer multiplies by s -> 0 there
  double u_floor = udom.lo + 1e-6;

  RadialCurve q = m.q;
  RadialCurve lap = m.lapse;
  // log-derivative chain: d log(1+q_rg)/du = T with
  //   T = (coth r - a coth u)/a + q'/(a(1+q))
  auto qrg_val = [map, q](double u) {
    double r = map->r_of_u(u);
    double uu = (std::fabs(u) < 1e-12) ? 1e-12 : u;
    double d = u - r;  // = A(r)
    double ratio = std::cosh(d) - coth(uu) * std::sinh(d);  // sinh(r)/sinh(u)
    if (ratio < 0.5) return (1.0 + q.value(r)) * ratio - 1.0;
    return std::expm1(std::log1p(q.value(r)) + std::log(ratio));
  };
  auto T_of = [map, q, lap, u_floor](double u) {
    u = std::max(u, u_floor);
    double r = map->r_of_u(u);
    double a = lap.value(r);
    double cthr_m_cthu = std::sinh(u - r) / (std::sinh(r) * std::sinh(u));
    double T = (cthr_m_cthu - (a - 1.0) * coth(u)) / a +
               q.deriv(r) / (a * (1.0 + q.value(r)));
    return T;
  };
  auto qrg_d1 = [qrg_val, T_of, u_floor](double u) {
    u = std::max(u, u_floor);
    return (1.0 + qrg_val(u)) * T_of(u);
  };
  auto qrg_d2 = [map, q, lap, qrg_val, T_of, u_floor](double u) {
    u = std::max(u, u_floor);
    double r = map->r_of_u(u);
    double a = lap.value(r);
    double ap = lap.deriv(r);
    double qv = q.value(r), qp = q.deriv(r), qpp = q.deriv2(r);
    double Tp = -csch2(r) / (a * a) - coth(r) * ap / (a * a * a) + csch2(u) +
                (qpp / (1.0 + qv) - qp * ap / (a * (1.0 + qv)) -
                 qp * qp / ((1.0 + qv) * (1.0 + qv))) /
                    (a * a);
    double T = T_of(u);
    return (1.0 + qrg_val(u)) * (T * T + Tp);
  };

  RadialMetric out;
  out.n = m.n;
  out.cone = m.cone;
  out.dom = udom;
  out.origin = m.origin;
  out.q = RadialCurve::closed_form(qrg_val, qrg_d1, qrg_d2, udom);

  // When the lapse settles to 1 the arclength chart is asymptotically a pure
  // translation of the input chart by A_end; record the exact shift and build
  // the aligned deviation in a single expm1 chain (no cancelling constants).
  double A_end = u_hi - m.dom.hi;
  if (std::fabs(lap.value(m.dom.hi) - 1.0) < 1e-10) {
    double beta = -A_end;
    Interval adom{udom.lo - beta, udom.hi - beta};
    auto r_of_v = [map, A_end, lap](double v) {
      // solve r + A(r) = v + A_end
      double target = v + A_end;
      double r = std::clamp(target - A_end, map->dom.lo, map->dom.hi);
      for (int it = 0; it < 60; ++it) {
        double fv = r + map->A.value(r) - target;
        double step = fv / lap.value(r);
        r -= step;
        r = std::clamp(r, map->dom.lo, map->dom.hi);
        if (std::fabs(step) < 1e-14 * (1.0 + std::fabs(target))) break;
      }
      return r;
    };
    auto W_of = [map, q, A_end, r_of_v](double v) {
      double vv = (std::fabs(v) < 1e-12) ? 1e-12 : v;
      double r = r_of_v(v);
      double delta = r - v;  // = A_end - A(r), decays with the lapse deviation
      double ratio = std::cosh(delta) + coth(vv) * std::sinh(delta);  // sinh r / sinh v
      return std::log1p(q.value(r)) + std::log(ratio);
    };
    auto qa_val = [W_of](double v) { return std::expm1(W_of(v)); };
    auto qa_d1 = [map, q, lap, r_of_v, qa_val](double v) {
      double vv = (std::fabs(v) < 1e-12) ? 1e-12 : v;
      double r = r_of_v(v);
      double a = lap.value(r);
      double delta = r - v;
      // dW/dv = (1/a)[q'/(1+q) + coth r] - coth v, in decaying pieces:
      //   coth(r)/a - coth(v) = (1-a)/a coth r - sinh(delta)/(sinh r sinh v)
      double T = q.deriv(r) / (a * (1.0 + q.value(r))) +
                 coth(r) * (1.0 - a) / a -
                 std::sinh(delta) / (std::sinh(r) * std::sinh(vv));
      return (1.0 + qa_val(v)) * T;
    };
    auto qa_d2 = [qa_d1](double v) {
      double h = 1e-5;
      return (qa_d1(v + h) - qa_d1(v - h)) / (2.0 * h);
    };
    out.beta_hint = beta;
    out.aligned_q = RadialCurve::closed_form(qa_val, qa_d1, qa_d2, adom);
  }
  if (m.defect_override.valid()) {
    RadialCurve base = m.defect_override;
    out.defect_override = RadialCurve::closed_form(
        [map, base](double u) { return base.value(map->r_of_u(u)); },
        [map, base, lap](double u) {
          double r = map->r_of_u(u);
          return base.deriv(r) / lap.value(r);
        },
        [map, base, lap](double u) {
          double r = map->r_of_u(u);
          double a = lap.value(r);
          return (base.deriv2(r) - base.deriv(r) * lap.deriv(r) / a) / (a * a);
        },
        udom);
  }
  out.label = m.label + " [arclength]";
  return out;
}

RadialMetric conformal_metric(const RadialMetric& base, const RadialCurve& w,
                              std::optional<RadialCurve> defect) {
  if (!base.arclength())
    throw std::runtime_error("conformal_metric: arclength base required");
  RadialCurve q0 = base.q;
  Interval dom = base.dom;
  // raw e^{2w} g: lapse e^w, relative warp (1+q)e^w - 1
  auto qpre_val = [q0, w](double r) {
    double qv = q0.value(r), wv = w.value(r);
    return std::expm1(wv) * (1.0 + qv) + qv;
  };
  auto qpre_d1 = [q0, w](double r) {
    double ew = std::exp(w.value(r));
    return ew * (w.deriv(r) * (1.0 + q0.value(r)) + q0.deriv(r));
  };
  auto qpre_d2 = [q0, w](double r) {
    double ew = std::exp(w.value(r));
    double wp = w.deriv(r), wpp = w.deriv2(r);
    double qv = q0.value(r), qp = q0.deriv(r), qpp = q0.deriv2(r);
    return ew * ((wpp + wp * wp) * (1.0 + qv) + 2.0 * wp * qp + qpp);
  };
  auto lap_val = [w](double r) { return std::exp(w.value(r)); };
  auto lap_d1 = [w](double r) { return w.deriv(r) * std::exp(w.value(r)); };
  auto lap_d2 = [w](double r) {
    double wp = w.deriv(r);
    return (w.deriv2(r) + wp * wp) * std::exp(w.value(r));
  };

  RadialMetric raw = base;
  raw.q = RadialCurve::closed_form(qpre_val, qpre_d1, qpre_d2, dom);
  raw.lapse = RadialCurve::closed_form(lap_val, lap_d1, lap_d2, dom);
  raw.defect_override = RadialCurve();
  RadialMetric out = regauge_arclength(raw);
  if (defect) {
    // defect given as a function of the base radius; pull back through r(u)
    auto map = std::make_shared<ArclengthMap>(build_arclength_map(raw));
    RadialCurve d = *defect;
    out.defect_override = RadialCurve::closed_form(
        [map, d](double u) { return d.value(map->r_of_u(u)); },
        [map, d, w](double u) {
          double r = map->r_of_u(u);
          return d.deriv(r) / std::exp(w.value(r));
        },
        [map, d, w](double u) {
          double r = map->r_of_u(u);
          double a = std::exp(w.value(r));
          return (d.deriv2(r) - d.deriv(r) * w.deriv(r)) / (a * a);
        },
        out.dom);
  }
  out.label = base.label + " conformal";
  return out;
}

double conformal_defect_value(const ReferenceModel& ref, const RadialCurve& w,
                              double r) {
  int n = ref.n;
  double rr = std::max(r, 1e-9);
  double wv = w.value(rr), wp = w.deriv(rr), wpp = w.deriv2(rr);
  double cth = coth(rr);
  if (n == 2) {
    // scal_g + 2 = 2 e^{-2u} Lap u - 2 expm1(-2u), Lap u = -u'' - coth u'
    double lap = -wpp - cth * wp;
    return 2.0 * std::exp(-2.0 * wv) * lap - 2.0 * std::expm1(-2.0 * wv);
  }
  double k = 0.5 * (n - 2.0);
  double phi = std::exp(k * wv);
  double phi_p = k * wp * phi;
  double phi_pp = (k * wpp + k * k * wp * wp) * phi;
  double lap_phi = -phi_pp - (n - 1.0) * cth * phi_p;
  double b = double(n + 2) / double(n - 2);
  return -double(n) * (n - 1.0) * std::expm1(-2.0 * wv) +
         (4.0 * (n - 1.0) / (n - 2.0)) * lap_phi * std::pow(phi, -b);
}

namespace {

void validate_positive_warp(const RadialMetric& m) {
  for (double r : linspace(m.dom.lo + 1e-4, m.dom.hi, 513)) {
    if (!(1.0 + m.q.value(r) > 0.0))
      throw std::invalid_argument("catalog metric: warp not positive on the domain");
  }
}

double param(const CatalogParams& p, const std::string& key, double fallback,
             bool required = false) {
  auto it = p.num.find(key);
  if (it == p.num.end()) {
    if (required) throw std::invalid_argument("make_catalog_metric: missing parameter " + key);
    return fallback;
  }
  return it->second;
}

RadialCurve gaussian_curve(double amp, double center, double width, Interval dom) {
  auto val = [=](double r) {
    double t = (r - center) / width;
    return amp * std::exp(-t * t);
  };
  auto d1 = [=](double r) {
    double t = (r - center) / width;
    return -2.0 * t / width * amp * std::exp(-t * t);
  };
  auto d2 = [=](double r) {
    double t = (r - center) / width;
    return (4.0 * t * t - 2.0) / (width * width) * amp * std::exp(-t * t);
  };
  return RadialCurve::closed_form(val, d1, d2, dom);
}

RadialCurve exp_curve(double amp, double rate, Interval dom) {
  auto val = [=](double r) { return amp * std::exp(-rate * r); };
  auto d1 = [=](double r) { return -rate * amp * std::exp(-rate * r); };
  auto d2 = [=](double r) { return rate * rate * amp * std::exp(-rate * r); };
  return RadialCurve::closed_form(val, d1, d2, dom);
}

// w with phi = e^{(n-2)w/2} = 1 + amp cosh(r)^{-rate}; smooth and even at the
// origin, scal defect positive for rate in (0, n) at small amplitude.
RadialCurve cosh_power_curve(int n, double amp, double rate, Interval dom) {
  double k = (n == 2) ? 1.0 : 2.0 / (n - 2.0);
  auto p_of = [=](double r) { return amp * std::pow(std::cosh(r), -rate); };
  auto val = [=](double r) { return k * std::log1p(p_of(r)); };
  auto d1 = [=](double r) {
    double p = p_of(r);
    double pp = -rate * p * std::tanh(r);
    return k * pp / (1.0 + p);
  };
  auto d2 = [=](double r) {
    double p = p_of(r);
    double th = std::tanh(r);
    double pp = -rate * p * th;
    double sech2 = 1.0 - th * th;
    double ppp = rate * rate * p * th * th - rate * p * sech2;
    double u = 1.0 + p;
    return k * (ppp * u - pp * pp) / (u * u);
  };
  return RadialCurve::closed_form(val, d1, d2, dom);
}

}  // namespace

RadialMetric make_catalog_metric(const std::string& name, const CatalogParams& p) {
  Interval dom{0.0, kCatalogRmax};
  if (name == "hyperbolic") {
    int n = (int)param(p, "n", 3);
    RadialMetric m;
    m.n = n;
    m.cone = 1.0;
    m.dom = dom;
    m.q = RadialCurve::constant(0.0, dom);
    m.label = "hyperbolic(n=" + std::to_string(n) + ")";
    return m;
  }
  if (name == "conic2d") {
    double omega = param(p, "omega", 0.0, true);
    if (!(omega > 0.0)) throw std::invalid_argument("conic2d: omega must be > 0");
    RadialMetric m;
    m.n = 2;
    m.cone = omega / (2.0 * kPi);
    m.dom = dom;
    m.q = RadialCurve::constant(0.0, dom);
    m.label = "conic2d(omega=" + std::to_string(omega) + ")";
    return m;
  }
  if (name == "bump") {
    int n = (int)param(p, "n", 3);
    double amp = param(p, "amp", 0.0, true);
    double center = param(p, "center", 3.0);
    double width = param(p, "width", 1.0);
    double omega = param(p, "omega", 2.0 * kPi);
    if (!(width > 0.0)) throw std::invalid_argument("bump: width must be > 0");
    RadialMetric m;
    m.n = n;
    m.cone = (n == 2) ? omega / (2.0 * kPi) : 1.0;
    m.dom = dom;
    m.q = gaussian_curve(amp, center, width, dom);
    m.label = "bump(n=" + std::to_string(n) + ")";
    validate_positive_warp(m);
    return m;
  }
  if (name == "radial-conformal") {
    int n = (int)param(p, "n", 3);
    ReferenceModel ref = ReferenceModel::hyperbolic(n);
    RadialCurve w;
    if (p.profile == "gaussian") {
      w = gaussian_curve(param(p, "amp", 0.0, true), param(p, "center", 3.0),
                         param(p, "width", 1.0), dom);
    } else if (p.profile == "exp") {
      w = exp_curve(param(p, "amp", 0.0, true), param(p, "rate", 2.0), dom);
    } else if (p.profile == "cosh-power") {
      w = cosh_power_curve(n, param(p, "amp", 0.0, true), param(p, "rate", 2.5), dom);
    } else {
      throw std::invalid_argument("radial-conformal: unknown profile '" + p.profile + "'");
    }
    RadialMetric base = make_catalog_metric("hyperbolic", {{{"n", double(n)}}, ""});
    RadialCurve dfct = RadialCurve::closed_form(
        [ref, w](double r) { return conformal_defect_value(ref, w, r); },
        [ref, w](double r) {
          double h = 1e-4;
          return (conformal_defect_value(ref, w, r + h) -
                  conformal_defect_value(ref, w, r - h)) /
                 (2.0 * h);
        },
        [ref, w](double r) {
          double h = 1e-3;
          return (conformal_defect_value(ref, w, r + h) -
                  2.0 * conformal_defect_value(ref, w, r) +
                  conformal_defect_value(ref, w, r - h)) /
                 (h * h);
        },
        dom);
    RadialMetric m = conformal_metric(base, w, dfct);
    m.label = "radial-conformal(n=" + std::to_string(n) + "," + p.profile + ")";
    validate_positive_warp(m);
    return m;
  }
  throw std::invalid_argument("make_catalog_metric: unknown catalog name '" + name + "'");
}

}  // namespace ahmass
