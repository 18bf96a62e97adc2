#include "ahmass/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ahmass {

DecayFit fit_decay_rate(const std::vector<std::pair<double, double>>& samples,
                        double floor) {
  if (samples.size() < 8)
    throw std::invalid_argument("fit_decay_rate: need at least 8 samples");
  std::vector<double> r, logv;
  for (auto& [x, v] : samples) {
    double a = std::fabs(v);
    if (a > floor) {
      r.push_back(x);
      logv.push_back(std::log(a));
    }
  }
  DecayFit out;
  out.window = {samples.front().first, samples.back().first};
  if (r.empty()) {
    out.below_floor = true;
    out.rate = std::numeric_limits<double>::infinity();
    out.amplitude = 0.0;
    return out;
  }
  if (r.size() < 8)
    throw std::runtime_error("fit_decay_rate: too few samples above the floor");

  size_t n = r.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    sx += r[i];
    sy += logv[i];
    sxx += r[i] * r[i];
    sxy += r[i] * logv[i];
  }
  double det = n * sxx - sx * sx;
  if (det <= 0.0) throw std::runtime_error("fit_decay_rate: degenerate abscissae");
  double slope = (n * sxy - sx * sy) / det;
  double icept = (sy - slope * sx) / n;
  double ss = 0.0;
  for (size_t i = 0; i < n; ++i) {
    double e = logv[i] - (icept + slope * r[i]);
    ss += e * e;
  }
  out.rate = -slope;
  out.amplitude = std::exp(icept);
  out.regression_residual = std::sqrt(ss / n);
  out.window = {r.front(), r.back()};
  if (!std::isfinite(out.rate)) throw std::runtime_error("fit_decay_rate: non-finite rate");
  return out;
}

namespace {

// Linear LS for (limit, coef) at fixed kappa; returns sum of squared residuals.
double fit_at_kappa(const std::vector<double>& R, const std::vector<double>& y,
                    double kappa, double& limit, double& coef) {
  size_t n = R.size();
  double s1 = n, se = 0, see = 0, sy = 0, sye = 0;
  for (size_t i = 0; i < n; ++i) {
    double e = std::exp(-kappa * (R[i] - R[0]));  // shifted for conditioning
    se += e;
    see += e * e;
    sy += y[i];
    sye += y[i] * e;
  }
  double det = s1 * see - se * se;
  if (det <= 1e-300) {
    limit = y.back();
    coef = 0.0;
    return std::numeric_limits<double>::infinity();
  }
  double c = (s1 * sye - se * sy) / det;
  double m = (sy - c * se) / s1;
  double ss = 0.0;
  for (size_t i = 0; i < n; ++i) {
    double e = std::exp(-kappa * (R[i] - R[0]));
    double d = y[i] - (m + c * e);
    ss += d * d;
  }
  limit = m;
  coef = c * std::exp(kappa * R[0]);
  return ss;
}

}  // namespace

TailFit extrapolate_tail(const std::vector<double>& R,
                         const std::vector<double>& y, double kappa_min) {
  if (R.size() != y.size() || R.size() < 4)
    throw std::invalid_argument("extrapolate_tail: need >= 4 samples");
  size_t n = R.size();
  TailFit out;
  double scale = 0.0;
  for (double v : y) scale = std::max(scale, std::fabs(v));
  double spread = std::fabs(y[n - 1] - y[n - 2]);

  // divergence screen: increments growing in magnitude with fixed sign
  {
    int grow = 0, sign_ok = 0;
    double d1 = y[n - 1] - y[n - 2];
    double d2 = y[n - 2] - y[n - 3];
    double d3 = y[n - 3] - y[n - 4];
    if (std::fabs(d1) >= std::fabs(d2) && std::fabs(d2) >= std::fabs(d3) &&
        std::fabs(d1) > 1e-10 * std::max(1.0, scale) && d1 * d2 > 0 && d2 * d3 > 0) {
      grow = 1;
      sign_ok = (d1 > 0) ? 1 : -1;
    }
    if (grow) {
      out.divergent = true;
      out.model = sign_ok > 0 ? "divergent+" : "divergent-";
      out.limit = sign_ok > 0 ? std::numeric_limits<double>::infinity()
                              : -std::numeric_limits<double>::infinity();
      out.err = std::numeric_limits<double>::infinity();
      return out;
    }
  }

  if (spread <= 1e-13 * std::max(1.0, scale) + 1e-15) {
    out.limit = y[n - 1];
    out.err = std::max(spread, 1e-15);
    out.model = "plateau";
    return out;
  }

  double kmin = std::max(kappa_min, 1e-3);
  double kmax = 40.0;
  double best_ss = std::numeric_limits<double>::infinity();
  double best_k = kmin, best_m = y[n - 1], best_c = 0.0;
  int grid = 160;
  for (int i = 0; i <= grid; ++i) {
    double k = kmin * std::pow(kmax / kmin, double(i) / grid);
    double m, c;
    double ss = fit_at_kappa(R, y, k, m, c);
    if (ss < best_ss) {
      best_ss = ss;
      best_k = k;
      best_m = m;
      best_c = c;
    }
  }
  // golden-section refine on log kappa
  double lo = std::log(std::max(kmin, best_k / 1.6)), hi = std::log(std::min(kmax, best_k * 1.6));
  const double gr = 0.618033988749895;
  double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
  double m1, c1, m2, c2;
  double f1 = fit_at_kappa(R, y, std::exp(x1), m1, c1);
  double f2 = fit_at_kappa(R, y, std::exp(x2), m2, c2);
  for (int it = 0; it < 60; ++it) {
    if (f1 < f2) {
      hi = x2; x2 = x1; f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = fit_at_kappa(R, y, std::exp(x1), m1, c1);
    } else {
      lo = x1; x1 = x2; f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = fit_at_kappa(R, y, std::exp(x2), m2, c2);
    }
  }
  double k = std::exp(f1 < f2 ? x1 : x2);
  double m, c;
  double ss = fit_at_kappa(R, y, k, m, c);
  if (ss > best_ss) {  // keep the grid winner if refinement drifted
    k = best_k; m = best_m; c = best_c; ss = best_ss;
  }
  out.limit = m;
  out.kappa = k;
  out.coef = c;
  out.err = std::max(std::sqrt(ss / n), spread);
  out.model = "exp-fit";
  if (!std::isfinite(m)) throw std::runtime_error("extrapolate_tail: fit failed");
  return out;
}

}  // namespace ahmass
