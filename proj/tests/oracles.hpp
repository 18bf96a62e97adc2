#pragma once

// Independent numerical oracles used by the test suites. Everything here is
// kept deliberately separate from the library's evaluation paths: dense
// finite differences on closed-form warps, composite Simpson on fixed grids,
// and a coordinate-chart tensor evaluation of the boundary integrand.

#include <array>
#include <cmath>
#include <functional>
#include <vector>

#include "ahmass/metric.hpp"

namespace oracle {

using Fn = std::function<double(double)>;

// 4th-order central first derivative.
inline double fd1(const Fn& f, double x, double h = 1e-4) {
  return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
}

// 4th-order central second derivative.
inline double fd2(const Fn& f, double x, double h = 1e-3) {
  return (-f(x + 2 * h) + 16 * f(x + h) - 30 * f(x) + 16 * f(x - h) - f(x - 2 * h)) /
         (12 * h * h);
}

// scal of a^2 dr^2 + s^2 sigma from dense FD of the warp alone.
inline double scal_fd(int n, const Fn& s_of, double r) {
  double s = s_of(r);
  double sp = fd1(s_of, r);
  double spp = fd2(s_of, r);
  return -2.0 * (n - 1.0) * spp / s + (n - 1.0) * (n - 2.0) * (1.0 - sp * sp) / (s * s);
}

inline double simpson(const Fn& f, double a, double b, int panels) {
  if (panels % 2) ++panels;
  double h = (b - a) / panels;
  double acc = f(a) + f(b);
  for (int i = 1; i < panels; ++i) acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

// ---------------------------------------------------------------------------
// Component-wise tensor oracle for (div_ghat h - d tr_ghat h)(nu) on the
// warped chart, h = (s^2 - shat^2) sigma. Coordinates: (r, angles...) with
// the round sphere in explicit coordinates for n = 2, 3, 4. Christoffel
// symbols of ghat come from finite differences of the metric components.
// ---------------------------------------------------------------------------

struct ChartOracle {
  int n;                 // manifold dimension
  Fn shat;               // reference warp
  Fn s;                  // metric warp
  std::vector<double> angles;  // generic evaluation angles, size n-1

  // round-sphere metric sigma_{ab}(angles) for dim n-1, diagonal
  // n=2: sigma = 1 (theta); n=3: (theta, phi): diag(1, sin^2 theta)
  // n=4: (psi, theta, phi): diag(1, sin^2 psi, sin^2 psi sin^2 theta)
  double sigma_diag(int a, const std::vector<double>& ang) const {
    if (a == 0) return 1.0;
    double v = 1.0;
    for (int k = 0; k < a; ++k) v *= std::sin(ang[k]) * std::sin(ang[k]);
    return v;
  }

  // full coordinates x = (r, ang...); ghat diagonal
  double ghat_diag(int i, const std::vector<double>& x) const {
    if (i == 0) return 1.0;
    std::vector<double> ang(x.begin() + 1, x.end());
    double w = shat(x[0]);
    return w * w * sigma_diag(i - 1, ang);
  }

  double h_diag(int i, const std::vector<double>& x) const {
    if (i == 0) return 0.0;
    std::vector<double> ang(x.begin() + 1, x.end());
    double w = shat(x[0]), v = s(x[0]);
    return (v * v - w * w) * sigma_diag(i - 1, ang);
  }

  double dcomp(const std::function<double(const std::vector<double>&)>& f,
               std::vector<double> x, int k, double h = 1e-5) const {
    double x0 = x[k];
    x[k] = x0 + h;
    double fp = f(x);
    x[k] = x0 - h;
    double fm = f(x);
    x[k] = x0 + 2 * h;
    double fp2 = f(x);
    x[k] = x0 - 2 * h;
    double fm2 = f(x);
    x[k] = x0;
    return (-fp2 + 8 * fp - 8 * fm + fm2) / (12 * h);
  }

  // Christoffel of ghat by FD (diagonal metric)
  double christoffel(int k, int i, int j, const std::vector<double>& x) const {
    auto g = [&](int a, const std::vector<double>& y) { return ghat_diag(a, y); };
    double gkk = g(k, x);
    double term = 0.0;
    if (k == i) term += dcomp([&](const std::vector<double>& y) { return g(i, y); }, x, j);
    if (k == j) term += dcomp([&](const std::vector<double>& y) { return g(j, y); }, x, i);
    if (i == j) term -= dcomp([&](const std::vector<double>& y) { return g(i, y); }, x, k);
    return 0.5 * term / gkk;
  }

  // (div_ghat h)(d/dr) - (d tr_ghat h)(d/dr)
  double boundary_integrand(double r) const {
    std::vector<double> x{r};
    for (double a : angles) x.push_back(a);
    int N = n;
    // div h)_r = g^{ik} ( d_i h_{kr} - Gamma^l_{ik} h_{lr} - Gamma^l_{ir} h_{kl} )
    double div_r = 0.0;
    for (int i = 0; i < N; ++i) {
      int k = i;  // diagonal inverse metric
      double ginv = 1.0 / ghat_diag(i, x);
      double d_h = 0.0;  // d_i h_{k r}: h_{kr} nonzero only if k == r == 0, which is 0
      double gamma1 = 0.0;
      for (int l = 0; l < N; ++l) {
        if (l == 0) {
          // Gamma^0_{ik} h_{00} = 0
        }
        // h_{l r} nonzero only l == 0 and h_{00} = 0: gamma1 stays 0
      }
      double gamma2 = 0.0;
      for (int l = 0; l < N; ++l) {
        // Gamma^l_{i r} h_{k l}: h diagonal
        if (l == k) gamma2 += christoffel(l, i, 0, x) * h_diag(k, x);
      }
      div_r += ginv * (d_h - gamma1 - gamma2);
    }
    // (d tr h)(d/dr)
    auto tr = [&](const std::vector<double>& y) {
      double t = 0.0;
      for (int i = 0; i < N; ++i) t += h_diag(i, y) / ghat_diag(i, y);
      return t;
    };
    double dtr = dcomp(tr, x, 0);
    return div_r - dtr;
  }
};

}  // namespace oracle
