#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace ahmass {

inline constexpr const char* kVersion = "0.1.0";

inline constexpr double kPi = 3.14159265358979323846;

// Volume of the unit (n-1)-sphere, 2 pi^{n/2} / Gamma(n/2).
inline double sphere_volume(int n) {
  if (n < 2) throw std::invalid_argument("sphere_volume: n must be >= 2");
  return 2.0 * std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n);
}

// cosh(x) - 1 without cancellation for small x.
inline double coshm1(double x) {
  double s = std::sinh(0.5 * x);
  return 2.0 * s * s;
}

// (1+x)^p - 1 without cancellation (x > -1).
inline double pow1pm1(double x, double p) {
  return std::expm1(p * std::log1p(x));
}

struct Interval {
  double lo;
  double hi;
  double width() const { return hi - lo; }
  bool contains(double x) const { return x >= lo && x <= hi; }
};

inline std::vector<double> linspace(double a, double b, int n) {
  if (n < 2) throw std::invalid_argument("linspace: n must be >= 2");
  std::vector<double> x(n);
  double h = (b - a) / (n - 1);
  for (int i = 0; i < n; ++i) x[i] = a + h * i;
  x.back() = b;
  return x;
}

// Tridiagonal solve, Thomas algorithm. Overwrites nothing; returns x.
// a = subdiagonal (a[0] unused), b = diagonal, c = superdiagonal (c[n-1] unused).
inline std::vector<double> solve_tridiag(const std::vector<double>& a,
                                         const std::vector<double>& b,
                                         const std::vector<double>& c,
                                         const std::vector<double>& d) {
  size_t n = b.size();
  if (a.size() != n || c.size() != n || d.size() != n)
    throw std::invalid_argument("solve_tridiag: size mismatch");
  std::vector<double> cp(n), dp(n), x(n);
  double beta = b[0];
  if (beta == 0.0) throw std::runtime_error("solve_tridiag: zero pivot");
  cp[0] = c[0] / beta;
  dp[0] = d[0] / beta;
  for (size_t i = 1; i < n; ++i) {
    beta = b[i] - a[i] * cp[i - 1];
    if (beta == 0.0) throw std::runtime_error("solve_tridiag: zero pivot");
    cp[i] = c[i] / beta;
    dp[i] = (d[i] - a[i] * dp[i - 1]) / beta;
  }
  x[n - 1] = dp[n - 1];
  for (size_t i = n - 1; i-- > 0;) x[i] = dp[i] - cp[i] * x[i + 1];
  return x;
}

// Central difference with one Richardson halving step (effective order 4).
template <class F>
double richardson_diff(const F& f, double t0) {
  double d1 = (f(t0) - f(-t0)) / (2.0 * t0);
  double t = 0.5 * t0;
  double d2 = (f(t) - f(-t)) / (2.0 * t);
  return (4.0 * d2 - d1) / 3.0;
}

// Second derivative at 0 by central differences with Richardson step halving.
template <class F>
double richardson_diff2(const F& f, double t0) {
  double f0 = f(0.0);
  double d1 = (f(t0) - 2.0 * f0 + f(-t0)) / (t0 * t0);
  double t = 0.5 * t0;
  double d2 = (f(t) - 2.0 * f0 + f(-t)) / (t * t);
  return (4.0 * d2 - d1) / 3.0;
}

}  // namespace ahmass
