#include "ahmass/spline.hpp"

#include <algorithm>
#include <cmath>

namespace ahmass {

CubicSpline::CubicSpline(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  size_t n = x_.size();
  if (n < 2 || y_.size() != n)
    throw std::invalid_argument("CubicSpline: need >= 2 nodes, matching sizes");
  for (size_t i = 0; i + 1 < n; ++i)
    if (!(x_[i + 1] > x_[i]))
      throw std::invalid_argument("CubicSpline: nodes must be strictly increasing");
  for (double v : y_)
    if (!std::isfinite(v)) throw std::invalid_argument("CubicSpline: non-finite value");

  b_.assign(n - 1, 0.0);
  c_.assign(n - 1, 0.0);
  d_.assign(n - 1, 0.0);

  if (n == 2) {
    b_[0] = (y_[1] - y_[0]) / (x_[1] - x_[0]);
  } else if (n == 3) {
    // single parabola through three points
    double h0 = x_[1] - x_[0], h1 = x_[2] - x_[1];
    double s0 = (y_[1] - y_[0]) / h0, s1 = (y_[2] - y_[1]) / h1;
    double c2 = (s1 - s0) / (h0 + h1);  // half of y''
    b_[0] = s0 - c2 * h0;
    c_[0] = c2;
    b_[1] = b_[0] + 2.0 * c2 * h0;
    c_[1] = c2;
  } else {
    // Solve for moments M_i = y''(x_i). Interior rows are the standard
    // continuity equations; not-a-knot eliminates M_0 and M_{n-1}:
    //   h1 M0 - (h0+h1) M1 + h0 M2 = 0,  mirrored at the right end.
    size_t m = n - 2;  // unknowns M_1..M_{n-2}
    std::vector<double> h(n - 1);
    for (size_t i = 0; i + 1 < n; ++i) h[i] = x_[i + 1] - x_[i];
    std::vector<double> sub(m, 0.0), diag(m, 0.0), sup(m, 0.0), rhs(m, 0.0);
    for (size_t i = 1; i <= m; ++i) {
      double r = 6.0 * ((y_[i + 1] - y_[i]) / h[i] - (y_[i] - y_[i - 1]) / h[i - 1]);
      size_t k = i - 1;
      sub[k] = h[i - 1];
      diag[k] = 2.0 * (h[i - 1] + h[i]);
      sup[k] = h[i];
      rhs[k] = r;
    }
    // fold M0 = ((h0+h1) M1 - h0 M2)/h1 into the first row
    diag[0] += h[0] * (h[0] + h[1]) / h[1];
    sup[0] -= h[0] * h[0] / h[1];
    // fold M_{n-1} = ((h_{n-2}+h_{n-3}) M_{n-2} - h_{n-2} M_{n-3})/h_{n-3}
    diag[m - 1] += h[n - 2] * (h[n - 2] + h[n - 3]) / h[n - 3];
    sub[m - 1] -= h[n - 2] * h[n - 2] / h[n - 3];

    std::vector<double> Mi = solve_tridiag(sub, diag, sup, rhs);
    std::vector<double> M(n);
    for (size_t i = 0; i < m; ++i) M[i + 1] = Mi[i];
    M[0] = ((h[0] + h[1]) * M[1] - h[0] * M[2]) / h[1];
    M[n - 1] = ((h[n - 2] + h[n - 3]) * M[n - 2] - h[n - 2] * M[n - 3]) / h[n - 3];

    for (size_t i = 0; i + 1 < n; ++i) {
      b_[i] = (y_[i + 1] - y_[i]) / h[i] - h[i] * (2.0 * M[i] + M[i + 1]) / 6.0;
      c_[i] = 0.5 * M[i];
      d_[i] = (M[i + 1] - M[i]) / (6.0 * h[i]);
    }
  }

  cumint_.assign(n, 0.0);
  for (size_t i = 0; i + 1 < n; ++i) {
    double t = x_[i + 1] - x_[i];
    cumint_[i + 1] =
        cumint_[i] +
        t * (y_[i] + t * (b_[i] / 2.0 + t * (c_[i] / 3.0 + t * d_[i] / 4.0)));
  }
}

size_t CubicSpline::interval(double x) const {
  // clamped extrapolation uses the end polynomials
  auto it = std::upper_bound(x_.begin(), x_.end(), x);
  size_t i = (it == x_.begin()) ? 0 : (size_t)(it - x_.begin()) - 1;
  if (i > x_.size() - 2) i = x_.size() - 2;
  return i;
}

double CubicSpline::value(double x) const {
  size_t i = interval(x);
  double t = x - x_[i];
  return y_[i] + t * (b_[i] + t * (c_[i] + t * d_[i]));
}

double CubicSpline::deriv(double x) const {
  size_t i = interval(x);
  double t = x - x_[i];
  return b_[i] + t * (2.0 * c_[i] + 3.0 * t * d_[i]);
}

double CubicSpline::deriv2(double x) const {
  size_t i = interval(x);
  double t = x - x_[i];
  return 2.0 * c_[i] + 6.0 * t * d_[i];
}

double CubicSpline::integral(double x) const {
  size_t i = interval(x);
  double t = x - x_[i];
  return cumint_[i] +
         t * (y_[i] + t * (b_[i] / 2.0 + t * (c_[i] / 3.0 + t * d_[i] / 4.0)));
}

}  // namespace ahmass
