#include <cmath>

#include "ahmass/fitting.hpp"
#include "ahmass/quadrature.hpp"
#include "ahmass/util.hpp"
#include "doctest.h"

using namespace ahmass;

TEST_CASE("adaptive quadrature against closed forms") {
  CHECK(integrate([](double x) { return std::sin(x); }, 0.0, kPi) ==
        doctest::Approx(2.0).epsilon(1e-12));
  CHECK(integrate([](double x) { return std::exp(-2.0 * x); }, 0.0, 20.0) ==
        doctest::Approx(0.5).epsilon(1e-12));
  // mildly peaked integrand
  CHECK(integrate([](double x) { return std::exp(-50.0 * (x - 3.0) * (x - 3.0)); },
                  0.0, 6.0, 1e-12) ==
        doctest::Approx(std::sqrt(kPi / 50.0)).epsilon(1e-10));
  CHECK(integrate([](double) { return 1.0; }, 2.0, 2.0) == 0.0);
}

TEST_CASE("sphere volumes") {
  CHECK(sphere_volume(2) == doctest::Approx(2.0 * kPi).epsilon(1e-14));
  CHECK(sphere_volume(3) == doctest::Approx(4.0 * kPi).epsilon(1e-14));
  CHECK(sphere_volume(4) == doctest::Approx(2.0 * kPi * kPi).epsilon(1e-14));
  CHECK(sphere_volume(5) == doctest::Approx(8.0 * kPi * kPi / 3.0).epsilon(1e-14));
}

TEST_CASE("decay fit recovers exact exponentials") {
  std::vector<std::pair<double, double>> s;
  for (double r = 4.0; r <= 10.0; r += 0.25) s.push_back({r, 5.0 * std::exp(-2.0 * r)});
  DecayFit f = fit_decay_rate(s);
  CHECK(f.rate == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(f.amplitude == doctest::Approx(5.0).epsilon(1e-6));
  CHECK(f.regression_residual < 1e-10);
}

TEST_CASE("decay fit documents window bias for slowly-varying prefactors") {
  // value = e^{-r}(1 + 1/r): fitted rate tends to 1 with a small positive bias
  std::vector<std::pair<double, double>> s;
  for (double r = 8.0; r <= 16.0; r += 0.5) s.push_back({r, std::exp(-r) * (1.0 + 1.0 / r)});
  DecayFit f = fit_decay_rate(s);
  CHECK(f.rate == doctest::Approx(1.0).epsilon(2e-2));
  CHECK(f.rate > 1.0);  // the 1/r prefactor inflates the slope on any finite window
  CHECK(f.regression_residual > 0.0);
}

TEST_CASE("decay fit flags identically-zero input as faster than any rate") {
  std::vector<std::pair<double, double>> s;
  for (double r = 1.0; r <= 5.0; r += 0.5) s.push_back({r, 0.0});
  DecayFit f = fit_decay_rate(s);
  CHECK(f.faster_than_any());
  CHECK(std::isinf(f.rate));
}

TEST_CASE("decay fit input validation") {
  std::vector<std::pair<double, double>> s{{1.0, 1.0}, {2.0, 0.5}};
  CHECK_THROWS(fit_decay_rate(s));
}

TEST_CASE("tail extrapolation: exact single exponential") {
  std::vector<double> R, y;
  for (double r = 5.0; r <= 12.0; r += 0.7) {
    R.push_back(r);
    y.push_back(0.75 + 2.3 * std::exp(-1.7 * r));
  }
  TailFit f = extrapolate_tail(R, y, 1e-3);
  CHECK(f.limit == doctest::Approx(0.75).epsilon(1e-9));
  CHECK(f.kappa == doctest::Approx(1.7).epsilon(1e-3));
  CHECK(f.err < 1e-8);
}

TEST_CASE("tail extrapolation: plateau fallback and divergence classification") {
  std::vector<double> R = {5, 6, 7, 8, 9, 10};
  std::vector<double> yc(6, 1.25);
  TailFit fc = extrapolate_tail(R, yc, 1e-3);
  CHECK(fc.model == "plateau");
  CHECK(fc.limit == 1.25);

  std::vector<double> yd;
  for (double r : R) yd.push_back(0.3 * r);  // linear growth
  TailFit fd = extrapolate_tail(R, yd, 1e-3);
  CHECK(fd.divergent);
  CHECK(fd.model == "divergent+");

  std::vector<double> ym;
  for (double r : R) ym.push_back(-0.4 * std::exp(0.2 * r));
  TailFit fm = extrapolate_tail(R, ym, 1e-3);
  CHECK(fm.divergent);
  CHECK(fm.model == "divergent-");
}

TEST_CASE("tridiagonal solve") {
  // -u'' = 1 on (0,1), u(0)=u(1)=0, 2nd order FD; exact u = x(1-x)/2
  int n = 101;
  double h = 1.0 / (n + 1);
  std::vector<double> a(n, -1.0), b(n, 2.0), c(n, -1.0), d(n, h * h);
  auto x = solve_tridiag(a, b, c, d);
  for (int i = 0; i < n; ++i) {
    double xi = (i + 1) * h;
    CHECK(x[i] == doctest::Approx(0.5 * xi * (1.0 - xi)).epsilon(1e-10));
  }
}

TEST_CASE("richardson differentiation helpers") {
  auto f = [](double t) { return std::exp(0.3 * t); };
  CHECK(richardson_diff(f, 0.1) == doctest::Approx(0.3).epsilon(1e-9));
  CHECK(richardson_diff2(f, 0.1) == doctest::Approx(0.09).epsilon(1e-7));
}
