#pragma once

#include <functional>

#include "ahmass/util.hpp"

namespace ahmass {

// Adaptive Gauss-Kronrod 7/15 with absolute tolerance; throws on
// non-convergence (interval budget exhausted).
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-10, int max_intervals = 4000);

// Fixed-grid composite Simpson; n_panels is rounded up to even.
double simpson(const std::function<double(double)>& f, double a, double b,
               int n_panels);

}  // namespace ahmass
