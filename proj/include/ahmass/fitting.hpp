#pragma once

#include <string>
#include <vector>

#include "ahmass/util.hpp"

namespace ahmass {

// Exponential decay fit of |value| ~ amplitude * exp(-rate * r).
// rate == +infinity flags "faster than any rate" (all samples under the floor).
struct DecayFit {
  double rate = 0.0;
  double amplitude = 0.0;
  Interval window{0.0, 0.0};
  double regression_residual = 0.0;
  bool below_floor = false;  // every sample under the amplitude floor

  bool faster_than_any() const { return below_floor; }
};

// Least-squares fit of log|value| vs r over the given samples.
// Samples below `floor` in magnitude are dropped; needs >= 8 surviving
// samples unless everything is under the floor.
DecayFit fit_decay_rate(const std::vector<std::pair<double, double>>& samples,
                        double floor = 1e-14);

// Fit y(R) = limit + coef * exp(-kappa R) over samples at increasing R.
struct TailFit {
  double limit = 0.0;
  double err = 0.0;         // max(fit rms residual, last spread)
  double kappa = 0.0;
  double coef = 0.0;
  std::string model;        // "exp-fit", "plateau", "divergent+", "divergent-"
  bool divergent = false;
};

TailFit extrapolate_tail(const std::vector<double>& R,
                         const std::vector<double>& y, double kappa_min);

}  // namespace ahmass
