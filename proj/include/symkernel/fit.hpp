#pragma once

#include <span>

namespace symkernel {

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
  int n = 0;
};

// Ordinary least squares y = intercept + slope * x. Needs at least 3 points.
LinearFit fit_line(std::span<const double> x, std::span<const double> y);

}  // namespace symkernel
