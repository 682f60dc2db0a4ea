#include "symkernel/fit.hpp"

#include <cmath>

#include "symkernel/errors.hpp"

namespace symkernel {

LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
  const auto n = x.size();
  if (n != y.size()) throw ConfigError("fit_line: x and y lengths differ");
  if (n < 3) throw ConfigError("fit_line: need at least 3 points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw ConfigError("fit_line: all abscissae coincide");
  LinearFit f;
  f.n = static_cast<int>(n);
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double rss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - f.intercept - f.slope * x[i];
    rss += r * r;
  }
  f.slope_stderr = std::sqrt(rss / (n - 2) / sxx);
  return f;
}

}  // namespace symkernel
