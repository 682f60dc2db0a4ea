#pragma once

#include <vector>

namespace symkernel {

struct Rule {
  std::vector<double> x;
  std::vector<double> w;
  std::size_t size() const { return x.size(); }
  void append(const Rule& o);
};

// n-point Gauss-Legendre rule on [a,b]. Nodes are cached per n.
Rule gauss_legendre(int n, double a = -1.0, double b = 1.0);

// Composite rule: `panels` equal panels, n nodes each.
Rule composite_gl(int panels, int n, double a, double b);

// Panels whose widths grow geometrically away from `a` (first width h0, ratio 2),
// truncated at b; each panel further split so that no panel exceeds max_width.
Rule graded_gl(double a, double b, double h0, double max_width, int n);

// Trapezoid rule for a periodic integrand on [a, a + period): n equispaced nodes.
Rule periodic_trapezoid(int n, double a, double period);

}  // namespace symkernel
