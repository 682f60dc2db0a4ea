#pragma once

#include <string>
#include <vector>

#include "symkernel/rootsys.hpp"

namespace symkernel {

// C-infinity step: 0 for t <= 0, 1 for t >= 1, monotone in between.
double smooth_step(double t);

// chi_{C1}(r) = smooth_step((r + C1) / C1): 1 for r >= 0, 0 for r <= -C1.
struct CutoffProfile {
  double C1 = 0.1;
  double operator()(double r) const { return smooth_step((r + C1) / C1); }
};

struct Chart {
  int w = 0;  // index into rs.weyl_group()
  int j = 0;  // 0-based simple-root index
};

class BarycentricPartition {
 public:
  BarycentricPartition(const RootSystem& rs, double C1);

  const RootSystem& root_system() const { return rs_; }
  double C1() const { return profile_.C1; }
  int chart_count() const { return static_cast<int>(charts_.size()); }
  const Chart& chart(int id) const { return charts_[id]; }
  // w.Lambda_j for the chart
  const Vec& chart_weight(int id) const { return weight_[id]; }

  double raw_chart(int id, const Vec& lambda) const;
  double denominator(const Vec& lambda) const;
  double normalized_chart(int id, const Vec& lambda) const;
  std::vector<double> normalized_all(const Vec& lambda) const;

 private:
  RootSystem rs_;
  CutoffProfile profile_;
  std::vector<Chart> charts_;
  std::vector<Vec> weight_;
  std::vector<std::vector<Vec>> images_;  // images_[w][k] = w.alpha_k (simple)
};

// Deterministic sample of the unit sphere in a: {+1,-1} in rank one,
// n equiangular points (offset by half a step) in rank two.
std::vector<Vec> sphere_grid(const RootSystem& rs, int n);

struct RootPairing {
  int root = 0;         // index into positive_roots()
  double min_ratio = 0; // min |<alpha,lambda>|/|lambda| over the support
};

struct SupportReport {
  int chart = 0;
  int support_samples = 0;
  std::vector<RootPairing> pairings;  // roots with <alpha, w.Lambda_j> != 0
  std::vector<int> orthogonal;        // roots with <alpha, w.Lambda_j> == 0
  double weight_ratio = 0.0;          // min |<w.Lambda_j,lambda>|/|lambda|
  double kappa_min = 0.0;             // min of all of the above
  double threshold = 0.05;
  bool passed = false;
};

SupportReport support_verify(const BarycentricPartition& p, int chart, int samples,
                             double threshold = 0.05);

struct SymbolReport {
  int chart = 0;
  int order = 1;
  double prediction = 0.0;  // d - l - order
  double exponent = 0.0;    // largest fitted exponent over the sampled directions
  int resolved_points = 0;
  bool passed = false;
};

// Finite-difference derivatives of the density along w.Lambda_j for |lambda| in
// [1, 1e3] inside the chart support; passes if exponent <= prediction + 0.1.
SymbolReport directional_symbol_check(const BarycentricPartition& p, int chart, int order);

struct C1Choice {
  double C1 = 0.0;
  double min_denominator = 0.0;
  double kappa_min = 0.0;
  int bisection_steps = 0;
};

// Largest C1 <= 0.1 with denominator >= 0.5 on the sphere and kappa_min >= 0.05
// on every chart.
C1Choice choose_C1(const RootSystem& rs, int samples = 2000);

}  // namespace symkernel
