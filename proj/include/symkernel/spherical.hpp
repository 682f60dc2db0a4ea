#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "symkernel/rootsys.hpp"

namespace symkernel {

// Either a matrix in SL(n,R) / SL(n,C), or the radial form r >= 0 of a rank-one point.
class GroupPoint {
 public:
  static GroupPoint matrix(Eigen::MatrixXcd g);
  static GroupPoint radial(double r);
  // exp(H) as a diagonal matrix, for spaces with a matrix form.
  static GroupPoint exp_chamber(const RootSystem& rs, const Vec& H);

  bool is_matrix() const { return g_.size() > 0; }
  const Eigen::MatrixXcd& mat() const { return g_; }
  double r() const { return r_; }

 private:
  Eigen::MatrixXcd g_;
  double r_ = 0.0;
};

enum class PhiMethod { quadrature, closed_form };

struct SphericalValue {
  std::complex<double> value;
  PhiMethod method = PhiMethod::quadrature;
  double error = 0.0;
};

// log a_i of g = n exp(a) k with n upper unipotent, from the QR factorization of
// (J g)^*, J the reversal matrix.
std::vector<double> iwasawa_log_diagonal(const Eigen::MatrixXcd& g);
// Same, in the coordinates of the Cartan subspace.
Vec iwasawa_A(const RootSystem& rs, const GroupPoint& g);

// Discretized K-integral: phi_lambda(x) ~ sum_k weight[k] exp(i <lambda, A_k>).
// weight[k] already carries exp(<rho, A_k>).
struct SphericalSampler {
  int rank = 1;
  std::vector<double> weight;
  std::vector<double> a0, a1;  // coordinates of A_k; a1 empty in rank one

  std::complex<double> evaluate(const Vec& lambda) const;
  std::size_t size() const { return weight.size(); }
};

// Euler-angle / circle product rule over K with `nodes` per angle.
SphericalSampler k_sampler(const RootSystem& rs, const GroupPoint& x, int nodes);

// Legendre integral on H2: (1/pi) int_0^pi (cosh r - sinh r cos th)^{i lambda - 1/2} dth
// written as a sampler with phases log b(th). Panels graded toward th = 0 and split so
// each carries at most half an oscillation for |lambda| <= lambda_max.
SphericalSampler h2_sampler(double r, double lambda_max, int gl_nodes = 16);

SphericalValue phi_quadrature(const RootSystem& rs, const SpectralPoint& lambda,
                              const GroupPoint& x, int nodes);

// Rank-one closed forms, in terms of v = <alpha,lambda>/<alpha,alpha> and
// s = <alpha,r> (r the chamber coordinate): H3/SL2C use sin(v s)/(v sinh s),
// H2/SL2R use the Legendre integral above.
SphericalValue phi_closed_form(const RootSystem& rs, const SpectralPoint& lambda, double r);

// sin(v s)/(v sinh s) with series near v s = 0 and s = 0.
double h3_phi(double v, double s);

// True phi_0 where a closed form exists (H2, H3, SL2R, SL2C).
double phi0(const RootSystem& rs, double r);

}  // namespace symkernel
