#include "symkernel/spherical.hpp"

#include <cmath>
#include <numbers>

#include "symkernel/errors.hpp"
#include "symkernel/quadrature.hpp"
#include "symkernel/simd/cis.hpp"

namespace symkernel {

using cd = std::complex<double>;

GroupPoint GroupPoint::matrix(Eigen::MatrixXcd g) {
  if (g.rows() != g.cols() || g.rows() < 2) throw DomainError("GroupPoint: matrix must be square");
  if (std::abs(std::abs(g.determinant()) - 1.0) > 1e-12)
    throw DomainError("GroupPoint: determinant must have modulus 1");
  GroupPoint p;
  p.g_ = std::move(g);
  return p;
}

GroupPoint GroupPoint::radial(double r) {
  if (!(r >= 0.0)) throw DomainError("GroupPoint: radius must be nonnegative");
  GroupPoint p;
  p.r_ = r;
  return p;
}

GroupPoint GroupPoint::exp_chamber(const RootSystem& rs, const Vec& H) {
  if (!rs.has_matrix_form()) throw UnsupportedSpace(rs.label() + ": no matrix realization");
  const auto d = rs.diagonal_from_coords(H);
  Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) g(i, i) = std::exp(d[i]);
  // exact determinant 1 up to rounding of the exponentials
  return matrix(g);
}

std::vector<double> iwasawa_log_diagonal(const Eigen::MatrixXcd& g) {
  const auto n = g.rows();
  const Eigen::MatrixXcd jg = g.colwise().reverse();
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(jg.adjoint());
  const Eigen::MatrixXcd& R = qr.matrixQR();
  std::vector<double> a(n);
  for (Eigen::Index i = 0; i < n; ++i) a[i] = std::log(std::abs(R(n - 1 - i, n - 1 - i)));
  return a;
}

Vec iwasawa_A(const RootSystem& rs, const GroupPoint& g) {
  if (!rs.has_matrix_form() || !g.is_matrix())
    throw UnsupportedSpace(rs.label() + ": iwasawa_A needs a matrix form");
  if (g.mat().rows() != rs.matrix_form().n) throw DomainError("iwasawa_A: matrix size mismatch");
  return rs.coords_from_diagonal(iwasawa_log_diagonal(g.mat()));
}

std::complex<double> SphericalSampler::evaluate(const Vec& lambda) const {
  const auto s = rank == 1 ? simd::cis_sum(weight, a0, lambda[0])
                           : simd::cis_sum(weight, a0, lambda[0], a1, lambda[1]);
  return {s.re, s.im};
}

namespace {

Eigen::Matrix3cd so3(double a, double b, double c) {
  auto rz = [](double t) {
    Eigen::Matrix3d m;
    m << std::cos(t), -std::sin(t), 0, std::sin(t), std::cos(t), 0, 0, 0, 1;
    return m;
  };
  Eigen::Matrix3d ry;
  ry << std::cos(b), 0, std::sin(b), 0, 1, 0, -std::sin(b), 0, std::cos(b);
  return (rz(a) * ry * rz(c)).cast<cd>();
}

Eigen::Matrix2cd su2(double a, double b, double c) {
  const cd i(0, 1);
  Eigen::Matrix2cd m;
  m << std::exp(i * (a + c) / 2.0) * std::cos(b / 2), -std::exp(i * (a - c) / 2.0) * std::sin(b / 2),
      std::exp(-i * (a - c) / 2.0) * std::sin(b / 2), std::exp(-i * (a + c) / 2.0) * std::cos(b / 2);
  return m;
}

void push_node(const RootSystem& rs, SphericalSampler& s, const Eigen::MatrixXcd& kx, double w) {
  const Vec A = rs.coords_from_diagonal(iwasawa_log_diagonal(kx));
  s.weight.push_back(w * std::exp(dot(rs.rho(), A)));
  s.a0.push_back(A[0]);
  if (rs.rank() == 2) s.a1.push_back(A[1]);
}

// Rule in the polar angle b on [0, pi] with the Haar factor sin b folded into the
// weights (in cos b the integrand has square-root branch points at the poles). For
// large |x| the integrand concentrates within ~e^{-s} of the poles, s the log
// singular-value spread, so panels are graded toward both ends.
Rule polar_rule(const Eigen::VectorXd& sv, int nodes) {
  const double spread = std::log(sv(0) / sv(sv.size() - 1));
  const double h0 = std::min(0.25, std::exp(-spread));
  const double half = 0.5 * std::numbers::pi;
  Rule r = graded_gl(0.0, half, h0, 0.25, nodes);
  const Rule hi = graded_gl(-std::numbers::pi, -half, h0, 0.25, nodes);
  for (std::size_t i = hi.x.size(); i-- > 0;) {
    r.x.push_back(-hi.x[i]);
    r.w.push_back(hi.w[i]);
  }
  for (std::size_t i = 0; i < r.x.size(); ++i) r.w[i] *= std::sin(r.x[i]);
  return r;
}

}  // namespace

SphericalSampler k_sampler(const RootSystem& rs, const GroupPoint& x, int nodes) {
  if (!rs.has_matrix_form()) throw UnsupportedSpace(rs.label() + ": no K-quadrature");
  if (nodes < 4) throw ConfigError("k_sampler: too few nodes");
  if (!x.is_matrix() || x.mat().rows() != rs.matrix_form().n)
    throw DomainError("k_sampler: point must be a matrix of the right size");
  SphericalSampler s;
  s.rank = rs.rank();
  // phi is bi-K-invariant, so x may be replaced by the diagonal of its singular
  // values (a reflection in U is paired with one in V).
  const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXcd>(x.mat()).singularValues();
  const Eigen::MatrixXcd g = sv.cast<cd>().asDiagonal();
  const auto& mf = rs.matrix_form();
  if (mf.n == 2 && !mf.complex) {
    // theta and theta + pi give the same A; the integrand peaks at multiples of pi/2.
    const double q = 0.5 * std::numbers::pi;
    const double h0 = std::min(0.25, std::exp(-std::log(sv(0) / sv(1))));
    Rule t;
    for (int quarter = 0; quarter < 2; ++quarter) {
      const double a = quarter * q;
      Rule lo = graded_gl(a, a + 0.5 * q, h0, 0.25, nodes);
      const Rule hi = graded_gl(-(a + q), -(a + 0.5 * q), h0, 0.25, nodes);
      for (std::size_t i = hi.x.size(); i-- > 0;) {
        lo.x.push_back(-hi.x[i]);
        lo.w.push_back(hi.w[i]);
      }
      t.append(lo);
    }
    for (std::size_t i = 0; i < t.x.size(); ++i) {
      Eigen::Matrix2cd k;
      k << std::cos(t.x[i]), -std::sin(t.x[i]), std::sin(t.x[i]), std::cos(t.x[i]);
      push_node(rs, s, k * g, t.w[i] / std::numbers::pi);
    }
    return s;
  }
  const bool complex2 = mf.n == 2 && mf.complex;
  if (!complex2 && !(mf.n == 3 && !mf.complex))
    throw UnsupportedSpace(rs.label() + ": no K-quadrature rule");
  const double c_period = complex2 ? 4.0 * std::numbers::pi : 2.0 * std::numbers::pi;
  const double haar = 2.0 * std::numbers::pi * 2.0 * c_period;
  // In SU(2) both z-rotations are diagonal, so A(k x) depends on b alone and the
  // a- and c-integrals are exact with a single node.
  const int nz = complex2 ? 1 : nodes;
  const auto ta = periodic_trapezoid(nz, 0.0, 2.0 * std::numbers::pi);
  const auto tc = periodic_trapezoid(nz, 0.0, c_period);
  const auto gb = polar_rule(sv, nodes);
  for (std::size_t ib = 0; ib < gb.size(); ++ib) {
    const double b = gb.x[ib];
    for (std::size_t ia = 0; ia < ta.size(); ++ia)
      for (std::size_t ic = 0; ic < tc.size(); ++ic) {
        const double w = ta.w[ia] * gb.w[ib] * tc.w[ic] / haar;
        if (complex2)
          push_node(rs, s, su2(ta.x[ia], b, tc.x[ic]) * g, w);
        else
          push_node(rs, s, so3(ta.x[ia], b, tc.x[ic]) * g, w);
      }
  }
  return s;
}

SphericalSampler h2_sampler(double r, double lambda_max, int gl_nodes) {
  SphericalSampler s;
  s.rank = 1;
  const double sh = std::sinh(r);
  // b(th) = cosh r - sinh r cos th, written to avoid cancellation near th = 0
  auto logb = [&](double th) {
    const double sh2 = std::sin(0.5 * th);
    return std::log(std::exp(-r) + 2.0 * sh * sh2 * sh2);
  };
  const double h0 = std::min(std::numbers::pi / 8.0, std::exp(-r));
  double lo = 0.0, h = h0;
  while (lo < std::numbers::pi) {
    const double hi = std::min(std::numbers::pi, lo + h);
    const double phase = std::max(1.0, lambda_max) * std::abs(logb(hi) - logb(lo));
    const int sub = std::max(1, static_cast<int>(std::ceil(phase / std::numbers::pi)));
    const auto rule = composite_gl(sub, gl_nodes, lo, hi);
    for (std::size_t i = 0; i < rule.size(); ++i) {
      const double lb = logb(rule.x[i]);
      s.weight.push_back(rule.w[i] * std::exp(-0.5 * lb) / std::numbers::pi);
      s.a0.push_back(lb);
    }
    lo = hi;
    h *= 2.0;
  }
  return s;
}

SphericalValue phi_quadrature(const RootSystem& rs, const SpectralPoint& lambda,
                              const GroupPoint& x, int nodes) {
  if (nodes < 16) throw ConfigError("phi_quadrature: nodes must be at least 16");
  if (lambda.lambda.size() != rs.rank()) throw DomainError("phi_quadrature: bad spectral point");
  const cd full = k_sampler(rs, x, nodes).evaluate(lambda.lambda);
  const cd half = k_sampler(rs, x, nodes / 2).evaluate(lambda.lambda);
  return {full, PhiMethod::quadrature, std::abs(full - half)};
}

namespace {

enum class Family { h2, h3 };

Family closed_family(const RootSystem& rs) {
  if (rs.label() == "H2" || rs.label() == "SL2R") return Family::h2;
  if (rs.label() == "H3" || rs.label() == "SL2C") return Family::h3;
  throw UnsupportedSpace(rs.label() + ": no closed form for the spherical function");
}

}  // namespace

double h3_phi(double v, double s) {
  if (s < 1e-4) return 1.0 - (v * v + 1.0) * s * s / 6.0;
  const double num = std::abs(v * s) < 1e-4 ? s * (1.0 - v * v * s * s / 6.0) : std::sin(v * s) / v;
  return num / std::sinh(s);
}

SphericalValue phi_closed_form(const RootSystem& rs, const SpectralPoint& lambda, double r) {
  if (!(r >= 0.0)) throw DomainError("phi_closed_form: r must be nonnegative");
  const Family fam = closed_family(rs);
  const Vec& alpha = rs.positive_roots()[0].alpha;
  const double v = dot(alpha, lambda.lambda) / dot(alpha, alpha);
  const double s = alpha[0] * r;
  if (fam == Family::h3) return {h3_phi(v, s), PhiMethod::closed_form, 0.0};
  if (s < 1e-4) return {1.0 - (v * v + 0.25) * s * s / 4.0, PhiMethod::closed_form, 0.0};
  const cd hi = h2_sampler(s, std::abs(v), 16).evaluate(Vec{v});
  const cd lo = h2_sampler(s, std::abs(v), 8).evaluate(Vec{v});
  return {hi.real(), PhiMethod::closed_form, std::max(std::abs(hi - lo), std::abs(hi.imag()))};
}

double phi0(const RootSystem& rs, double r) {
  return phi_closed_form(rs, SpectralPoint{Vec(rs.rank())}, r).value.real();
}

}  // namespace symkernel
