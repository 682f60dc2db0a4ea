#include "symkernel/rootsys.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <utility>

#include "symkernel/errors.hpp"

namespace symkernel {

Vec WeylElement::apply(const Vec& v) const {
  Vec out(n);
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += m[i * n + j] * v[j];
    out[i] = s;
  }
  return out;
}

WeylElement WeylElement::compose(const WeylElement& o) const {
  WeylElement r;
  r.n = n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int k = 0; k < n; ++k) s += m[i * n + k] * o.m[k * n + j];
      r.m[i * n + j] = s;
    }
  return r;
}

WeylElement WeylElement::identity(int n) {
  WeylElement r;
  r.n = n;
  for (int i = 0; i < n; ++i) r.m[i * n + i] = 1.0;
  return r;
}

namespace {

WeylElement reflection(const Vec& a) {
  const int n = a.size();
  const double aa = dot(a, a);
  WeylElement r = WeylElement::identity(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r.m[i * n + j] -= 2.0 * a[i] * a[j] / aa;
  return r;
}

bool same(const WeylElement& a, const WeylElement& b) {
  for (int i = 0; i < a.n * a.n; ++i)
    if (std::abs(a.m[i] - b.m[i]) > 1e-9) return false;
  return true;
}

std::vector<WeylElement> generate_weyl(const RootSystem& rs) {
  std::vector<WeylElement> gens;
  for (int j = 0; j < static_cast<int>(rs.simple_indices().size()); ++j)
    gens.push_back(reflection(rs.simple_root(j)));
  std::vector<WeylElement> group{WeylElement::identity(rs.rank())};
  for (std::size_t head = 0; head < group.size(); ++head) {
    for (const auto& g : gens) {
      WeylElement c = g.compose(group[head]);
      bool seen = false;
      for (const auto& h : group)
        if (same(h, c)) { seen = true; break; }
      if (!seen) group.push_back(c);
      if (group.size() > 1000) throw CatalogueError("Weyl group generation did not close");
    }
  }
  return group;
}

}  // namespace

RootSystem::RootSystem(std::string label, int rank, std::vector<Root> positive,
                       std::vector<int> simple, int declared_dim, int declared_D)
    : label_(std::move(label)),
      rank_(rank),
      positive_(std::move(positive)),
      simple_(std::move(simple)),
      declared_dim_(declared_dim),
      declared_D_(declared_D) {
  if (rank_ < 1 || rank_ > kMaxRank) throw CatalogueError(label_ + ": bad rank");
  if (static_cast<int>(simple_.size()) != rank_)
    throw CatalogueError(label_ + ": number of simple roots differs from rank");
  for (const auto& r : positive_) {
    if (r.alpha.size() != rank_) throw CatalogueError(label_ + ": root of wrong length");
    if (r.m_alpha < 1 || r.m_2alpha < 0)
      throw CatalogueError(label_ + ": inconsistent multiplicities");
  }
  for (int s : simple_)
    if (s < 0 || s >= static_cast<int>(positive_.size()))
      throw CatalogueError(label_ + ": simple root index out of range");

  rho_ = Vec(rank_);
  dim_ = rank_;
  for (const auto& r : positive_) {
    rho_ += (0.5 * r.m_alpha + r.m_2alpha) * r.alpha;
    dim_ += r.m_alpha + r.m_2alpha;
  }
  D_ = rank_ + 2 * static_cast<int>(positive_.size());

  Eigen::MatrixXd S(rank_, rank_);
  for (int k = 0; k < rank_; ++k)
    for (int i = 0; i < rank_; ++i) S(k, i) = positive_[simple_[k]].alpha[i];
  Eigen::MatrixXd L = S.inverse();  // column j is Lambda_j
  for (int j = 0; j < rank_; ++j) {
    Vec v(rank_);
    for (int i = 0; i < rank_; ++i) v[i] = L(i, j);
    fundamental_.push_back(v);
  }
  weyl_ = generate_weyl(*this);
}

Vec RootSystem::coords_from_diagonal(const std::vector<double>& diag) const {
  // Left inverse of diagonal_from_coords: (B^T B)^{-1} B^T diag.
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(rank_, rank_);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(rank_);
  for (int i = 0; i < matrix_.n; ++i)
    for (int k = 0; k < rank_; ++k) {
      rhs(k) += matrix_.basis_rows[i][k] * diag[i];
      for (int l = 0; l < rank_; ++l) gram(k, l) += matrix_.basis_rows[i][k] * matrix_.basis_rows[i][l];
    }
  const Eigen::VectorXd x = gram.ldlt().solve(rhs);
  Vec a(rank_);
  for (int k = 0; k < rank_; ++k) a[k] = x(k);
  return a;
}

std::vector<double> RootSystem::diagonal_from_coords(const Vec& a) const {
  std::vector<double> d(matrix_.n, 0.0);
  for (int i = 0; i < matrix_.n; ++i) d[i] = dot(matrix_.basis_rows[i], a);
  return d;
}

namespace {

RootSystem real_hyperbolic(int n) {
  return RootSystem("H" + std::to_string(n), 1, {Root{Vec{1.0}, n - 1, 0}}, {0}, n, 3);
}

}  // namespace

std::vector<std::string> catalogue_labels() {
  return {"H2", "H3", "H4", "H5", "H6", "SL2R", "SL3R", "SL2C"};
}

RootSystem root_system(const std::string& label) {
  if (label.size() == 2 && label[0] == 'H' && label[1] >= '2' && label[1] <= '6')
    return real_hyperbolic(label[1] - '0');
  const double s2 = std::sqrt(2.0);
  if (label == "SL2R") {
    // a = {diag(s,-s)} with orthonormal coordinate along (1,-1)/sqrt2.
    RootSystem rs("SL2R", 1, {Root{Vec{s2}, 1, 0}}, {0}, 2, 3);
    rs.set_matrix_form({2, false, {Vec{1.0 / s2}, Vec{-1.0 / s2}}});
    return rs;
  }
  if (label == "SL2C") {
    // Coordinate a1 - a2 for diag(a1, a2); the root is then the unit coordinate.
    RootSystem rs("SL2C", 1, {Root{Vec{1.0}, 2, 0}}, {0}, 3, 3);
    rs.set_matrix_form({2, true, {Vec{0.5}, Vec{-0.5}}});
    return rs;
  }
  if (label == "SL3R") {
    // Orthonormal basis u1 = (1,-1,0)/sqrt2, u2 = (1,1,-2)/sqrt6 of the trace-zero plane.
    const double s6 = std::sqrt(6.0);
    const Vec a1{s2, 0.0};
    const Vec a2{-1.0 / s2, std::sqrt(1.5)};
    RootSystem rs("SL3R", 2, {Root{a1, 1, 0}, Root{a2, 1, 0}, Root{a1 + a2, 1, 0}}, {0, 1}, 5,
                  8);
    rs.set_matrix_form(
        {3, false, {Vec{1.0 / s2, 1.0 / s6}, Vec{-1.0 / s2, 1.0 / s6}, Vec{0.0, -2.0 / s6}}});
    return rs;
  }
  throw CatalogueError("unknown space label '" + label + "'");
}

bool in_closed_chamber(const RootSystem& rs, const Vec& v, double tol) {
  for (int j = 0; j < rs.rank(); ++j)
    if (dot(rs.simple_root(j), v) < -tol) return false;
  return true;
}

ChamberPoint chamber_project(const RootSystem& rs, const Vec& v) {
  if (v.size() != rs.rank()) throw DomainError("chamber_project: coordinate length differs from rank");
  Vec w = v;
  for (int iter = 0; iter < 10000; ++iter) {
    bool moved = false;
    for (int j = 0; j < rs.rank(); ++j) {
      const Vec a = rs.simple_root(j);
      const double p = dot(a, w);
      if (p < 0.0) {
        w -= (2.0 * p / dot(a, a)) * a;
        moved = true;
      }
    }
    if (!moved) return ChamberPoint{w};
  }
  throw DomainError("chamber_project: reflection loop did not terminate");
}

double log_cartan_density(const RootSystem& rs, const ChamberPoint& x) {
  double s = 0.0;
  for (const auto& r : rs.positive_roots()) {
    const double u = dot(r.alpha, x.x);
    if (u < 0.0) throw DomainError("cartan_density: point outside the closed chamber");
    if (u == 0.0) return -std::numeric_limits<double>::infinity();
    // log sinh u = u + log1p(-exp(-2u)) - log 2
    auto lsinh = [](double v) { return v + std::log1p(-std::exp(-2.0 * v)) - std::log(2.0); };
    s += r.m_alpha * lsinh(u);
    if (r.m_2alpha) s += r.m_2alpha * lsinh(2.0 * u);
  }
  return s;
}

double cartan_density(const RootSystem& rs, const ChamberPoint& x) {
  double p = 1.0;
  for (const auto& r : rs.positive_roots()) {
    const double u = dot(r.alpha, x.x);
    if (u < 0.0) throw DomainError("cartan_density: point outside the closed chamber");
    p *= std::pow(std::sinh(u), r.m_alpha);
    if (r.m_2alpha) p *= std::pow(std::sinh(2.0 * u), r.m_2alpha);
  }
  return p;
}

double jacobian_J(const RootSystem& rs, const Vec& H) {
  auto sinc_h = [](double u) {
    if (std::abs(u) < 1e-4) return 1.0 + u * u / 6.0;
    return std::sinh(u) / u;
  };
  double p = 1.0;
  for (const auto& r : rs.positive_roots()) {
    const double u = dot(r.alpha, H);
    p *= std::pow(sinc_h(u), r.m_alpha);
    if (r.m_2alpha) p *= std::pow(sinc_h(2.0 * u), r.m_2alpha);
  }
  return p;
}

double phi0_envelope(const RootSystem& rs, const ChamberPoint& x) {
  if (!in_closed_chamber(rs, x.x, 1e-12))
    throw DomainError("phi0_envelope: point outside the closed chamber");
  double p = std::exp(-dot(rs.rho(), x.x));
  for (const auto& r : rs.positive_roots()) p *= 1.0 + dot(r.alpha, x.x);
  return p;
}

}  // namespace symkernel
