#pragma once

#include <array>
#include <string>
#include <vector>

#include "symkernel/vec.hpp"

namespace symkernel {

// Positive indivisible root with the multiplicities of alpha and 2*alpha.
struct Root {
  Vec alpha;
  int m_alpha = 0;
  int m_2alpha = 0;
};

// Linear map on the Cartan subspace, row-major.
struct WeylElement {
  int n = 0;
  std::array<double, kMaxRank * kMaxRank> m{};

  Vec apply(const Vec& v) const;
  WeylElement compose(const WeylElement& o) const;  // (*this) o o
  static WeylElement identity(int n);
};

// Realization of a = {log-diagonal matrices of trace zero} in a coordinate basis.
// diagonal = basis^T coordinate; coordinate is recovered by the left inverse.
struct MatrixRealization {
  int n = 0;                   // matrix size
  bool complex = false;        // SL(n, C) if true
  std::vector<Vec> basis_rows; // size n, each of length rank: row i maps diag entry i
};

class RootSystem {
 public:
  RootSystem(std::string label, int rank, std::vector<Root> positive, std::vector<int> simple,
             int declared_dim, int declared_D);

  const std::string& label() const { return label_; }
  int rank() const { return rank_; }
  const std::vector<Root>& positive_roots() const { return positive_; }
  const std::vector<int>& simple_indices() const { return simple_; }
  Vec simple_root(int j) const { return positive_[simple_[j]].alpha; }
  const std::vector<WeylElement>& weyl_group() const { return weyl_; }
  // Fundamental coweights: <alpha_k, Lambda_j> = delta_jk over simple roots.
  const std::vector<Vec>& fundamental_weights() const { return fundamental_; }
  const Vec& rho() const { return rho_; }
  int dimension() const { return dim_; }
  int rank_one_dimension() const { return D_; }
  int declared_dimension() const { return declared_dim_; }
  int declared_rank_one_dimension() const { return declared_D_; }

  bool has_matrix_form() const { return matrix_.n > 0; }
  const MatrixRealization& matrix_form() const { return matrix_; }
  void set_matrix_form(MatrixRealization m) { matrix_ = std::move(m); }

  // Diagonal log entries (length n) to coordinates and back.
  Vec coords_from_diagonal(const std::vector<double>& diag) const;
  std::vector<double> diagonal_from_coords(const Vec& a) const;

 private:
  std::string label_;
  int rank_;
  std::vector<Root> positive_;
  std::vector<int> simple_;
  std::vector<WeylElement> weyl_;
  std::vector<Vec> fundamental_;
  Vec rho_;
  int dim_ = 0;
  int D_ = 0;
  int declared_dim_ = 0;
  int declared_D_ = 0;
  MatrixRealization matrix_;
};

// Catalogue lookup. Labels: H2..H6, SL2R, SL3R, SL2C. Throws CatalogueError.
RootSystem root_system(const std::string& label);
std::vector<std::string> catalogue_labels();

inline int dimension(const RootSystem& rs) { return rs.dimension(); }
inline int rank_one_dimension(const RootSystem& rs) { return rs.rank_one_dimension(); }
inline const Vec& rho(const RootSystem& rs) { return rs.rho(); }

bool in_closed_chamber(const RootSystem& rs, const Vec& v, double tol = 0.0);
ChamberPoint chamber_project(const RootSystem& rs, const Vec& v);

// prod sinh(<alpha,x>)^m_alpha sinh(2<alpha,x>)^m_2alpha over positive roots.
double cartan_density(const RootSystem& rs, const ChamberPoint& x);
// Logarithm of the above; -inf on a wall. Stable for large |x|.
double log_cartan_density(const RootSystem& rs, const ChamberPoint& x);
// prod (sinh u / u)^m over the same factors, u = <alpha,H> or 2<alpha,H>.
double jacobian_J(const RootSystem& rs, const Vec& H);
// prod over reduced positive roots (1 + <alpha,x>) * exp(-<rho,x>).
double phi0_envelope(const RootSystem& rs, const ChamberPoint& x);

}  // namespace symkernel
