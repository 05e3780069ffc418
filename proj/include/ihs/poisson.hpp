#pragma once

// Polynomial Poisson manifolds, integrable systems on them, and the pointwise
// analysis of singular points: rank, transversal linearization, Williamson
// classification, and equilibrium search.

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ihs/polynomial.hpp"
#include "ihs/symplectic_linear.hpp"

namespace ihs::poisson {

using poly::PolynomialFunction;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

class PoissonManifold {
 public:
  // Validates antisymmetry (coefficient level) and the Jacobi identity at
  // 1000 deterministic points of the box [-1,1]^d.
  PoissonManifold(std::vector<std::vector<PolynomialFunction>> structure, std::vector<std::string> variables = {});

  int dim() const { return dim_; }
  const std::vector<std::string>& variables() const { return variables_; }
  const PolynomialFunction& entry(int i, int j) const { return structure_[i][j]; }
  Matrix at(const Vector& x) const;
  double jacobi_residual() const { return jacobi_residual_; }

 private:
  int dim_ = 0;
  std::vector<std::vector<PolynomialFunction>> structure_;
  std::vector<std::string> variables_;
  double jacobi_residual_ = 0.0;
};

// The standard symplectic structure on R^{2k} with variables x1..xk, y1..yk.
PoissonManifold canonical_manifold(int half_dim);

PolynomialFunction bracket_fn(const PolynomialFunction& f, const PolynomialFunction& g, const PoissonManifold& m);

// X_f = Pi grad f, one polynomial per coordinate.
std::vector<PolynomialFunction> hamiltonian_vector_field(const PolynomialFunction& f, const PoissonManifold& m);

class IntegrableSystem {
 public:
  // Checks {F_i,F_j} = 0, {C,F_i} = 0 and that each Casimir is central,
  // all exactly on the polynomial level, and dim - #casimirs = 2n.
  IntegrableSystem(PoissonManifold manifold, std::vector<PolynomialFunction> casimirs,
                   std::vector<PolynomialFunction> hamiltonians, std::vector<double> leaf_values);

  const PoissonManifold& manifold() const { return manifold_; }
  const std::vector<PolynomialFunction>& casimirs() const { return casimirs_; }
  const std::vector<PolynomialFunction>& hamiltonians() const { return hamiltonians_; }
  const std::vector<double>& leaf_values() const { return leaf_values_; }
  int dim() const { return manifold_.dim(); }
  int n() const { return static_cast<int>(hamiltonians_.size()); }

  Vector moment(const Vector& p) const;                  // (F_1..F_n)(p)
  Vector casimir_residual(const Vector& p) const;         // C_j(p) - c_j
  Matrix field_matrix(const Vector& p) const;            // d x n, columns X_{F_i}(p)
  // d x n matrix dX/dp_l for each l (derivative of field_matrix).
  std::vector<Matrix> field_matrix_derivative(const Vector& p) const;
  Matrix casimir_gradients(const Vector& p) const;       // d x m
  Vector gradient(const PolynomialFunction& f, const Vector& p) const;
  Matrix hessian(const PolynomialFunction& f, const Vector& p) const;

 private:
  PoissonManifold manifold_;
  std::vector<PolynomialFunction> casimirs_;
  std::vector<PolynomialFunction> hamiltonians_;
  std::vector<double> leaf_values_;
  std::vector<std::vector<PolynomialFunction>> fields_;        // [i][row]
  std::vector<std::vector<std::vector<PolynomialFunction>>> field_partials_;  // [i][row][l]
};

struct RankInfo {
  int rank = 0;
  int corank = 0;
};

// Singular values below 1e-8 * max(sigma_max, 1) count as zero.
int numerical_rank(const Matrix& m);

RankInfo rank_at(const IntegrableSystem& sys, const Vector& p);

symplectic::CommutingFamily transversal_family(const IntegrableSystem& sys, const Vector& p);

enum class PointClass { Regular, Degenerate, Nondegenerate };

struct SingularPointReport {
  Vector point;
  int rank = 0;
  int corank = 0;
  Matrix leaf_basis;  // orthonormal columns spanning the leaf tangent space
  std::optional<symplectic::CommutingFamily> transversal;
  PointClass classification = PointClass::Regular;
  symplectic::WilliamsonType type;
  std::vector<symplectic::ComponentSymmetry> symmetry;
  std::string note;
};

// bracket_tolerance is the relative commutation tolerance of the transversal family.
SingularPointReport classify_singular_point(const IntegrableSystem& sys, const Vector& p, double bracket_tolerance = 1e-9);

struct Box {
  Vector lo, hi;

  int dim() const { return static_cast<int>(lo.size()); }
  bool empty() const;
  bool contains(const Vector& p, double slack = 0.0) const;
  Vector at(const std::vector<double>& unit) const;  // map [0,1]^d into the box
  Vector clamp(const Vector& p) const;
  static Box cube(int dim, double half_width);
  static Box around(const Vector& centre, double half_width);
};

// Gauss-Newton on {X_{F_i} = 0, C_j = c_j} from Halton seeds in the region.
std::vector<Vector> find_fixed_points(const IntegrableSystem& sys, const Box& region, int seed_count);

}  // namespace ihs::poisson
