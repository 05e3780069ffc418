#pragma once

// Linear symplectic algebra of quadratic forms on R^{2k} with coordinates
// ordered (x_1..x_k, y_1..y_k) and the form w = sum dx_i ^ dy_i.
//
// A quadratic form is stored as a symmetric matrix A with q(v) = v^T A v.
// Bracket convention: {f,g} = sum_i df/dx_i dg/dy_i - df/dy_i dg/dx_i, so the
// Hamiltonian vector field of q is v' = M v with M = 2 J A.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace ihs::symplectic {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

struct SymplecticSpace {
  int half_dim = 1;

  int dim() const { return 2 * half_dim; }
  // J(x_i, y_i) = 1; antisymmetric with J^2 = -I.
  Matrix J() const;

  bool operator==(const SymplecticSpace&) const = default;
};

class QuadraticForm {
 public:
  QuadraticForm(SymplecticSpace space, Matrix coeff);

  static QuadraticForm zero(SymplecticSpace space);

  const SymplecticSpace& space() const { return space_; }
  const Matrix& coeff() const { return coeff_; }
  double operator()(const Vector& v) const { return v.dot(coeff_ * v); }

  QuadraticForm operator+(const QuadraticForm& o) const;
  QuadraticForm operator-(const QuadraticForm& o) const;
  QuadraticForm operator*(double s) const;

 private:
  SymplecticSpace space_;
  Matrix coeff_;
};

// Monomial builders on R^{2k}; indices are 0-based (x_i is coordinate i,
// y_i is coordinate k + i).
QuadraticForm xx(SymplecticSpace s, int i, int j);
QuadraticForm xy(SymplecticSpace s, int i, int j);
QuadraticForm yy(SymplecticSpace s, int i, int j);

struct HamiltonianMatrix {
  SymplecticSpace space;
  Matrix mat;
};

struct CommutingFamily {
  SymplecticSpace space;
  std::vector<QuadraticForm> forms;
  double tolerance = 1e-9;

  // max_{i,j} ||{q_i, q_j}||_inf
  double max_bracket() const;
};

struct WilliamsonType {
  int k_e = 0;
  int k_h = 0;
  int k_f = 0;

  int corank() const { return k_e + k_h + 2 * k_f; }
  std::string str() const;
  bool operator==(const WilliamsonType&) const = default;
  auto operator<=>(const WilliamsonType&) const = default;
};

enum class ComponentKind { Elliptic, Hyperbolic, Focus };

const char* to_string(ComponentKind k);

struct ComponentSymmetry {
  ComponentKind kind;
  std::string group_descriptor;
};

struct CartanDiagnostics {
  bool cartan = false;
  bool commuting = false;        // (a)
  bool full_span = false;        // (b)
  bool regular_element = false;  // (c)
  double max_bracket = 0.0;
  int span_dimension = 0;
  std::vector<double> regular_coefficients;  // coefficients of the certifying element
  std::string message;
};

QuadraticForm poisson_bracket(const QuadraticForm& q1, const QuadraticForm& q2);

HamiltonianMatrix hamiltonian_matrix(const QuadraticForm& q);
QuadraticForm form_of(const HamiltonianMatrix& m);

CartanDiagnostics is_cartan(const CommutingFamily& fam);

WilliamsonType williamson_type(const CommutingFamily& fam);

struct NormalizingTransform {
  Matrix S;                                  // symplectic: S^T J S = J
  std::vector<ComponentKind> components;     // block layout of the new coordinates
  std::vector<std::vector<double>> coefficients;  // per form: coefficients on the normal monomials
  std::vector<std::string> monomials;        // names of the normal monomials, in coefficient order
  double residual = 0.0;                     // max entry of (S^T A S - fit) relative to ||A||
};

NormalizingTransform normalizing_transform(const CommutingFamily& fam);

ComponentSymmetry component_symmetry(ComponentKind kind);

// Census of local strata by dimension for a point of the given type; a
// rank-r regular factor shifts every dimension by r.
std::map<int, long long> local_stratification(const WilliamsonType& t, int regular_rank = 0);

// Normal form: elliptic blocks first, then hyperbolic, then focus pairs.
CommutingFamily williamson_normal_form(const WilliamsonType& t);

// Pull a form back along a linear map: (q o S)(v) = q(Sv).
QuadraticForm pullback(const QuadraticForm& q, const Matrix& S);
CommutingFamily pullback(const CommutingFamily& fam, const Matrix& S);

double symplectic_defect(const Matrix& S);  // ||S^T J S - J||_inf

}  // namespace ihs::symplectic
