#pragma once

// Multivariate polynomials with exact rational coefficients. A double-precision
// copy of the terms is kept alongside for fast evaluation.

#include <map>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace ihs::poly {

using Rational = boost::multiprecision::cpp_rational;
using Exponent = std::vector<int>;

class PolynomialFunction {
 public:
  PolynomialFunction() = default;
  explicit PolynomialFunction(int num_vars);
  PolynomialFunction(int num_vars, std::map<Exponent, Rational> terms);

  static PolynomialFunction constant(int num_vars, const Rational& c);
  static PolynomialFunction variable(int num_vars, int index);

  int num_vars() const { return num_vars_; }
  const std::map<Exponent, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;

  PolynomialFunction operator+(const PolynomialFunction& o) const;
  PolynomialFunction operator-(const PolynomialFunction& o) const;
  PolynomialFunction operator-() const;
  PolynomialFunction operator*(const PolynomialFunction& o) const;
  PolynomialFunction operator*(const Rational& s) const;
  PolynomialFunction pow(int e) const;
  bool operator==(const PolynomialFunction& o) const { return num_vars_ == o.num_vars_ && terms_ == o.terms_; }

  PolynomialFunction derivative(int var) const;

  double operator()(const double* x) const;
  double operator()(const std::vector<double>& x) const { return (*this)(x.data()); }

  // Canonical text form, parseable by parse() with the same names. Terms are
  // printed in decreasing graded-lexicographic order.
  std::string str(const std::vector<std::string>& names = {}) const;

 private:
  void rebuild_cache();

  int num_vars_ = 0;
  std::map<Exponent, Rational> terms_;
  // Evaluation cache.
  std::vector<double> coef_;
  std::vector<int> exps_;  // term-major, num_vars_ entries per term
  int max_exp_ = 0;
};

// Default variable names x1..xn.
std::vector<std::string> default_names(int num_vars);

// Grammar: sums of products of numbers, variables, parenthesised expressions
// and powers `v^k`. Numbers may be integers, decimals (exact, e.g. 0.1 = 1/10)
// or use exponent notation; division is allowed by constants only.
PolynomialFunction parse(const std::string& text, const std::vector<std::string>& names);

// Decimal or integer literal to an exact rational (0.5 -> 1/2, 1e-3 -> 1/1000).
Rational exact_decimal(const std::string& literal);
// Nearest-dyadic exact value of a double (exact binary expansion).
Rational exact_double(double v);

}  // namespace ihs::poly
