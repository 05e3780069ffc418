#pragma once

#include <random>

#include <Eigen/Dense>

#include "ihs/symplectic_linear.hpp"

namespace test_support {

using ihs::symplectic::Matrix;

inline Matrix random_symmetric(int k, std::mt19937_64& rng, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Matrix s(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = i; j < k; ++j) s(i, j) = s(j, i) = u(rng);
  return s;
}

// Product of elementary symplectic factors (shears in x and y, and
// block-diagonal diag(A, A^-T)); rejected until cond(S) <= max_cond.
inline Matrix random_symplectic(int k, std::mt19937_64& rng, double max_cond = 1e4) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (;;) {
    Matrix S = Matrix::Identity(2 * k, 2 * k);
    for (int f = 0; f < 3; ++f) {
      Matrix lower = Matrix::Identity(2 * k, 2 * k);
      lower.bottomLeftCorner(k, k) = random_symmetric(k, rng, 1.0);
      Matrix upper = Matrix::Identity(2 * k, 2 * k);
      upper.topRightCorner(k, k) = random_symmetric(k, rng, 1.0);
      Matrix A(k, k);
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) A(i, j) = (i == j ? 1.0 : 0.0) + 0.5 * u(rng);
      if (std::abs(A.determinant()) < 0.1) continue;
      Matrix diag = Matrix::Zero(2 * k, 2 * k);
      diag.topLeftCorner(k, k) = A;
      diag.bottomRightCorner(k, k) = A.inverse().transpose();
      S = S * lower * upper * diag;
    }
    Eigen::JacobiSVD<Matrix> svd(S);
    const auto& sv = svd.singularValues();
    if (sv(0) / sv(sv.size() - 1) <= max_cond) return S;
  }
}

// Conjugate a family so that its Hamiltonian matrices become S^-1 M S: the
// forms are pulled back along S.
inline ihs::symplectic::CommutingFamily conjugate(const ihs::symplectic::CommutingFamily& fam, const Matrix& S) {
  return ihs::symplectic::pullback(fam, S);
}

inline ihs::symplectic::QuadraticForm random_form(int k, std::mt19937_64& rng) {
  return ihs::symplectic::QuadraticForm({k}, random_symmetric(2 * k, rng, 1.0));
}

}  // namespace test_support
