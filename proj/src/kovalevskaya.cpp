#include "ihs/kovalevskaya.hpp"

#include <cmath>

#include "ihs/error.hpp"

namespace ihs::kovalevskaya {

using poly::parse;
using poly::PolynomialFunction;

namespace {
const std::vector<std::string> kNames{"S1", "S2", "S3", "R1", "R2", "R3"};
}

poisson::PoissonManifold e3_manifold() {
  // {S_i,S_j} = eps_ijk S_k, {S_i,R_j} = eps_ijk R_k, {R_i,R_j} = 0.
  std::vector<std::vector<PolynomialFunction>> pi(6, std::vector<PolynomialFunction>(6, PolynomialFunction(6)));
  auto eps = [](int i, int j, int k) { return (i - j) * (j - k) * (k - i) / 2; };
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        int e = eps(i, j, k);
        if (!e) continue;
        pi[i][j] = pi[i][j] + PolynomialFunction::variable(6, k) * e;
        pi[i][3 + j] = pi[i][3 + j] + PolynomialFunction::variable(6, 3 + k) * e;
        pi[3 + j][i] = pi[3 + j][i] - PolynomialFunction::variable(6, 3 + k) * e;
      }
  return poisson::PoissonManifold(std::move(pi), kNames);
}

poisson::IntegrableSystem kovalevskaya_system(double g) {
  require(std::isfinite(g) && g != 0.0 && std::abs(g) < 1.0, "Kovalevskaya parameter g must satisfy 0 < |g| < 1");
  auto f1 = parse("R1^2 + R2^2 + R3^2", kNames);
  auto f2 = parse("S1*R1 + S2*R2 + S3*R3", kNames);
  auto H = parse("(S1^2 + S2^2 + 2*S3^2)/2 + R1", kNames);
  auto K = parse("(S1^2/2 - S2^2/2 - R1)^2 + (S1*S2 - R2)^2", kNames);
  return poisson::IntegrableSystem(e3_manifold(), {f1, f2}, {H, K}, {1.0, g});
}

}  // namespace ihs::kovalevskaya
