#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ihs/error.hpp"
#include "ihs/symplectic_linear.hpp"
#include "support.hpp"

using namespace ihs::symplectic;

namespace {

double inf(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

// Bracket by finite coordinate formula: grad q = 2 A v, so
// {f,g}(v) = (2A1 v)^T J (2A2 v), evaluated at sample points.
double coordinate_bracket(const QuadraticForm& f, const QuadraticForm& g, const Vector& v) {
  const Matrix J = f.space().J();
  return (2.0 * f.coeff() * v).dot(J * (2.0 * g.coeff() * v));
}

}  // namespace

TEST_CASE("symplectic space J") {
  for (int k = 1; k <= 4; ++k) {
    Matrix J = SymplecticSpace{k}.J();
    CHECK(inf(J + J.transpose()) == 0.0);
    CHECK(inf(J * J + Matrix::Identity(2 * k, 2 * k)) == 0.0);
  }
}

TEST_CASE("quadratic form rejects asymmetric matrices") {
  Matrix a = Matrix::Zero(2, 2);
  a(0, 1) = 1.0;
  CHECK_THROWS_AS(QuadraticForm({1}, a), ihs::Error);
  CHECK_THROWS_AS(QuadraticForm({2}, Matrix::Zero(2, 2)), ihs::Error);
}

TEST_CASE("bracket examples") {
  SymplecticSpace s{1};
  auto r = poisson_bracket(xy(s, 0, 0), xx(s, 0, 0));
  CHECK(inf(r.coeff() - (xx(s, 0, 0) * -2.0).coeff()) < 1e-15);

  auto r2 = poisson_bracket(xx(s, 0, 0) + yy(s, 0, 0), xy(s, 0, 0));
  CHECK(inf(r2.coeff() - (xx(s, 0, 0) * 2.0 - yy(s, 0, 0) * 2.0).coeff()) < 1e-15);

  SymplecticSpace s2{2};
  auto q1 = xy(s2, 0, 1) - xy(s2, 1, 0);
  auto q2 = xy(s2, 0, 0) + xy(s2, 1, 1);
  CHECK(inf(poisson_bracket(q1, q2).coeff()) == 0.0);

  CHECK_THROWS_AS(poisson_bracket(xx(s, 0, 0), xx(s2, 0, 0)), ihs::Error);
}

TEST_CASE("bracket matches the coordinate formula") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int k = 1; k <= 4; ++k) {
    for (int t = 0; t < 20; ++t) {
      auto f = test_support::random_form(k, rng);
      auto g = test_support::random_form(k, rng);
      auto h = poisson_bracket(f, g);
      Vector v(2 * k);
      for (int i = 0; i < 2 * k; ++i) v[i] = u(rng);
      CHECK(h(v) == doctest::Approx(coordinate_bracket(f, g, v)).epsilon(1e-10));
    }
  }
}

TEST_CASE("hamiltonian matrices") {
  SymplecticSpace s{1};
  Matrix m = hamiltonian_matrix(xy(s, 0, 0)).mat;
  Matrix expect(2, 2);
  expect << 1, 0, 0, -1;
  CHECK(inf(m - expect) == 0.0);

  Matrix m2 = hamiltonian_matrix(xx(s, 0, 0) + yy(s, 0, 0)).mat;
  expect << 0, 2, -2, 0;
  CHECK(inf(m2 - expect) == 0.0);

  CHECK(inf(hamiltonian_matrix(QuadraticForm::zero(s)).mat) == 0.0);

  std::mt19937_64 rng(3);
  for (int k = 1; k <= 4; ++k) {
    auto q = test_support::random_form(k, rng);
    auto M = hamiltonian_matrix(q);
    Matrix JM = SymplecticSpace{k}.J() * M.mat;
    CHECK(inf(JM - JM.transpose()) < 1e-14);
    CHECK(inf(form_of(M).coeff() - q.coeff()) < 1e-14);
  }
}

TEST_CASE("bracket algebra properties") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    int k = 1 + t % 4;
    auto a = test_support::random_form(k, rng);
    auto b = test_support::random_form(k, rng);
    auto c = test_support::random_form(k, rng);
    auto ab = poisson_bracket(a, b);
    auto ba = poisson_bracket(b, a);
    CHECK((ab.coeff() + ba.coeff()).cwiseAbs().maxCoeff() == 0.0);
    auto jac = poisson_bracket(ab, c) + poisson_bracket(poisson_bracket(b, c), a) +
               poisson_bracket(poisson_bracket(c, a), b);
    CHECK(inf(jac.coeff()) <= 1e-10);
    Matrix comm = hamiltonian_matrix(a).mat * hamiltonian_matrix(b).mat -
                  hamiltonian_matrix(b).mat * hamiltonian_matrix(a).mat;
    CHECK(inf(hamiltonian_matrix(ab).mat - comm) <= 1e-10);
  }
}

TEST_CASE("is_cartan examples") {
  SymplecticSpace s1{1}, s2{2};
  auto d = is_cartan({s1, {xy(s1, 0, 0)}});
  CHECK(d.cartan);

  auto dep = is_cartan({s2, {xy(s2, 0, 0), xy(s2, 0, 0) * 2.0}});
  CHECK_FALSE(dep.cartan);
  CHECK_FALSE(dep.full_span);
  CHECK(dep.commuting);

  auto nilp = is_cartan({s2, {xy(s2, 0, 0), xx(s2, 1, 1)}});
  CHECK_FALSE(nilp.cartan);
  CHECK(nilp.commuting);
  CHECK(nilp.full_span);
  CHECK_FALSE(nilp.regular_element);

  auto noncomm = is_cartan({s1, {xy(s1, 0, 0), xx(s1, 0, 0)}});
  CHECK_FALSE(noncomm.commuting);

  CHECK_THROWS_AS(is_cartan({s1, {}}), ihs::Error);
}

TEST_CASE("williamson type of normal forms") {
  SymplecticSpace s1{1}, s2{2};
  CHECK(williamson_type({s1, {xx(s1, 0, 0) + yy(s1, 0, 0)}}) == WilliamsonType{1, 0, 0});
  CHECK(williamson_type({s2, {xy(s2, 0, 1) - xy(s2, 1, 0), xy(s2, 0, 0) + xy(s2, 1, 1)}}) ==
        WilliamsonType{0, 0, 1});
  CHECK_THROWS_AS(williamson_type({s2, {xy(s2, 0, 0), xx(s2, 1, 1)}}), ihs::Error);
}

TEST_CASE("williamson type is conjugation invariant") {
  std::mt19937_64 rng(2024);
  for (int k = 1; k <= 3; ++k)
    for (int kf = 0; 2 * kf <= k; ++kf)
      for (int kh = 0; kh + 2 * kf <= k; ++kh) {
        WilliamsonType t{k - kh - 2 * kf, kh, kf};
        auto fam = williamson_normal_form(t);
        for (int trial = 0; trial < 100; ++trial) {
          Matrix S = test_support::random_symplectic(k, rng);
          auto conj = test_support::conjugate(fam, S);
          auto got = williamson_type(conj);
          CHECK(got == t);
          CHECK(got.corank() == k);
        }
      }
}

TEST_CASE("normalizing transform") {
  std::mt19937_64 rng(99);
  SymplecticSpace s1{1};
  auto ident = normalizing_transform({s1, {xy(s1, 0, 0)}});
  CHECK(symplectic_defect(ident.S) <= 1e-8);

  for (WilliamsonType t : {WilliamsonType{0, 1, 0}, WilliamsonType{0, 0, 1}, WilliamsonType{1, 1, 0},
                           WilliamsonType{1, 1, 1}, WilliamsonType{2, 0, 1}, WilliamsonType{0, 2, 1}}) {
    auto fam = williamson_normal_form(t);
    for (int trial = 0; trial < 20; ++trial) {
      Matrix S0 = test_support::random_symplectic(t.corank(), rng);
      auto conj = test_support::conjugate(fam, S0);
      auto nt = normalizing_transform(conj);
      CHECK(symplectic_defect(nt.S) <= 1e-8);
      CHECK(nt.residual <= 1e-6);
      CHECK(nt.components.size() == static_cast<std::size_t>(t.k_e + t.k_h + t.k_f));
      // The fitted normal-form coefficients describe a family of the same type.
      CommutingFamily fitted{fam.space, {}, 1e-9};
      for (const auto& coef : nt.coefficients) {
        REQUIRE(coef.size() == fam.forms.size());
        auto q = QuadraticForm::zero(fam.space);
        for (std::size_t j = 0; j < coef.size(); ++j) q = q + fam.forms[j] * coef[j];
        fitted.forms.push_back(q);
      }
      CHECK(williamson_type(fitted) == t);
    }
  }
}

TEST_CASE("component symmetry table") {
  CHECK(component_symmetry(ComponentKind::Elliptic).group_descriptor == "circle");
  CHECK(component_symmetry(ComponentKind::Hyperbolic).group_descriptor == "Z2 × R");
  CHECK(component_symmetry(ComponentKind::Focus).group_descriptor == "S1 × R");
}

TEST_CASE("local stratification census") {
  using Census = std::map<int, long long>;
  CHECK(local_stratification({0, 1, 0}) == Census{{0, 1}, {1, 4}});
  CHECK(local_stratification({0, 0, 1}) == Census{{0, 1}, {2, 2}});
  CHECK(local_stratification({0, 2, 0}) == Census{{0, 1}, {1, 8}, {2, 16}});
  CHECK(local_stratification({1, 0, 0}) == Census{{0, 1}});
  CHECK(local_stratification({0, 1, 0}, 2) == Census{{2, 1}, {3, 4}});
  // Total strata count is multiplicative.
  long long total = 0;
  for (auto [d, c] : local_stratification({1, 2, 1})) total += c;
  CHECK(total == 5 * 5 * 3);
}
