#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "ihs/covering.hpp"
#include "ihs/error.hpp"

using namespace ihs;
using namespace ihs::foliation;

namespace {

DirectProductModel single(int regular, const Atom& a) {
  DirectProductModel m;
  m.regular_rank = regular;
  m.atoms = {a};
  return m;
}

Pi1Presentation with_betas(int alpha, const std::vector<std::vector<Fraction>>& images) {
  Pi1Presentation p;
  p.alpha_count = alpha;
  for (const auto& im : images) p.beta.push_back({0, im});
  return p;
}

// Order of the subgroup of (R/Z)^k generated by half-lattice images, by
// closing the set of all sums.
int subgroup_order(const std::vector<std::vector<Fraction>>& images, int k) {
  auto mod1 = [](Fraction f) { return f >= Fraction(1) ? f - Fraction(1) : f; };
  std::set<std::vector<Fraction>> group{std::vector<Fraction>(k, Fraction(0))};
  bool grew = true;
  while (grew) {
    grew = false;
    for (auto x : std::vector<std::vector<Fraction>>(group.begin(), group.end()))
      for (const auto& g : images) {
        std::vector<Fraction> y(k);
        for (int i = 0; i < k; ++i) y[i] = mod1(x[i] + g[i]);
        grew |= group.insert(y).second;
      }
  }
  return static_cast<int>(group.size());
}

}  // namespace

TEST_CASE("presentations of codimension-one models") {
  auto b = pi1_presentation(single(1, atom_B()));
  CHECK(b.alpha_count == 1);
  CHECK(b.beta.empty());
  CHECK(b.gamma_count == 2);  // H1 of the figure-eight

  auto c = pi1_presentation(single(2, atom_C2()));
  CHECK(c.alpha_count == 2);
  CHECK(c.gamma_count == 4 - 2 + 1);

  auto s = pi1_presentation(single(1, atom_A_star()));
  REQUIRE(s.beta.size() == 1);
  CHECK(s.beta[0].image == std::vector<Fraction>{Fraction(1, 2)});
  CHECK(s.gamma_count == 1);
  CHECK(std::find(s.relations.begin(), s.relations.end(), "2 beta_1 = 1 alpha_1") != s.relations.end());

  auto a = pi1_presentation(single(1, atom_A()));
  CHECK(a.beta.empty());
  CHECK(a.gamma_count == 0);

  DirectProductModel two;
  two.atoms = {atom_B(), atom_B()};
  CHECK_THROWS_AS(pi1_presentation(two), Error);
  DirectProductModel focus;
  focus.focus = {{1}};
  CHECK_THROWS_AS(pi1_presentation(focus), Error);
}

TEST_CASE("canonical covering degrees") {
  CHECK(canonical_covering(with_betas(1, {})).degree == 1);

  auto one = canonical_covering(pi1_presentation(single(1, atom_A_star())));
  CHECK(one.degree == 2);
  CHECK(one.note.find("a canonical covering") != std::string::npos);

  const Fraction h(1, 2), z(0);
  CHECK(canonical_covering(with_betas(2, {{h, z}, {z, h}})).degree == 4);
  CHECK(canonical_covering(with_betas(2, {{h, z}, {h, z}})).degree == 2);
  CHECK(canonical_covering(with_betas(2, {{h, h}, {h, z}, {z, h}})).degree == 4);
  CHECK(canonical_covering(with_betas(1, {{z}})).degree == 1);
  CHECK_THROWS_AS(canonical_covering(with_betas(1, {{Fraction(1, 3)}})), Error);
  CHECK_THROWS_AS(canonical_covering(with_betas(2, {{h}})), Error);
}

TEST_CASE("covering degree matches subgroup order and ignores beta order") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> bit(0, 1);
  for (int trial = 0; trial < 200; ++trial) {
    const int k = 1 + trial % 4;
    std::vector<std::vector<Fraction>> images(1 + trial % 5, std::vector<Fraction>(k));
    for (auto& im : images)
      for (auto& f : im) f = Fraction(bit(rng), 2);
    const int degree = canonical_covering(with_betas(k, images)).degree;
    CHECK(degree == subgroup_order(images, k));
    std::shuffle(images.begin(), images.end(), rng);
    CHECK(canonical_covering(with_betas(k, images)).degree == degree);
  }
}

TEST_CASE("monodromy") {
  for (int m = 1; m <= 5; ++m) {
    auto M = monodromy(FocusBlock{m});
    CHECK(M[0][0] == 1);
    CHECK(M[0][1] == m);
    CHECK(M[1][0] == 0);
    CHECK(M[1][1] == 1);
    CHECK(M[0][0] * M[1][1] - M[0][1] * M[1][0] == 1);
    // (M - I)^2 = 0
    const long long a = M[0][0] - 1, b = M[0][1], c = M[1][0], d = M[1][1] - 1;
    CHECK(a * a + b * c == 0);
    CHECK(a * b + b * d == 0);
    CHECK(c * a + d * c == 0);
    CHECK(c * b + d * d == 0);
  }
  CHECK(monodromy(0) == MonodromyMatrix{{{1, 0}, {0, 1}}});
  CHECK_THROWS_AS(monodromy(FocusBlock{0}), Error);
}
