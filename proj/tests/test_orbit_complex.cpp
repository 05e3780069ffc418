#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ihs/error.hpp"
#include "ihs/orbit_complex.hpp"

using namespace ihs;
using namespace ihs::foliation;

namespace {

DirectProductModel model(int regular, std::vector<Atom> atoms, std::vector<int> focus = {}) {
  DirectProductModel m;
  m.regular_rank = regular;
  m.atoms = std::move(atoms);
  for (int f : focus) m.focus.push_back({f});
  return m;
}

FiniteGroupAction z2(const std::vector<std::vector<int>>& atom_images, std::vector<int> shifts = {}) {
  FiniteGroupAction a;
  a.generators = {{1, 0}};
  for (const auto& img : atom_images) a.per_component.push_back({{img, 0}});
  for (int s : shifts) a.per_component.push_back({{{}, s}});
  return a;
}

int count_type(const OrbitComplex& cx, OrbitType t) {
  auto census = type_census(cx);
  return census.count(t) ? census.at(t) : 0;
}

// Every model with at most three components drawn from the catalogue and
// focus blocks, plus regular rank up to two.
std::vector<DirectProductModel> small_models() {
  std::vector<std::pair<bool, Atom>> pieces;  // (is focus, atom)
  for (const auto& a : builtin_atoms()) pieces.push_back({false, a});
  std::vector<int> focus_sizes{1, 2};
  std::vector<DirectProductModel> out;
  const int P = static_cast<int>(pieces.size() + focus_sizes.size());
  for (int r = 0; r <= 2; ++r)
    for (int k = 0; k <= 3; ++k) {
      std::vector<int> idx(k, 0);
      while (true) {
        DirectProductModel m;
        m.regular_rank = r;
        for (int x : idx)
          if (x < static_cast<int>(pieces.size())) m.atoms.push_back(pieces[x].second);
        for (int x : idx)
          if (x >= static_cast<int>(pieces.size())) m.focus.push_back({focus_sizes[x - pieces.size()]});
        int stars = 0;
        for (const auto& a : m.atoms) stars += a.starred();
        if (stars <= r && m.n() > 0) out.push_back(m);
        int p = k - 1;
        while (p >= 0 && idx[p] == P - 1) --p;
        if (p < 0) break;
        ++idx[p];
        for (int q = p + 1; q < k; ++q) idx[q] = idx[p];
      }
    }
  return out;
}

}  // namespace

TEST_CASE("product complex examples") {
  auto b = product_complex(model(0, {atom_B()}));
  CHECK(b.cells.size() == 3);
  CHECK(count_type(b, {0, 1, 0, 0, 0}) == 1);
  CHECK(count_type(b, {0, 0, 0, 0, 1}) == 2);

  auto bc = product_complex(model(0, {atom_B(), atom_C2()}));
  CHECK(count_type(bc, {0, 2, 0, 0, 0}) == 2);
  CHECK(bc.cells.size() == 3 * 6);

  auto torus = product_complex(model(2, {}));
  REQUIRE(torus.cells.size() == 1);
  CHECK(torus.cells[0].type == OrbitType{0, 0, 0, 2, 0});

  auto f = product_complex(model(0, {}, {3}));
  CHECK(count_type(f, {0, 0, 1, 0, 0}) == 3);
  CHECK(count_type(f, {0, 0, 0, 1, 1}) == 3);
}

TEST_CASE("leaf invariant examples") {
  CHECK(leaf_invariants(product_complex(model(0, {atom_B(), atom_C2()}))) == LeafInvariants{0, 0, 2});
  CHECK(leaf_invariants(product_complex(model(2, {}))) == LeafInvariants{0, 2, 0});
  CHECK(leaf_invariants(product_complex(model(0, {}, {1}))) == LeafInvariants{0, 1, 1});
}

TEST_CASE("malformed complex violates the invariants") {
  auto cx = product_complex(model(0, {atom_B()}));
  cx.cells[0].type = {0, 0, 0, 1, 0};
  CHECK_THROWS_WITH_AS(leaf_invariants(cx), doctest::Contains("invariant violation"), Error);
  CHECK_FALSE(check_complex(cx).empty());
}

TEST_CASE("generated complexes satisfy the structural properties") {
  auto models = small_models();
  CHECK(models.size() > 100);
  for (const auto& m : models) {
    auto cx = product_complex(m);
    INFO(cx.cells.size());
    CHECK(check_complex(cx).empty());
    for (const auto& c : cx.cells) CHECK(c.type.total() == m.n());
    auto inv = leaf_invariants(cx);
    auto t = m.type();
    CHECK(inv.ellipticity == t.k_e);
    CHECK(torus_action_dimension(cx) == torus_action_dimension(m));
  }
}

TEST_CASE("torus action dimension") {
  for (int n = 1; n <= 4; ++n) {
    CHECK(torus_action_dimension(model(n - 1, {atom_B()})) == n - 1);
    CHECK(torus_action_dimension(model(n, {})) == n);
  }
  CHECK(torus_action_dimension(model(0, {}, {1})) == 1);
  CHECK(torus_action_dimension(model(0, {atom_A(), atom_B()})) == 1);
}

TEST_CASE("quotients") {
  auto prod = product_complex(model(0, {atom_B(), atom_C2()}));

  FiniteGroupAction trivial = FiniteGroupAction::trivial(*prod.model);
  auto same = quotient_complex(prod, trivial);
  CHECK(same.cells.size() == prod.cells.size());
  CHECK(type_census(same) == type_census(prod));

  auto q = quotient_complex(prod, z2({{2, 3, 0, 1}, {4, 5, 6, 7, 0, 1, 2, 3}}));
  CHECK(q.group_order == 2);
  CHECK(count_type(q, {0, 2, 0, 0, 0}) == 1);
  CHECK(check_complex(q).empty());
  for (const auto& [t, n] : type_census(prod)) CHECK(n == 2 * count_type(q, t));
  CHECK(leaf_invariants(q) == leaf_invariants(prod));

  // Central symmetry of B alone fixes the vertex of B x (a vertex of C2).
  CHECK_THROWS_WITH_AS(quotient_complex(prod, z2({{2, 3, 0, 1}, {0, 1, 2, 3, 4, 5, 6, 7}})),
                       doctest::Contains("not free"), Error);
  // Not an automorphism.
  CHECK_THROWS_AS(quotient_complex(prod, z2({{1, 0, 3, 2}, {4, 5, 6, 7, 0, 1, 2, 3}})), Error);
  // Quotients are not re-quotiented.
  CHECK_THROWS_AS(quotient_complex(q, trivial), Error);

  auto ab = product_complex(model(0, {atom_A(), atom_B()}));
  FiniteGroupAction on_elliptic;
  on_elliptic.generators = {{1, 0}};
  on_elliptic.per_component = {{{{}, 1}}, {{{2, 3, 0, 1}, 0}}};
  CHECK_THROWS_AS(quotient_complex(ab, on_elliptic), Error);

  auto bf = product_complex(model(0, {atom_B()}, {2}));
  auto qf = quotient_complex(bf, z2({{2, 3, 0, 1}}, {1}));
  CHECK(qf.minimal_cells().size() == 1);
}

TEST_CASE("canonical actions") {
  auto m = model(0, {atom_B(), atom_C2()});
  auto one_sided = group_elements(m, z2({{0, 1, 2, 3}, {4, 5, 6, 7, 0, 1, 2, 3}}));
  CHECK_FALSE(is_canonical(m, one_sided));
  auto both = group_elements(m, z2({{2, 3, 0, 1}, {4, 5, 6, 7, 0, 1, 2, 3}}));
  CHECK(is_canonical(m, both));
}

TEST_CASE("starred atoms and isotropy") {
  CHECK_THROWS_AS(product_complex(model(0, {atom_A_star()})), Error);
  auto as = product_complex(model(1, {atom_A_star()}));
  CHECK(as.cells.size() == 2);
  CHECK(check_complex(as).empty());
  auto iso = isotropy_report(as);
  REQUIRE(iso.size() == 1);
  CHECK(iso[0].finite_order == 2);

  for (const auto& e : isotropy_report(product_complex(model(0, {atom_B(), atom_C2()})))) {
    CHECK(e.finite_order == 1);
    CHECK(e.continuous_dim == 0);
  }

  auto f = isotropy_report(product_complex(model(0, {}, {1})));
  REQUIRE(f.size() == 1);
  CHECK(f[0].continuous_dim == 1);
  CHECK(f[0].descriptor.find("S1") != std::string::npos);

  auto q = quotient_complex(product_complex(model(0, {atom_B(), atom_C2()})), z2({{2, 3, 0, 1}, {4, 5, 6, 7, 0, 1, 2, 3}}));
  auto qi = isotropy_report(q);
  REQUIRE(qi.size() == 1);
  CHECK(qi[0].descriptor.find("order 2") != std::string::npos);
}
