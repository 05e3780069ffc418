#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "ihs/atom.hpp"
#include "ihs/error.hpp"

using namespace ihs;
using namespace ihs::foliation;

namespace {

// Faces of the ribbon graph as cycles of h -> next(mate(h)), counted with a
// plain visited array.
int count_faces(const Atom& a) {
  const int H = a.half_edge_count();
  std::vector<int> mate(H), next(H);
  for (const auto& e : a.pairing) {
    mate[e[0]] = e[1];
    mate[e[1]] = e[0];
  }
  for (const auto& r : a.rotation)
    for (std::size_t k = 0; k < r.size(); ++k) next[r[k]] = r[(k + 1) % r.size()];
  std::vector<bool> seen(H, false);
  int faces = 0;
  for (int h = 0; h < H; ++h) {
    if (seen[h]) continue;
    ++faces;
    for (int x = h; !seen[x]; x = next[mate[x]]) seen[x] = true;
  }
  return faces;
}

// Relabel vertices and half-edges and rotate each list by an even offset.
Atom scramble(const Atom& a, std::mt19937& rng) {
  const int V = a.vertex_count();
  std::vector<int> vperm(V);
  std::iota(vperm.begin(), vperm.end(), 0);
  std::shuffle(vperm.begin(), vperm.end(), rng);
  std::vector<int> hperm(a.half_edge_count());
  std::iota(hperm.begin(), hperm.end(), 0);
  std::shuffle(hperm.begin(), hperm.end(), rng);
  Atom b = a;
  for (int v = 0; v < V; ++v) {
    auto r = a.rotation[v];
    std::rotate(r.begin(), r.begin() + 2 * std::uniform_int_distribution<int>(0, 1)(rng), r.end());
    for (auto& h : r) h = hperm[h];
    b.rotation[vperm[v]] = r;
  }
  for (auto& e : b.pairing) e = {hperm[e[0]], hperm[e[1]]};
  std::shuffle(b.pairing.begin(), b.pairing.end(), rng);
  if (a.starred())
    for (int h = 0; h < a.half_edge_count(); ++h) b.involution[hperm[h]] = hperm[a.involution[h]];
  return b;
}

}  // namespace

TEST_CASE("catalogue reports") {
  auto b = atom_validate(atom_B());
  CHECK(b.vertices == 1);
  CHECK(b.edges == 2);
  CHECK(b.chi_leaf == -1);
  CHECK(b.boundary_circles == 3);
  CHECK(b.genus == 0);

  auto c = atom_validate(atom_C2());
  CHECK(c.vertices == 2);
  CHECK(c.chi_leaf == -2);
  CHECK(c.boundary_circles == 4);
  CHECK(c.genus == 0);

  auto a = atom_validate(atom_A());
  CHECK(a.vertices == 0);
  CHECK(a.chi_leaf == 1);

  CHECK(atom_validate(atom_A_star()).chi_leaf == -1);

  auto all = builtin_atoms();
  REQUIRE(all.size() == 4);
  CHECK(all[0].name == "A");
  CHECK(all[1].name == "B");
  CHECK(all[2].name == "A*");
  CHECK(all[3].name == "C2");
  CHECK(builtin_atom("C2").vertex_count() == 2);
  CHECK_THROWS_AS(builtin_atom("Z9"), Error);
}

TEST_CASE("boundary circles agree with independent face tracing") {
  for (const auto& a : builtin_atoms()) {
    if (a.kind == AtomKind::Elliptic) continue;
    auto r = atom_validate(a);
    CHECK(r.boundary_circles == count_faces(a));
    CHECK(r.vertices - r.edges + r.boundary_circles == 2 - 2 * r.genus);
  }
}

TEST_CASE("structural errors are rejected") {
  Atom three = atom_B();
  three.rotation = {{0, 1, 2}};
  three.pairing = {{0, 1}};
  CHECK_THROWS_AS(atom_validate(three), Error);

  Atom two_b;  // two disjoint figure-eights
  two_b.rotation = {{0, 1, 2, 3}, {4, 5, 6, 7}};
  two_b.pairing = {{0, 1}, {2, 3}, {4, 5}, {6, 7}};
  CHECK_THROWS_WITH_AS(atom_validate(two_b), doctest::Contains("connected"), Error);

  Atom parity = atom_B();
  parity.pairing = {{0, 2}, {1, 3}};  // joins two outgoing half-edges
  CHECK_THROWS_AS(atom_validate(parity), Error);

  Atom bad_inv = atom_B();
  bad_inv.involution = {1, 0, 3, 2};  // not an automorphism
  CHECK_THROWS_AS(atom_validate(bad_inv), Error);

  Atom fixed_inv = atom_B();
  fixed_inv.involution = {0, 1, 2, 3};  // not free
  CHECK_THROWS_AS(atom_validate(fixed_inv), Error);

  Atom elliptic_with_edges = atom_A();
  elliptic_with_edges.rotation = {{0, 1, 2, 3}};
  CHECK_THROWS_AS(atom_validate(elliptic_with_edges), Error);
}

TEST_CASE("automorphism groups") {
  CHECK(atom_automorphisms(atom_B()).size() == 2);
  CHECK(atom_automorphisms(atom_C2()).size() == 4);
  CHECK(atom_automorphisms(atom_A_star()).size() == 2);
  for (const auto& a : {atom_B(), atom_C2()}) {
    auto auts = atom_automorphisms(a);
    std::vector<int> id(a.half_edge_count());
    std::iota(id.begin(), id.end(), 0);
    CHECK(auts.front() == id);
    for (const auto& p : auts) {
      CHECK(is_automorphism(a, p));
      // Closed under composition.
      for (const auto& q : auts) {
        std::vector<int> pq(p.size());
        for (std::size_t h = 0; h < p.size(); ++h) pq[h] = p[q[h]];
        CHECK(std::find(auts.begin(), auts.end(), pq) != auts.end());
      }
    }
  }
  CHECK(automorphism_taking(atom_B(), 0, 2) == std::vector<int>{2, 3, 0, 1});
  CHECK(automorphism_taking(atom_B(), 0, 1).empty());  // parity
  CHECK_FALSE(is_automorphism(atom_B(), {1, 0, 3, 2}));
}

TEST_CASE("canonical codes are relabelling invariant") {
  std::mt19937 rng(7);
  for (const auto& a : {atom_B(), atom_C2(), atom_A_star()}) {
    for (int t = 0; t < 50; ++t) {
      Atom b = scramble(a, rng);
      atom_validate(b);
      CHECK(isomorphic(a, b));
      CHECK(canonical_code(a) == canonical_code(b));
      CHECK(atom_automorphisms(b).size() == atom_automorphisms(a).size());
      CHECK(isomorphic(canonical_form(b), a));
    }
  }
  CHECK_FALSE(isomorphic(atom_B(), atom_C2()));
  CHECK_FALSE(isomorphic(atom_B(), atom_A_star()));
}
