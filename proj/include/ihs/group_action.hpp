#pragma once

// Direct-product models and component-wise finite group actions on them.

#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "ihs/atom.hpp"
#include "ihs/symplectic_linear.hpp"

namespace ihs::foliation {

using Fraction = boost::rational<long long>;

struct FocusBlock {
  int m = 1;  // number of focus-focus points on the leaf
};

enum class ComponentKind { Elliptic, Hyperbolic, Focus };

const char* to_string(ComponentKind k);

struct DirectProductModel {
  int regular_rank = 0;
  std::vector<Atom> atoms;
  std::vector<FocusBlock> focus;

  // Components are indexed atoms first, then focus blocks.
  int component_count() const { return static_cast<int>(atoms.size() + focus.size()); }
  ComponentKind component_kind(int c) const;
  symplectic::WilliamsonType type() const;
  int n() const;  // regular_rank + k_e + k_h + 2 k_f
  void validate() const;
};

// Image of one group element on one component.
struct ComponentImage {
  std::vector<int> half_edges;  // atom automorphism; empty means identity
  int shift = 0;                // focus block: cyclic shift of the focus points

  bool operator==(const ComponentImage&) const = default;
};

struct GroupElement {
  std::vector<int> perm;                   // abstract permutation
  std::vector<ComponentImage> components;  // one per model component
  std::vector<Fraction> translation;       // regular torus translation, mod 1

  bool is_identity() const;
  bool trivial_on(int component) const;
};

struct FiniteGroupAction {
  std::vector<std::vector<int>> generators;                  // abstract permutations
  std::vector<std::vector<ComponentImage>> per_component;    // [component][generator]
  std::vector<std::vector<Fraction>> translations;           // [generator][regular coordinate]

  static FiniteGroupAction trivial(const DirectProductModel& model);
  int generator_count() const { return static_cast<int>(generators.size()); }
};

// Compose: (a * b)(x) = a(b(x)).
GroupElement compose(const DirectProductModel& model, const GroupElement& a, const GroupElement& b);
GroupElement identity_element(const DirectProductModel& model, int degree);

// All group elements, identity first, in breadth-first order over the
// generators. Validates component images (automorphisms, trivial on elliptic
// components) and that the component data is a homomorphic image of the
// abstract group.
std::vector<GroupElement> group_elements(const DirectProductModel& model, const FiniteGroupAction& act);

// Action of component images on a component's cells (see orbit_complex.hpp
// for the numbering: atom vertices then edges; focus points then cylinders).
int act_on_component_cell(const DirectProductModel& model, int component, const ComponentImage& img, int cell);

}  // namespace ihs::foliation
