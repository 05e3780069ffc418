#pragma once

// Canonical-model decomposition: recover a direct-product model and a free
// component-wise finite group from the orbit complex of a leaf with a fixed
// point, using only the complex's cells, labels, positional boundaries and
// rotation lists.

#include <string>
#include <vector>

#include "ihs/orbit_complex.hpp"

namespace ihs::foliation {

struct Decomposition {
  DirectProductModel model;
  FiniteGroupAction action;           // generators in the regular representation
  std::vector<GroupElement> elements; // identity first
  int group_order = 1;
  std::string note;
};

// Errors: NotDecomposable outside scope (no fixed point, unlabelled cells,
// inconsistent holonomy); ScopeExceeded when the covering search passes
// 2^(n-1) * (spine cells)^2 states.
Decomposition decompose(const OrbitComplex& cx);

// Every free, canonical component-wise action of a group of order at most
// max_order generated by at most two elements, one per distinct subgroup.
std::vector<FiniteGroupAction> admissible_actions(const DirectProductModel& model, int max_order);

// Same regular rank, same multiset of atoms up to isomorphism and of focus
// block sizes.
bool models_isomorphic(const DirectProductModel& a, const DirectProductModel& b);

}  // namespace ihs::foliation
