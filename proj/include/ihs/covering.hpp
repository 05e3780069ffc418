#pragma once

// Fundamental-group data of codimension-one singularities and focus-focus
// monodromy.

#include <array>
#include <string>
#include <vector>

#include "ihs/orbit_complex.hpp"

namespace ihs::foliation {

struct ExceptionalCycle {
  int cell = 0;                   // hyperbolic orbit (minimal cell) it comes from
  std::vector<Fraction> image;    // in ((1/2)Z/Z)^{alpha_count}
};

struct Pi1Presentation {
  int alpha_count = 0;  // torus cycles
  std::vector<ExceptionalCycle> beta;
  int gamma_count = 0;  // base cycles: rank of H1 of the leaf graph
  std::vector<std::string> relations;
};

// Requires exactly one singular component, an atom (codimension one). A
// starred atom contributes one exceptional cycle per starred half-turn.
Pi1Presentation pi1_presentation(const OrbitComplex& cx);
Pi1Presentation pi1_presentation(const DirectProductModel& model);

struct CoveringData {
  int degree = 1;                             // |Gamma_can|
  std::vector<std::vector<Fraction>> generators;  // independent beta images
  std::string kernel;                         // description of G_can
  std::string note;
};

CoveringData canonical_covering(const Pi1Presentation& pres);

using MonodromyMatrix = std::array<std::array<long long, 2>, 2>;

MonodromyMatrix monodromy(const FocusBlock& fb);
// m = 0 stands for a regular block (identity).
MonodromyMatrix monodromy(int m);

}  // namespace ihs::foliation
