#pragma once

// Orbit complexes of singular leaves: cells are orbits of the torus/R^n
// action, labelled with their orbit type (k_e, k_h, k_f, c, o) and with the
// l-type components their open directions come from.

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ihs/group_action.hpp"

namespace ihs::foliation {

struct OrbitType {
  int k_e = 0, k_h = 0, k_f = 0, c = 0, o = 0;

  int total() const { return k_e + k_h + 2 * k_f + c + o; }
  int dim() const { return c + o; }
  OrbitType operator+(const OrbitType& t) const { return {k_e + t.k_e, k_h + t.k_h, k_f + t.k_f, c + t.c, o + t.o}; }
  bool operator==(const OrbitType&) const = default;
  auto operator<=>(const OrbitType&) const = default;
  std::string str() const;
};

// A rotation entry: an o = 1 cell ending at a minimal cell; end 0 = the
// minimal cell is its tail, 1 = its head.
struct RotationEntry {
  int cell = 0;
  int end = 0;
  bool operator==(const RotationEntry&) const = default;
};

struct Cell {
  int id = 0;
  int dim = 0;
  OrbitType type;
  std::vector<int> labels;                          // open-factor component indices
  std::vector<std::pair<int, int>> boundary;        // (cell, sign); positional for o <= 2
  bool spine = false;                               // o <= 1
  std::vector<int> factors;                         // component cells of a representative
  int orbit_size = 1;                               // product cells in this orbit
  std::map<int, std::vector<RotationEntry>> rotation;  // o == 0 cells: label -> cyclic list
};

struct OrbitComplex {
  int ambient_n = 0;
  int regular_rank = 0;
  std::vector<ComponentKind> components;
  int group_order = 1;
  std::vector<Cell> cells;

  // Provenance when built by this library (absent for complexes read from
  // files); decompose never looks at it.
  std::optional<DirectProductModel> model;
  std::vector<GroupElement> group;

  const Cell& cell(int id) const { return cells.at(id); }
  std::vector<int> minimal_cells() const;  // o == 0
};

// Component cell numbering: atom vertices 0..V-1 then edges V..V+E-1; focus
// points 0..m-1 then cylinders m..2m-1 (cylinder i runs from point i to
// point i+1); an elliptic atom has the single cell 0.
struct ComponentCell {
  OrbitType type;
  bool open = false;
  int tail = -1, head = -1;
};
std::vector<ComponentCell> component_cells(const DirectProductModel& model, int component);
// Rotation list (entries are component cells) at a minimal component cell.
std::vector<RotationEntry> component_rotation(const DirectProductModel& model, int component, int cell);

// Product of the component complexes. Starred atoms (A*) are realised as the
// quotient by Z2 acting by their involution and a half-turn of a regular
// circle, so a model needs at least as many regular circles as starred atoms.
OrbitComplex product_complex(const DirectProductModel& model);

bool acts_freely(const OrbitComplex& product, const GroupElement& g);
// No nontrivial element acts trivially on all components but one.
bool is_canonical(const DirectProductModel& model, const std::vector<GroupElement>& elements);

OrbitComplex quotient_complex(const OrbitComplex& cx, const FiniteGroupAction& act);

// Structural checks: orbit-type identity, d^2 = 0 on the 2-skeleton, face
// dimensions and the square shape O1 + O2 - O1' - O2'. Returns problems found.
std::vector<std::string> check_complex(const OrbitComplex& cx);

struct LeafInvariants {
  int ellipticity = 0;   // k_e
  int closedness = 0;    // k_f + c
  int hyperbolicity = 0; // k_f + k_h + o
  bool operator==(const LeafInvariants&) const = default;
};

LeafInvariants leaf_invariants(const OrbitComplex& cx);

int torus_action_dimension(const DirectProductModel& model);
int torus_action_dimension(const OrbitComplex& cx);

struct IsotropyEntry {
  int cell = 0;
  OrbitType type;
  int finite_order = 1;      // isotropy of the torus action on this orbit
  int continuous_dim = 0;    // k_e + k_f
  std::string descriptor;
  std::vector<std::string> local_symmetry;  // per singular component
};

std::vector<IsotropyEntry> isotropy_report(const OrbitComplex& cx);

std::map<OrbitType, int> type_census(const OrbitComplex& cx);

}  // namespace ihs::foliation
