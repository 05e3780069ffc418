#pragma once

// Atoms (surface singularities of one-degree-of-freedom systems) encoded as
// ribbon graphs. Half-edges are numbered 0..4V-1; each vertex carries a
// cyclic list of its four half-edges. Even positions in a rotation list are
// outgoing half-edges, odd positions incoming ones, and every edge joins an
// outgoing half-edge to an incoming one (the direction of the flow).

#include <array>
#include <string>
#include <vector>

namespace ihs::foliation {

enum class AtomKind { Elliptic, Hyperbolic };

const char* to_string(AtomKind k);

struct Atom {
  std::string name;
  AtomKind kind = AtomKind::Hyperbolic;
  std::vector<std::vector<int>> rotation;  // per vertex: cyclic half-edge list
  std::vector<std::array<int, 2>> pairing; // per edge: (outgoing, incoming) half-edge
  std::vector<int> involution;             // optional free Z2 symmetry (starred atoms)

  int vertex_count() const { return static_cast<int>(rotation.size()); }
  int edge_count() const { return static_cast<int>(pairing.size()); }
  int half_edge_count() const { return 2 * edge_count(); }
  bool starred() const { return !involution.empty(); }
};

// Derived incidence data of a valid hyperbolic atom.
struct RibbonGraph {
  std::vector<int> vertex_of;    // half-edge -> vertex
  std::vector<int> position_of;  // half-edge -> index in its rotation list
  std::vector<int> mate;         // half-edge -> other half of its edge
  std::vector<int> edge_of;      // half-edge -> edge index
  std::vector<int> next;         // half-edge -> next half-edge in the rotation
  std::vector<int> tail, head;   // per edge

  explicit RibbonGraph(const Atom& a);  // assumes atom_validate passed
  bool outgoing(int h) const { return position_of[h] % 2 == 0; }
};

struct AtomReport {
  int vertices = 0;
  int edges = 0;
  int chi_leaf = 0;          // V - E (1 for the elliptic point)
  int boundary_circles = 0;  // boundary components of the ribbon neighbourhood
  int genus = 0;
};

// Throws InvalidInput on structural violations (degree, parity, connectivity,
// malformed involution).
AtomReport atom_validate(const Atom& a);

Atom atom_A();
Atom atom_B();
Atom atom_A_star();
Atom atom_C2();
std::vector<Atom> builtin_atoms();  // A, B, A*, C2
Atom builtin_atom(const std::string& name);

// Orientation- and parity-preserving ribbon automorphisms as half-edge
// permutations; the identity comes first.
std::vector<std::vector<int>> atom_automorphisms(const Atom& a);
bool is_automorphism(const Atom& a, const std::vector<int>& perm);
// The automorphism sending half-edge `from` to `to`, or empty if none.
std::vector<int> automorphism_taking(const Atom& a, int from, int to);

// Lexicographically minimal relabelling code; equal codes <=> isomorphic atoms
// (including the starred involution, if any).
std::vector<int> canonical_code(const Atom& a);
bool isomorphic(const Atom& a, const Atom& b);

// Relabel a hyperbolic atom into its canonical numbering.
Atom canonical_form(const Atom& a);

}  // namespace ihs::foliation
