#pragma once

// JSON schemas for the files read and written by the CLI, each with a parser
// for its own output.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ihs/bifurcation.hpp"
#include "ihs/covering.hpp"
#include "ihs/decompose.hpp"
#include "ihs/poisson.hpp"

namespace ihs::io {

using Json = nlohmann::ordered_json;

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);
Json parse_json(const std::string& text);  // InvalidInput on syntax errors

// System file:
//   {"variables": [...], "structure": "canonical" | [[poly, ...], ...],
//    "casimirs": [...], "leaf_values": [...], "hamiltonians": [...],
//    "points": [[...]], "region": {"lo": [...], "hi": [...]}}
struct SystemFile {
  poisson::IntegrableSystem system;
  std::vector<poisson::Vector> points;
  std::optional<poisson::Box> region;
};
SystemFile system_from_json(const Json& j);
Json system_to_json(const poisson::IntegrableSystem& sys);

Json vector_to_json(const poisson::Vector& v);
poisson::Vector vector_from_json(const Json& j);
Json matrix_to_json(const poisson::Matrix& m);
poisson::Matrix matrix_from_json(const Json& j);

Json report_to_json(const poisson::SingularPointReport& r);
poisson::SingularPointReport report_from_json(const Json& j);

// Atoms: {"name", "kind", "vertices", "rotation", "pairing", "involution"};
// a bare string names a builtin atom.
Json atom_to_json(const foliation::Atom& a);
foliation::Atom atom_from_json(const Json& j);

// Models: {"regular_rank", "atoms": [...], "focus": [m, ...], "action": {...}}.
// Actions: {"generators": [[perm]], "per_component": [[image per generator]],
// "translations": [[fraction]]}; an image is {"half_edges": [...]} or
// {"shift": k}; fractions are integers or "p/q" strings.
struct ModelFile {
  foliation::DirectProductModel model;
  std::optional<foliation::FiniteGroupAction> action;
};
ModelFile model_from_json(const Json& j);
Json model_to_json(const foliation::DirectProductModel& m, bool builtin_names = true);
Json action_to_json(const foliation::FiniteGroupAction& a);
foliation::FiniteGroupAction action_from_json(const Json& j);

Json complex_to_json(const foliation::OrbitComplex& cx);
foliation::OrbitComplex complex_from_json(const Json& j);

// Atlas report: complex plus leaf invariants, torus action dimension,
// isotropy, monodromy and structural check results.
Json atlas_report(const foliation::OrbitComplex& cx);

Json decomposition_to_json(const foliation::Decomposition& d);
foliation::Decomposition decomposition_from_json(const Json& j);

Json covering_to_json(const foliation::Pi1Presentation& p, const foliation::CoveringData& c);

Json atoms_catalog();

}  // namespace ihs::io
