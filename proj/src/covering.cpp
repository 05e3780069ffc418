#include "ihs/covering.hpp"

#include <algorithm>
#include <sstream>

#include "ihs/error.hpp"

namespace ihs::foliation {

namespace {

std::string frac_str(Fraction f) {
  std::ostringstream os;
  os << f.numerator();
  if (f.denominator() != 1) os << "/" << f.denominator();
  return os.str();
}

}  // namespace

Pi1Presentation pi1_presentation(const OrbitComplex& cx) {
  require(cx.model.has_value(), "pi1_presentation needs a complex built from a model");
  const DirectProductModel& model = *cx.model;
  if (model.component_count() != 1 || model.atoms.size() != 1)
    fail(ErrorKind::InvalidInput, "pi1_presentation is defined for codimension one: exactly one atom and no focus blocks");

  Pi1Presentation p;
  p.alpha_count = model.regular_rank;
  const Atom& atom = model.atoms[0];
  if (atom.kind == AtomKind::Elliptic) {
    p.relations.push_back("alpha_i central; the leaf is a torus orbit");
    return p;
  }
  int vertex_orbits = 0, edge_orbits = 0;
  for (const auto& c : cx.cells) {
    if (c.type.o == 1) ++edge_orbits;
    if (c.type.o != 0) continue;
    ++vertex_orbits;
    for (const auto& g : cx.group) {
      if (g.is_identity()) continue;
      if (act_on_component_cell(model, 0, g.components[0], c.factors[0]) != c.factors[0]) continue;
      for (auto t : g.translation)
        require((2 * t).denominator() == 1, "exceptional cycle image is not half-lattice");
      p.beta.push_back({c.id, g.translation});
    }
  }
  p.gamma_count = edge_orbits - vertex_orbits + 1;
  p.relations.push_back("alpha_i central");
  for (std::size_t j = 0; j < p.beta.size(); ++j) {
    std::ostringstream os;
    os << "2 beta_" << j + 1 << " =";
    bool any = false;
    for (std::size_t k = 0; k < p.beta[j].image.size(); ++k)
      if (p.beta[j].image[k].numerator() != 0) {
        os << (any ? " + " : " ") << frac_str(2 * p.beta[j].image[k]) << " alpha_" << k + 1;
        any = true;
      }
    if (!any) os << " 0";
    p.relations.push_back(os.str());
  }
  return p;
}

Pi1Presentation pi1_presentation(const DirectProductModel& model) {
  return pi1_presentation(product_complex(model));
}

CoveringData canonical_covering(const Pi1Presentation& pres) {
  // Reduce the 2*beta images as vectors over GF(2).
  std::vector<std::vector<int>> rows;
  CoveringData out;
  for (const auto& b : pres.beta) {
    require(static_cast<int>(b.image.size()) == pres.alpha_count, "beta image length must equal alpha_count");
    std::vector<int> v;
    for (auto t : b.image) {
      require((2 * t).denominator() == 1, "beta image is not half-lattice");
      v.push_back(static_cast<int>(((2 * t).numerator() % 2 + 2) % 2));
    }
    for (const auto& r : rows) {
      int pivot = 0;
      while (r[pivot] == 0) ++pivot;
      if (v[pivot]) for (std::size_t k = 0; k < v.size(); ++k) v[k] ^= r[k];
    }
    if (std::find(v.begin(), v.end(), 1) == v.end()) continue;
    rows.push_back(v);
    out.generators.push_back(b.image);
  }
  out.degree = 1 << rows.size();
  std::ostringstream k;
  k << "G_can = kernel of pi1 -> T^" << pres.alpha_count << " (alpha, gamma -> 0; beta -> half-lattice image)";
  k << "; Gamma_can = (Z2)^" << rows.size();
  out.kernel = k.str();
  out.note = pres.beta.empty()
                 ? "trivial covering"
                 : "a canonical covering: the degree is well defined, but the covering itself is one of finitely many "
                   "when the choice of base cycles varies";
  return out;
}

MonodromyMatrix monodromy(const FocusBlock& fb) {
  require(fb.m >= 1, "focus block needs m >= 1");
  return monodromy(fb.m);
}

MonodromyMatrix monodromy(int m) {
  require(m >= 0, "number of focus points must be nonnegative");
  return {{{1, m}, {0, 1}}};
}

}  // namespace ihs::foliation
