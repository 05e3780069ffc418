#include "ihs/group_action.hpp"

#include <deque>
#include <map>
#include <numeric>

#include "ihs/error.hpp"

namespace ihs::foliation {

const char* to_string(ComponentKind k) {
  switch (k) {
    case ComponentKind::Elliptic: return "elliptic";
    case ComponentKind::Hyperbolic: return "hyperbolic";
    case ComponentKind::Focus: return "focus";
  }
  return "?";
}

ComponentKind DirectProductModel::component_kind(int c) const {
  require(c >= 0 && c < component_count(), "component index out of range");
  if (c < static_cast<int>(atoms.size()))
    return atoms[c].kind == AtomKind::Elliptic ? ComponentKind::Elliptic : ComponentKind::Hyperbolic;
  return ComponentKind::Focus;
}

symplectic::WilliamsonType DirectProductModel::type() const {
  symplectic::WilliamsonType t;
  for (const auto& a : atoms) (a.kind == AtomKind::Elliptic ? t.k_e : t.k_h) += 1;
  t.k_f = static_cast<int>(focus.size());
  return t;
}

int DirectProductModel::n() const { return regular_rank + type().corank(); }

void DirectProductModel::validate() const {
  require(regular_rank >= 0, "regular rank must be nonnegative");
  require(n() >= 1, "model has no degrees of freedom");
  for (const auto& a : atoms) atom_validate(a);
  for (const auto& f : focus) require(f.m >= 1, "focus block needs m >= 1");
  int starred = 0;
  for (const auto& a : atoms) starred += a.starred();
  require(starred <= regular_rank,
          "each starred atom needs its own regular circle (regular_rank >= number of starred atoms)");
}

bool GroupElement::is_identity() const {
  for (std::size_t i = 0; i < perm.size(); ++i)
    if (perm[i] != static_cast<int>(i)) return false;
  for (std::size_t c = 0; c < components.size(); ++c)
    if (!trivial_on(static_cast<int>(c))) return false;
  for (auto t : translation)
    if (t.numerator() != 0) return false;
  return true;
}

bool GroupElement::trivial_on(int component) const {
  const auto& c = components.at(component);
  if (c.shift != 0) return false;
  for (std::size_t i = 0; i < c.half_edges.size(); ++i)
    if (c.half_edges[i] != static_cast<int>(i)) return false;
  return true;
}

FiniteGroupAction FiniteGroupAction::trivial(const DirectProductModel& model) {
  FiniteGroupAction a;
  a.generators = {{0}};
  a.per_component.assign(model.component_count(), {ComponentImage{}});
  a.translations = {std::vector<Fraction>(model.regular_rank, Fraction(0))};
  return a;
}

namespace {

Fraction mod1(Fraction f) {
  long long fl = f.numerator() / f.denominator();
  if (f.numerator() < 0 && f.numerator() % f.denominator() != 0) --fl;
  return f - Fraction(fl);
}

ComponentImage normalize(const DirectProductModel& model, int c, ComponentImage img) {
  switch (model.component_kind(c)) {
    case ComponentKind::Elliptic:
      require(img.half_edges.empty() && img.shift == 0, "group action must be trivial on elliptic components");
      return {};
    case ComponentKind::Hyperbolic: {
      const Atom& a = model.atoms[c];
      require(img.shift == 0, "shift given for an atom component");
      if (img.half_edges.empty()) {
        img.half_edges.resize(a.half_edge_count());
        std::iota(img.half_edges.begin(), img.half_edges.end(), 0);
      }
      require(is_automorphism(a, img.half_edges),
              "image on component " + std::to_string(c) + " is not an automorphism of atom " + a.name);
      if (a.starred())
        for (int h = 0; h < a.half_edge_count(); ++h)
          require(img.half_edges[a.involution[h]] == a.involution[img.half_edges[h]],
                  "image on a starred atom must commute with its involution");
      return img;
    }
    case ComponentKind::Focus: {
      require(img.half_edges.empty(), "half-edge permutation given for a focus component");
      const int m = model.focus[c - model.atoms.size()].m;
      img.shift = ((img.shift % m) + m) % m;
      return img;
    }
  }
  return img;
}

}  // namespace

GroupElement identity_element(const DirectProductModel& model, int degree) {
  GroupElement e;
  e.perm.resize(degree);
  std::iota(e.perm.begin(), e.perm.end(), 0);
  for (int c = 0; c < model.component_count(); ++c) e.components.push_back(normalize(model, c, {}));
  e.translation.assign(model.regular_rank, Fraction(0));
  return e;
}

GroupElement compose(const DirectProductModel& model, const GroupElement& a, const GroupElement& b) {
  GroupElement r;
  r.perm.resize(b.perm.size());
  for (std::size_t i = 0; i < b.perm.size(); ++i) r.perm[i] = a.perm[b.perm[i]];
  for (int c = 0; c < model.component_count(); ++c) {
    ComponentImage img;
    const auto& ia = a.components[c];
    const auto& ib = b.components[c];
    if (!ib.half_edges.empty()) {
      img.half_edges.resize(ib.half_edges.size());
      for (std::size_t h = 0; h < ib.half_edges.size(); ++h) img.half_edges[h] = ia.half_edges[ib.half_edges[h]];
    }
    img.shift = ia.shift + ib.shift;
    r.components.push_back(normalize(model, c, img));
  }
  for (std::size_t j = 0; j < a.translation.size(); ++j) r.translation.push_back(mod1(a.translation[j] + b.translation[j]));
  return r;
}

std::vector<GroupElement> group_elements(const DirectProductModel& model, const FiniteGroupAction& act) {
  model.validate();
  const int g = act.generator_count();
  require(static_cast<int>(act.per_component.size()) == model.component_count() || g == 0,
          "action must give images for every model component");
  if (g == 0) return {identity_element(model, 1)};
  const int degree = static_cast<int>(act.generators[0].size());
  require(degree >= 1, "generator permutations must be nonempty");
  require(static_cast<int>(act.per_component.size()) == model.component_count(),
          "action must give images for every model component");
  require(act.translations.empty() || static_cast<int>(act.translations.size()) == g,
          "one translation per generator is required");

  std::vector<GroupElement> gens;
  for (int k = 0; k < g; ++k) {
    GroupElement e;
    e.perm = act.generators[k];
    require(static_cast<int>(e.perm.size()) == degree, "generators permute sets of different sizes");
    std::vector<bool> hit(degree, false);
    for (int x : e.perm) {
      require(x >= 0 && x < degree && !hit[x], "generator is not a permutation");
      hit[x] = true;
    }
    for (int c = 0; c < model.component_count(); ++c) {
      require(static_cast<int>(act.per_component[c].size()) == g,
              "component " + std::to_string(c) + " needs one image per generator");
      e.components.push_back(normalize(model, c, act.per_component[c][k]));
    }
    if (act.translations.empty()) {
      e.translation.assign(model.regular_rank, Fraction(0));
    } else {
      require(static_cast<int>(act.translations[k].size()) == model.regular_rank,
              "translation length must equal the regular rank");
      for (auto t : act.translations[k]) e.translation.push_back(mod1(t));
    }
    gens.push_back(std::move(e));
  }

  std::vector<GroupElement> elems{identity_element(model, degree)};
  std::map<std::vector<int>, std::size_t> index{{elems[0].perm, 0}};
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    std::size_t cur = queue.front();
    queue.pop_front();
    for (const auto& gen : gens) {
      GroupElement next = compose(model, gen, elems[cur]);
      auto it = index.find(next.perm);
      if (it == index.end()) {
        require(elems.size() < 100000, "group too large");
        index[next.perm] = elems.size();
        queue.push_back(elems.size());
        elems.push_back(std::move(next));
      } else {
        const auto& old = elems[it->second];
        require(old.components == next.components && old.translation == next.translation,
                "component images do not define a homomorphism of the abstract group");
      }
    }
  }
  return elems;
}

int act_on_component_cell(const DirectProductModel& model, int component, const ComponentImage& img, int cell) {
  switch (model.component_kind(component)) {
    case ComponentKind::Elliptic: return cell;
    case ComponentKind::Hyperbolic: {
      const Atom& a = model.atoms[component];
      if (img.half_edges.empty()) return cell;
      RibbonGraph g(a);
      const int V = a.vertex_count();
      if (cell < V) return g.vertex_of[img.half_edges[a.rotation[cell][0]]];
      return V + g.edge_of[img.half_edges[a.pairing[cell - V][0]]];
    }
    case ComponentKind::Focus: {
      const int m = model.focus[component - model.atoms.size()].m;
      if (cell < m) return (cell + img.shift) % m;
      return m + (cell - m + img.shift) % m;
    }
  }
  return cell;
}

}  // namespace ihs::foliation
