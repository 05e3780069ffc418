#include "ihs/orbit_complex.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "ihs/error.hpp"

namespace ihs::foliation {

std::string OrbitType::str() const {
  std::ostringstream os;
  os << "(" << k_e << "," << k_h << "," << k_f << "," << c << "," << o << ")";
  return os.str();
}

std::vector<int> OrbitComplex::minimal_cells() const {
  std::vector<int> out;
  for (const auto& c : cells)
    if (c.type.o == 0) out.push_back(c.id);
  return out;
}

std::vector<ComponentCell> component_cells(const DirectProductModel& model, int component) {
  std::vector<ComponentCell> cells;
  switch (model.component_kind(component)) {
    case ComponentKind::Elliptic:
      cells.push_back({{1, 0, 0, 0, 0}, false, -1, -1});
      break;
    case ComponentKind::Hyperbolic: {
      const Atom& a = model.atoms[component];
      RibbonGraph g(a);
      for (int v = 0; v < a.vertex_count(); ++v) cells.push_back({{0, 1, 0, 0, 0}, false, -1, -1});
      for (int e = 0; e < a.edge_count(); ++e) cells.push_back({{0, 0, 0, 0, 1}, true, g.tail[e], g.head[e]});
      break;
    }
    case ComponentKind::Focus: {
      const int m = model.focus[component - model.atoms.size()].m;
      for (int i = 0; i < m; ++i) cells.push_back({{0, 0, 1, 0, 0}, false, -1, -1});
      for (int i = 0; i < m; ++i) cells.push_back({{0, 0, 0, 1, 1}, true, i, (i + 1) % m});
      break;
    }
  }
  return cells;
}

std::vector<RotationEntry> component_rotation(const DirectProductModel& model, int component, int cell) {
  switch (model.component_kind(component)) {
    case ComponentKind::Elliptic: return {};
    case ComponentKind::Hyperbolic: {
      const Atom& a = model.atoms[component];
      RibbonGraph g(a);
      std::vector<RotationEntry> r;
      for (int h : a.rotation.at(cell)) r.push_back({a.vertex_count() + g.edge_of[h], g.outgoing(h) ? 0 : 1});
      return r;
    }
    case ComponentKind::Focus: {
      const int m = model.focus[component - model.atoms.size()].m;
      return {{m + cell, 0}, {m + (cell - 1 + m) % m, 1}};
    }
  }
  return {};
}

namespace {

DirectProductModel unstarred(const DirectProductModel& model) {
  DirectProductModel plain = model;
  for (auto& a : plain.atoms) a.involution.clear();
  return plain;
}

OrbitComplex plain_product(const DirectProductModel& model) {
  const int K = model.component_count();
  std::vector<std::vector<ComponentCell>> comp;
  for (int c = 0; c < K; ++c) comp.push_back(component_cells(model, c));

  std::vector<std::vector<int>> tuples{{}};
  for (int c = 0; c < K; ++c) {
    std::vector<std::vector<int>> next;
    for (const auto& t : tuples)
      for (int x = 0; x < static_cast<int>(comp[c].size()); ++x) {
        auto u = t;
        u.push_back(x);
        next.push_back(std::move(u));
      }
    tuples = std::move(next);
  }
  const OrbitType regular{0, 0, 0, model.regular_rank, 0};
  auto type_of = [&](const std::vector<int>& t) {
    OrbitType ty = regular;
    for (int c = 0; c < K; ++c) ty = ty + comp[c][t[c]].type;
    return ty;
  };
  std::stable_sort(tuples.begin(), tuples.end(), [&](const auto& a, const auto& b) {
    int da = type_of(a).dim(), db = type_of(b).dim();
    return da != db ? da < db : a < b;
  });
  std::map<std::vector<int>, int> id_of;
  for (std::size_t i = 0; i < tuples.size(); ++i) id_of[tuples[i]] = static_cast<int>(i);

  OrbitComplex cx;
  cx.ambient_n = model.n();
  cx.regular_rank = model.regular_rank;
  for (int c = 0; c < K; ++c) cx.components.push_back(model.component_kind(c));
  cx.group_order = 1;
  for (std::size_t i = 0; i < tuples.size(); ++i) {
    const auto& t = tuples[i];
    Cell cell;
    cell.id = static_cast<int>(i);
    cell.type = type_of(t);
    cell.dim = cell.type.dim();
    cell.spine = cell.type.o <= 1;
    cell.factors = t;
    for (int c = 0; c < K; ++c)
      if (comp[c][t[c]].open) cell.labels.push_back(c);
    auto replaced = [&](int c, int x) {
      auto u = t;
      u[c] = x;
      return id_of.at(u);
    };
    const auto& L = cell.labels;
    if (L.size() == 2) {
      // O1 = e_i x u_j, O2 = v_i x e_j, O1' = e_i x v_j, O2' = u_i x e_j.
      const int i = L[0], j = L[1];
      const auto& ei = comp[i][t[i]];
      const auto& ej = comp[j][t[j]];
      cell.boundary = {{replaced(j, ej.tail), 1}, {replaced(i, ei.head), 1}, {replaced(j, ej.head), -1},
                       {replaced(i, ei.tail), -1}};
    } else {
      for (std::size_t a = 0; a < L.size(); ++a) {
        const int sign = a % 2 == 0 ? 1 : -1;
        const auto& e = comp[L[a]][t[L[a]]];
        cell.boundary.push_back({replaced(L[a], e.head), sign});
        cell.boundary.push_back({replaced(L[a], e.tail), -sign});
      }
    }
    if (cell.type.o == 0)
      for (int c = 0; c < K; ++c) {
        auto rot = component_rotation(model, c, t[c]);
        if (rot.empty()) continue;
        for (auto& r : rot) r.cell = replaced(c, r.cell);
        cell.rotation[c] = rot;
      }
    cx.cells.push_back(std::move(cell));
  }
  cx.model = model;
  return cx;
}

std::vector<int> act_on_tuple(const DirectProductModel& model, const GroupElement& g, const std::vector<int>& t) {
  std::vector<int> u(t.size());
  for (std::size_t c = 0; c < t.size(); ++c)
    u[c] = act_on_component_cell(model, static_cast<int>(c), g.components[c], t[c]);
  return u;
}

bool has_translation(const GroupElement& g) {
  return std::any_of(g.translation.begin(), g.translation.end(), [](Fraction f) { return f.numerator() != 0; });
}

OrbitComplex quotient_by(const OrbitComplex& product, const std::vector<GroupElement>& elems) {
  const DirectProductModel& model = *product.model;
  for (const auto& g : elems)
    if (!g.is_identity() && !acts_freely(product, g))
      fail(ErrorKind::InvalidInput, "group action is not free: a nontrivial element stabilises a cell");

  std::map<std::vector<int>, int> id_of;
  for (const auto& c : product.cells) id_of[c.factors] = c.id;
  const int N = static_cast<int>(product.cells.size());
  std::vector<int> rep(N, -1), size(N, 0);
  for (int id = 0; id < N; ++id) {
    if (rep[id] != -1) continue;
    std::set<int> orbit;
    for (const auto& g : elems) orbit.insert(id_of.at(act_on_tuple(model, g, product.cells[id].factors)));
    for (int x : orbit) rep[x] = id;  // id is the smallest member: ids are visited in order
    size[id] = static_cast<int>(orbit.size());
  }
  std::map<int, int> new_id;
  for (int id = 0; id < N; ++id)
    if (rep[id] == id) new_id[id] = static_cast<int>(new_id.size());
  auto q = [&](int old) { return new_id.at(rep[old]); };

  OrbitComplex cx;
  cx.ambient_n = product.ambient_n;
  cx.regular_rank = product.regular_rank;
  cx.components = product.components;
  cx.group_order = static_cast<int>(elems.size());
  cx.model = model;
  cx.group = elems;
  for (const auto& [old, nid] : new_id) {
    Cell c = product.cells[old];
    c.id = nid;
    c.orbit_size = size[old];
    for (auto& [cell, sign] : c.boundary) cell = q(cell);
    for (auto& [label, rot] : c.rotation)
      for (auto& r : rot) r.cell = q(r.cell);
    cx.cells.push_back(std::move(c));
  }
  return cx;
}

}  // namespace

bool acts_freely(const OrbitComplex& product, const GroupElement& g) {
  if (g.is_identity()) return false;
  if (has_translation(g)) return true;
  for (const auto& c : product.cells)
    if (act_on_tuple(*product.model, g, c.factors) == c.factors) return false;
  return true;
}

bool is_canonical(const DirectProductModel& model, const std::vector<GroupElement>& elements) {
  for (const auto& g : elements) {
    if (g.is_identity()) continue;
    int moved = has_translation(g) ? 1 : 0;
    for (int c = 0; c < model.component_count(); ++c) moved += g.trivial_on(c) ? 0 : 1;
    if (moved <= 1) return false;
  }
  return true;
}

OrbitComplex product_complex(const DirectProductModel& model) {
  model.validate();
  std::vector<int> starred;
  for (int c = 0; c < static_cast<int>(model.atoms.size()); ++c)
    if (model.atoms[c].starred()) starred.push_back(c);
  if (starred.empty()) return plain_product(model);

  // (Z2)^s: generator j applies the involution of the j-th starred atom and a
  // half-turn of regular circle j.
  const DirectProductModel plain = unstarred(model);
  OrbitComplex prod = plain_product(plain);
  const int s = static_cast<int>(starred.size());
  FiniteGroupAction act;
  const int order = 1 << s;
  for (int j = 0; j < s; ++j) {
    std::vector<int> perm(order);
    for (int x = 0; x < order; ++x) perm[x] = x ^ (1 << j);
    act.generators.push_back(perm);
    std::vector<Fraction> t(model.regular_rank, Fraction(0));
    t[j] = Fraction(1, 2);
    act.translations.push_back(t);
  }
  act.per_component.assign(plain.component_count(), std::vector<ComponentImage>(s));
  for (int j = 0; j < s; ++j) act.per_component[starred[j]][j].half_edges = model.atoms[starred[j]].involution;
  return quotient_by(prod, group_elements(plain, act));
}

OrbitComplex quotient_complex(const OrbitComplex& cx, const FiniteGroupAction& act) {
  require(cx.model.has_value(), "quotient needs a complex built from a model");
  require(cx.group_order == 1, "complex is already a quotient; give the whole group in one action");
  auto elems = group_elements(*cx.model, act);
  return quotient_by(cx, elems);
}

std::vector<std::string> check_complex(const OrbitComplex& cx) {
  std::vector<std::string> problems;
  auto note = [&](const Cell& c, const std::string& what) {
    problems.push_back("cell " + std::to_string(c.id) + ": " + what);
  };
  for (const auto& c : cx.cells) {
    if (c.type.total() != cx.ambient_n) note(c, "orbit-type identity fails");
    if (c.dim != c.type.dim()) note(c, "dimension differs from c + o");
    for (auto [f, sign] : c.boundary) {
      const Cell& face = cx.cells.at(f);
      if (face.dim >= c.dim) {
        note(c, "face " + std::to_string(f) + " is not of smaller dimension");
        continue;
      }
      const int gap = c.dim - face.dim;
      const int pattern = (face.type.k_h - c.type.k_h) + 2 * (face.type.k_f - c.type.k_f);
      if (gap != pattern || face.type.k_e != c.type.k_e) note(c, "face " + std::to_string(f) + " breaks the stratification pattern");
    }
    if (c.type.o == 2) {
      const auto& b = c.boundary;
      if (b.size() != 4 || b[0].second != 1 || b[1].second != 1 || b[2].second != -1 || b[3].second != -1) {
        note(c, "square boundary is not O1 + O2 - O1' - O2'");
      } else {
        const auto& L1 = cx.cells[b[0].first].labels;
        const auto& L2 = cx.cells[b[1].first].labels;
        if (L1 != cx.cells[b[2].first].labels || L2 != cx.cells[b[3].first].labels || L1 == L2)
          note(c, "square sides do not pair up by component");
      }
    }
    if (c.type.o <= 2) {
      std::map<int, int> dd;
      for (auto [f, s1] : c.boundary)
        for (auto [g, s2] : cx.cells[f].boundary) dd[g] += s1 * s2;
      for (auto [g, v] : dd)
        if (v != 0) {
          note(c, "boundary of boundary does not vanish");
          break;
        }
    }
    if (c.type.o == 0)
      for (const auto& [label, rot] : c.rotation)
        for (const auto& r : rot) {
          const Cell& e = cx.cells.at(r.cell);
          if (e.type.o != 1 || e.labels != std::vector<int>{label}) note(c, "rotation entry is not a primitive orbit of its label");
        }
  }
  return problems;
}

LeafInvariants leaf_invariants(const OrbitComplex& cx) {
  require(!cx.cells.empty(), "empty complex");
  auto of = [](const OrbitType& t) { return LeafInvariants{t.k_e, t.k_f + t.c, t.k_f + t.k_h + t.o}; };
  LeafInvariants first = of(cx.cells.front().type);
  for (const auto& c : cx.cells)
    if (!(of(c.type) == first))
      fail(ErrorKind::InvalidInput, "invariant violation: cell " + std::to_string(c.id) + " has type " + c.type.str());
  return first;
}

int torus_action_dimension(const DirectProductModel& model) {
  auto t = model.type();
  return model.n() - t.k_h - t.k_f;
}

int torus_action_dimension(const OrbitComplex& cx) {
  auto inv = leaf_invariants(cx);
  return inv.closedness + inv.ellipticity;
}

std::vector<IsotropyEntry> isotropy_report(const OrbitComplex& cx) {
  std::vector<IsotropyEntry> out;
  for (const auto& c : cx.cells) {
    if (c.type.o != 0) continue;
    IsotropyEntry e;
    e.cell = c.id;
    e.type = c.type;
    e.continuous_dim = c.type.k_e + c.type.k_f;
    if (cx.model && !cx.group.empty()) {
      e.finite_order = 0;
      for (const auto& g : cx.group) {
        bool fixes = true;
        for (std::size_t k = 0; k < c.factors.size(); ++k)
          fixes &= act_on_component_cell(*cx.model, static_cast<int>(k), g.components[k], c.factors[k]) == c.factors[k];
        e.finite_order += fixes;
      }
    }
    for (std::size_t k = 0; k < cx.components.size(); ++k) {
      switch (cx.components[k]) {
        case ComponentKind::Elliptic: e.local_symmetry.push_back("circle"); break;
        case ComponentKind::Hyperbolic: e.local_symmetry.push_back("Z2 × R"); break;
        case ComponentKind::Focus: e.local_symmetry.push_back("S1 × R"); break;
      }
    }
    std::ostringstream d;
    std::string finite = e.finite_order == 1 ? "trivial" : "Z" + std::to_string(e.finite_order);
    if (c.type.k_f > 0) {
      d << "connected S1";
      if (c.type.k_f > 1) d << "^" << c.type.k_f;
      d << " × (" << finite << ")";
    } else if (c.type.k_e > 0) {
      d << "T^" << c.type.k_e << " × (" << finite << ")";
    } else {
      d << finite << " (at most Z2 per hyperbolic component)";
    }
    if (cx.group_order > 1)
      d << "; covered by " << c.orbit_size << " orbit(s) of the product under a group of order " << cx.group_order;
    e.descriptor = d.str();
    out.push_back(std::move(e));
  }
  return out;
}

std::map<OrbitType, int> type_census(const OrbitComplex& cx) {
  std::map<OrbitType, int> m;
  for (const auto& c : cx.cells) ++m[c.type];
  return m;
}

}  // namespace ihs::foliation
