#include "ihs/decompose.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

#include "ihs/error.hpp"

namespace ihs::foliation {

namespace {

using Entry = std::pair<int, int>;  // (cell, end)

[[noreturn]] void out_of_scope(const std::string& why) { fail(ErrorKind::NotDecomposable, why); }

int mod(int a, int m) { return ((a % m) + m) % m; }

// Spine data read off the complex.
struct Spine {
  const OrbitComplex& cx;
  std::vector<int> labels;                   // non-elliptic components
  std::map<int, int> slot;                   // component -> index in labels
  std::map<int, int> tail, head;             // o = 1 cells
  std::map<int, int> label_of;               // o = 1 cells
  std::map<std::pair<int, int>, std::vector<Entry>> rot;  // (vertex, label)
  std::map<std::pair<int, int>, std::map<Entry, int>> pos;
  std::map<std::pair<int, int>, std::vector<int>> tau;    // (edge, label): positions tail -> head

  explicit Spine(const OrbitComplex& c) : cx(c) {
    for (int k = 0; k < static_cast<int>(cx.components.size()); ++k)
      if (cx.components[k] != ComponentKind::Elliptic) {
        slot[k] = static_cast<int>(labels.size());
        labels.push_back(k);
      }
    for (const auto& cell : cx.cells) {
      if (static_cast<int>(cell.labels.size()) != cell.type.o) out_of_scope("cell " + std::to_string(cell.id) + " lacks component labels");
      if (cell.type.o == 1) {
        if (cell.boundary.size() != 2 || cell.boundary[0].second != 1 || cell.boundary[1].second != -1)
          out_of_scope("edge " + std::to_string(cell.id) + " has no (head, tail) boundary");
        head[cell.id] = cell.boundary[0].first;
        tail[cell.id] = cell.boundary[1].first;
        label_of[cell.id] = cell.labels[0];
      }
      if (cell.type.o == 0) {
        for (int l : labels) {
          auto it = cell.rotation.find(l);
          if (it == cell.rotation.end()) out_of_scope("vertex " + std::to_string(cell.id) + " lacks a rotation list");
          auto& r = rot[{cell.id, l}];
          auto& p = pos[{cell.id, l}];
          for (const auto& e : it->second) {
            r.push_back({e.cell, e.end});
            if (!p.emplace(Entry{e.cell, e.end}, static_cast<int>(r.size()) - 1).second)
              out_of_scope("repeated rotation entry at vertex " + std::to_string(cell.id));
          }
          const std::size_t want = cx.components[l] == ComponentKind::Focus ? 2 : 4;
          if (r.size() != want) out_of_scope("rotation list of unexpected length at vertex " + std::to_string(cell.id));
        }
      }
    }
    for (const auto& cell : cx.cells) {
      if (cell.type.o != 2) continue;
      const auto& b = cell.boundary;
      if (b.size() != 4) out_of_scope("square " + std::to_string(cell.id) + " is not O1 + O2 - O1' - O2'");
      const int O1 = b[0].first, O2 = b[1].first, O1p = b[2].first, O2p = b[3].first;
      const int i = cell.labels[0], j = cell.labels[1];
      const int v00 = tail.at(O1), v10 = head.at(O1), v01 = tail.at(O1p), v11 = head.at(O1p);
      set_tau(O2p, i, position(v00, i, {O1, 0}), position(v01, i, {O1p, 0}));
      set_tau(O2, i, position(v10, i, {O1, 1}), position(v11, i, {O1p, 1}));
      set_tau(O1, j, position(v00, j, {O2p, 0}), position(v10, j, {O2, 0}));
      set_tau(O1p, j, position(v01, j, {O2p, 1}), position(v11, j, {O2, 1}));
    }
    for (const auto& [e, l] : label_of)
      for (int other : labels) {
        if (other == l) continue;
        auto it = tau.find({e, other});
        const std::size_t len = rot.at({tail.at(e), other}).size();
        if (it == tau.end() || it->second.size() != len ||
            std::count(it->second.begin(), it->second.end(), -1) > 0)
          out_of_scope("edge " + std::to_string(e) + " is not bounded by a full set of squares");
      }
  }

  int position(int v, int label, Entry e) const {
    auto it = pos.find({v, label});
    if (it == pos.end()) out_of_scope("square corner is not a vertex");
    auto jt = it->second.find(e);
    if (jt == it->second.end()) out_of_scope("square side missing from the rotation at vertex " + std::to_string(v));
    return jt->second;
  }

  void set_tau(int edge, int label, int from, int to) {
    auto& t = tau[{edge, label}];
    if (t.empty()) t.assign(rot.at({tail.at(edge), label}).size(), -1);
    if (t[from] != -1 && t[from] != to) out_of_scope("inconsistent squares along edge " + std::to_string(edge));
    t[from] = to;
  }

  // Positions of `label` carried from one end of `edge` to the other.
  std::vector<int> carry(int edge, int label, bool forward) const {
    const auto& t = tau.at({edge, label});
    if (forward) return t;
    std::vector<int> inv(t.size());
    for (std::size_t p = 0; p < t.size(); ++p) inv[t[p]] = static_cast<int>(p);
    return inv;
  }

  // Crossing the edge behind entry (edge, end) at some vertex: the far vertex
  // and the far entry.
  std::pair<int, Entry> cross(Entry e) const {
    return e.second == 0 ? std::pair{head.at(e.first), Entry{e.first, 1}} : std::pair{tail.at(e.first), Entry{e.first, 0}};
  }
};

// The leaf of one component through the base vertex, reconstructed as a
// covering of its image: states are (vertex, frames of the other atoms).
struct ComponentLeaf {
  std::vector<int> vertex;                                  // state -> quotient vertex
  std::vector<std::vector<std::pair<int, int>>> neighbour;  // [state][position] -> (state, position)
};

ComponentLeaf trace_leaf(const Spine& sp, int label, int v0) {
  using Frames = std::vector<std::vector<int>>;
  using Key = std::pair<int, Frames>;
  std::map<Key, int> id;
  std::vector<Key> keys;
  auto intern = [&](const Key& k) {
    auto [it, fresh] = id.emplace(k, static_cast<int>(keys.size()));
    if (fresh) keys.push_back(k);
    return it->second;
  };
  Frames f0;
  for (int l : sp.labels) {
    std::vector<int> idf(l == label ? 0 : sp.rot.at({v0, l}).size());
    std::iota(idf.begin(), idf.end(), 0);
    f0.push_back(idf);
  }
  intern({v0, f0});
  ComponentLeaf leaf;
  for (std::size_t s = 0; s < keys.size(); ++s) {
    const auto [v, frames] = keys[s];
    const auto& r = sp.rot.at({v, label});
    std::vector<std::pair<int, int>> nb;
    for (const auto& entry : r) {
      auto [w, far] = sp.cross(entry);
      Frames g = frames;
      for (std::size_t k = 0; k < sp.labels.size(); ++k) {
        if (sp.labels[k] == label) continue;
        auto t = sp.carry(entry.first, sp.labels[k], entry.second == 0);
        for (auto& x : g[k]) x = t[x];
      }
      nb.push_back({intern({w, g}), sp.position(w, label, far)});
    }
    leaf.vertex.push_back(v);
    leaf.neighbour.push_back(nb);
  }
  return leaf;
}

Atom atom_from_leaf(const Spine& sp, int label, const ComponentLeaf& leaf) {
  Atom a;
  a.kind = AtomKind::Hyperbolic;
  const int S = static_cast<int>(leaf.vertex.size());
  for (int s = 0; s < S; ++s) {
    a.rotation.push_back({4 * s, 4 * s + 1, 4 * s + 2, 4 * s + 3});
    const auto& r = sp.rot.at({leaf.vertex[s], label});
    for (int p = 0; p < 4; ++p)
      if (r[p].second == 0) a.pairing.push_back({4 * s + p, 4 * leaf.neighbour[s][p].first + leaf.neighbour[s][p].second});
  }
  try {
    atom_validate(a);
  } catch (const Error& e) {
    out_of_scope(std::string("reconstructed atom is invalid (") + e.what() + ")");
  }
  for (const auto& b : builtin_atoms())
    if (b.kind == AtomKind::Hyperbolic && !b.starred() && isomorphic(a, b)) a.name = b.name;
  if (a.name.empty()) a.name = "atom" + std::to_string(S);
  return a;
}

// Cycle order of a focus leaf: order[k] = state reached after k forward steps.
std::vector<int> focus_order(const Spine& sp, int label, const ComponentLeaf& leaf) {
  std::vector<int> order{0}, seen(leaf.vertex.size(), 0);
  seen[0] = 1;
  for (int s = 0;;) {
    const auto& r = sp.rot.at({leaf.vertex[s], label});
    const int out = r[0].second == 0 ? 0 : 1;
    s = leaf.neighbour[s][out].first;
    if (s == 0) break;
    if (seen[s]++) out_of_scope("focus leaf is not a single cycle");
    order.push_back(s);
  }
  if (order.size() != leaf.vertex.size()) out_of_scope("focus leaf is not a single cycle");
  return order;
}

}  // namespace

std::vector<FiniteGroupAction> admissible_actions(const DirectProductModel& model, int max_order) {
  const int E = model.component_count();
  // All component-wise elements.
  std::vector<std::vector<ComponentImage>> all{{}};
  for (int c = 0; c < E; ++c) {
    std::vector<ComponentImage> choices;
    switch (model.component_kind(c)) {
      case ComponentKind::Elliptic: choices.push_back({}); break;
      case ComponentKind::Hyperbolic:
        for (const auto& p : atom_automorphisms(model.atoms[c])) choices.push_back({p, 0});
        break;
      case ComponentKind::Focus:
        for (int s = 0; s < model.focus[c - model.atoms.size()].m; ++s) choices.push_back({{}, s});
        break;
    }
    std::vector<std::vector<ComponentImage>> next;
    for (const auto& t : all)
      for (const auto& ch : choices) {
        auto u = t;
        u.push_back(ch);
        next.push_back(std::move(u));
      }
    all = std::move(next);
  }
  auto element = [&](const std::vector<ComponentImage>& comps) {
    GroupElement g;
    g.components = comps;
    g.translation.assign(model.regular_rank, Fraction(0));
    return g;
  };
  auto normal = [&](std::vector<ComponentImage> comps) {
    for (int c = 0; c < E; ++c)
      if (model.component_kind(c) == ComponentKind::Hyperbolic && comps[c].half_edges.empty()) {
        comps[c].half_edges.resize(model.atoms[c].half_edge_count());
        std::iota(comps[c].half_edges.begin(), comps[c].half_edges.end(), 0);
      }
    return comps;
  };
  for (auto& t : all) t = normal(t);
  const OrbitComplex prod = product_complex(model);
  std::set<std::vector<std::vector<int>>> seen_groups;
  std::vector<FiniteGroupAction> out;
  auto key_of = [](const std::vector<ComponentImage>& comps) {
    std::vector<int> k;
    for (const auto& c : comps) {
      k.insert(k.end(), c.half_edges.begin(), c.half_edges.end());
      k.push_back(-1 - c.shift);
    }
    return k;
  };
  const int N = static_cast<int>(all.size());
  for (int a = 0; a < N; ++a)
    for (int b = a; b < N; ++b) {
      if (a == 0 && b != 0) continue;  // identity adds nothing as a generator
      std::vector<std::vector<ComponentImage>> gens{all[a]};
      if (b != a) gens.push_back(all[b]);
      // Closure.
      std::map<std::vector<int>, std::vector<ComponentImage>> elems;
      std::deque<std::vector<ComponentImage>> q{all[0]};
      elems[key_of(all[0])] = all[0];
      bool too_big = false;
      while (!q.empty() && !too_big) {
        auto x = q.front();
        q.pop_front();
        for (const auto& g : gens) {
          auto y = normal(compose(model, element(g), element(x)).components);
          if (elems.emplace(key_of(y), y).second) {
            q.push_back(y);
            if (static_cast<int>(elems.size()) > max_order) too_big = true;
          }
        }
      }
      if (too_big) continue;
      std::vector<std::vector<int>> group_key;
      std::vector<GroupElement> list;
      for (const auto& [k, comps] : elems) {
        group_key.push_back(k);
        list.push_back(element(comps));
      }
      if (!seen_groups.insert(group_key).second) continue;
      bool ok = is_canonical(model, list);
      for (const auto& g : list)
        if (ok && !(key_of(g.components) == key_of(all[0])) && !acts_freely(prod, g)) ok = false;
      if (!ok) continue;
      // Regular representation on the sorted element list.
      const int order = static_cast<int>(list.size());
      FiniteGroupAction act;
      act.per_component.assign(E, {});
      for (const auto& g : gens) {
        std::vector<int> perm(order);
        for (int k = 0; k < order; ++k) {
          auto y = normal(compose(model, element(g), list[k]).components);
          perm[k] = static_cast<int>(std::distance(group_key.begin(), std::find(group_key.begin(), group_key.end(), key_of(y))));
        }
        act.generators.push_back(perm);
        for (int c = 0; c < E; ++c) act.per_component[c].push_back(g[c]);
      }
      out.push_back(std::move(act));
    }
  return out;
}

bool models_isomorphic(const DirectProductModel& a, const DirectProductModel& b) {
  if (a.regular_rank != b.regular_rank || a.atoms.size() != b.atoms.size() || a.focus.size() != b.focus.size()) return false;
  auto atom_keys = [](const DirectProductModel& m) {
    std::multiset<std::pair<int, std::vector<int>>> s;
    for (const auto& x : m.atoms)
      s.insert({static_cast<int>(x.kind), x.kind == AtomKind::Elliptic ? std::vector<int>{} : canonical_code(x)});
    return s;
  };
  auto focus_keys = [](const DirectProductModel& m) {
    std::multiset<int> s;
    for (const auto& f : m.focus) s.insert(f.m);
    return s;
  };
  return atom_keys(a) == atom_keys(b) && focus_keys(a) == focus_keys(b);
}

Decomposition decompose(const OrbitComplex& cx) {
  if (cx.cells.empty()) out_of_scope("empty complex");
  if (cx.regular_rank != 0) out_of_scope("leaf has no fixed point (k < n); use canonical_covering instead");
  int v0 = -1;
  for (const auto& c : cx.cells)
    if (c.type.o == 0 && c.type.c == 0) {
      v0 = c.id;
      break;
    }
  if (v0 < 0) out_of_scope("leaf has no fixed point (k < n); use canonical_covering instead");
  for (std::size_t k = 1; k < cx.components.size(); ++k)
    if (cx.components[k - 1] == ComponentKind::Focus && cx.components[k] != ComponentKind::Focus)
      out_of_scope("components must list atoms before focus blocks");

  const Spine sp(cx);
  const int K = static_cast<int>(sp.labels.size());
  long long spine_cells = 0;
  for (const auto& c : cx.cells) spine_cells += c.spine ? 1 : 0;
  const long long bound = (1LL << std::max(0, cx.ambient_n - 1)) * spine_cells * spine_cells;

  // Components, one leaf at a time.
  Decomposition out;
  std::vector<ComponentLeaf> leaves(K);
  std::vector<std::vector<int>> cycle_index(K);  // focus: state -> point index
  std::vector<int> len(K);
  for (int k = 0; k < static_cast<int>(cx.components.size()); ++k)
    if (cx.components[k] == ComponentKind::Elliptic) out.model.atoms.push_back(atom_A());
  for (int k = 0; k < K; ++k) {
    const int l = sp.labels[k];
    leaves[k] = trace_leaf(sp, l, v0);
    if (static_cast<long long>(leaves[k].vertex.size()) > bound) fail(ErrorKind::ScopeExceeded, "component leaf exceeds the enumeration bound");
    if (cx.components[l] == ComponentKind::Hyperbolic) {
      len[k] = 4;
      out.model.atoms.push_back(atom_from_leaf(sp, l, leaves[k]));
    } else {
      len[k] = 2;
      auto order = focus_order(sp, l, leaves[k]);
      cycle_index[k].assign(order.size(), 0);
      for (std::size_t x = 0; x < order.size(); ++x) cycle_index[k][order[x]] = static_cast<int>(x);
      out.model.focus.push_back({static_cast<int>(order.size())});
    }
  }
  // Component order in the model: elliptic atoms were pushed first, which
  // matches the input only if they come first there too.
  for (int k = 0; k < static_cast<int>(cx.components.size()); ++k)
    if (out.model.component_kind(k) != cx.components[k]) out_of_scope("elliptic components must precede the others");

  // Lift the quotient to the product of the leaves.
  struct State {
    int v;
    std::vector<int> s, off;
    auto operator<=>(const State&) const = default;
  };
  std::map<State, int> seen;
  std::map<std::vector<int>, int> by_tuple;
  std::vector<State> states;
  auto visit = [&](const State& st) {
    if (seen.count(st)) return;
    if (!by_tuple.emplace(st.s, static_cast<int>(states.size())).second)
      out_of_scope("holonomy of the spine is inconsistent with a product covering");
    seen.emplace(st, static_cast<int>(states.size()));
    states.push_back(st);
    if (static_cast<long long>(states.size()) > bound)
      fail(ErrorKind::ScopeExceeded, "covering search passed the bound 2^(n-1) * (spine cells)^2 = " + std::to_string(bound));
  };
  visit({v0, std::vector<int>(K, 0), std::vector<int>(K, 0)});
  for (std::size_t x = 0; x < states.size(); ++x) {
    const State st = states[x];
    for (int i = 0; i < K; ++i) {
      const auto& r = sp.rot.at({st.v, sp.labels[i]});
      for (int p = 0; p < len[i]; ++p) {
        auto [w, far] = sp.cross(r[p]);
        State nx{w, st.s, st.off};
        auto [s2, q2] = leaves[i].neighbour[st.s[i]][mod(p + st.off[i], len[i])];
        nx.s[i] = s2;
        nx.off[i] = mod(q2 - sp.position(w, sp.labels[i], far), len[i]);
        for (int j = 0; j < K; ++j) {
          if (j == i) continue;
          auto t = sp.carry(r[p].first, sp.labels[j], r[p].second == 0);
          nx.off[j] = mod(st.off[j] - t[0], len[j]);
          for (int y = 0; y < len[j]; ++y)
            if (mod(y + st.off[j] - t[y], len[j]) != nx.off[j]) out_of_scope("transport along edges is not a rotation");
        }
        visit(nx);
      }
    }
  }
  long long expected = 1;
  for (const auto& lf : leaves) expected *= static_cast<long long>(lf.vertex.size());
  if (static_cast<long long>(states.size()) != expected) out_of_scope("lifted vertices do not form the product of the leaves");

  // Deck group: one element per lift of the base vertex.
  const int E = static_cast<int>(cx.components.size());
  const int elliptic = E - K;
  for (const auto& st : states) {
    if (st.v != v0) continue;
    GroupElement g;
    g.components.resize(E);
    for (int i = 0; i < K; ++i) {
      auto& img = g.components[elliptic + i];
      if (len[i] == 4) {
        const Atom& a = out.model.atoms[elliptic + i];
        img.half_edges = automorphism_taking(a, 0, 4 * st.s[i] + st.off[i]);
        if (img.half_edges.empty()) out_of_scope("deck transformation is not an atom automorphism");
      } else {
        img.shift = cycle_index[i][st.s[i]];
      }
    }
    out.elements.push_back(g);
  }
  const int order = static_cast<int>(out.elements.size());
  auto index_of = [&](const GroupElement& g) {
    for (int k = 0; k < order; ++k)
      if (out.elements[k].components == g.components) return k;
    out_of_scope("deck transformations are not closed under composition");
  };
  std::vector<std::vector<int>> table(order, std::vector<int>(order));
  for (int a = 0; a < order; ++a) {
    out.elements[a].perm.resize(order);
    for (int b = 0; b < order; ++b) table[a][b] = index_of(compose(out.model, out.elements[a], out.elements[b]));
  }
  // Regular representation, then a greedy generating set.
  std::set<int> generated{0};
  for (int a = 0; a < order; ++a) {
    out.elements[a].perm = table[a];
    if (generated.count(a)) continue;
    out.action.generators.push_back(table[a]);
    std::deque<int> q(generated.begin(), generated.end());
    std::vector<int> gens;
    for (const auto& p : out.action.generators)
      for (int k = 0; k < order; ++k)
        if (table[k] == p) gens.push_back(k);
    while (!q.empty()) {
      int x = q.front();
      q.pop_front();
      for (int gk : gens) {
        int y = table[gk][x];
        if (generated.insert(y).second) q.push_back(y);
      }
    }
  }
  out.action.per_component.assign(E, {});
  for (int c = 0; c < E; ++c)
    for (const auto& p : out.action.generators)
      for (int k = 0; k < order; ++k)
        if (table[k] == p) out.action.per_component[c].push_back(out.elements[k].components[c]);
  out.group_order = order;

  // Rebuild and compare.
  auto rebuilt = quotient_complex(product_complex(out.model), out.action);
  if (rebuilt.cells.size() != cx.cells.size() || type_census(rebuilt) != type_census(cx))
    out_of_scope("rebuilt quotient does not reproduce the input complex");
  out.note = "canonical model; unique because the leaf contains a fixed point";
  return out;
}

}  // namespace ihs::foliation
