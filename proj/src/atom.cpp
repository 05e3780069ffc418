#include "ihs/atom.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "ihs/error.hpp"

namespace ihs::foliation {

const char* to_string(AtomKind k) { return k == AtomKind::Elliptic ? "elliptic" : "hyperbolic"; }

RibbonGraph::RibbonGraph(const Atom& a) {
  const int H = a.half_edge_count();
  vertex_of.assign(H, -1);
  position_of.assign(H, -1);
  mate.assign(H, -1);
  edge_of.assign(H, -1);
  next.assign(H, -1);
  for (int v = 0; v < a.vertex_count(); ++v) {
    const auto& rot = a.rotation[v];
    for (std::size_t p = 0; p < rot.size(); ++p) {
      vertex_of[rot[p]] = v;
      position_of[rot[p]] = static_cast<int>(p);
      next[rot[p]] = rot[(p + 1) % rot.size()];
    }
  }
  for (int e = 0; e < a.edge_count(); ++e) {
    auto [o, i] = a.pairing[e];
    mate[o] = i;
    mate[i] = o;
    edge_of[o] = edge_of[i] = e;
    tail.push_back(vertex_of[o]);
    head.push_back(vertex_of[i]);
  }
}

namespace {

int count_cycles(const std::vector<int>& perm) {
  std::vector<bool> seen(perm.size(), false);
  int cycles = 0;
  for (std::size_t s = 0; s < perm.size(); ++s) {
    if (seen[s]) continue;
    ++cycles;
    for (int h = static_cast<int>(s); !seen[h]; h = perm[h]) seen[h] = true;
  }
  return cycles;
}

void check_structure(const Atom& a) {
  if (a.kind == AtomKind::Elliptic) {
    require(a.rotation.empty() && a.pairing.empty(), "elliptic atom must have no vertices or edges");
    require(a.involution.empty(), "elliptic atom cannot carry an involution");
    return;
  }
  const int V = a.vertex_count();
  require(V >= 1, "hyperbolic atom needs at least one vertex");
  const int H = 4 * V;
  require(a.edge_count() * 2 == H, "hyperbolic atom must have twice as many edges as vertices");
  std::vector<int> seen(H, 0);
  for (int v = 0; v < V; ++v) {
    require(a.rotation[v].size() == 4, "vertex " + std::to_string(v) + " is not 4-valent");
    for (int h : a.rotation[v]) {
      require(h >= 0 && h < H, "half-edge id out of range");
      require(++seen[h] == 1, "half-edge " + std::to_string(h) + " appears twice in the rotation");
    }
  }
  std::vector<int> paired(H, 0);
  std::vector<int> pos(H);
  for (int v = 0; v < V; ++v)
    for (int p = 0; p < 4; ++p) pos[a.rotation[v][p]] = p;
  for (const auto& [o, i] : a.pairing) {
    require(o >= 0 && o < H && i >= 0 && i < H, "paired half-edge out of range");
    require(++paired[o] == 1 && ++paired[i] == 1, "half-edge paired twice");
    require(pos[o] % 2 == 0 && pos[i] % 2 == 1, "edge must join an outgoing (even) to an incoming (odd) half-edge");
  }
}

void check_connected(const Atom& a, const RibbonGraph& g) {
  const int V = a.vertex_count();
  std::vector<bool> seen(V, false);
  std::deque<int> q{0};
  seen[0] = true;
  int count = 1;
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (int h : a.rotation[v]) {
      int w = g.vertex_of[g.mate[h]];
      if (!seen[w]) {
        seen[w] = true;
        ++count;
        q.push_back(w);
      }
    }
  }
  require(count == V, "atom graph is disconnected");
}

}  // namespace

bool is_automorphism(const Atom& a, const std::vector<int>& perm) {
  const int H = a.half_edge_count();
  if (static_cast<int>(perm.size()) != H) return false;
  std::vector<bool> hit(H, false);
  for (int x : perm) {
    if (x < 0 || x >= H || hit[x]) return false;
    hit[x] = true;
  }
  RibbonGraph g(a);
  for (int h = 0; h < H; ++h) {
    if (perm[g.next[h]] != g.next[perm[h]]) return false;
    if (perm[g.mate[h]] != g.mate[perm[h]]) return false;
    if (g.outgoing(h) != g.outgoing(perm[h])) return false;
  }
  return true;
}

AtomReport atom_validate(const Atom& a) {
  check_structure(a);
  AtomReport r;
  if (a.kind == AtomKind::Elliptic) {
    r.chi_leaf = 1;
    r.boundary_circles = 1;
    r.genus = 0;
    return r;
  }
  RibbonGraph g(a);
  check_connected(a, g);
  if (a.starred()) {
    require(is_automorphism(a, a.involution), "involution is not a ribbon automorphism");
    for (int h = 0; h < a.half_edge_count(); ++h) {
      require(a.involution[a.involution[h]] == h, "involution does not square to the identity");
      require(a.involution[h] != h, "involution has a fixed half-edge");
    }
  }
  r.vertices = a.vertex_count();
  r.edges = a.edge_count();
  r.chi_leaf = r.vertices - r.edges;
  // Boundary circles are the cycles of next o mate.
  std::vector<int> phi(a.half_edge_count());
  for (int h = 0; h < a.half_edge_count(); ++h) phi[h] = g.next[g.mate[h]];
  r.boundary_circles = count_cycles(phi);
  r.genus = (2 - r.boundary_circles - r.chi_leaf) / 2;
  return r;
}

Atom atom_A() { return {"A", AtomKind::Elliptic, {}, {}, {}}; }

Atom atom_B() { return {"B", AtomKind::Hyperbolic, {{0, 1, 2, 3}}, {{0, 1}, {2, 3}}, {}}; }

Atom atom_A_star() {
  Atom a = atom_B();
  a.name = "A*";
  a.involution = {2, 3, 0, 1};
  return a;
}

Atom atom_C2() {
  // Two circles on the sphere meeting at u and v; each vertex alternates
  // out/in half-edges.
  return {"C2", AtomKind::Hyperbolic, {{0, 1, 2, 3}, {4, 5, 6, 7}}, {{0, 5}, {2, 7}, {4, 1}, {6, 3}}, {}};
}

std::vector<Atom> builtin_atoms() { return {atom_A(), atom_B(), atom_A_star(), atom_C2()}; }

Atom builtin_atom(const std::string& name) {
  for (auto& a : builtin_atoms())
    if (a.name == name) return a;
  fail(ErrorKind::InvalidInput, "unknown atom '" + name + "'");
}

namespace {

// Extend h0 -> t0 to a map on all half-edges using next and mate; empty on
// conflict.
std::vector<int> extend(const RibbonGraph& g, int H, int h0, int t0) {
  std::vector<int> img(H, -1), pre(H, -1);
  std::deque<int> q{h0};
  img[h0] = t0;
  pre[t0] = h0;
  while (!q.empty()) {
    int h = q.front();
    q.pop_front();
    for (auto step : {&RibbonGraph::next, &RibbonGraph::mate}) {
      int a = (g.*step)[h], b = (g.*step)[img[h]];
      if (img[a] == -1) {
        if (pre[b] != -1) return {};
        img[a] = b;
        pre[b] = a;
        q.push_back(a);
      } else if (img[a] != b) {
        return {};
      }
    }
  }
  for (int h = 0; h < H; ++h)
    if (img[h] == -1 || g.outgoing(h) != g.outgoing(img[h])) return {};
  return img;
}

// Relabelling from a starting half-edge: breadth-first order over next/mate.
std::vector<int> relabel_from(const RibbonGraph& g, int H, int start) {
  std::vector<int> label(H, -1);
  std::deque<int> q{start};
  label[start] = 0;
  int count = 1;
  while (!q.empty()) {
    int h = q.front();
    q.pop_front();
    for (int a : {g.next[h], g.mate[h]})
      if (label[a] == -1) {
        label[a] = count++;
        q.push_back(a);
      }
  }
  return label;
}

std::vector<int> code_for(const Atom& a, const RibbonGraph& g, const std::vector<int>& label) {
  const int H = a.half_edge_count();
  std::vector<int> inv(H);
  for (int h = 0; h < H; ++h) inv[label[h]] = h;
  std::vector<int> code;
  for (int x = 0; x < H; ++x) {
    int h = inv[x];
    code.push_back(label[g.next[h]]);
    code.push_back(label[g.mate[h]]);
    if (a.starred()) code.push_back(label[a.involution[h]]);
  }
  return code;
}

}  // namespace

std::vector<std::vector<int>> atom_automorphisms(const Atom& a) {
  atom_validate(a);
  if (a.kind == AtomKind::Elliptic) return {{}};
  RibbonGraph g(a);
  const int H = a.half_edge_count();
  const int h0 = a.rotation[0][0];
  std::vector<std::vector<int>> out;
  for (int t = 0; t < H; ++t) {
    if (!g.outgoing(t)) continue;
    auto img = extend(g, H, h0, t);
    if (img.empty()) continue;
    if (a.starred()) {
      bool commutes = true;
      for (int h = 0; h < H; ++h) commutes &= img[a.involution[h]] == a.involution[img[h]];
      if (!commutes) continue;
    }
    out.push_back(img);
  }
  std::vector<int> id(H);
  std::iota(id.begin(), id.end(), 0);
  std::stable_partition(out.begin(), out.end(), [&](const auto& p) { return p == id; });
  return out;
}

std::vector<int> automorphism_taking(const Atom& a, int from, int to) {
  RibbonGraph g(a);
  const int H = a.half_edge_count();
  if (from < 0 || from >= H || to < 0 || to >= H) return {};
  auto img = extend(g, H, from, to);
  if (!img.empty() && !is_automorphism(a, img)) return {};
  return img;
}

std::vector<int> canonical_code(const Atom& a) {
  atom_validate(a);
  if (a.kind == AtomKind::Elliptic) return {-1};
  RibbonGraph g(a);
  const int H = a.half_edge_count();
  std::vector<int> best;
  for (int s = 0; s < H; ++s) {
    if (!g.outgoing(s)) continue;
    auto code = code_for(a, g, relabel_from(g, H, s));
    if (best.empty() || code < best) best = code;
  }
  return best;
}

bool isomorphic(const Atom& a, const Atom& b) { return a.kind == b.kind && canonical_code(a) == canonical_code(b); }

Atom canonical_form(const Atom& a) {
  atom_validate(a);
  if (a.kind == AtomKind::Elliptic) return a;
  RibbonGraph g(a);
  const int H = a.half_edge_count();
  std::vector<int> best, best_label;
  for (int s = 0; s < H; ++s) {
    if (!g.outgoing(s)) continue;
    auto label = relabel_from(g, H, s);
    auto code = code_for(a, g, label);
    if (best.empty() || code < best) {
      best = code;
      best_label = label;
    }
  }
  // Vertices in order of their smallest new label, rotation starting at an
  // outgoing half-edge with the smallest label.
  Atom out;
  out.name = a.name;
  out.kind = a.kind;
  std::vector<std::pair<int, int>> order;  // (min outgoing label, vertex)
  for (int v = 0; v < a.vertex_count(); ++v) {
    int m = H;
    for (int h : a.rotation[v])
      if (g.outgoing(h)) m = std::min(m, best_label[h]);
    order.push_back({m, v});
  }
  std::sort(order.begin(), order.end());
  std::vector<int> renum(H);
  int next_id = 0;
  for (auto [m, v] : order) {
    const auto& rot = a.rotation[v];
    int start = 0;
    for (int p = 0; p < 4; ++p)
      if (g.outgoing(rot[p]) && best_label[rot[p]] == m) start = p;
    std::vector<int> r;
    for (int p = 0; p < 4; ++p) {
      int h = rot[(start + p) % 4];
      renum[h] = next_id++;
      r.push_back(renum[h]);
    }
    out.rotation.push_back(r);
  }
  std::vector<std::array<int, 2>> pairs;
  for (const auto& [o, i] : a.pairing) pairs.push_back({renum[o], renum[i]});
  std::sort(pairs.begin(), pairs.end());
  out.pairing = pairs;
  if (a.starred()) {
    out.involution.assign(H, 0);
    for (int h = 0; h < H; ++h) out.involution[renum[h]] = renum[a.involution[h]];
  }
  return out;
}

}  // namespace ihs::foliation
