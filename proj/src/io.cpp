#include "ihs/io.hpp"

#include <fstream>
#include <sstream>

#include "ihs/error.hpp"

namespace ihs::io {

using foliation::Atom;
using foliation::AtomKind;
using foliation::ComponentImage;
using foliation::ComponentKind;
using foliation::DirectProductModel;
using foliation::FiniteGroupAction;
using foliation::Fraction;
using foliation::OrbitComplex;
using poisson::Matrix;
using poisson::Vector;

namespace {

template <class F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Json::exception& e) {
    fail(ErrorKind::InvalidInput, std::string(what) + ": " + e.what());
  }
}

const Json& need(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(ErrorKind::InvalidInput, std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string poly_text(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  if (j.is_number()) {
    std::ostringstream os;
    os.precision(17);
    os << j.get<double>();
    return os.str();
  }
  fail(ErrorKind::InvalidInput, "polynomial must be a string or a number");
}

ComponentKind folia_kind(const std::string& s) {
  if (s == "elliptic") return ComponentKind::Elliptic;
  if (s == "hyperbolic") return ComponentKind::Hyperbolic;
  if (s == "focus") return ComponentKind::Focus;
  fail(ErrorKind::InvalidInput, "unknown component kind '" + s + "'");
}

symplectic::ComponentKind symp_kind(const std::string& s) {
  if (s == "elliptic") return symplectic::ComponentKind::Elliptic;
  if (s == "hyperbolic") return symplectic::ComponentKind::Hyperbolic;
  if (s == "focus") return symplectic::ComponentKind::Focus;
  fail(ErrorKind::InvalidInput, "unknown component kind '" + s + "'");
}

const char* class_name(poisson::PointClass c) {
  switch (c) {
    case poisson::PointClass::Regular: return "regular";
    case poisson::PointClass::Degenerate: return "degenerate";
    case poisson::PointClass::Nondegenerate: return "nondegenerate";
  }
  return "";
}

poisson::PointClass class_from(const std::string& s) {
  if (s == "regular") return poisson::PointClass::Regular;
  if (s == "degenerate") return poisson::PointClass::Degenerate;
  if (s == "nondegenerate") return poisson::PointClass::Nondegenerate;
  fail(ErrorKind::InvalidInput, "unknown classification '" + s + "'");
}

Json fraction_to_json(Fraction f) {
  if (f.denominator() == 1) return f.numerator();
  return std::to_string(f.numerator()) + "/" + std::to_string(f.denominator());
}

Fraction fraction_from_json(const Json& j) {
  if (j.is_number_integer()) return Fraction(j.get<long long>());
  if (!j.is_string()) fail(ErrorKind::InvalidInput, "fraction must be an integer or a \"p/q\" string");
  const std::string s = j.get<std::string>();
  try {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Fraction(std::stoll(s));
    long long q = std::stoll(s.substr(slash + 1));
    require(q != 0, "zero denominator in fraction");
    return Fraction(std::stoll(s.substr(0, slash)), q);
  } catch (const std::logic_error&) {
    fail(ErrorKind::InvalidInput, "malformed fraction '" + s + "'");
  }
}

bool same_as_builtin(const Atom& a) {
  for (const auto& b : foliation::builtin_atoms())
    if (b.name == a.name) return b.rotation == a.rotation && b.pairing == a.pairing && b.involution == a.involution && b.kind == a.kind;
  return false;
}

Json type_json(const foliation::OrbitType& t) { return Json::array({t.k_e, t.k_h, t.k_f, t.c, t.o}); }

foliation::OrbitType type_from(const Json& j) {
  auto v = j.get<std::vector<int>>();
  require(v.size() == 5, "orbit type needs five entries");
  for (int x : v) require(x >= 0, "orbit type entries must be nonnegative");
  return {v[0], v[1], v[2], v[3], v[4]};
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::InvalidInput, "cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::InvalidInput, "cannot write '" + path + "'");
  out << text;
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail(ErrorKind::InvalidInput, std::string("malformed JSON: ") + e.what());
  }
}

Json vector_to_json(const Vector& v) { return Json(std::vector<double>(v.data(), v.data() + v.size())); }

Vector vector_from_json(const Json& j) {
  return guarded("vector", [&] {
    auto v = j.get<std::vector<double>>();
    return Vector(Eigen::Map<Vector>(v.data(), static_cast<Eigen::Index>(v.size())));
  });
}

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) rows.push_back(vector_to_json(m.row(i).transpose()));
  return rows;
}

Matrix matrix_from_json(const Json& j) {
  return guarded("matrix", [&] {
    auto rows = j.get<std::vector<std::vector<double>>>();
    const std::size_t cols = rows.empty() ? 0 : rows[0].size();
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      require(rows[i].size() == cols, "ragged matrix");
      for (std::size_t k = 0; k < cols; ++k) m(i, k) = rows[i][k];
    }
    return m;
  });
}

SystemFile system_from_json(const Json& j) {
  return guarded("system", [&]() -> SystemFile {
    auto names = need(j, "variables").get<std::vector<std::string>>();
    const int d = static_cast<int>(names.size());
    require(d >= 1, "system needs at least one variable");
    std::vector<std::vector<poly::PolynomialFunction>> structure(d, std::vector<poly::PolynomialFunction>(d, poly::PolynomialFunction(d)));
    const Json& s = need(j, "structure");
    if (s.is_string()) {
      require(s.get<std::string>() == "canonical", "structure must be \"canonical\" or a matrix");
      require(d % 2 == 0, "canonical structure needs an even number of variables");
      for (int i = 0; i < d / 2; ++i) {
        structure[i][d / 2 + i] = poly::PolynomialFunction::constant(d, 1);
        structure[d / 2 + i][i] = poly::PolynomialFunction::constant(d, -1);
      }
    } else {
      require(s.is_array() && static_cast<int>(s.size()) == d, "structure matrix must be d x d");
      for (int r = 0; r < d; ++r) {
        require(s[r].is_array() && static_cast<int>(s[r].size()) == d, "structure matrix must be d x d");
        for (int c = 0; c < d; ++c) structure[r][c] = poly::parse(poly_text(s[r][c]), names);
      }
    }
    std::vector<poly::PolynomialFunction> casimirs, hams;
    if (j.contains("casimirs"))
      for (const auto& c : j.at("casimirs")) casimirs.push_back(poly::parse(poly_text(c), names));
    for (const auto& h : need(j, "hamiltonians")) hams.push_back(poly::parse(poly_text(h), names));
    std::vector<double> leaf;
    if (j.contains("leaf_values")) leaf = j.at("leaf_values").get<std::vector<double>>();
    SystemFile out{poisson::IntegrableSystem(poisson::PoissonManifold(structure, names), casimirs, hams, leaf), {}, {}};
    if (j.contains("points"))
      for (const auto& p : j.at("points")) {
        out.points.push_back(vector_from_json(p));
        require(out.points.back().size() == d, "point has the wrong dimension");
      }
    if (j.contains("region")) {
      poisson::Box b{vector_from_json(need(j.at("region"), "lo")), vector_from_json(need(j.at("region"), "hi"))};
      require(b.lo.size() == d && b.hi.size() == d, "region has the wrong dimension");
      out.region = b;
    }
    return out;
  });
}

Json system_to_json(const poisson::IntegrableSystem& sys) {
  const auto& names = sys.manifold().variables();
  Json j;
  j["variables"] = names;
  Json s = Json::array();
  for (int r = 0; r < sys.dim(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < sys.dim(); ++c) row.push_back(sys.manifold().entry(r, c).str(names));
    s.push_back(row);
  }
  j["structure"] = s;
  j["casimirs"] = Json::array();
  for (const auto& c : sys.casimirs()) j["casimirs"].push_back(c.str(names));
  j["leaf_values"] = sys.leaf_values();
  j["hamiltonians"] = Json::array();
  for (const auto& h : sys.hamiltonians()) j["hamiltonians"].push_back(h.str(names));
  return j;
}

Json report_to_json(const poisson::SingularPointReport& r) {
  Json j;
  j["point"] = vector_to_json(r.point);
  j["rank"] = r.rank;
  j["corank"] = r.corank;
  j["classification"] = class_name(r.classification);
  j["type"] = Json::array({r.type.k_e, r.type.k_h, r.type.k_f});
  j["type_label"] = r.type.str();
  j["symmetry"] = Json::array();
  for (const auto& s : r.symmetry) j["symmetry"].push_back({{"kind", symplectic::to_string(s.kind)}, {"group", s.group_descriptor}});
  j["note"] = r.note;
  j["leaf_basis"] = matrix_to_json(r.leaf_basis);
  if (r.transversal) {
    Json forms = Json::array();
    for (const auto& f : r.transversal->forms) forms.push_back(matrix_to_json(f.coeff()));
    j["transversal"] = {{"half_dim", r.transversal->space.half_dim}, {"forms", forms}};
  } else {
    j["transversal"] = nullptr;
  }
  return j;
}

poisson::SingularPointReport report_from_json(const Json& j) {
  return guarded("report", [&] {
    poisson::SingularPointReport r;
    r.point = vector_from_json(need(j, "point"));
    r.rank = need(j, "rank").get<int>();
    r.corank = need(j, "corank").get<int>();
    r.classification = class_from(need(j, "classification").get<std::string>());
    auto t = need(j, "type").get<std::vector<int>>();
    require(t.size() == 3, "type needs three entries");
    r.type = {t[0], t[1], t[2]};
    for (const auto& s : need(j, "symmetry"))
      r.symmetry.push_back({symp_kind(need(s, "kind").get<std::string>()), need(s, "group").get<std::string>()});
    r.note = need(j, "note").get<std::string>();
    r.leaf_basis = matrix_from_json(need(j, "leaf_basis"));
    const Json& tr = need(j, "transversal");
    if (!tr.is_null()) {
      symplectic::SymplecticSpace sp{need(tr, "half_dim").get<int>()};
      symplectic::CommutingFamily fam{sp, {}, 1e-9};
      for (const auto& f : need(tr, "forms")) fam.forms.emplace_back(sp, matrix_from_json(f));
      r.transversal = fam;
    }
    return r;
  });
}

Json atom_to_json(const Atom& a) {
  Json j;
  j["name"] = a.name;
  j["kind"] = foliation::to_string(a.kind);
  j["vertices"] = a.vertex_count();
  j["rotation"] = a.rotation;
  Json p = Json::array();
  for (const auto& e : a.pairing) p.push_back(Json::array({e[0], e[1]}));
  j["pairing"] = p;
  if (a.starred()) j["involution"] = a.involution;
  return j;
}

Atom atom_from_json(const Json& j) {
  return guarded("atom", [&] {
    if (j.is_string()) return foliation::builtin_atom(j.get<std::string>());
    Atom a;
    a.name = j.value("name", std::string());
    const std::string kind = j.value("kind", std::string("hyperbolic"));
    require(kind == "hyperbolic" || kind == "elliptic", "atom kind must be hyperbolic or elliptic");
    a.kind = kind == "elliptic" ? AtomKind::Elliptic : AtomKind::Hyperbolic;
    if (j.contains("rotation")) a.rotation = j.at("rotation").get<std::vector<std::vector<int>>>();
    if (j.contains("pairing"))
      for (const auto& e : j.at("pairing")) {
        auto v = e.get<std::vector<int>>();
        require(v.size() == 2, "pairing entries are half-edge pairs");
        a.pairing.push_back({v[0], v[1]});
      }
    if (j.contains("involution")) a.involution = j.at("involution").get<std::vector<int>>();
    if (j.contains("vertices")) require(j.at("vertices").get<int>() == a.vertex_count(), "vertex count disagrees with the rotation lists");
    foliation::atom_validate(a);
    return a;
  });
}

Json action_to_json(const FiniteGroupAction& a) {
  Json j;
  j["generators"] = a.generators;
  Json pc = Json::array();
  for (const auto& comp : a.per_component) {
    Json imgs = Json::array();
    for (const auto& img : comp) {
      Json x = Json::object();
      if (!img.half_edges.empty()) x["half_edges"] = img.half_edges;
      if (img.shift != 0) x["shift"] = img.shift;
      imgs.push_back(x);
    }
    pc.push_back(imgs);
  }
  j["per_component"] = pc;
  if (!a.translations.empty()) {
    Json t = Json::array();
    for (const auto& row : a.translations) {
      Json r = Json::array();
      for (auto f : row) r.push_back(fraction_to_json(f));
      t.push_back(r);
    }
    j["translations"] = t;
  }
  return j;
}

FiniteGroupAction action_from_json(const Json& j) {
  return guarded("action", [&] {
    FiniteGroupAction a;
    a.generators = need(j, "generators").get<std::vector<std::vector<int>>>();
    for (const auto& comp : need(j, "per_component")) {
      std::vector<ComponentImage> imgs;
      for (const auto& x : comp) {
        require(x.is_object(), "component image must be an object");
        ComponentImage img;
        if (x.contains("half_edges")) img.half_edges = x.at("half_edges").get<std::vector<int>>();
        img.shift = x.value("shift", 0);
        imgs.push_back(img);
      }
      a.per_component.push_back(imgs);
    }
    if (j.contains("translations"))
      for (const auto& row : j.at("translations")) {
        std::vector<Fraction> r;
        for (const auto& f : row) r.push_back(fraction_from_json(f));
        a.translations.push_back(r);
      }
    return a;
  });
}

ModelFile model_from_json(const Json& j) {
  return guarded("model", [&] {
    ModelFile out;
    out.model.regular_rank = j.value("regular_rank", 0);
    if (j.contains("atoms"))
      for (const auto& a : j.at("atoms")) out.model.atoms.push_back(atom_from_json(a));
    if (j.contains("focus"))
      for (const auto& f : j.at("focus")) out.model.focus.push_back({f.is_object() ? need(f, "m").get<int>() : f.get<int>()});
    out.model.validate();
    if (j.contains("action") && !j.at("action").is_null()) {
      out.action = action_from_json(j.at("action"));
      foliation::group_elements(out.model, *out.action);
    }
    return out;
  });
}

Json model_to_json(const DirectProductModel& m, bool builtin_names) {
  Json j;
  j["regular_rank"] = m.regular_rank;
  j["atoms"] = Json::array();
  for (const auto& a : m.atoms) {
    if (builtin_names && same_as_builtin(a))
      j["atoms"].push_back(a.name);
    else
      j["atoms"].push_back(atom_to_json(a));
  }
  j["focus"] = Json::array();
  for (const auto& f : m.focus) j["focus"].push_back(f.m);
  return j;
}

Json complex_to_json(const OrbitComplex& cx) {
  Json j;
  j["ambient_n"] = cx.ambient_n;
  j["regular_rank"] = cx.regular_rank;
  j["components"] = Json::array();
  for (auto k : cx.components) j["components"].push_back(foliation::to_string(k));
  j["group_order"] = cx.group_order;
  Json cells = Json::array();
  for (const auto& c : cx.cells) {
    Json x;
    x["id"] = c.id;
    x["dim"] = c.dim;
    x["type"] = type_json(c.type);
    x["labels"] = c.labels;
    Json b = Json::array();
    for (auto [f, s] : c.boundary) b.push_back(Json::array({f, s}));
    x["boundary"] = b;
    x["spine"] = c.spine;
    x["factors"] = c.factors;
    x["orbit_size"] = c.orbit_size;
    Json rot = Json::object();
    for (const auto& [label, entries] : c.rotation) {
      Json e = Json::array();
      for (const auto& r : entries) e.push_back(Json::array({r.cell, r.end}));
      rot[std::to_string(label)] = e;
    }
    x["rotation"] = rot;
    cells.push_back(x);
  }
  j["cells"] = cells;
  return j;
}

OrbitComplex complex_from_json(const Json& j) {
  return guarded("complex", [&] {
    OrbitComplex cx;
    cx.ambient_n = need(j, "ambient_n").get<int>();
    cx.regular_rank = j.value("regular_rank", 0);
    for (const auto& k : need(j, "components")) cx.components.push_back(folia_kind(k.get<std::string>()));
    cx.group_order = j.value("group_order", 1);
    const Json& cells = need(j, "cells");
    const int N = static_cast<int>(cells.size());
    for (const auto& x : cells) {
      foliation::Cell c;
      c.id = need(x, "id").get<int>();
      require(c.id == static_cast<int>(cx.cells.size()), "cell ids must be 0, 1, 2, ... in order");
      c.type = type_from(need(x, "type"));
      c.dim = x.value("dim", c.type.dim());
      c.labels = x.value("labels", std::vector<int>{});
      for (const auto& b : x.value("boundary", Json::array())) {
        auto v = b.get<std::vector<int>>();
        require(v.size() == 2 && v[0] >= 0 && v[0] < N, "boundary entries are (cell, sign) with a valid cell");
        c.boundary.push_back({v[0], v[1]});
      }
      c.spine = x.value("spine", c.type.o <= 1);
      c.factors = x.value("factors", std::vector<int>{});
      c.orbit_size = x.value("orbit_size", 1);
      if (x.contains("rotation"))
        for (const auto& [label, entries] : x.at("rotation").items()) {
          std::vector<foliation::RotationEntry> r;
          for (const auto& e : entries) {
            auto v = e.get<std::vector<int>>();
            require(v.size() == 2 && v[0] >= 0 && v[0] < N && (v[1] == 0 || v[1] == 1), "rotation entries are (cell, end)");
            r.push_back({v[0], v[1]});
          }
          int l = 0;
          try {
            l = std::stoi(label);
          } catch (const std::logic_error&) {
            fail(ErrorKind::InvalidInput, "rotation keys must be component indices");
          }
          c.rotation[l] = r;
        }
      for (int l : c.labels) require(l >= 0 && l < static_cast<int>(cx.components.size()), "label out of range");
      cx.cells.push_back(std::move(c));
    }
    return cx;
  });
}

Json covering_to_json(const foliation::Pi1Presentation& p, const foliation::CoveringData& c) {
  Json beta = Json::array();
  for (const auto& b : p.beta) {
    Json img = Json::array();
    for (auto f : b.image) img.push_back(fraction_to_json(f));
    beta.push_back({{"cell", b.cell}, {"image", img}});
  }
  return {{"alpha_count", p.alpha_count},
          {"beta", beta},
          {"gamma_count", p.gamma_count},
          {"relations", p.relations},
          {"covering_degree", c.degree},
          {"kernel", c.kernel},
          {"note", c.note}};
}

Json atlas_report(const OrbitComplex& cx) {
  Json j;
  j["complex"] = complex_to_json(cx);
  auto inv = foliation::leaf_invariants(cx);
  j["leaf_invariants"] = {{"ellipticity", inv.ellipticity}, {"closedness", inv.closedness}, {"hyperbolicity", inv.hyperbolicity}};
  j["torus_action_dimension"] = foliation::torus_action_dimension(cx);
  Json iso = Json::array();
  for (const auto& e : foliation::isotropy_report(cx))
    iso.push_back({{"cell", e.cell},
                   {"type", type_json(e.type)},
                   {"finite_order", e.finite_order},
                   {"continuous_dim", e.continuous_dim},
                   {"descriptor", e.descriptor},
                   {"local_symmetry", e.local_symmetry}});
  j["isotropy"] = iso;
  Json mono = Json::array();
  if (cx.model)
    for (std::size_t f = 0; f < cx.model->focus.size(); ++f) {
      auto m = foliation::monodromy(cx.model->focus[f]);
      mono.push_back({{"component", cx.model->atoms.size() + f},
                      {"m", cx.model->focus[f].m},
                      {"matrix", Json::array({Json::array({m[0][0], m[0][1]}), Json::array({m[1][0], m[1][1]})})}});
    }
  j["monodromy"] = mono;
  Json census = Json::array();
  for (const auto& [t, n] : foliation::type_census(cx)) census.push_back({{"type", type_json(t)}, {"count", n}});
  j["type_census"] = census;
  if (cx.model && cx.model->component_count() == 1 && cx.model->atoms.size() == 1) {
    auto p = foliation::pi1_presentation(cx);
    j["pi1"] = covering_to_json(p, foliation::canonical_covering(p));
  }
  j["problems"] = foliation::check_complex(cx);
  return j;
}

Json decomposition_to_json(const foliation::Decomposition& d) {
  Json j;
  j["model"] = model_to_json(d.model, false);
  j["group_order"] = d.group_order;
  j["action"] = action_to_json(d.action);
  j["note"] = d.note;
  return j;
}

foliation::Decomposition decomposition_from_json(const Json& j) {
  return guarded("decomposition", [&] {
    foliation::Decomposition d;
    d.model = model_from_json(need(j, "model")).model;
    d.action = action_from_json(need(j, "action"));
    d.elements = foliation::group_elements(d.model, d.action);
    d.group_order = need(j, "group_order").get<int>();
    require(d.group_order == static_cast<int>(d.elements.size()), "group order disagrees with the action");
    d.note = j.value("note", std::string());
    return d;
  });
}

Json atoms_catalog() {
  Json out = Json::array();
  for (const auto& a : foliation::builtin_atoms()) {
    auto r = foliation::atom_validate(a);
    Json x = atom_to_json(a);
    x["report"] = {{"vertices", r.vertices},
                   {"edges", r.edges},
                   {"chi_leaf", r.chi_leaf},
                   {"boundary_circles", r.boundary_circles},
                   {"genus", r.genus}};
    out.push_back(x);
  }
  return out;
}

}  // namespace ihs::io
