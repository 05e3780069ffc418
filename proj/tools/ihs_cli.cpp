// Command-line front end. Exit status: 0 success, 2 input error, 3 numeric
// ambiguity or inconclusive outcome.

#include <iostream>
#include <map>
#include <optional>

#include <CLI11.hpp>

#include "ihs/bifurcation.hpp"
#include "ihs/decompose.hpp"
#include "ihs/error.hpp"
#include "ihs/io.hpp"
#include "ihs/kovalevskaya.hpp"

namespace {

using ihs::io::Json;
using ihs::poisson::Box;
using ihs::poisson::Vector;

struct Options {
  std::string input, output, action, cloud;
  std::vector<double> region;
  int resolution = 0;
  int seeds = 1000;
  double g = 0.5;
  std::string format;  // empty: the command's own format
  double tolerance = 1e-9;
};

void emit(const Options& o, const std::string& text) {
  if (o.output.empty())
    std::cout << text;
  else
    ihs::io::write_file(o.output, text);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// One value r: [-r, r]^d; two values a, b: [a, b]^d; 2d values: (lo_i, hi_i) pairs.
Box region_from(const std::vector<double>& r, int d) {
  Box b{Vector(d), Vector(d)};
  if (r.size() == 1) return Box::cube(d, r[0]);
  if (r.size() == 2) {
    b.lo.setConstant(r[0]);
    b.hi.setConstant(r[1]);
  } else if (static_cast<int>(r.size()) == 2 * d) {
    for (int i = 0; i < d; ++i) {
      b.lo[i] = r[2 * i];
      b.hi[i] = r[2 * i + 1];
    }
  } else {
    ihs::fail(ihs::ErrorKind::InvalidInput, "--region takes 1, 2 or 2d numbers");
  }
  ihs::require(!b.empty(), "--region is empty");
  return b;
}

Box pick_region(const Options& o, const std::optional<Box>& from_file, int d) {
  if (!o.region.empty()) return region_from(o.region, d);
  if (from_file) return *from_file;
  ihs::fail(ihs::ErrorKind::InvalidInput, "no region: pass --region or give one in the input file");
}

ihs::io::SystemFile load_system(const Options& o) {
  ihs::require(!o.input.empty(), "--input is required");
  return ihs::io::system_from_json(ihs::io::parse_json(ihs::io::read_file(o.input)));
}

// Classify each point; numeric failures are recorded, not fatal.
Json classify_points(const ihs::poisson::IntegrableSystem& sys, const std::vector<Vector>& points, double tol, bool& numeric_failure) {
  Json reports = Json::array();
  for (const auto& p : points) {
    try {
      reports.push_back(ihs::io::report_to_json(ihs::poisson::classify_singular_point(sys, p, tol)));
    } catch (const ihs::Error& e) {
      if (!e.is_numeric()) throw;
      numeric_failure = true;
      reports.push_back({{"point", ihs::io::vector_to_json(p)}, {"error", ihs::to_string(e.kind())}, {"message", e.what()}});
    }
  }
  return reports;
}

Json type_counts(const Json& reports) {
  std::map<std::string, int> counts;
  for (const auto& r : reports)
    if (r.contains("type_label") && r.at("classification") == "nondegenerate") ++counts[r.at("type_label").get<std::string>()];
  Json j = Json::object();
  for (const auto& [k, v] : counts) j[k] = v;
  return j;
}

int run_classify(const Options& o) {
  auto file = load_system(o);
  std::vector<Vector> points = file.points;
  Json out;
  out["command"] = "classify";
  if (points.empty()) {
    Box box = pick_region(o, file.region, file.system.dim());
    points = ihs::poisson::find_fixed_points(file.system, box, o.seeds);
    out["search"] = {{"lo", ihs::io::vector_to_json(box.lo)}, {"hi", ihs::io::vector_to_json(box.hi)}, {"seeds", o.seeds}};
  }
  bool numeric = false;
  out["system"] = ihs::io::system_to_json(file.system);
  out["point_count"] = points.size();
  out["reports"] = classify_points(file.system, points, o.tolerance, numeric);
  out["type_counts"] = type_counts(out["reports"]);
  emit(o, dump(out));
  return numeric ? 3 : 0;
}

int run_scan(const Options& o) {
  ihs::require(o.format.empty() || o.format == "csv", "scan writes CSV");
  auto file = load_system(o);
  const int res = o.resolution == 0 ? 4 : o.resolution;
  ihs::require(res >= 2, "--resolution must be at least 2");
  Box box = pick_region(o, file.region, file.system.dim());
  emit(o, ihs::bifurcation::cloud_csv(ihs::bifurcation::bifurcation_scan(file.system, box, res)));
  return 0;
}

ihs::io::ModelFile load_model(const Options& o) {
  ihs::require(!o.input.empty(), "--input is required");
  auto m = ihs::io::model_from_json(ihs::io::parse_json(ihs::io::read_file(o.input)));
  if (!o.action.empty()) {
    m.action = ihs::io::action_from_json(ihs::io::parse_json(ihs::io::read_file(o.action)));
    ihs::foliation::group_elements(m.model, *m.action);
  }
  return m;
}

int run_atlas_build(const Options& o) {
  auto m = load_model(o);
  Json out = ihs::io::atlas_report(ihs::foliation::product_complex(m.model));
  out["model"] = ihs::io::model_to_json(m.model);
  emit(o, dump(out));
  return 0;
}

int run_atlas_quotient(const Options& o) {
  auto m = load_model(o);
  ihs::require(m.action.has_value(), "atlas-quotient needs an action (in the model file or via --action)");
  auto q = ihs::foliation::quotient_complex(ihs::foliation::product_complex(m.model), *m.action);
  Json out = ihs::io::atlas_report(q);
  out["model"] = ihs::io::model_to_json(m.model);
  out["action"] = ihs::io::action_to_json(*m.action);
  emit(o, dump(out));
  return 0;
}

int run_atlas_decompose(const Options& o) {
  ihs::require(!o.input.empty(), "--input is required");
  Json in = ihs::io::parse_json(ihs::io::read_file(o.input));
  ihs::foliation::OrbitComplex cx;
  if (in.contains("complex")) {
    cx = ihs::io::complex_from_json(in.at("complex"));
  } else if (in.contains("cells")) {
    cx = ihs::io::complex_from_json(in);
  } else {
    auto m = load_model(o);
    auto prod = ihs::foliation::product_complex(m.model);
    cx = m.action ? ihs::foliation::quotient_complex(prod, *m.action) : prod;
  }
  auto d = ihs::foliation::decompose(cx);
  int fixed = 0;
  for (const auto& c : cx.cells) fixed += c.type.o == 0 && c.type.c == 0;
  Json out = ihs::io::decomposition_to_json(d);
  out["input_fixed_points"] = fixed;
  emit(o, dump(out));
  return 0;
}

int run_atoms(const Options& o) {
  emit(o, dump(ihs::io::atoms_catalog()));
  return 0;
}

int run_kovalevskaya(const Options& o) {
  auto sys = ihs::kovalevskaya::kovalevskaya_system(o.g);
  Box box = o.region.empty() ? Box::cube(6, 3.0) : region_from(o.region, 6);
  auto points = ihs::poisson::find_fixed_points(sys, box, o.seeds);
  bool numeric = false;
  Json out;
  out["command"] = "kovalevskaya";
  out["g"] = o.g;
  out["search"] = {{"lo", ihs::io::vector_to_json(box.lo)}, {"hi", ihs::io::vector_to_json(box.hi)}, {"seeds", o.seeds}};
  out["system"] = ihs::io::system_to_json(sys);
  out["point_count"] = points.size();
  out["reports"] = classify_points(sys, points, o.tolerance, numeric);
  out["type_counts"] = type_counts(out["reports"]);
  const int res = o.resolution == 0 ? 2 : o.resolution;
  ihs::require(res >= 2, "--resolution must be at least 2");
  auto cloud = ihs::bifurcation::bifurcation_scan(sys, box, res);
  out["scan"] = {{"resolution", res}, {"samples", cloud.samples.size()}};
  if (!o.cloud.empty()) ihs::io::write_file(o.cloud, ihs::bifurcation::cloud_csv(cloud));
  emit(o, dump(out));
  return numeric ? 3 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Classification of nondegenerate singularities of integrable Hamiltonian systems"};
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--input", o.input, "input file");
    sub->add_option("--output", o.output, "output file (default: stdout)");
    sub->add_option("--region", o.region, "box: r | a,b | lo1,hi1,...,lod,hid")->delimiter(',');
    sub->add_option("--resolution", o.resolution, "scan grid cells per axis")->check(CLI::Range(2, 1 << 20));
    sub->add_option("--seeds", o.seeds, "fixed-point search seeds")->check(CLI::Range(1, 1 << 24));
    sub->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--tolerance", o.tolerance, "relative bracket tolerance")->check(CLI::PositiveNumber);
  };
  std::map<CLI::App*, int (*)(const Options&)> handlers;
  auto add = [&](const char* name, const char* help, int (*fn)(const Options&)) {
    auto* sub = app.add_subcommand(name, help);
    common(sub);
    handlers[sub] = fn;
    return sub;
  };
  add("classify", "classify the points of a system file, or its equilibria in a region", run_classify);
  add("scan", "bifurcation-diagram point cloud as CSV", run_scan);
  add("atlas-build", "orbit complex report of a product model", run_atlas_build);
  add("atlas-quotient", "orbit complex report of a model quotient", run_atlas_quotient)
      ->add_option("--action", o.action, "action file");
  add("atlas-decompose", "canonical model and group of a complex", run_atlas_decompose);
  add("atoms", "builtin atom catalogue", run_atoms);
  auto* kov = add("kovalevskaya", "Kovalevskaya top preset: equilibria, classification, scan", run_kovalevskaya);
  kov->add_option("--g", o.g, "area constant S.R");
  kov->add_option("--cloud", o.cloud, "also write the scan cloud CSV here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    for (auto& [sub, fn] : handlers) {
      if (!sub->parsed()) continue;
      if (fn != run_scan) ihs::require(o.format.empty() || o.format == "json", "this command writes JSON");
      return fn(o);
    }
  } catch (const ihs::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.is_numeric() ? 3 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
