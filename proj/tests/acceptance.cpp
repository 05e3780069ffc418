// Acceptance run: one PASS/FAIL line per criterion; exit status 0 iff all pass.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "cli_support.hpp"
#include "ihs/covering.hpp"
#include "ihs/decompose.hpp"
#include "ihs/error.hpp"
#include "ihs/halton.hpp"
#include "ihs/kovalevskaya.hpp"
#include "ihs/bifurcation.hpp"
#include "support.hpp"

using namespace ihs;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& name, double budget_s, const std::function<Outcome()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = secs < budget_s;
  const bool ok = o.pass && in_time;
  failures += ok ? 0 : 1;
  char time[64];
  std::snprintf(time, sizeof time, "%.2f s / %.0f s", secs, budget_s);
  std::cout << (ok ? "PASS" : "FAIL") << "  " << id << ". " << name << ": " << o.detail << " [" << time << "]"
            << (in_time ? "" : " (over budget)") << std::endl;
}

std::vector<symplectic::WilliamsonType> types_up_to(int kmax) {
  std::vector<symplectic::WilliamsonType> out;
  for (int kf = 0; 2 * kf <= kmax; ++kf)
    for (int kh = 0; kh + 2 * kf <= kmax; ++kh)
      for (int ke = 0; ke + kh + 2 * kf <= kmax; ++ke)
        if (ke + kh + kf > 0) out.push_back({ke, kh, kf});
  return out;
}

std::string fmt(double v) {
  char b[32];
  std::snprintf(b, sizeof b, "%.2e", v);
  return b;
}

}  // namespace

int main() {
  using namespace symplectic;

  criterion(1, "Williamson round-trip", 10.0, [] {
    std::mt19937_64 rng(20240101);
    int ok = 0, total = 0, worst_type_hits = 100;
    auto types = types_up_to(4);
    for (const auto& t : types) {
      auto nf = williamson_normal_form(t);
      int hits = 0;
      for (int trial = 0; trial < 100; ++trial) {
        auto S = test_support::random_symplectic(t.corank(), rng, 1e4);
        try {
          hits += williamson_type(test_support::conjugate(nf, S)) == t;
        } catch (const Error&) {
        }
      }
      ok += hits;
      total += 100;
      worst_type_hits = std::min(worst_type_hits, hits);
    }
    return Outcome{ok == total, std::to_string(types.size()) + " types, " + std::to_string(ok) + "/" + std::to_string(total) +
                                    " recovered (worst type " + std::to_string(worst_type_hits) + "/100), cond <= 1e4, axis tol 1e-9"};
  });

  criterion(2, "Bracket algebra", 5.0, [] {
    std::mt19937_64 rng(99);
    bool antisym = true;
    double jac = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
      const int k = 1 + trial % 4;
      auto a = test_support::random_form(k, rng), b = test_support::random_form(k, rng), c = test_support::random_form(k, rng);
      antisym &= poisson_bracket(a, b).coeff() == (poisson_bracket(b, a) * -1.0).coeff();
      Matrix j = poisson_bracket(a, poisson_bracket(b, c)).coeff() + poisson_bracket(b, poisson_bracket(c, a)).coeff() +
                 poisson_bracket(c, poisson_bracket(a, b)).coeff();
      jac = std::max(jac, j.cwiseAbs().maxCoeff());
    }
    return Outcome{antisym && jac <= 1e-10, std::string("antisymmetry ") + (antisym ? "exact" : "violated") +
                                                ", max Jacobi residual " + fmt(jac) + " <= 1e-10 over 1000 triples (dim 2..8)"};
  });

  criterion(3, "Kovalevskaya integrals", 5.0, [] {
    auto sys = kovalevskaya::kovalevskaya_system(0.5);
    const auto& H = sys.hamiltonians()[0];
    const auto& K = sys.hamiltonians()[1];
    const auto& f1 = sys.casimirs()[0];
    const auto& f2 = sys.casimirs()[1];
    std::vector<std::pair<const poly::PolynomialFunction*, const poly::PolynomialFunction*>> pairs{
        {&H, &K}, {&H, &f1}, {&H, &f2}, {&K, &f1}, {&K, &f2}};
    double exact = 0.0, numeric = 0.0;
    for (const auto& [f, g] : pairs) {
      auto b = poisson::bracket_fn(*f, *g, sys.manifold());
      for (int i = 1; i <= 1000; ++i) {
        auto u = halton_point(i, 6);
        poisson::Vector p(6);
        for (int d = 0; d < 6; ++d) p[d] = -1.0 + 2.0 * u[d];
        exact = std::max(exact, std::abs(b(std::vector<double>(p.data(), p.data() + 6))));
        numeric = std::max(numeric, std::abs(sys.gradient(*f, p).dot(sys.manifold().at(p) * sys.gradient(*g, p))));
      }
    }
    return Outcome{exact <= 1e-10 && numeric <= 1e-10,
                   "5 brackets at 1000 Halton points of [-1,1]^6: polynomial residual " + fmt(exact) +
                       ", floating-point gradient residual " + fmt(numeric) + " (tol 1e-10)"};
  });

  criterion(4, "Kovalevskaya equilibria", 60.0, [] {
    auto sys = kovalevskaya::kovalevskaya_system(0.5);
    auto box = poisson::Box::cube(6, 3.0);
    auto a = poisson::find_fixed_points(sys, box, 1000);
    auto b = poisson::find_fixed_points(sys, box, 2000);
    bool stable = a.size() == b.size();
    for (std::size_t i = 0; stable && i < a.size(); ++i) stable = (a[i] - b[i]).norm() <= 1e-6;
    int e2 = 0, h2 = 0, other = 0;
    for (const auto& p : a) {
      try {
        auto r = poisson::classify_singular_point(sys, p);
        if (r.type == WilliamsonType{2, 0, 0}) ++e2;
        else if (r.type == WilliamsonType{0, 2, 0}) ++h2;
        else ++other;
      } catch (const Error&) {
        ++other;
      }
    }
    return Outcome{!a.empty() && stable && e2 >= 1 && h2 >= 1,
                   std::to_string(a.size()) + " equilibria (1000 seeds), " + (stable ? "stable" : "NOT stable") +
                       " under 2000 seeds at 1e-6; (2,0,0) x" + std::to_string(e2) + ", (0,2,0) x" + std::to_string(h2) +
                       ", other x" + std::to_string(other)};
  });

  criterion(5, "Linear-model oracle", 10.0, [] {
    const std::vector<std::string> names{"x1", "x2", "y1", "y2"};
    poisson::IntegrableSystem sys(poisson::canonical_manifold(2), {}, {poly::parse("x1*y1", names), poly::parse("x2*y2", names)}, {});
    const int res = 5;
    auto cloud = bifurcation::bifurcation_scan(sys, poisson::Box::cube(4, 1.0), res);
    double off = 0.0;
    std::set<long long> cells;
    for (const auto& s : cloud.samples) {
      off = std::max(off, std::min(std::abs(s.value[0]), std::abs(s.value[1])));
      cells.insert(s.cell);
    }
    int meeting = 0, covered = 0;
    for (long long c = 0; c < res * res * res * res; ++c) {
      int idx[4];
      long long r = c;
      for (int& i : idx) {
        i = static_cast<int>(r % res);
        r /= res;
      }
      if ((idx[0] == 2 && idx[2] == 2) || (idx[1] == 2 && idx[3] == 2)) {
        ++meeting;
        covered += cells.count(c) ? 1 : 0;
      }
    }
    return Outcome{!cloud.samples.empty() && off <= 1e-6 && covered == meeting,
                   std::to_string(cloud.samples.size()) + " samples, max distance to the cross " + fmt(off) +
                       " (tol 1e-6), " + std::to_string(covered) + "/" + std::to_string(meeting) + " cells meeting the set sampled"};
  });

  criterion(6, "Leaf invariants property suite", 10.0, [] {
    using namespace foliation;
    std::vector<std::function<void(DirectProductModel&)>> pieces;
    for (const auto& a : builtin_atoms()) pieces.push_back([a](DirectProductModel& m) { m.atoms.push_back(a); });
    for (int f : {1, 2}) pieces.push_back([f](DirectProductModel& m) { m.focus.push_back({f}); });
    int models = 0, cells = 0, bad = 0;
    const int P = static_cast<int>(pieces.size());
    for (int r = 0; r <= 2; ++r)
      for (int k = 0; k <= 3; ++k) {
        std::vector<int> idx(k, 0);
        for (;;) {
          DirectProductModel m;
          m.regular_rank = r;
          for (int x : idx) pieces[x](m);
          int stars = 0;
          for (const auto& a : m.atoms) stars += a.starred();
          if (stars <= r && m.n() > 0) {
            ++models;
            auto cx = product_complex(m);
            const auto first = cx.cells.front().type;
            for (const auto& c : cx.cells) {
              ++cells;
              bool same = c.type.k_e == first.k_e && c.type.k_f + c.type.c == first.k_f + first.c &&
                          c.type.k_f + c.type.k_h + c.type.o == first.k_f + first.k_h + first.o;
              if (!same || c.type.total() != m.n()) ++bad;
            }
          }
          int p = k - 1;
          while (p >= 0 && idx[p] == P - 1) --p;
          if (p < 0) break;
          ++idx[p];
          for (int q = p + 1; q < k; ++q) idx[q] = idx[p];
        }
      }
    return Outcome{bad == 0 && models > 0, std::to_string(models) + " models, " + std::to_string(cells) + " cells, " +
                                                std::to_string(bad) + " violations of the triple or k_e+k_h+2k_f+c+o = n"};
  });

  criterion(7, "Monodromy", 1.0, [] {
    bool ok = true;
    for (int m = 1; m <= 5; ++m) ok &= foliation::monodromy(foliation::FocusBlock{m}) == foliation::MonodromyMatrix{{{1, m}, {0, 1}}};
    return Outcome{ok, "monodromy(m) = [[1,m],[0,1]] for m = 1..5"};
  });

  criterion(8, "Quotient/decompose round-trip", 30.0, [] {
    using namespace foliation;
    int actions = 0, good = 0;
    std::ostringstream per;
    for (auto [name, atoms] : std::vector<std::pair<std::string, std::vector<Atom>>>{
             {"BxB", {atom_B(), atom_B()}}, {"BxC2", {atom_B(), atom_C2()}}, {"C2xC2", {atom_C2(), atom_C2()}}}) {
      DirectProductModel m;
      m.atoms = atoms;
      auto prod = product_complex(m);
      auto acts = admissible_actions(m, 4);
      per << name << ":" << acts.size() << " ";
      for (const auto& act : acts) {
        ++actions;
        auto d = decompose(quotient_complex(prod, act));
        good += models_isomorphic(d.model, m) && d.group_order == static_cast<int>(group_elements(m, act).size());
      }
    }
    DirectProductModel bc;
    bc.atoms = {atom_B(), atom_C2()};
    FiniteGroupAction z2;
    z2.generators = {{1, 0}};
    z2.per_component = {{{{2, 3, 0, 1}, 0}}, {{{4, 5, 6, 7, 0, 1, 2, 3}, 0}}};
    auto prod = product_complex(bc);
    auto q = quotient_complex(prod, z2);
    auto d = decompose(q);
    const bool iv = d.group_order == 2 && q.minimal_cells().size() == 1 && prod.minimal_cells().size() == 2 && models_isomorphic(d.model, bc);
    return Outcome{good == actions && iv, std::to_string(good) + "/" + std::to_string(actions) + " actions recovered (" + per.str() +
                                              "); (BxC2)/Z2: |G| = " + std::to_string(d.group_order) + ", fixed points " +
                                              std::to_string(q.minimal_cells().size()) + " (product " +
                                              std::to_string(prod.minimal_cells().size()) + ")"};
  });

  criterion(9, "Canonical covering degrees", 1.0, [] {
    using namespace foliation;
    DirectProductModel b;
    b.regular_rank = 1;
    b.atoms = {atom_B()};
    const int d0 = canonical_covering(pi1_presentation(b)).degree;
    DirectProductModel s = b;
    s.atoms = {atom_A_star()};
    auto c1 = canonical_covering(pi1_presentation(s));
    Pi1Presentation two;
    two.alpha_count = 2;  // n = 3
    two.beta = {{0, {Fraction(1, 2), Fraction(0)}}, {0, {Fraction(0), Fraction(1, 2)}}};
    const int d2 = canonical_covering(two).degree;
    const bool caveat = c1.note.find("a canonical covering") != std::string::npos;
    return Outcome{d0 == 1 && c1.degree == 2 && caveat && d2 == 4,
                   "beta-empty " + std::to_string(d0) + ", single order-2 beta " + std::to_string(c1.degree) +
                       (caveat ? " (caveat noted)" : " (caveat missing)") + ", two independent betas at n=3 " + std::to_string(d2)};
  });

  criterion(10, "Determinism", 60.0, [] {
    using namespace test_support;
    auto dir = scratch_dir("ihs_acceptance");
    const std::string kov = "kovalevskaya --g 0.5 --seeds 1000 --resolution 2 --output ";
    const std::string scan = "scan --input " + data_file("linear_saddle.json") + " --resolution 5 --output ";
    int codes = 0;
    codes += run_cli(kov + (dir / "k1.json").string());
    codes += run_cli(kov + (dir / "k2.json").string());
    codes += run_cli(scan + (dir / "s1.csv").string());
    codes += run_cli(scan + (dir / "s2.csv").string());
    const auto k1 = slurp(dir / "k1.json"), k2 = slurp(dir / "k2.json");
    const auto s1 = slurp(dir / "s1.csv"), s2 = slurp(dir / "s2.csv");
    std::filesystem::remove_all(dir);
    const bool ok = codes == 0 && !k1.empty() && !s1.empty() && k1 == k2 && s1 == s2;
    return Outcome{ok, "kovalevskaya report " + std::to_string(k1.size()) + " bytes " + (k1 == k2 ? "identical" : "DIFFERENT") +
                           ", scan CSV " + std::to_string(s1.size()) + " bytes " + (s1 == s2 ? "identical" : "DIFFERENT") +
                           ", exit codes " + (codes == 0 ? "0" : "nonzero")};
  });

  std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " FAILED") << std::endl;
  return failures == 0 ? 0 : 1;
}
