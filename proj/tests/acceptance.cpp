// Acceptance battery: one pass/fail line per criterion, exit code = number of
// failed criteria.

#include "core/axioms.hpp"
#include "core/io.hpp"
#include "core/localization.hpp"
#include "oracles.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#ifndef SPHERICA_DATA_DIR
#define SPHERICA_DATA_DIR "data"
#endif

using namespace spherica;
using namespace spherica::linalg;

namespace {

int g_failures = 0;
std::ostringstream g_why;

void expect(bool cond, const std::string& what) {
  if (!cond) g_why << "    " << what << "\n";
}

void criterion(const std::string& name, const std::function<void()>& body) {
  g_why.str("");
  try {
    body();
  } catch (const std::exception& e) {
    expect(false, std::string("exception: ") + e.what());
  }
  bool ok = g_why.str().empty();
  std::cout << (ok ? "PASS" : "FAIL") << ": " << name << "\n" << g_why.str();
  if (!ok) ++g_failures;
}

MatZ mat(std::initializer_list<std::initializer_list<long>> rows) {
  MatZ m;
  for (auto& r : rows) {
    VecZ v;
    for (long x : r) v.push_back(Int(x));
    m.push_back(std::move(v));
  }
  return m;
}

bool only_fails(const AxiomReport& rep, const std::string& id) {
  for (const auto& [k, v] : rep.status)
    if ((v == "fail") != (k == id)) return false;
  return true;
}

long elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

int main() {
  criterion("three-color SL(3) table: exact color identities for p in {2,3,5}, q up to p^3", [] {
    for (long p : {2L, 3L, 5L}) {
      Int q(1);
      for (int e = 1; e <= 3; ++e) {
        q *= p;
        PSphericalSystem sys = example_sl3_unipotent(Int(p), q);
        std::string tag = " (p=" + std::to_string(p) + ", q=" + q.get_str() + ")";
        expect(check_structure(sys).ok(), "structure" + tag);
        expect(check_color_relations(sys).ok(), "color relations" + tag);
        expect(check_sharing_rules(sys).ok(), "sharing" + tag);
        expect(check_color_count(sys).ok(), "color count" + tag);
        expect(check_neighbor_inequalities(sys).ok(), "neighbor bounds" + tag);
        expect(validate(sys).ok(), "axioms" + tag);
      }
    }
  });

  criterion("diagonal Frobenius orbit: shared color, sharing witness and orthogonality for q in {p,p^2}", [] {
    for (long p : {2L, 3L, 5L}) {
      for (Int q : std::vector<Int>{Int(p), Int(p * p)}) {
        PSphericalSystem sys = example_frobenius_diag(Int(p), q);
        std::string tag = " (p=" + std::to_string(p) + ", q=" + q.get_str() + ")";
        expect(check_structure(sys).ok(), "structure" + tag);
        expect(check_color_relations(sys).ok(), "color relations" + tag);
        Report sharing = check_sharing_rules(sys);
        expect(sharing.ok(), "sharing" + tag);
        bool witness = false;
        for (const auto& item : sharing.items)
          if (item.detail.find("witness") != std::string::npos) witness = true;
        expect(witness, "sharing witness reported" + tag);
        AxiomReport rep = validate(sys);
        expect(rep.ok(), "axioms" + tag);
        expect(rep.status.at("A8") == "pass", "orthogonal p-power combination checked" + tag);
      }
    }
  });

  criterion("characteristic-2 quadrangle: valuation cone, neighbor lattice, file round trip", [] {
    PSphericalSystem sys = example_so4_quadrangle();
    ConeQ v = valuation_cone(sys);
    expect(v.facet_normals.size() == 4, "valuation cone has 4 facets");
    expect(v.rays.size() == 4 && v.is_pointed(), "valuation cone is a pointed quadrangle");
    MatZ back = spherical_roots_from_cone(v, sys.rd, sys.xi, sys.p);
    MatZ want = sys.sigma;
    sort_rows(want);
    expect(back == want, "spherical roots recovered from the cone");
    expect(all_neighbor_sets(sys).size() == 10, "10 neighbor subsets (no diagonals)");
    PSphericalSystem parsed = parse_system(emit_system(sys));
    expect(emit_system(parsed) == emit_system(sys), "emit/parse round trip is byte-stable");
    expect(validate(sys).ok(), "axioms hold in characteristic 2");
  });

  criterion("random flag systems: 20 draws validate with the expected color count", [] {
    std::mt19937 rng(2024);
    std::vector<std::string> groups = {"A1", "A2", "A3", "B2", "A1xA1", "B2xA1"};
    std::vector<long> ps = {2, 3, 5};
    for (int trial = 0; trial < 20; ++trial) {
      std::string group = groups[rng() % groups.size()];
      Int p(ps[rng() % ps.size()]);
      RootDatum rd = build_root_datum(group);
      std::vector<long> f;
      for (int i = 0; i < rd.num_roots(); ++i) f.push_back(static_cast<long>(rng() % 4) - 1);
      PSphericalSystem sys = example_flag(group, p, f);
      std::string tag = " (trial " + std::to_string(trial) + ", " + group + ")";
      expect(check_structure(sys).ok(), "structure" + tag);
      expect(check_color_count(sys).ok(), "color count" + tag);
      expect(check_color_relations(sys).ok(), "color relations" + tag);
      expect(validate(sys).ok(), "axioms" + tag);
      size_t parabolic = 0;
      for (long x : f)
        if (x == -1) ++parabolic;
      expect(sys.colors.size() + parabolic == static_cast<size_t>(rd.num_roots()),
             "one color per non-parabolic simple root" + tag);
    }
  });

  criterion("cone kernel vs exact elimination oracle: 200 random trials under 30s", [] {
    auto start = std::chrono::steady_clock::now();
    std::mt19937 rng(31);
    std::uniform_int_distribution<int> d(-3, 3);
    for (int trial = 0; trial < 200; ++trial) {
      int n = 2 + trial % 3;
      MatZ gens(1 + trial % 5, VecZ(n));
      for (auto& row : gens)
        for (auto& x : row) x = d(rng);
      ConeQ c = cone_from_rays(n, gens);
      VecZ probe(n);
      for (auto& x : probe) x = d(rng);
      expect(c.contains(probe) == oracle::in_cone(gens, probe), "membership (trial " + std::to_string(trial) + ")");
      for (const auto& r : c.rays)
        expect(oracle::in_cone(gens, r), "extremal ray containment (trial " + std::to_string(trial) + ")");
      if (c.is_pointed()) {
        for (size_t i = 0; i < c.rays.size(); ++i) {
          MatZ others;
          for (size_t j = 0; j < c.rays.size(); ++j)
            if (j != i) others.push_back(c.rays[j]);
          expect(!oracle::in_cone(others, c.rays[i]), "irredundancy (trial " + std::to_string(trial) + ")");
        }
      }
      expect(dual_cone(dual_cone(c)) == c, "dual involution (trial " + std::to_string(trial) + ")");
    }
    long ms = elapsed_ms(start);
    expect(ms < 30000, "elapsed " + std::to_string(ms) + "ms");
  });

  criterion("lattice membership vs enumeration oracle: 200 random trials under 30s", [] {
    auto start = std::chrono::steady_clock::now();
    std::mt19937 rng(77);
    std::uniform_int_distribution<int> d(-3, 3);
    for (int trial = 0; trial < 200; ++trial) {
      int n = 2 + trial % 2;
      MatZ gens(2, VecZ(n));
      for (auto& row : gens)
        for (auto& x : row) x = d(rng);
      IntegerLattice l = normal_form(n, gens);
      VecZ probe(n);
      for (auto& x : probe) x = d(rng);
      expect(member(probe, l) == oracle::in_lattice(l.basis, probe, 10),
             "membership (trial " + std::to_string(trial) + ")");
    }
    long ms = elapsed_ms(start);
    expect(ms < 30000, "elapsed " + std::to_string(ms) + "ms");
  });

  criterion("localization laws: identity, composition, half-plane fan quotient", [] {
    PSphericalSystem sys = example_sl3_unipotent(Int(5), Int(5));
    LocalizationResult full = localize_at_S(sys, {0, 1}, SMode::MinimalRank);
    expect(full.sys.sigma == sys.sigma && full.sys.xi == sys.xi, "Levi localization at S is the identity");

    PSphericalSystem once = localize_at_S(sys, {0}, SMode::MinimalRank).sys;
    PSphericalSystem via = localize_at_S(full.sys, {0}, SMode::MinimalRank).sys;
    expect(once.sigma == via.sigma && once.xi == via.xi && once.colors.size() == via.colors.size(),
           "Levi localization composes");

    LocalizationResult at_all = localize_at_Sigma(sys, {0, 1});
    expect(at_all.sys.sigma == sys.sigma && at_all.sys.xi == sys.xi,
           "localization at all spherical roots is the identity");

    Fan f = fan_from_cones(2, {cone_from_rays(2, mat({{-1, 0}, {0, -1}}))});
    FanLocalization l = localize_fan(f, VecQ{Rat(1), Rat(0)});
    expect(l.v_lambda_basis == mat({{1, 0}}), "wall localization finds the right sublattice");
    expect(l.quotient_fan.ambient_dim == 1 && l.quotient_fan.cones.size() == 2 &&
               l.quotient_fan.contains_cone(cone_from_rays(1, mat({{-1}}))),
           "quotient of the half-plane fan is the ray fan on a line");
    bool threw = false;
    try {
      localize_fan(f, VecQ{Rat(-1), Rat(0)});
    } catch (const Error&) {
      threw = true;
    }
    expect(threw, "localization outside the fan support is rejected");
  });

  criterion("axiom mutations: eight tampered systems each trip exactly the intended check", [] {
    {
      PSphericalSystem sys;
      sys.p = 3;
      sys.group_spec = "A2";
      sys.rd = build_root_datum("A2");
      sys.xi = normal_form(2, sys.rd.simple_roots);
      sys.sigma = mat({{2, 2}});
      expect(only_fails(validate(sys), "A1"), "imprimitive spherical root trips A1 only");
    }
    {
      PSphericalSystem sys;
      sys.p = 1;
      sys.group_spec = "A2";
      sys.rd = build_root_datum("A2");
      sys.xi = normal_form(2, MatZ{sys.rd.simple_roots[0]});
      sys.sp = {0};
      expect(only_fails(validate(sys), "A2"), "non-vanishing parabolic root trips A2 only");
    }
    {
      RootCatalog empty = parse_catalog("# nothing\n");
      AxiomReport rep = validate(example_frobenius_diag(Int(2), Int(2)), P2Mode::Auto, empty);
      expect(only_fails(rep, "A3"), "uncatalogued root trips A3 only");
      RootCatalog cat = load_catalog(std::string(SPHERICA_DATA_DIR) + "/catalog_a1xa1.txt");
      expect(validate(example_frobenius_diag(Int(2), Int(2)), P2Mode::Auto, cat).ok(),
             "catalogued root passes A3");
    }
    {
      PSphericalSystem sys = example_sl3_unipotent(Int(3), Int(3));
      sys.sigma.push_back(VecZ{Int(1), Int(1)});
      expect(validate(sys).status.at("A4") == "fail", "positive functional value trips A4");
    }
    {
      PSphericalSystem sys = example_sl3_unipotent(Int(3), Int(3));
      for (auto& x : sys.colors[1].delta) x = -x;
      AxiomReport rep = validate(sys);
      expect(rep.status.at("A5") == "fail" && rep.status.at("A6") == "undetermined" &&
                 rep.status.at("A4") != "fail",
             "broken positive pair trips A5 and leaves A6 undetermined");
    }
    {
      PSphericalSystem sys = example_sl3_unipotent(Int(3), Int(3));
      for (auto& x : sys.colors[1].delta) x *= 2;
      AxiomReport rep = validate(sys);
      expect(rep.status.at("A6") == "fail" && rep.status.at("A5") != "fail",
             "non-p-power recovered degree trips A6");
    }
    {
      PSphericalSystem sys;
      sys.p = 3;
      sys.group_spec = "A2";
      sys.rd = build_root_datum("A2");
      MatZ gens = {sys.rd.root_coords_to_ambient(VecZ{Int(2), Int(0)}),
                   sys.rd.root_coords_to_ambient(VecZ{Int(1), Int(1)})};
      sys.xi = normal_form(2, gens);
      sys.sigma = mat({{2, 0}, {1, 1}});
      expect(only_fails(validate(sys), "A7"), "odd halved pairing trips A7 only");
      expect(validate(sys, P2Mode::On).status.at("A7") == "skipped", "A7 is skipped under the characteristic-2 rules");
    }
    {
      PSphericalSystem sys = example_frobenius_diag(Int(2), Int(2));
      sys.colors[0].q[1] = 1;
      expect(only_fails(validate(sys), "A8"), "mismatched color degrees trip A8 only");
    }
  });

  criterion("spherical roots round-trip through the valuation cone: 100 random draws, p in {1,2,3,5}", [] {
    std::mt19937 rng(23);
    std::uniform_int_distribution<int> d(0, 2);
    std::vector<Int> ps = {Int(1), Int(2), Int(3), Int(5)};
    int done = 0;
    for (int trial = 0; done < 100 && trial < 2000; ++trial) {
      Int p = ps[trial % ps.size()];
      PSphericalSystem sys;
      sys.p = p;
      sys.rd = build_root_datum(trial % 2 ? "A3" : "A2");
      int n = sys.rd.num_roots();
      sys.xi = normal_form(n, sys.rd.simple_roots);
      MatZ sigma;
      for (int k = 0; k < 1 + trial % 3; ++k) {
        VecZ row(n, Int(0));
        for (auto& x : row) x = d(rng);
        if (is_zero(row)) row[0] = 1;
        sigma.push_back(primitive_ray(to_q(row)));
      }
      ConeQ c = cone_from_rays(n, sigma);
      MatZ cleaned;
      for (const auto& row : sigma) {
        bool extremal = false;
        for (const auto& r : c.rays)
          if (primitive_ray(to_q(row)) == primitive_ray(to_q(r))) extremal = true;
        if (extremal && std::find(cleaned.begin(), cleaned.end(), row) == cleaned.end()) cleaned.push_back(row);
      }
      if (cleaned.empty()) continue;
      IntegerLattice m = zs_cap_xip(sys.rd, sys.xi, p);
      sys.sigma.clear();
      for (const auto& row : cleaned) {
        IntegerLattice line = intersect_with_span(m, MatZ{row});
        if (line.rank() != 1) continue;
        VecZ g = line.basis[0];
        if (dot(g, row) < 0)
          for (auto& x : g) x = -x;
        sys.sigma.push_back(g);
      }
      if (sys.sigma.empty()) continue;
      MatZ back = spherical_roots_from_cone(valuation_cone(sys), sys.rd, sys.xi, sys.p);
      MatZ want = sys.sigma;
      sort_rows(want);
      if (back != want)
        expect(false, "round trip failed on trial " + std::to_string(trial));
      ++done;
    }
    expect(done == 100, "completed " + std::to_string(done) + " of 100 draws");
  });

  std::cout << (g_failures == 0 ? "ALL CRITERIA PASSED" : std::to_string(g_failures) + " CRITERIA FAILED") << "\n";
  return g_failures;
}
