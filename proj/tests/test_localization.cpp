#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "core/axioms.hpp"
#include "core/io.hpp"
#include "core/localization.hpp"

#include <algorithm>
#include <set>

using namespace spherica;
using namespace spherica::linalg;

// row vector f with dot(f, rows[i]) = targets[i]; rows square invertible
static VecQ functional_with(const MatQ& rows, const VecQ& targets) {
  MatQ inv = inverse(rows);
  VecQ out(rows.size(), Rat(0));
  for (size_t j = 0; j < rows.size(); ++j)
    for (size_t i = 0; i < targets.size(); ++i) out[j] += inv[j][i] * targets[i];
  return out;
}

static MatZ mat(std::initializer_list<std::initializer_list<long>> rows) {
  MatZ m;
  for (auto& r : rows) {
    VecZ v;
    for (long x : r) v.push_back(Int(x));
    m.push_back(std::move(v));
  }
  return m;
}

TEST_CASE("quadrangle neighbor sets") {
  PSphericalSystem sys = example_so4_quadrangle();
  // the four rays close up into a quadrangle: 0-1-2-3 with diagonals 0-2, 1-3
  CHECK(is_neighbor_set({}, sys).is_neighbor);
  CHECK(is_neighbor_set({0}, sys).is_neighbor);
  CHECK(is_neighbor_set({0, 1}, sys).is_neighbor);
  CHECK(is_neighbor_set({1, 2}, sys).is_neighbor);
  CHECK(is_neighbor_set({2, 3}, sys).is_neighbor);
  CHECK(is_neighbor_set({0, 3}, sys).is_neighbor);
  CHECK(is_neighbor_set({0, 1, 2, 3}, sys).is_neighbor);

  NeighborResult diag = is_neighbor_set({0, 2}, sys);
  CHECK(!diag.is_neighbor);
  CHECK(diag.reason.find("not a face") != std::string::npos);
  CHECK(!is_neighbor_set({1, 3}, sys).is_neighbor);
  CHECK(!is_neighbor_set({0, 1, 2}, sys).is_neighbor);

  auto all = all_neighbor_sets(sys);
  CHECK(all.size() == 10);  // empty + 4 vertices + 4 edges + everything
}

TEST_CASE("exactness rejects a subset whose face carries more roots") {
  PSphericalSystem sys;
  sys.p = 1;
  sys.group_spec = "A2";
  sys.rd = build_root_datum("A2");
  sys.xi = normal_form(2, sys.rd.simple_roots);
  sys.sigma = mat({{1, 0}, {1, 1}, {0, 1}});
  NeighborResult r = is_neighbor_set({0, 2}, sys);
  CHECK(!r.is_neighbor);
  CHECK(r.reason.find("also lies on that face") != std::string::npos);
  // the middle root alone is not even a face
  CHECK(!is_neighbor_set({1}, sys).is_neighbor);
}

TEST_CASE("independent roots: every subset is a neighbor set") {
  PSphericalSystem sys;
  sys.p = 1;
  sys.group_spec = "A3";
  sys.rd = build_root_datum("A3");
  sys.xi = normal_form(3, sys.rd.simple_roots);
  sys.sigma = mat({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  CHECK(all_neighbor_sets(sys).size() == 8);
}

TEST_CASE("witness vanishes exactly on the chosen subset") {
  PSphericalSystem sys = example_so4_quadrangle();
  MatQ coords;
  for (size_t k = 0; k < sys.sigma.size(); ++k)
    coords.push_back(*to_xi_coords(sys, sys.rd.root_coords_to_ambient(sys.sigma[k])));
  for (const auto& subset : all_neighbor_sets(sys)) {
    if (subset.size() == sys.sigma.size()) continue;  // witness 0, vacuous
    NeighborResult r = is_neighbor_set(subset, sys);
    REQUIRE(r.is_neighbor);
    std::set<size_t> chosen(subset.begin(), subset.end());
    for (size_t k = 0; k < coords.size(); ++k) {
      Rat v = dot(r.witness, coords[k]);
      if (chosen.count(k))
        CHECK(v == 0);
      else
        CHECK(v < 0);
    }
    // the witness lies in the valuation cone
    CHECK(valuation_cone(sys).contains(r.witness));
  }
}

TEST_CASE("neighbor sets are closed under intersection") {
  PSphericalSystem sys = example_so4_quadrangle();
  auto all = all_neighbor_sets(sys);
  for (const auto& a : all)
    for (const auto& b : all) {
      std::vector<size_t> meet;
      std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(meet));
      CHECK(std::find(all.begin(), all.end(), meet) != all.end());
    }
}

TEST_CASE("Levi localization at the full set is the identity") {
  PSphericalSystem sys = example_sl3_unipotent(Int(3), Int(3));
  LocalizationResult r = localize_at_S(sys, {0, 1}, SMode::MinimalRank);
  CHECK(r.sys.sigma == sys.sigma);
  CHECK(r.sys.xi == sys.xi);
  CHECK(r.sys.colors.size() == 3);
  CHECK(r.dropped.empty());
}

TEST_CASE("Levi localization filters by support and restricts colors") {
  PSphericalSystem sys = example_sl3_unipotent(Int(3), Int(9));
  LocalizationResult r = localize_at_S(sys, {0}, SMode::MinimalRank);
  CHECK(r.sys.rd.num_roots() == 1);
  CHECK(r.sys.sigma == mat({{1}}));
  CHECK(r.sys.xi.rank() == 1);
  // Xi' = Xi cap span(alpha1) = <9 alpha1>
  VecZ nine_a1 = sys.rd.root_coords_to_ambient(VecZ{Int(9), Int(0)});
  CHECK(r.sys.xi == normal_form(sys.rd.ambient_dim, MatZ{nine_a1}));
  CHECK(r.sys.colors.size() == 2);  // the color moved only by alpha2 is dropped
  CHECK(r.dropped.size() == 2);     // that color, and the alpha2 sigma row

  // the derived system is again a valid system
  CHECK(check_structure(r.sys).ok());
  CHECK(check_color_relations(r.sys).ok());
  CHECK(validate(r.sys).ok());
}

TEST_CASE("Levi localization composes") {
  PSphericalSystem sys = example_sl3_unipotent(Int(5), Int(5));
  PSphericalSystem once = localize_at_S(sys, {0}, SMode::MinimalRank).sys;
  PSphericalSystem via = localize_at_S(localize_at_S(sys, {0, 1}, SMode::MinimalRank).sys, {0}, SMode::MinimalRank).sys;
  CHECK(once.sigma == via.sigma);
  CHECK(once.xi == via.xi);
  CHECK(once.sp == via.sp);
  REQUIRE(once.colors.size() == via.colors.size());
  for (size_t i = 0; i < once.colors.size(); ++i) {
    CHECK(once.colors[i].name == via.colors[i].name);
    CHECK(once.colors[i].delta == via.colors[i].delta);
    CHECK(once.colors[i].q == via.colors[i].q);
    CHECK(once.colors[i].moved_by == via.colors[i].moved_by);
  }
}

TEST_CASE("fan-mode Levi localization matches minimal rank on an adapted covector") {
  PSphericalSystem sys = example_sl3_unipotent(Int(1), Int(1));
  ConeQ v = valuation_cone(sys);
  sys.fan = fan_from_cones(2, {v});

  VecQ c1 = *to_xi_coords(sys, sys.rd.simple_roots[0]);
  VecQ c2 = *to_xi_coords(sys, sys.rd.simple_roots[1]);
  VecQ lambda = functional_with(MatQ{c1, c2}, VecQ{Rat(0), Rat(1)});

  LocalizationResult fanres = localize_at_S(sys, {0}, SMode::Fan, lambda);
  LocalizationResult minres = localize_at_S(sys, {0}, SMode::MinimalRank);
  CHECK(fanres.sys.xi == minres.sys.xi);
  CHECK(fanres.sys.sigma == minres.sys.sigma);

  // error paths
  PSphericalSystem nofan = example_sl3_unipotent(Int(1), Int(1));
  CHECK_THROWS_WITH_AS(localize_at_S(nofan, {0}, SMode::Fan, lambda), doctest::Contains("requires a fan"), Error);
  CHECK_THROWS_WITH_AS(localize_at_S(sys, {0}, SMode::Fan, std::nullopt), doctest::Contains("requires lambda"), Error);
  VecQ bad = functional_with(MatQ{c1, c2}, VecQ{Rat(1), Rat(1)});
  CHECK_THROWS_WITH_AS(localize_at_S(sys, {0}, SMode::Fan, bad), doctest::Contains("does not vanish"), Error);
  PSphericalSystem outside = sys;
  outside.fan = fan_from_cones(2, {cone_from_rays(2, mat({{1, 0}}))});
  CHECK_THROWS_WITH_AS(localize_at_S(outside, {0}, SMode::Fan, lambda), doctest::Contains("not inside the valuation cone"),
                       Error);
}

TEST_CASE("localization at the full root set is the identity") {
  PSphericalSystem sys = example_sl3_unipotent(Int(3), Int(3));
  LocalizationResult r = localize_at_Sigma(sys, {0, 1});
  CHECK(r.sys.sigma == sys.sigma);
  CHECK(r.sys.xi == sys.xi);
  CHECK(r.sys.colors.size() == 3);
  for (const auto& d : r.sys.colors) {
    CHECK(d.ctype == ColorType::A);
    CHECK(d.q_symbolic);  // degrees are only known up to a p-power factor
  }
  bool symbolic_warned = false;
  for (const auto& w : r.warnings)
    if (w.find("p^?") != std::string::npos) symbolic_warned = true;
  CHECK(symbolic_warned);
}

TEST_CASE("localization at one root demotes the other") {
  PSphericalSystem sys = example_sl3_unipotent(Int(3), Int(3));
  LocalizationResult r = localize_at_Sigma(sys, {0});
  CHECK(r.sys.sigma == mat({{1, 0}}));
  // Xi' = rank-one sublattice through 3 alpha1
  VecZ three_a1 = sys.rd.root_coords_to_ambient(VecZ{Int(3), Int(0)});
  CHECK(r.sys.xi == normal_form(sys.rd.ambient_dim, MatZ{three_a1}));

  bool demoted = false;
  for (const auto& s : r.provenance)
    if (s.find("a2: A -> B") != std::string::npos) demoted = true;
  CHECK(demoted);

  // colors still moved by a surviving type-A root persist as type A
  int type_a = 0, placeholders = 0;
  for (const auto& d : r.sys.colors)
    (d.ctype == ColorType::A ? type_a : placeholders)++;
  CHECK(type_a == 2);
  CHECK(placeholders == 1);
  bool placeholder_warned = false;
  for (const auto& w : r.warnings)
    if (w.find("placeholder") != std::string::npos) placeholder_warned = true;
  CHECK(placeholder_warned);
}

TEST_CASE("localization rejects non-neighbor subsets") {
  PSphericalSystem sys = example_so4_quadrangle();
  CHECK_THROWS_WITH_AS(localize_at_Sigma(sys, {0, 2}), doctest::Contains("not a set of neighbors"), Error);
}

TEST_CASE("p = 2 localization warns about undetermined types") {
  PSphericalSystem sys = example_so4_quadrangle();
  LocalizationResult r = localize_at_Sigma(sys, {0});
  CHECK(r.sys.sigma == mat({{1, 0, 0}}));
  bool warned = false;
  for (const auto& w : r.warnings)
    if (w.find("undetermined") != std::string::npos) warned = true;
  CHECK(warned);
}

TEST_CASE("neighbor bound on the published table") {
  for (long p : {2L, 3L, 5L}) {
    Int q(p);
    for (int e = 0; e < 2; ++e, q *= p) {
      Report rep = check_neighbor_inequalities(example_sl3_unipotent(Int(p), q));
      CHECK(rep.ok());
    }
  }
  // delta > 0 on a neighboring root is only allowed for its own movers
  PSphericalSystem sys = example_sl3_unipotent(Int(3), Int(3));
  for (auto& x : sys.colors[1].delta) x = -x;  // now positive on alpha2, which does not move it
  Report rep = check_neighbor_inequalities(sys);
  CHECK(!rep.ok());
}

TEST_CASE("two-sided neighbor bound") {
  // strip the shared color so the bound becomes applicable
  PSphericalSystem sys = example_sl3_unipotent(Int(1), Int(1));
  sys.colors.erase(sys.colors.begin());  // remove the color moved by both roots
  VecQ c1 = *to_xi_coords(sys, sys.rd.simple_roots[0]);
  VecQ c2 = *to_xi_coords(sys, sys.rd.simple_roots[1]);

  // keep the second color inside its own bound throughout
  sys.colors[1].delta = functional_with(MatQ{c1, c2}, VecQ{Rat(-1), Rat(1)});

  // delta(alpha1) = 1, delta(alpha2) = -2 violates [-1, 0]
  sys.colors[0].delta = functional_with(MatQ{c1, c2}, VecQ{Rat(1), Rat(-2)});
  Report bad = check_neighbor_inequalities(sys);
  CHECK(!bad.ok());
  bool violation = false;
  for (const auto& i : bad.items)
    if (i.status == "fail" && i.detail.find("violates") != std::string::npos) violation = true;
  CHECK(violation);

  // delta(alpha2) = -1 sits on the boundary of the bound
  sys.colors[0].delta = functional_with(MatQ{c1, c2}, VecQ{Rat(1), Rat(-1)});
  CHECK(check_neighbor_inequalities(sys).ok());

  // a symbolic degree leaves the bound undetermined
  sys.colors[0].q_symbolic = true;
  sys.colors[0].q.clear();
  Report undet = check_neighbor_inequalities(sys);
  bool has_undet = false;
  for (const auto& i : undet.items)
    if (i.status == "undetermined") has_undet = true;
  CHECK(has_undet);
}

TEST_CASE("no applicable triples reports a trivial pass") {
  Report rep = check_neighbor_inequalities(example_frobenius_diag(Int(2), Int(2)));
  CHECK(rep.ok());
  CHECK(rep.items.size() == 1);
  CHECK(rep.items.front().detail.find("no applicable") != std::string::npos);
}
