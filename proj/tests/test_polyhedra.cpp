#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "core/cone.hpp"
#include "oracles.hpp"

#include <chrono>
#include <random>

using namespace spherica;
using namespace spherica::linalg;

static MatZ mat(std::initializer_list<std::initializer_list<long>> rows) {
  MatZ m;
  for (auto& r : rows) {
    VecZ v;
    for (long x : r) v.push_back(Int(x));
    m.push_back(std::move(v));
  }
  return m;
}

static VecZ vec(std::initializer_list<long> xs) {
  VecZ v;
  for (long x : xs) v.push_back(Int(x));
  return v;
}

// all generators of the cone including both signs of lineality
static MatZ all_gens(const ConeQ& c) {
  MatZ g = c.rays;
  for (const auto& l : c.lineality) {
    g.push_back(l);
    VecZ neg(l.size());
    for (size_t j = 0; j < l.size(); ++j) neg[j] = -l[j];
    g.push_back(std::move(neg));
  }
  return g;
}

TEST_CASE("quadrant") {
  ConeQ c = cone_from_rays(2, mat({{1, 0}, {0, 1}, {1, 1}}));
  CHECK(c.rays == mat({{0, 1}, {1, 0}}));
  CHECK(c.lineality.empty());
  CHECK(c.facet_normals == mat({{0, 1}, {1, 0}}));
  CHECK(c.span_eqs.empty());
  CHECK(c.is_pointed());
  CHECK(c.dim() == 2);
  CHECK(c.contains(vec({3, 5})));
  CHECK(!c.contains(vec({-1, 5})));
  CHECK(c.relint_contains(vec({1, 1})));
  CHECK(!c.relint_contains(vec({1, 0})));
}

TEST_CASE("half-plane detects lineality") {
  ConeQ c = cone_from_rays(2, mat({{1, 0}, {-1, 0}, {0, 1}}));
  CHECK(c.lineality == mat({{1, 0}}));
  CHECK(c.rays == mat({{0, 1}}));
  CHECK(c.facet_normals == mat({{0, 1}}));
  CHECK(c.span_eqs.empty());
  CHECK(!c.is_pointed());
  CHECK_THROWS(extremal_rays(c));
}

TEST_CASE("dual of a single ray is a half-plane") {
  ConeQ d = dual_cone(cone_from_rays(2, mat({{1, 1}})));
  CHECK(d.facet_normals == mat({{1, 1}}));
  CHECK(d.lineality == mat({{1, -1}}));
  CHECK(d.contains(vec({1, 0})));
  CHECK(d.contains(vec({-1, 2})));
  CHECK(!d.contains(vec({-1, 0})));
}

TEST_CASE("inequalities and rays round-trip") {
  ConeQ a = cone_from_inequalities(3, mat({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
  ConeQ b = cone_from_rays(3, mat({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
  CHECK(a == b);

  ConeQ with_eq = cone_from_inequalities(3, mat({{1, 0, 0}}), mat({{0, 0, 1}}));
  CHECK(with_eq.span_eqs == mat({{0, 0, 1}}));
  CHECK(with_eq.lineality == mat({{0, 1, 0}}));
  CHECK(with_eq.rays == mat({{1, 0, 0}}));
}

TEST_CASE("zero and full-space cones") {
  ConeQ z = cone_zero(2);
  CHECK(z.is_zero());
  CHECK(z.span_eqs == mat({{1, 0}, {0, 1}}));
  ConeQ f = cone_full_space(2);
  CHECK(f.rays.empty());
  CHECK(f.lineality == mat({{1, 0}, {0, 1}}));
  CHECK(f.facet_normals.empty());
  CHECK(f.span_eqs.empty());
  CHECK(dual_cone(f) == z);
  CHECK(dual_cone(z) == f);
}

TEST_CASE("dual is an involution on random cones") {
  std::mt19937 rng(13);
  std::uniform_int_distribution<int> d(-3, 3);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 2 + trial % 3;
    MatZ gens(2 + trial % 4, VecZ(n));
    for (auto& row : gens)
      for (auto& x : row) x = d(rng);
    ConeQ c = cone_from_rays(n, gens);
    CHECK(dual_cone(dual_cone(c)) == c);
  }
}

TEST_CASE("membership and extremality agree with the LP oracle") {
  auto start = std::chrono::steady_clock::now();
  std::mt19937 rng(31);
  std::uniform_int_distribution<int> d(-3, 3);
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    int n = 2 + trial % 3;
    MatZ gens(1 + trial % 5, VecZ(n));
    for (auto& row : gens)
      for (auto& x : row) x = d(rng);
    ConeQ c = cone_from_rays(n, gens);
    // membership of a random probe agrees with Fourier-Motzkin feasibility
    VecZ probe(n);
    for (auto& x : probe) x = d(rng);
    CHECK(c.contains(probe) == oracle::in_cone(gens, probe));
    ++checked;
    // every input generator is contained
    for (const auto& g : gens) CHECK(c.contains(g));
    // reported extremal rays generate the same cone (oracle double check)
    for (const auto& r : c.rays) CHECK(oracle::in_cone(gens, r));
    // extremal rays are not redundant: r is not in the cone of the others
    if (c.is_pointed()) {
      for (size_t i = 0; i < c.rays.size(); ++i) {
        MatZ others;
        for (size_t j = 0; j < c.rays.size(); ++j)
          if (j != i) others.push_back(c.rays[j]);
        CHECK(!oracle::in_cone(others, c.rays[i]));
      }
    }
    // facet normals are valid inequalities
    for (const auto& u : c.facet_normals)
      for (const auto& g : all_gens(c)) CHECK(dot(u, g) >= 0);
  }
  CHECK(checked == 200);
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  CHECK(ms < 30000);
}

TEST_CASE("faces of the quadrant") {
  ConeQ c = cone_from_rays(2, mat({{1, 0}, {0, 1}}));
  auto fs = faces(c);
  CHECK(fs.size() == 4);  // cone, two edges, origin
  for (const auto& f : fs) CHECK(is_face(f, c));
  CHECK(!is_face(cone_from_rays(2, mat({{1, 1}})), c));
  CHECK(is_face(cone_zero(2), c));
}

TEST_CASE("intersection") {
  ConeQ a = cone_from_rays(2, mat({{1, 0}, {0, 1}}));
  ConeQ b = cone_from_rays(2, mat({{1, 1}, {1, -1}}));
  ConeQ i = intersect(a, b);
  CHECK(i == cone_from_rays(2, mat({{1, 0}, {1, 1}})));
}

TEST_CASE("fan validation") {
  Fan good;
  good.ambient_dim = 2;
  good.cones = {cone_zero(2), cone_from_rays(2, mat({{-1, 0}})), cone_from_rays(2, mat({{0, -1}})),
                cone_from_rays(2, mat({{-1, 0}, {0, -1}}))};
  CHECK(validate_fan(good).valid);
  CHECK(good.is_pointed());

  Fan overlap = fan_from_cones(2, {cone_from_rays(2, mat({{1, 0}, {0, 1}})),
                                   cone_from_rays(2, mat({{1, 1}, {1, -1}}))});
  auto res = validate_fan(overlap);
  CHECK(!res.valid);
  CHECK(!res.violations.empty());

  Fan empty;
  empty.ambient_dim = 2;
  CHECK(validate_fan(empty).valid);
  CHECK(fan_support(empty).empty());

  Fan missing_face;
  missing_face.ambient_dim = 2;
  missing_face.cones = {cone_from_rays(2, mat({{-1, 0}, {0, -1}}))};
  CHECK(!validate_fan(missing_face).valid);
}

TEST_CASE("fan_from_cones closes under faces") {
  Fan f = fan_from_cones(2, {cone_from_rays(2, mat({{-1, 0}, {0, -1}}))});
  CHECK(f.cones.size() == 4);
  CHECK(validate_fan(f).valid);
  auto maximal = fan_support(f);
  CHECK(maximal.size() == 1);
}

TEST_CASE("fan localization worked examples") {
  Fan f = fan_from_cones(2, {cone_from_rays(2, mat({{-1, 0}, {0, -1}}))});

  // lambda in the interior of the maximal cone: everything collapses
  FanLocalization l1 = localize_fan(f, VecQ{Rat(1), Rat(1)});
  CHECK(l1.c_lambda == cone_from_rays(2, mat({{-1, 0}, {0, -1}})));
  CHECK(l1.v_lambda_basis.size() == 2);
  CHECK(l1.quotient_fan.ambient_dim == 0);
  CHECK(l1.quotient_fan.cones.size() == 1);

  // lambda on a wall: quotient is the ray fan {0, Q<=0} on a line
  FanLocalization l2 = localize_fan(f, VecQ{Rat(1), Rat(0)});
  CHECK(l2.c_lambda == cone_from_rays(2, mat({{-1, 0}})));
  CHECK(l2.v_lambda_basis == mat({{1, 0}}));
  CHECK(l2.quotient_fan.ambient_dim == 1);
  REQUIRE(l2.quotient_fan.cones.size() == 2);
  CHECK(l2.quotient_fan.contains_cone(cone_zero(1)));
  CHECK(l2.quotient_fan.contains_cone(cone_from_rays(1, mat({{-1}}))));
  CHECK(l2.quotient_fan.is_pointed());
  CHECK(l2.member_indices.size() == 2);

  // lambda = 0: identity localization
  FanLocalization l3 = localize_fan(f, VecQ{Rat(0), Rat(0)});
  CHECK(l3.c_lambda == cone_zero(2));
  CHECK(l3.v_lambda_basis.empty());
  CHECK(l3.quotient_fan.cones.size() == f.cones.size());
  for (const auto& c : f.cones) CHECK(l3.quotient_fan.contains_cone(c));

  // lambda outside the support
  CHECK_THROWS(localize_fan(f, VecQ{Rat(-1), Rat(0)}));
}
