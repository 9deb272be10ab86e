#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "core/root_datum.hpp"

using namespace spherica;
using namespace spherica::linalg;

TEST_CASE("A2 realization in fundamental-weight basis") {
  RootDatum rd = build_root_datum("A2");
  CHECK(rd.ambient_dim == 2);
  CHECK(rd.labels == std::vector<std::string>{"a1", "a2"});
  CHECK(rd.cartan_matrix() == MatZ{{Int(2), Int(-1)}, {Int(-1), Int(2)}});
  CHECK(rd.simple_roots[0] == VecZ{Int(2), Int(-1)});
  CHECK(rd.simple_roots[1] == VecZ{Int(-1), Int(2)});
  CHECK(rd.pairing(rd.simple_roots[0], 0) == Rat(2));
  CHECK(rd.pairing(rd.simple_roots[1], 0) == Rat(-1));
}

TEST_CASE("non-simply-laced conventions") {
  RootDatum b2 = build_root_datum("B2");
  CHECK(b2.cartan_matrix() == MatZ{{Int(2), Int(-1)}, {Int(-2), Int(2)}});
  RootDatum g2 = build_root_datum("G2");
  CHECK(g2.cartan_matrix() == MatZ{{Int(2), Int(-1)}, {Int(-3), Int(2)}});
  RootDatum c3 = build_root_datum("C3");
  CHECK(c3.cartan_matrix()[1][2] == -2);
  CHECK(c3.cartan_matrix()[2][1] == -1);
}

TEST_CASE("products get block Cartan matrices and prefixed labels") {
  RootDatum rd = build_root_datum("A1xB2");
  CHECK(rd.ambient_dim == 3);
  CHECK(rd.labels == std::vector<std::string>{"g1.a1", "g2.a1", "g2.a2"});
  MatZ c = rd.cartan_matrix();
  CHECK(c[0][1] == 0);
  CHECK(c[1][2] == -1);
  CHECK(c[2][1] == -2);
  CHECK(rd.label_index("g2.a2") == 2);
  CHECK(rd.label_index("a1") == -1);
}

TEST_CASE("finite type check rejects affine and junk matrices") {
  CHECK_THROWS(build_root_datum(MatZ{{Int(2), Int(-2)}, {Int(-2), Int(2)}}));
  CHECK_THROWS(build_root_datum(MatZ{{Int(1)}}));
  CHECK_THROWS(build_root_datum(MatZ{{Int(2), Int(0)}, {Int(-1), Int(2)}}));
  CHECK_THROWS(build_root_datum("Z9"));
  CHECK_NOTHROW(build_root_datum(MatZ{{Int(2), Int(-1)}, {Int(-3), Int(2)}}));
}

TEST_CASE("D4 and E6 are accepted with correct determinants") {
  RootDatum d4 = build_root_datum("D4");
  CHECK(d4.num_roots() == 4);
  RootDatum e6 = build_root_datum("E6");
  CHECK(e6.num_roots() == 6);
  CHECK(rank(e6.cartan_matrix()) == 6);
}

TEST_CASE("restrict_to keeps the ambient space") {
  RootDatum rd = build_root_datum("A3");
  RootDatum levi = rd.restrict_to({0, 2});
  CHECK(levi.ambient_dim == 3);
  CHECK(levi.num_roots() == 2);
  CHECK(levi.labels == std::vector<std::string>{"a1", "a3"});
  CHECK(levi.cartan_matrix() == MatZ{{Int(2), Int(0)}, {Int(0), Int(2)}});
  CHECK(levi.simple_roots[0] == rd.simple_roots[0]);
}

TEST_CASE("root_coords_to_ambient") {
  RootDatum rd = build_root_datum("A2");
  VecZ v = rd.root_coords_to_ambient(VecZ{Int(1), Int(1)});
  CHECK(v == VecZ{Int(1), Int(1)});
  VecZ w = rd.root_coords_to_ambient(VecZ{Int(2), Int(0)});
  CHECK(w == VecZ{Int(4), Int(-2)});
}

TEST_CASE("coroot_restriction on a sublattice basis") {
  RootDatum rd = build_root_datum("A2");
  // Xi = <alpha1 + alpha2> has ambient basis (1,1)
  MatQ basis = {{Rat(1), Rat(1)}};
  VecQ r1 = coroot_restriction(rd, 0, basis);
  CHECK(r1 == VecQ{Rat(1)});
  VecQ r2 = coroot_restriction(rd, 1, basis);
  CHECK(r2 == VecQ{Rat(1)});
  CHECK_THROWS(coroot_restriction(rd, 0, MatQ{{Rat(1), Rat(0)}, {Rat(2), Rat(0)}}));
}

TEST_CASE("adapted coweight vanishes on S' and is 1 elsewhere") {
  RootDatum rd = build_root_datum("A3");
  VecQ lam = adapted_coweight(rd, {0, 1});
  CHECK(dot(lam, to_q(rd.simple_roots[0])) == Rat(0));
  CHECK(dot(lam, to_q(rd.simple_roots[1])) == Rat(0));
  CHECK(dot(lam, to_q(rd.simple_roots[2])) == Rat(1));
}
