#pragma once

#include "lattice.hpp"

#include <string>
#include <vector>

namespace spherica {

// Rational polyhedral cone with both descriptions kept in canonical form:
// extremal rays and lineality generators on the V-side, facet normals and
// span equations on the H-side.  Rays and facet normals are primitive
// integer vectors, projected orthogonally modulo the lineality space (resp.
// span equations) and sorted lexicographically, so set-equal cones compare
// equal componentwise.
struct ConeQ {
  int ambient_dim = 0;
  MatZ rays;           // extremal rays of the pointed part
  MatZ lineality;      // canonical basis of the lineality lattice
  MatZ facet_normals;  // u with u(x) >= 0 on the cone
  MatZ span_eqs;       // u with u(x) = 0 on the cone

  bool operator==(const ConeQ&) const = default;

  bool contains(const VecQ& x) const;
  bool contains(const VecZ& x) const;
  bool relint_contains(const VecQ& x) const;
  bool relint_contains(const VecZ& x) const;
  bool is_pointed() const { return lineality.empty(); }
  bool is_subspace() const { return rays.empty(); }
  bool is_zero() const { return rays.empty() && lineality.empty(); }
  int dim() const;  // dimension of the linear span
};

ConeQ cone_from_rays(int ambient_dim, const MatZ& rays);
ConeQ cone_from_rays(int ambient_dim, const MatQ& rays);
ConeQ cone_from_inequalities(int ambient_dim, const MatZ& normals, const MatZ& equations = {});
ConeQ cone_zero(int ambient_dim);
ConeQ cone_full_space(int ambient_dim);

// { u : u(v) >= 0 for all v in c }
ConeQ dual_cone(const ConeQ& c);

// Throws (naming a contained line) when the cone is not pointed.
MatZ extremal_rays(const ConeQ& c);

ConeQ intersect(const ConeQ& a, const ConeQ& b);

// All faces, including the cone itself and its minimal face.
std::vector<ConeQ> faces(const ConeQ& c);

bool is_face(const ConeQ& f, const ConeQ& c);

// Canonical image of x under orthogonal projection modulo the span of the
// cone's lineality (used internally; exposed for tests).
struct FanCheck {
  bool valid = true;
  std::vector<std::string> violations;
};

struct Fan {
  int ambient_dim = 0;
  std::vector<ConeQ> cones;

  bool contains_cone(const ConeQ& c) const;
  bool is_pointed() const;
};

FanCheck validate_fan(const Fan& f);

// Maximal cones (the support descriptor).
std::vector<ConeQ> fan_support(const Fan& f);

// Face closure of a list of cones, deduplicated.
Fan fan_from_cones(int ambient_dim, const std::vector<ConeQ>& cones);

struct FanLocalization {
  Fan quotient_fan;        // in the quotient space (dimension = ambient - dim V)
  MatZ v_lambda_basis;     // saturated lattice basis of V(lambda)
  ConeQ c_lambda;          // the cone with -lambda^r in its relative interior
  MatZ quotient_map;       // integer matrix Q: x -> Qx, kernel = V(lambda)
  std::vector<size_t> member_indices;  // cones of f entering the localization
};

// Localization of a fan at lambda^r: quotient of the star of the unique cone
// containing -lambda^r in its relative interior.
FanLocalization localize_fan(const Fan& f, const VecQ& lambda_r);

}  // namespace spherica
