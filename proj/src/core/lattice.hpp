#pragma once

#include "root_datum.hpp"

namespace spherica {

// Finitely generated subgroup of Z^n, kept in canonical row Hermite normal
// form so equal subgroups compare equal.
struct IntegerLattice {
  int ambient_dim = 0;
  MatZ basis;  // canonical HNF rows

  int rank() const { return static_cast<int>(basis.size()); }
  bool operator==(const IntegerLattice&) const = default;
};

IntegerLattice normal_form(int ambient_dim, const MatZ& generators);

bool member(const VecZ& x, const IntegerLattice& l);

IntegerLattice intersect(const IntegerLattice& l1, const IntegerLattice& l2);

// Lattice with p-localized membership semantics (p = 1: plain lattice).
struct PLocalizedLattice {
  IntegerLattice base;
  Int p;
};

// True iff p^k * x lies in the base lattice for some k >= 0.
bool member_p(const VecZ& x, const PLocalizedLattice& lp);

// { x in ZS : p^k x in Xi for some k }, as a sublattice of ZS in simple-root
// coordinates.
IntegerLattice zs_cap_xip(const RootDatum& rd, const IntegerLattice& xi, const Int& p);

// x extends to a basis of l (gcd of basis coordinates is 1).  Throws when
// x is not a lattice member.
bool is_primitive(const VecZ& x, const IntegerLattice& l);

// Sublattice { x in l : k * x = 0 for all covector rows k }.
IntegerLattice intersect_with_covector_kernel(const IntegerLattice& l, const MatZ& covectors);

// Sublattice of l contained in the rational span of the given vectors.
IntegerLattice intersect_with_span(const IntegerLattice& l, const MatZ& span_vectors);

}  // namespace spherica
