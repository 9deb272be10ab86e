#pragma once

#include "linalg.hpp"

#include <string>
#include <vector>

namespace spherica {

// Simple roots and coroots of a (possibly reducible) finite-type root datum,
// realized in a fixed ambient basis.  For built-in Cartan types the ambient
// basis is the fundamental-weight basis: coroot i is the covector e_i and
// simple root j has coordinates equal to column j of the Cartan matrix
// (c[i][j] = <alpha_j, alpha_i^vee>).  The number of simple roots may be
// smaller than the ambient dimension (Levi subdata share the ambient space of
// their parent).
struct RootDatum {
  int ambient_dim = 0;
  MatZ simple_roots;  // rows, ambient coordinates
  MatZ coroots;       // rows, covectors on the ambient space
  std::vector<std::string> labels;

  int num_roots() const { return static_cast<int>(simple_roots.size()); }

  // c[i][j] = <alpha_j, alpha_i^vee>
  MatZ cartan_matrix() const;

  Rat pairing(const VecQ& chi, int coroot_index) const;
  Rat pairing(const VecZ& chi, int coroot_index) const;

  int label_index(const std::string& label) const;  // -1 when absent

  // Sub-datum on a subset of simple-root indices, same ambient space.
  RootDatum restrict_to(const std::vector<int>& indices) const;

  // Ambient vector of an element of ZS given in simple-root coordinates.
  VecZ root_coords_to_ambient(const VecZ& c) const;
};

// "A2", "A1xA1", "B2xA3", ... or an explicit generalized Cartan matrix.
RootDatum build_root_datum(const std::string& type_string);
RootDatum build_root_datum(const MatZ& cartan);

// alpha^r on the dual basis of the given basis of Xi_Q: entry j is
// <basis_j, alpha^vee>.  Throws on a linearly dependent basis.
VecQ coroot_restriction(const RootDatum& rd, int alpha_index, const MatQ& basis);

// Rational covector lambda with lambda(alpha) = 0 on S' and lambda(alpha) = 1
// on S \ S' (sum of fundamental coweights of the complement).
VecQ adapted_coweight(const RootDatum& rd, const std::vector<int>& s_prime);

}  // namespace spherica
