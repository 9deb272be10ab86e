#pragma once

#include "numeric.hpp"

namespace spherica::linalg {

// --- basic vector/matrix helpers ------------------------------------------

Rat dot(const VecQ& a, const VecQ& b);
Rat dot(const VecQ& a, const VecZ& b);
Int dot(const VecZ& a, const VecZ& b);

VecQ to_q(const VecZ& v);
MatQ to_q(const MatZ& m);
MatZ transpose(const MatZ& m);
bool is_zero(const VecZ& v);
bool is_zero(const VecQ& v);
VecZ zero_vec(int n);

// Positive rescaling of a rational direction to a primitive integer vector.
// Preserves orientation (multiplies by a positive scalar only).
VecZ primitive_ray(const VecQ& v);
VecZ primitive_ray(const VecZ& v);

// Deterministic row ordering used for canonical generator lists.
bool lex_less(const VecZ& a, const VecZ& b);
void sort_rows(MatZ& rows);

// --- exact elimination ----------------------------------------------------

int rank(const MatQ& m);
int rank(const MatZ& m);

// Row Hermite normal form: echelon, positive pivots, entries above each
// pivot reduced into [0, pivot).  Zero rows dropped.  Unique per row lattice.
MatZ hnf(const MatZ& a);

struct HnfTransform {
  MatZ h;  // all m rows; rows [rank..m) are zero
  MatZ u;  // unimodular m x m with u*a = h
  int rnk;
};
HnfTransform hnf_with_transform(const MatZ& a);

// Basis (canonical HNF) of { u in Z^m : u * a = 0 }.
MatZ left_kernel(const MatZ& a);

// Saturation of the row lattice inside Z^n: (Q-span of rows) ∩ Z^n.
MatZ saturate(const MatZ& rows, int n);

// Diagonalization u*a*v = diag(d) over Z (no divisibility chain).
// Returns d (length = #cols of the square input) and the column transform v
// together with its integral inverse.
struct Diagonalization {
  VecZ d;
  MatZ v;
  MatZ v_inv;
};
Diagonalization diagonalize(const MatZ& a);

// Unique y with y * b = x, rows of b linearly independent; nullopt when x is
// outside the row span.
std::optional<VecQ> solve_left(const MatQ& b, const VecQ& x);
std::optional<VecQ> solve_left(const MatZ& b, const VecQ& x);
std::optional<VecQ> solve_left(const MatZ& b, const VecZ& x);

// Integral solution y with y * b = x (b a lattice basis).
std::optional<VecZ> solve_left_integral(const MatZ& b, const VecZ& x);

// Some (deterministic) rational solution u of u * a^T = t, i.e. u·row_i = t_i.
// Requires the rows of a to be linearly independent.
VecQ solve_functional(const MatZ& rows, const VecQ& targets, int dim);

MatQ inverse(const MatQ& m);

}  // namespace spherica::linalg
