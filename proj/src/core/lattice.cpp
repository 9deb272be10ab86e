#include "lattice.hpp"

namespace spherica {

using namespace linalg;

IntegerLattice normal_form(int ambient_dim, const MatZ& generators) {
  for (const auto& g : generators)
    if (static_cast<int>(g.size()) != ambient_dim) throw input_error("normal_form: generator dimension mismatch");
  IntegerLattice l;
  l.ambient_dim = ambient_dim;
  l.basis = hnf(generators);
  return l;
}

bool member(const VecZ& x, const IntegerLattice& l) {
  if (static_cast<int>(x.size()) != l.ambient_dim) throw input_error("member: dimension mismatch");
  if (is_zero(x)) return true;
  return solve_left_integral(l.basis, x).has_value();
}

IntegerLattice intersect(const IntegerLattice& l1, const IntegerLattice& l2) {
  if (l1.ambient_dim != l2.ambient_dim) throw input_error("intersect: ambient dimension mismatch");
  int n = l1.ambient_dim;
  if (l1.basis.empty() || l2.basis.empty()) return normal_form(n, {});
  // x = a*B1 = b*B2  <=>  (a,b) in the left kernel of [B1; -B2]
  MatZ stacked = l1.basis;
  for (const auto& row : l2.basis) {
    VecZ neg(row.size());
    for (size_t j = 0; j < row.size(); ++j) neg[j] = -row[j];
    stacked.push_back(neg);
  }
  MatZ ker = left_kernel(stacked);
  size_t r1 = l1.basis.size();
  MatZ gens;
  for (const auto& u : ker) {
    VecZ x(n, Int(0));
    for (size_t i = 0; i < r1; ++i)
      for (int j = 0; j < n; ++j) x[j] += u[i] * l1.basis[i][j];
    gens.push_back(std::move(x));
  }
  return normal_form(n, gens);
}

bool member_p(const VecZ& x, const PLocalizedLattice& lp) {
  if (static_cast<int>(x.size()) != lp.base.ambient_dim) throw input_error("member_p: dimension mismatch");
  if (is_zero(x)) return true;
  auto y = solve_left(lp.base.basis, x);
  if (!y) return false;  // outside the rational span
  Int den(1);
  for (auto& c : *y) {
    c.canonicalize();
    Int d(c.get_den());
    den = den / gcd(den, d) * d;
  }
  return is_p_power(den, lp.p);
}

IntegerLattice zs_cap_xip(const RootDatum& rd, const IntegerLattice& xi, const Int& p) {
  if (xi.ambient_dim != rd.ambient_dim) throw input_error("zs_cap_xip: ambient dimension mismatch");
  int s = rd.num_roots();
  // M = { c in Z^s : c * R in Xi }  (Xi ∩ ZS in root coordinates)
  MatZ stacked = rd.simple_roots;
  for (const auto& row : xi.basis) {
    VecZ neg(row.size());
    for (size_t j = 0; j < row.size(); ++j) neg[j] = -row[j];
    stacked.push_back(neg);
  }
  MatZ ker = left_kernel(stacked);
  MatZ m_gens;
  for (const auto& u : ker) {
    VecZ c(u.begin(), u.begin() + s);
    if (!is_zero(c)) m_gens.push_back(std::move(c));
  }
  IntegerLattice m = normal_form(s, m_gens);
  if (p == 1 || m.basis.empty()) return m;

  // p-saturation of M inside (Q-span M) ∩ Z^s
  MatZ sat = saturate(m.basis, s);
  size_t r = sat.size();
  MatZ coords(m.basis.size(), VecZ(r));
  for (size_t i = 0; i < m.basis.size(); ++i) {
    auto z = solve_left_integral(sat, m.basis[i]);
    if (!z) throw math_error("zs_cap_xip: saturation coordinate failure");
    coords[i] = *z;
  }
  auto diag = diagonalize(coords);
  // row lattice of coords = { sum z_i d_i w_i } with w_i the rows of v^{-1};
  // stripping the p-part of each d_i yields the p-saturation.
  MatZ out;
  for (size_t i = 0; i < r; ++i) {
    Int d = diag.d[i];
    if (d == 0) continue;
    Int reduced = d / p_part(d, p);
    VecZ row(s, Int(0));
    for (size_t k = 0; k < r; ++k)
      for (int j = 0; j < s; ++j) row[j] += reduced * diag.v_inv[i][k] * sat[k][j];
    out.push_back(std::move(row));
  }
  return normal_form(s, out);
}

bool is_primitive(const VecZ& x, const IntegerLattice& l) {
  if (is_zero(x)) return false;
  auto y = solve_left_integral(l.basis, x);
  if (!y) throw input_error("is_primitive: vector not in the lattice");
  Int g(0);
  for (const auto& c : *y) g = gcd(g, c);
  return g == 1;
}

IntegerLattice intersect_with_covector_kernel(const IntegerLattice& l, const MatZ& covectors) {
  if (covectors.empty()) return l;
  // y * (B * K^T) = 0 for coefficient rows y on the basis
  MatZ bkt(l.basis.size(), VecZ(covectors.size()));
  for (size_t i = 0; i < l.basis.size(); ++i)
    for (size_t k = 0; k < covectors.size(); ++k) bkt[i][k] = dot(l.basis[i], covectors[k]);
  MatZ ker = left_kernel(bkt);
  MatZ gens;
  for (const auto& y : ker) {
    VecZ x(l.ambient_dim, Int(0));
    for (size_t i = 0; i < l.basis.size(); ++i)
      for (int j = 0; j < l.ambient_dim; ++j) x[j] += y[i] * l.basis[i][j];
    gens.push_back(std::move(x));
  }
  return normal_form(l.ambient_dim, gens);
}

IntegerLattice intersect_with_span(const IntegerLattice& l, const MatZ& span_vectors) {
  MatZ nonzero;
  for (const auto& v : span_vectors)
    if (!is_zero(v)) nonzero.push_back(v);
  if (nonzero.empty()) return normal_form(l.ambient_dim, {});
  MatZ orth = left_kernel(transpose(nonzero));
  return intersect_with_covector_kernel(l, orth);
}

}  // namespace spherica
