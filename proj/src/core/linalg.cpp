#include "linalg.hpp"

#include <algorithm>

namespace spherica::linalg {

Rat dot(const VecQ& a, const VecQ& b) {
  if (a.size() != b.size()) throw input_error("dot: dimension mismatch");
  Rat s(0);
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rat dot(const VecQ& a, const VecZ& b) {
  if (a.size() != b.size()) throw input_error("dot: dimension mismatch");
  Rat s(0);
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * Rat(b[i]);
  return s;
}

Int dot(const VecZ& a, const VecZ& b) {
  if (a.size() != b.size()) throw input_error("dot: dimension mismatch");
  Int s(0);
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

VecQ to_q(const VecZ& v) {
  VecQ r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = Rat(v[i]);
  return r;
}

MatQ to_q(const MatZ& m) {
  MatQ r;
  r.reserve(m.size());
  for (const auto& row : m) r.push_back(to_q(row));
  return r;
}

MatZ transpose(const MatZ& m) {
  if (m.empty()) return {};
  MatZ t(m[0].size(), VecZ(m.size()));
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
  return t;
}

bool is_zero(const VecZ& v) {
  return std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
}

bool is_zero(const VecQ& v) {
  return std::all_of(v.begin(), v.end(), [](const Rat& x) { return x == 0; });
}

VecZ zero_vec(int n) { return VecZ(n, Int(0)); }

VecZ primitive_ray(const VecQ& v) {
  Int den(1);
  for (const auto& x : v) {
    Rat c = x;
    c.canonicalize();
    Int d(c.get_den());
    den = den / gcd(den, d) * d;
  }
  VecZ w(v.size());
  Int g(0);
  for (size_t i = 0; i < v.size(); ++i) {
    Rat c = v[i] * Rat(den);
    c.canonicalize();
    w[i] = Int(c.get_num());
    g = gcd(g, w[i]);
  }
  if (g == 0) return w;
  for (auto& x : w) x /= g;
  return w;
}

VecZ primitive_ray(const VecZ& v) {
  Int g(0);
  for (const auto& x : v) g = gcd(g, x);
  VecZ w = v;
  if (g == 0) return w;
  for (auto& x : w) x /= g;
  return w;
}

bool lex_less(const VecZ& a, const VecZ& b) {
  for (size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return a.size() < b.size();
}

void sort_rows(MatZ& rows) { std::sort(rows.begin(), rows.end(), lex_less); }

int rank(const MatQ& m) {
  MatQ a = m;
  size_t r = 0;
  size_t cols = a.empty() ? 0 : a[0].size();
  for (size_t c = 0; c < cols && r < a.size(); ++c) {
    size_t piv = r;
    while (piv < a.size() && a[piv][c] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[r], a[piv]);
    for (size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rat f = a[i][c] / a[r][c];
      for (size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return static_cast<int>(r);
}

int rank(const MatZ& m) { return rank(to_q(m)); }

static void sub_multiple(VecZ& target, const VecZ& src, const Int& q) {
  for (size_t j = 0; j < target.size(); ++j) target[j] -= q * src[j];
}

HnfTransform hnf_with_transform(const MatZ& a) {
  HnfTransform res;
  res.h = a;
  size_t m = a.size();
  size_t n = m == 0 ? 0 : a[0].size();
  res.u.assign(m, VecZ(m, Int(0)));
  for (size_t i = 0; i < m; ++i) res.u[i][i] = 1;

  size_t r = 0;
  for (size_t c = 0; c < n && r < m; ++c) {
    // clear column c below row r down to a single nonzero entry
    while (true) {
      size_t best = m;
      for (size_t i = r; i < m; ++i) {
        if (res.h[i][c] == 0) continue;
        if (best == m || abs(res.h[i][c]) < abs(res.h[best][c])) best = i;
      }
      if (best == m) break;
      bool others = false;
      for (size_t i = r; i < m; ++i) {
        if (i == best || res.h[i][c] == 0) continue;
        others = true;
        Int q;
        mpz_tdiv_q(q.get_mpz_t(), res.h[i][c].get_mpz_t(), res.h[best][c].get_mpz_t());
        sub_multiple(res.h[i], res.h[best], q);
        sub_multiple(res.u[i], res.u[best], q);
      }
      if (!others) {
        std::swap(res.h[r], res.h[best]);
        std::swap(res.u[r], res.u[best]);
        break;
      }
    }
    if (res.h[r][c] == 0) continue;
    if (res.h[r][c] < 0) {
      for (auto& x : res.h[r]) x = -x;
      for (auto& x : res.u[r]) x = -x;
    }
    for (size_t i = 0; i < r; ++i) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), res.h[i][c].get_mpz_t(), res.h[r][c].get_mpz_t());
      if (q == 0) continue;
      sub_multiple(res.h[i], res.h[r], q);
      sub_multiple(res.u[i], res.u[r], q);
    }
    ++r;
  }
  res.rnk = static_cast<int>(r);
  return res;
}

MatZ hnf(const MatZ& a) {
  auto t = hnf_with_transform(a);
  t.h.resize(t.rnk);
  return t.h;
}

MatZ left_kernel(const MatZ& a) {
  auto t = hnf_with_transform(a);
  MatZ ker(t.u.begin() + t.rnk, t.u.end());
  return hnf(ker);
}

MatZ saturate(const MatZ& rows, int n) {
  MatZ m = rows;
  for (auto& row : m) {
    if (static_cast<int>(row.size()) != n) throw input_error("saturate: dimension mismatch");
  }
  if (m.empty()) return {};
  // orthogonal covectors, then their common kernel
  MatZ orth = left_kernel(transpose(m));
  if (orth.empty()) {  // full span
    MatZ id(n, VecZ(n, Int(0)));
    for (int i = 0; i < n; ++i) id[i][i] = 1;
    return id;
  }
  return left_kernel(transpose(orth));
}

Diagonalization diagonalize(const MatZ& a) {
  size_t m = a.size();
  size_t n = m == 0 ? 0 : a[0].size();
  MatZ w = a;
  Diagonalization res;
  res.v.assign(n, VecZ(n, Int(0)));
  for (size_t i = 0; i < n; ++i) res.v[i][i] = 1;

  auto col_sub = [&](size_t dst, size_t src, const Int& q) {
    for (size_t i = 0; i < m; ++i) w[i][dst] -= q * w[i][src];
    for (size_t i = 0; i < n; ++i) res.v[i][dst] -= q * res.v[i][src];
  };
  auto col_swap = [&](size_t i, size_t j) {
    for (size_t r = 0; r < m; ++r) std::swap(w[r][i], w[r][j]);
    for (size_t r = 0; r < n; ++r) std::swap(res.v[r][i], res.v[r][j]);
  };
  auto row_sub = [&](size_t dst, size_t src, const Int& q) { sub_multiple(w[dst], w[src], q); };

  size_t k = 0;
  while (k < m && k < n) {
    // find a nonzero pivot in the remaining block
    size_t pi = m, pj = n;
    for (size_t i = k; i < m && pi == m; ++i)
      for (size_t j = k; j < n; ++j)
        if (w[i][j] != 0) { pi = i; pj = j; break; }
    if (pi == m) break;
    std::swap(w[k], w[pi]);
    col_swap(k, pj);
    while (true) {
      bool clean = true;
      for (size_t i = k + 1; i < m; ++i) {
        if (w[i][k] == 0) continue;
        Int q;
        mpz_tdiv_q(q.get_mpz_t(), w[i][k].get_mpz_t(), w[k][k].get_mpz_t());
        row_sub(i, k, q);
        if (w[i][k] != 0) { std::swap(w[k], w[i]); clean = false; }
      }
      for (size_t j = k + 1; j < n; ++j) {
        if (w[k][j] == 0) continue;
        Int q;
        mpz_tdiv_q(q.get_mpz_t(), w[k][j].get_mpz_t(), w[k][k].get_mpz_t());
        col_sub(j, k, q);
        if (w[k][j] != 0) { col_swap(k, j); clean = false; }
      }
      if (clean) break;
    }
    if (w[k][k] < 0) {
      for (size_t i = 0; i < m; ++i) w[i][k] = -w[i][k];
      for (size_t i = 0; i < n; ++i) res.v[i][k] = -res.v[i][k];
    }
    ++k;
  }
  res.d.assign(n, Int(0));
  for (size_t i = 0; i < k && i < n; ++i) res.d[i] = w[i][i];

  // integral inverse of the unimodular v
  MatQ vq = to_q(res.v);
  MatQ inv = inverse(vq);
  res.v_inv.assign(n, VecZ(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      Rat c = inv[i][j];
      c.canonicalize();
      if (Int(c.get_den()) != 1) throw math_error("diagonalize: transform not unimodular");
      res.v_inv[i][j] = Int(c.get_num());
    }
  return res;
}

std::optional<VecQ> solve_left(const MatQ& b, const VecQ& x) {
  size_t r = b.size();
  size_t n = x.size();
  for (const auto& row : b)
    if (row.size() != n) throw input_error("solve_left: dimension mismatch");
  // Solve (b^T) y = x by Gaussian elimination on the augmented n x (r+1) system.
  MatQ aug(n, VecQ(r + 1, Rat(0)));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < r; ++j) aug[i][j] = b[j][i];
    aug[i][r] = x[i];
  }
  std::vector<size_t> pivot_col;
  size_t row = 0;
  for (size_t c = 0; c < r && row < n; ++c) {
    size_t piv = row;
    while (piv < n && aug[piv][c] == 0) ++piv;
    if (piv == n) continue;
    std::swap(aug[row], aug[piv]);
    for (size_t i = 0; i < n; ++i) {
      if (i == row || aug[i][c] == 0) continue;
      Rat f = aug[i][c] / aug[row][c];
      for (size_t j = c; j <= r; ++j) aug[i][j] -= f * aug[row][j];
    }
    pivot_col.push_back(c);
    ++row;
  }
  for (size_t i = row; i < n; ++i)
    if (aug[i][r] != 0) return std::nullopt;  // inconsistent: x outside span
  VecQ y(r, Rat(0));
  for (size_t i = 0; i < pivot_col.size(); ++i) y[pivot_col[i]] = aug[i][r] / aug[i][pivot_col[i]];
  // verify (guards against dependent rows of b)
  for (size_t j = 0; j < n; ++j) {
    Rat s(0);
    for (size_t i = 0; i < r; ++i) s += y[i] * b[i][j];
    if (s != x[j]) return std::nullopt;
  }
  return y;
}

std::optional<VecQ> solve_left(const MatZ& b, const VecQ& x) { return solve_left(to_q(b), x); }
std::optional<VecQ> solve_left(const MatZ& b, const VecZ& x) { return solve_left(to_q(b), to_q(x)); }

std::optional<VecZ> solve_left_integral(const MatZ& b, const VecZ& x) {
  auto y = solve_left(b, x);
  if (!y) return std::nullopt;
  VecZ z(y->size());
  for (size_t i = 0; i < y->size(); ++i) {
    Rat c = (*y)[i];
    c.canonicalize();
    if (Int(c.get_den()) != 1) return std::nullopt;
    z[i] = Int(c.get_num());
  }
  return z;
}

VecQ solve_functional(const MatZ& rows, const VecQ& targets, int dim) {
  if (rows.size() != targets.size()) throw input_error("solve_functional: size mismatch");
  // u * rows_i = t_i;  treat u as unknown vector of length dim.
  size_t m = rows.size();
  MatQ aug(m, VecQ(dim + 1, Rat(0)));
  for (size_t i = 0; i < m; ++i) {
    for (int j = 0; j < dim; ++j) aug[i][j] = Rat(rows[i][j]);
    aug[i][dim] = targets[i];
  }
  std::vector<int> pivot_col;
  size_t row = 0;
  for (int c = 0; c < dim && row < m; ++c) {
    size_t piv = row;
    while (piv < m && aug[piv][c] == 0) ++piv;
    if (piv == m) continue;
    std::swap(aug[row], aug[piv]);
    for (size_t i = 0; i < m; ++i) {
      if (i == row || aug[i][c] == 0) continue;
      Rat f = aug[i][c] / aug[row][c];
      for (int j = c; j <= dim; ++j) aug[i][j] -= f * aug[row][j];
    }
    pivot_col.push_back(c);
    ++row;
  }
  if (row < m) throw input_error("solve_functional: dependent rows");
  VecQ u(dim, Rat(0));
  for (size_t i = 0; i < pivot_col.size(); ++i) u[pivot_col[i]] = aug[i][dim] / aug[i][pivot_col[i]];
  return u;
}

MatQ inverse(const MatQ& m) {
  size_t n = m.size();
  MatQ aug(n, VecQ(2 * n, Rat(0)));
  for (size_t i = 0; i < n; ++i) {
    if (m[i].size() != n) throw input_error("inverse: not square");
    for (size_t j = 0; j < n; ++j) aug[i][j] = m[i][j];
    aug[i][n + i] = 1;
  }
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    while (piv < n && aug[piv][c] == 0) ++piv;
    if (piv == n) throw math_error("inverse: singular matrix");
    std::swap(aug[c], aug[piv]);
    Rat d = aug[c][c];
    for (size_t j = 0; j < 2 * n; ++j) aug[c][j] /= d;
    for (size_t i = 0; i < n; ++i) {
      if (i == c || aug[i][c] == 0) continue;
      Rat f = aug[i][c];
      for (size_t j = 0; j < 2 * n; ++j) aug[i][j] -= f * aug[c][j];
    }
  }
  MatQ inv(n, VecQ(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
  return inv;
}

}  // namespace spherica::linalg
