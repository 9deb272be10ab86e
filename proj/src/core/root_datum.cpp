#include "root_datum.hpp"

#include <algorithm>
#include <sstream>

namespace spherica {

MatZ RootDatum::cartan_matrix() const {
  int k = num_roots();
  MatZ c(k, VecZ(k));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) c[i][j] = linalg::dot(coroots[i], simple_roots[j]);
  return c;
}

Rat RootDatum::pairing(const VecQ& chi, int coroot_index) const {
  if (coroot_index < 0 || coroot_index >= num_roots()) throw input_error("pairing: coroot index out of range");
  if (static_cast<int>(chi.size()) != ambient_dim) throw input_error("pairing: dimension mismatch");
  return linalg::dot(chi, coroots[coroot_index]);
}

Rat RootDatum::pairing(const VecZ& chi, int coroot_index) const {
  return pairing(linalg::to_q(chi), coroot_index);
}

int RootDatum::label_index(const std::string& label) const {
  for (int i = 0; i < num_roots(); ++i)
    if (labels[i] == label) return i;
  return -1;
}

RootDatum RootDatum::restrict_to(const std::vector<int>& indices) const {
  RootDatum sub;
  sub.ambient_dim = ambient_dim;
  for (int i : indices) {
    if (i < 0 || i >= num_roots()) throw input_error("restrict_to: index out of range");
    sub.simple_roots.push_back(simple_roots[i]);
    sub.coroots.push_back(coroots[i]);
    sub.labels.push_back(labels[i]);
  }
  return sub;
}

VecZ RootDatum::root_coords_to_ambient(const VecZ& c) const {
  if (static_cast<int>(c.size()) != num_roots()) throw input_error("root coordinates: wrong length");
  VecZ v(ambient_dim, Int(0));
  for (int i = 0; i < num_roots(); ++i)
    for (int j = 0; j < ambient_dim; ++j) v[j] += c[i] * simple_roots[i][j];
  return v;
}

// --- Cartan matrices of the simple types ----------------------------------

static MatZ cartan_of_simple(char family, int n) {
  auto base = [&](int k) {
    MatZ c(k, VecZ(k, Int(0)));
    for (int i = 0; i < k; ++i) {
      c[i][i] = 2;
      if (i + 1 < k) { c[i][i + 1] = -1; c[i + 1][i] = -1; }
    }
    return c;
  };
  switch (family) {
    case 'A': {
      if (n < 1) throw input_error("type A needs rank >= 1");
      return base(n);
    }
    case 'B': {
      if (n < 2) throw input_error("type B needs rank >= 2");
      MatZ c = base(n);
      c[n - 1][n - 2] = -2;  // <alpha_{n-1}, alpha_n^vee> = -2
      return c;
    }
    case 'C': {
      if (n < 2) throw input_error("type C needs rank >= 2");
      MatZ c = base(n);
      c[n - 2][n - 1] = -2;
      return c;
    }
    case 'D': {
      if (n < 3) throw input_error("type D needs rank >= 3");
      MatZ c = base(n);
      c[n - 1][n - 2] = 0; c[n - 2][n - 1] = 0;
      c[n - 1][n - 3] = -1; c[n - 3][n - 1] = -1;
      return c;
    }
    case 'E': {
      if (n < 6 || n > 8) throw input_error("type E needs rank 6..8");
      // chain 1-3-4-5-...-n with node 2 attached to node 4 (Bourbaki)
      MatZ c(n, VecZ(n, Int(0)));
      for (int i = 0; i < n; ++i) c[i][i] = 2;
      auto link = [&](int a, int b) { c[a][b] = -1; c[b][a] = -1; };
      link(0, 2); link(2, 3); link(1, 3);
      for (int i = 3; i + 1 < n; ++i) link(i, i + 1);
      return c;
    }
    case 'F': {
      if (n != 4) throw input_error("type F needs rank 4");
      MatZ c = base(4);
      c[2][1] = -2;  // <alpha_2, alpha_3^vee> = -2
      return c;
    }
    case 'G': {
      if (n != 2) throw input_error("type G needs rank 2");
      return MatZ{{Int(2), Int(-1)}, {Int(-3), Int(2)}};
    }
    default:
      throw input_error(std::string("unknown Cartan family '") + family + "'");
  }
}

static Rat det_q(const MatQ& m) {
  MatQ a = m;
  size_t n = a.size();
  Rat d(1);
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) return Rat(0);
    if (piv != c) { std::swap(a[c], a[piv]); d = -d; }
    d *= a[c][c];
    for (size_t i = c + 1; i < n; ++i) {
      if (a[i][c] == 0) continue;
      Rat f = a[i][c] / a[c][c];
      for (size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  return d;
}

static void check_finite_type(const MatZ& c) {
  size_t n = c.size();
  for (size_t i = 0; i < n; ++i) {
    if (c[i].size() != n) throw input_error("Cartan matrix not square");
    if (c[i][i] != 2) throw input_error("Cartan matrix: diagonal entry != 2 at index " + std::to_string(i));
    for (size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (c[i][j] > 0) throw input_error("Cartan matrix: positive off-diagonal entry");
      if ((c[i][j] == 0) != (c[j][i] == 0))
        throw input_error("Cartan matrix: asymmetric zero pattern at (" + std::to_string(i) + "," + std::to_string(j) + ")");
    }
  }
  // finite type <=> every principal minor is positive
  if (n > 16) throw input_error("Cartan matrix too large");
  for (size_t mask = 1; mask < (size_t(1) << n); ++mask) {
    std::vector<size_t> idx;
    for (size_t i = 0; i < n; ++i)
      if (mask & (size_t(1) << i)) idx.push_back(i);
    MatQ sub(idx.size(), VecQ(idx.size()));
    for (size_t i = 0; i < idx.size(); ++i)
      for (size_t j = 0; j < idx.size(); ++j) sub[i][j] = Rat(c[idx[i]][idx[j]]);
    if (det_q(sub) <= 0) {
      std::ostringstream os;
      os << "not a finite-type Cartan matrix: nonpositive principal minor on indices {";
      for (size_t i = 0; i < idx.size(); ++i) os << (i ? "," : "") << idx[i];
      os << "}";
      throw input_error(os.str());
    }
  }
}

RootDatum build_root_datum(const MatZ& cartan) {
  check_finite_type(cartan);
  int n = static_cast<int>(cartan.size());
  RootDatum rd;
  rd.ambient_dim = n;
  rd.simple_roots.assign(n, VecZ(n));
  rd.coroots.assign(n, VecZ(n, Int(0)));
  for (int j = 0; j < n; ++j) {
    rd.coroots[j][j] = 1;
    for (int i = 0; i < n; ++i) rd.simple_roots[j][i] = cartan[i][j];
  }
  for (int i = 0; i < n; ++i) rd.labels.push_back("a" + std::to_string(i + 1));
  return rd;
}

RootDatum build_root_datum(const std::string& type_string) {
  std::vector<std::pair<char, int>> factors;
  std::stringstream ss(type_string);
  std::string tok;
  while (std::getline(ss, tok, 'x')) {
    if (tok.size() < 2 || !std::isalpha(static_cast<unsigned char>(tok[0])))
      throw input_error("bad Cartan type '" + tok + "'");
    char fam = static_cast<char>(std::toupper(static_cast<unsigned char>(tok[0])));
    int n = 0;
    try {
      n = std::stoi(tok.substr(1));
    } catch (...) {
      throw input_error("bad Cartan type '" + tok + "'");
    }
    factors.emplace_back(fam, n);
  }
  if (factors.empty()) throw input_error("empty Cartan type string");

  // block-diagonal concatenation
  MatZ blocks;
  std::vector<int> sizes;
  for (auto [fam, n] : factors) {
    MatZ c = cartan_of_simple(fam, n);
    sizes.push_back(n);
    blocks.push_back({});  // marker unused; assembled below
    blocks.pop_back();
    for (auto& row : c) blocks.push_back(std::move(row));
  }
  int total = 0;
  for (int s : sizes) total += s;
  MatZ cart(total, VecZ(total, Int(0)));
  int off = 0, rowi = 0;
  for (size_t f = 0; f < sizes.size(); ++f) {
    for (int i = 0; i < sizes[f]; ++i, ++rowi)
      for (int j = 0; j < sizes[f]; ++j) cart[off + i][off + j] = blocks[rowi][j];
    off += sizes[f];
  }
  RootDatum rd = build_root_datum(cart);
  if (factors.size() > 1) {
    int k = 0;
    for (size_t f = 0; f < sizes.size(); ++f)
      for (int i = 0; i < sizes[f]; ++i, ++k)
        rd.labels[k] = "g" + std::to_string(f + 1) + ".a" + std::to_string(i + 1);
  }
  return rd;
}

VecQ coroot_restriction(const RootDatum& rd, int alpha_index, const MatQ& basis) {
  if (linalg::rank(basis) != static_cast<int>(basis.size()))
    throw input_error("coroot_restriction: dependent basis");
  VecQ r(basis.size());
  for (size_t j = 0; j < basis.size(); ++j) r[j] = rd.pairing(basis[j], alpha_index);
  return r;
}

VecQ adapted_coweight(const RootDatum& rd, const std::vector<int>& s_prime) {
  std::vector<bool> in_prime(rd.num_roots(), false);
  for (int i : s_prime) {
    if (i < 0 || i >= rd.num_roots()) throw input_error("adapted_coweight: index out of range");
    in_prime[i] = true;
  }
  VecQ targets(rd.num_roots());
  for (int i = 0; i < rd.num_roots(); ++i) targets[i] = in_prime[i] ? Rat(0) : Rat(1);
  return linalg::solve_functional(rd.simple_roots, targets, rd.ambient_dim);
}

}  // namespace spherica
