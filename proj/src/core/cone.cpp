#include "cone.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace spherica {

using namespace linalg;

// --- double description ----------------------------------------------------
//
// Incremental halfspace insertion.  The state is a lineality basis plus the
// extremal rays of the pointed part; each ray carries the set of inserted
// constraints it satisfies with equality.  Adjacency of rays is decided by
// the combinatorial test (no third ray's tight set contains the common tight
// set), which is exact while the ray list stays irredundant.

namespace {

struct DDRay {
  VecQ v;
  std::vector<char> tight;
};

struct DDState {
  MatQ lin;
  std::vector<DDRay> rays;
};

VecQ scaled_primitive(const VecQ& v) {
  VecZ p = primitive_ray(v);
  return to_q(p);
}

bool dd_adjacent(const std::vector<DDRay>& rays, size_t a, size_t b, size_t upto) {
  for (size_t c = 0; c < rays.size(); ++c) {
    if (c == a || c == b) continue;
    bool contains_all = true;
    for (size_t i = 0; i < upto && contains_all; ++i)
      if (rays[a].tight[i] && rays[b].tight[i] && !rays[c].tight[i]) contains_all = false;
    if (contains_all) return false;
  }
  return true;
}

DDState dd_halfspaces(int dim, const std::vector<VecQ>& halfspaces) {
  DDState st;
  st.lin.assign(dim, VecQ(dim, Rat(0)));
  for (int i = 0; i < dim; ++i) st.lin[i][i] = 1;
  size_t m = halfspaces.size();

  for (size_t k = 0; k < m; ++k) {
    const VecQ& u = halfspaces[k];
    // does the constraint cut the lineality space?
    size_t hit = st.lin.size();
    for (size_t i = 0; i < st.lin.size(); ++i)
      if (dot(u, st.lin[i]) != 0) { hit = i; break; }
    if (hit < st.lin.size()) {
      VecQ l0 = st.lin[hit];
      Rat a0 = dot(u, l0);
      if (a0 < 0) {
        for (auto& x : l0) x = -x;
        a0 = -a0;
      }
      st.lin.erase(st.lin.begin() + hit);
      for (auto& l : st.lin) {
        Rat al = dot(u, l);
        if (al != 0) {
          for (int j = 0; j < dim; ++j) l[j] = l[j] * a0 - l0[j] * al;
          l = scaled_primitive(l);
        }
      }
      for (auto& r : st.rays) {
        Rat ar = dot(u, r.v);
        if (ar != 0) {
          for (int j = 0; j < dim; ++j) r.v[j] = r.v[j] * a0 - l0[j] * ar;
          r.v = scaled_primitive(r.v);
        }
        r.tight.push_back(1);
      }
      DDRay born;
      born.v = scaled_primitive(l0);
      born.tight.assign(k, 1);
      born.tight.push_back(0);
      st.rays.push_back(std::move(born));
      continue;
    }

    std::vector<DDRay> plus, zero, minus;
    for (auto& r : st.rays) {
      Rat s = dot(u, r.v);
      if (s > 0) plus.push_back(std::move(r));
      else if (s == 0) zero.push_back(std::move(r));
      else minus.push_back(std::move(r));
    }
    if (minus.empty()) {
      st.rays.clear();
      for (auto& r : plus) { r.tight.push_back(0); st.rays.push_back(std::move(r)); }
      for (auto& r : zero) { r.tight.push_back(1); st.rays.push_back(std::move(r)); }
      continue;
    }
    // rebuild the full list (with positions) for the adjacency test
    std::vector<DDRay> all;
    for (auto& r : plus) all.push_back(r);
    for (auto& r : zero) all.push_back(r);
    for (auto& r : minus) all.push_back(r);
    std::vector<DDRay> next;
    for (auto& r : plus) { DDRay c = r; c.tight.push_back(0); next.push_back(std::move(c)); }
    for (auto& r : zero) { DDRay c = r; c.tight.push_back(1); next.push_back(std::move(c)); }
    for (size_t a = 0; a < plus.size(); ++a) {
      for (size_t b = 0; b < minus.size(); ++b) {
        size_t ia = a;
        size_t ib = plus.size() + zero.size() + b;
        if (!dd_adjacent(all, ia, ib, k)) continue;
        Rat pa = dot(u, plus[a].v);
        Rat pb = -dot(u, minus[b].v);
        DDRay w;
        w.v.assign(dim, Rat(0));
        for (int j = 0; j < dim; ++j) w.v[j] = pb * plus[a].v[j] + pa * minus[b].v[j];
        w.v = scaled_primitive(w.v);
        w.tight.assign(k, 0);
        for (size_t i = 0; i < k; ++i) w.tight[i] = (plus[a].tight[i] && minus[b].tight[i]) ? 1 : 0;
        w.tight.push_back(1);
        next.push_back(std::move(w));
      }
    }
    st.rays = std::move(next);
  }
  return st;
}

// orthogonal projection of v modulo the row span of lin (w.r.t. dot product)
VecQ project_mod(const MatZ& lin, const VecQ& v) {
  if (lin.empty()) return v;
  size_t k = lin.size();
  MatQ gram(k, VecQ(k));
  VecQ rhs(k);
  for (size_t i = 0; i < k; ++i) {
    for (size_t j = 0; j < k; ++j) gram[i][j] = Rat(dot(lin[i], lin[j]));
    rhs[i] = dot(v, lin[i]);
  }
  auto c = solve_left(gram, rhs);  // gram symmetric, invertible
  if (!c) throw math_error("project_mod: singular Gram matrix");
  VecQ w = v;
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < w.size(); ++j) w[j] -= (*c)[i] * Rat(lin[i][j]);
  return w;
}

MatZ canonical_lineality(int dim, const MatQ& lin) {
  MatZ gens;
  for (const auto& l : lin) {
    VecZ p = primitive_ray(l);
    if (!is_zero(p)) gens.push_back(std::move(p));
  }
  if (gens.empty()) return {};
  return saturate(gens, dim);
}

MatZ canonical_rays(const MatZ& lin, const std::vector<DDRay>& rays) {
  MatZ out;
  for (const auto& r : rays) {
    VecQ p = project_mod(lin, r.v);
    VecZ z = primitive_ray(p);
    if (is_zero(z)) continue;
    if (std::find(out.begin(), out.end(), z) == out.end()) out.push_back(std::move(z));
  }
  sort_rows(out);
  return out;
}

std::vector<VecQ> as_halfspaces(const MatZ& ineqs, const MatZ& eqs) {
  std::vector<VecQ> hs;
  for (const auto& u : ineqs) hs.push_back(to_q(u));
  for (const auto& e : eqs) {
    hs.push_back(to_q(e));
    VecQ neg = to_q(e);
    for (auto& x : neg) x = -x;
    hs.push_back(std::move(neg));
  }
  return hs;
}

}  // namespace

static ConeQ cone_from_h(int ambient_dim, const MatZ& ineqs, const MatZ& eqs) {
  ConeQ c;
  c.ambient_dim = ambient_dim;
  DDState v = dd_halfspaces(ambient_dim, as_halfspaces(ineqs, eqs));
  c.lineality = canonical_lineality(ambient_dim, v.lin);
  c.rays = canonical_rays(c.lineality, v.rays);

  // canonical H-description: double description of the dual
  MatZ gen_ineqs = c.rays;
  MatZ gen_eqs = c.lineality;
  DDState d = dd_halfspaces(ambient_dim, as_halfspaces(gen_ineqs, gen_eqs));
  c.span_eqs = canonical_lineality(ambient_dim, d.lin);
  c.facet_normals = canonical_rays(c.span_eqs, d.rays);
  return c;
}

ConeQ cone_from_inequalities(int ambient_dim, const MatZ& normals, const MatZ& equations) {
  for (const auto& u : normals)
    if (static_cast<int>(u.size()) != ambient_dim) throw input_error("cone: normal dimension mismatch");
  for (const auto& u : equations)
    if (static_cast<int>(u.size()) != ambient_dim) throw input_error("cone: equation dimension mismatch");
  return cone_from_h(ambient_dim, normals, equations);
}

ConeQ cone_from_rays(int ambient_dim, const MatZ& input_rays) {
  for (const auto& r : input_rays)
    if (static_cast<int>(r.size()) != ambient_dim) throw input_error("cone: ray dimension mismatch");
  // dual description first: {u : u(r) >= 0 for all input rays}
  DDState d = dd_halfspaces(ambient_dim, as_halfspaces(input_rays, {}));
  MatZ eqs = canonical_lineality(ambient_dim, d.lin);
  MatZ ineqs = canonical_rays(eqs, d.rays);
  return cone_from_h(ambient_dim, ineqs, eqs);
}

ConeQ cone_from_rays(int ambient_dim, const MatQ& input_rays) {
  MatZ z;
  for (const auto& r : input_rays) {
    VecZ p = primitive_ray(r);
    if (!is_zero(p)) z.push_back(std::move(p));
  }
  return cone_from_rays(ambient_dim, z);
}

ConeQ cone_zero(int ambient_dim) { return cone_from_rays(ambient_dim, MatZ{}); }

ConeQ cone_full_space(int ambient_dim) { return cone_from_h(ambient_dim, {}, {}); }

bool ConeQ::contains(const VecQ& x) const {
  if (static_cast<int>(x.size()) != ambient_dim) throw input_error("contains: dimension mismatch");
  for (const auto& e : span_eqs)
    if (dot(x, to_q(e)) != 0) return false;
  for (const auto& u : facet_normals)
    if (dot(x, to_q(u)) < 0) return false;
  return true;
}

bool ConeQ::contains(const VecZ& x) const { return contains(to_q(x)); }

bool ConeQ::relint_contains(const VecQ& x) const {
  if (!contains(x)) return false;
  for (const auto& u : facet_normals)
    if (dot(x, to_q(u)) == 0) return false;
  return true;
}

bool ConeQ::relint_contains(const VecZ& x) const { return relint_contains(to_q(x)); }

int ConeQ::dim() const { return ambient_dim - static_cast<int>(span_eqs.size()); }

ConeQ dual_cone(const ConeQ& c) {
  MatZ gens = c.facet_normals;
  for (const auto& e : c.span_eqs) {
    gens.push_back(e);
    VecZ neg(e.size());
    for (size_t j = 0; j < e.size(); ++j) neg[j] = -e[j];
    gens.push_back(std::move(neg));
  }
  return cone_from_rays(c.ambient_dim, gens);
}

MatZ extremal_rays(const ConeQ& c) {
  if (!c.is_pointed()) {
    std::ostringstream os;
    os << "cone is not pointed: contains the line through (";
    for (size_t j = 0; j < c.lineality[0].size(); ++j) os << (j ? "," : "") << c.lineality[0][j];
    os << ")";
    throw math_error(os.str());
  }
  return c.rays;
}

ConeQ intersect(const ConeQ& a, const ConeQ& b) {
  if (a.ambient_dim != b.ambient_dim) throw input_error("intersect: dimension mismatch");
  MatZ ineqs = a.facet_normals;
  ineqs.insert(ineqs.end(), b.facet_normals.begin(), b.facet_normals.end());
  MatZ eqs = a.span_eqs;
  eqs.insert(eqs.end(), b.span_eqs.begin(), b.span_eqs.end());
  return cone_from_h(a.ambient_dim, ineqs, eqs);
}

std::vector<ConeQ> faces(const ConeQ& c) {
  size_t f = c.facet_normals.size();
  if (f > 20) throw input_error("faces: too many facets for enumeration");
  std::vector<ConeQ> out;
  for (size_t mask = 0; mask < (size_t(1) << f); ++mask) {
    MatZ eqs = c.span_eqs;
    for (size_t i = 0; i < f; ++i)
      if (mask & (size_t(1) << i)) eqs.push_back(c.facet_normals[i]);
    ConeQ face = cone_from_h(c.ambient_dim, c.facet_normals, eqs);
    if (std::find(out.begin(), out.end(), face) == out.end()) out.push_back(std::move(face));
  }
  return out;
}

bool is_face(const ConeQ& f, const ConeQ& c) {
  if (f.ambient_dim != c.ambient_dim) return false;
  MatZ gens = f.rays;
  gens.insert(gens.end(), f.lineality.begin(), f.lineality.end());
  for (const auto& l : f.lineality) {
    VecZ neg(l.size());
    for (size_t j = 0; j < l.size(); ++j) neg[j] = -l[j];
    gens.push_back(std::move(neg));
  }
  for (const auto& g : gens)
    if (!c.contains(g)) return false;
  MatZ tight = c.span_eqs;
  for (const auto& u : c.facet_normals) {
    bool zero_on_f = true;
    for (const auto& g : gens)
      if (dot(u, g) != 0) { zero_on_f = false; break; }
    if (zero_on_f) tight.push_back(u);
  }
  ConeQ g = cone_from_h(c.ambient_dim, c.facet_normals, tight);
  return g == f;
}

bool Fan::contains_cone(const ConeQ& c) const {
  return std::find(cones.begin(), cones.end(), c) != cones.end();
}

bool Fan::is_pointed() const {
  return std::all_of(cones.begin(), cones.end(), [](const ConeQ& c) { return c.is_pointed(); });
}

FanCheck validate_fan(const Fan& f) {
  FanCheck res;
  auto note = [&](const std::string& msg) {
    res.valid = false;
    res.violations.push_back(msg);
  };
  for (size_t i = 0; i < f.cones.size(); ++i) {
    if (f.cones[i].ambient_dim != f.ambient_dim) {
      note("cone " + std::to_string(i) + " has wrong ambient dimension");
      continue;
    }
    for (const auto& face : faces(f.cones[i])) {
      if (!f.contains_cone(face)) note("face of cone " + std::to_string(i) + " missing from fan");
    }
  }
  for (size_t i = 0; i < f.cones.size(); ++i) {
    for (size_t j = i + 1; j < f.cones.size(); ++j) {
      if (f.cones[i].ambient_dim != f.ambient_dim || f.cones[j].ambient_dim != f.ambient_dim) continue;
      ConeQ inter = intersect(f.cones[i], f.cones[j]);
      if (!is_face(inter, f.cones[i]) || !is_face(inter, f.cones[j]))
        note("intersection of cones " + std::to_string(i) + " and " + std::to_string(j) + " is not a common face");
    }
  }
  return res;
}

std::vector<ConeQ> fan_support(const Fan& f) {
  std::vector<ConeQ> maximal;
  for (size_t i = 0; i < f.cones.size(); ++i) {
    bool dominated = false;
    for (size_t j = 0; j < f.cones.size() && !dominated; ++j) {
      if (i == j) continue;
      if (f.cones[i] == f.cones[j]) { dominated = j < i; continue; }
      if (is_face(f.cones[i], f.cones[j])) dominated = true;
    }
    if (!dominated) maximal.push_back(f.cones[i]);
  }
  return maximal;
}

Fan fan_from_cones(int ambient_dim, const std::vector<ConeQ>& cones) {
  Fan f;
  f.ambient_dim = ambient_dim;
  for (const auto& c : cones)
    for (const auto& face : faces(c))
      if (!f.contains_cone(face)) f.cones.push_back(face);
  return f;
}

FanLocalization localize_fan(const Fan& f, const VecQ& lambda_r) {
  if (static_cast<int>(lambda_r.size()) != f.ambient_dim)
    throw input_error("localize_fan: lambda dimension mismatch");
  VecQ neg = lambda_r;
  for (auto& x : neg) x = -x;

  std::vector<size_t> relint_hits;
  for (size_t i = 0; i < f.cones.size(); ++i)
    if (f.cones[i].relint_contains(neg)) relint_hits.push_back(i);
  if (relint_hits.empty()) throw math_error("localize_fan: lambda not dominated by fan (-lambda^r outside support)");
  if (relint_hits.size() > 1) throw math_error("localize_fan: fan corruption (relative interiors overlap)");

  FanLocalization res;
  res.c_lambda = f.cones[relint_hits[0]];

  MatZ vgens = res.c_lambda.rays;
  vgens.insert(vgens.end(), res.c_lambda.lineality.begin(), res.c_lambda.lineality.end());
  VecZ lam = primitive_ray(lambda_r);
  if (!is_zero(lam)) vgens.push_back(lam);
  res.v_lambda_basis = vgens.empty() ? MatZ{} : saturate(vgens, f.ambient_dim);

  int n = f.ambient_dim;
  if (res.v_lambda_basis.empty()) {
    res.quotient_map.assign(n, VecZ(n, Int(0)));
    for (int i = 0; i < n; ++i) res.quotient_map[i][i] = 1;
  } else {
    res.quotient_map = left_kernel(transpose(res.v_lambda_basis));
  }
  int qdim = static_cast<int>(res.quotient_map.size());

  auto map_vec = [&](const VecZ& x) {
    VecZ y(qdim);
    for (int i = 0; i < qdim; ++i) y[i] = dot(res.quotient_map[i], x);
    return y;
  };

  res.quotient_fan.ambient_dim = qdim;
  for (size_t i = 0; i < f.cones.size(); ++i) {
    if (!f.cones[i].contains(neg)) continue;
    res.member_indices.push_back(i);
    MatZ gens;
    for (const auto& r : f.cones[i].rays) gens.push_back(map_vec(r));
    for (const auto& l : f.cones[i].lineality) {
      VecZ v = map_vec(l);
      VecZ w(v.size());
      for (size_t j = 0; j < v.size(); ++j) w[j] = -v[j];
      gens.push_back(std::move(v));
      gens.push_back(std::move(w));
    }
    ConeQ qc = cone_from_rays(qdim, gens);
    if (!res.quotient_fan.contains_cone(qc)) res.quotient_fan.cones.push_back(std::move(qc));
  }
  FanCheck check = validate_fan(res.quotient_fan);
  if (!check.valid) throw math_error("localize_fan: quotient is not a valid fan (fan corruption): " + check.violations.front());
  return res;
}

}  // namespace spherica
