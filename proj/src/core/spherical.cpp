#include "spherical.hpp"

#include <algorithm>
#include <sstream>

namespace spherica {

using namespace linalg;

std::string to_string(ColorType t) {
  switch (t) {
    case ColorType::B: return "B";
    case ColorType::A: return "A";
    case ColorType::APrime: return "A'";
  }
  return "?";
}

std::string to_string(RootType t) {
  switch (t) {
    case RootType::P: return "P";
    case RootType::B: return "B";
    case RootType::A: return "A";
    case RootType::APrime: return "A'";
    case RootType::Undetermined: return "A-or-A' undetermined";
  }
  return "?";
}

std::optional<ColorType> color_type_from_string(const std::string& s) {
  if (s == "B") return ColorType::B;
  if (s == "A") return ColorType::A;
  if (s == "A'" || s == "A-prime" || s == "Aprime") return ColorType::APrime;
  return std::nullopt;
}

bool Report::ok() const {
  return std::none_of(items.begin(), items.end(), [](const CheckItem& i) { return i.status == "fail"; });
}

void Report::add(const std::string& name, const std::string& status, const std::string& detail) {
  items.push_back({name, status, detail});
}

static std::string vecq_str(const VecQ& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + rat_to_string(v[i]);
  return s + ")";
}

static std::string vecz_str(const VecZ& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
  return s + ")";
}

MatQ xi_basis_q(const PSphericalSystem& sys) { return to_q(sys.xi.basis); }

VecQ alpha_r(const PSphericalSystem& sys, int alpha_index) {
  return coroot_restriction(sys.rd, alpha_index, xi_basis_q(sys));
}

std::optional<VecQ> to_xi_coords(const PSphericalSystem& sys, const VecQ& ambient) {
  return solve_left(xi_basis_q(sys), ambient);
}

std::optional<VecQ> to_xi_coords(const PSphericalSystem& sys, const VecZ& ambient) {
  return to_xi_coords(sys, to_q(ambient));
}

Rat eval_delta(const ColorRecord& d, const VecQ& xi_coords) {
  if (d.delta.size() != xi_coords.size()) throw input_error("eval_delta: dimension mismatch");
  return dot(d.delta, xi_coords);
}

VecZ sigma_ambient(const PSphericalSystem& sys, size_t k) {
  return sys.rd.root_coords_to_ambient(sys.sigma[k]);
}

bool sigma_is_multiple_of_root(const VecZ& sigma_row, int alpha_index, const Int& c) {
  for (size_t j = 0; j < sigma_row.size(); ++j)
    if (sigma_row[j] != (static_cast<int>(j) == alpha_index ? c : Int(0))) return false;
  return true;
}

int find_sigma_root(const PSphericalSystem& sys, int alpha_index, const Int& mult) {
  for (size_t k = 0; k < sys.sigma.size(); ++k)
    if (sigma_is_multiple_of_root(sys.sigma[k], alpha_index, mult)) return static_cast<int>(k);
  return -1;
}

// --- structure -------------------------------------------------------------

Report check_structure(const PSphericalSystem& sys) {
  Report rep;
  int n = sys.rd.num_roots();
  if (sys.p < 1) rep.add("characteristic", "fail", "p must be >= 1");

  bool sigma_ok = true;
  for (size_t k = 0; k < sys.sigma.size(); ++k) {
    const auto& row = sys.sigma[k];
    if (static_cast<int>(row.size()) != n) {
      rep.add("sigma", "fail", "row " + std::to_string(k) + " has wrong length");
      sigma_ok = false;
      continue;
    }
    bool nonneg = std::all_of(row.begin(), row.end(), [](const Int& x) { return x >= 0; });
    if (is_zero(row) || !nonneg) {
      rep.add("sigma", "fail", "row " + vecz_str(row) + " must be nonzero with nonnegative simple-root coordinates");
      sigma_ok = false;
    }
  }
  if (sigma_ok) rep.add("sigma", "pass");

  std::vector<bool> in_sp(n, false);
  bool sp_ok = true;
  for (int i : sys.sp) {
    if (i < 0 || i >= n) {
      rep.add("sp", "fail", "index " + std::to_string(i) + " out of range");
      sp_ok = false;
    } else {
      in_sp[i] = true;
    }
  }
  if (sp_ok) rep.add("sp", "pass");

  bool colors_ok = true;
  for (const auto& d : sys.colors) {
    auto bad = [&](const std::string& msg) {
      rep.add("color " + d.name, "fail", msg);
      colors_ok = false;
    };
    if (d.moved_by.empty()) bad("moved_by is empty");
    for (int i : d.moved_by) {
      if (i < 0 || i >= n) bad("mover index " + std::to_string(i) + " out of range");
      else if (in_sp[i]) bad("mover " + sys.rd.labels[i] + " lies in SP");
    }
    if (d.ctype == ColorType::APrime && d.moved_by.size() != 1)
      bad("type A' colors have exactly one mover");
    if (static_cast<int>(d.delta.size()) != sys.xi.rank())
      bad("delta has " + std::to_string(d.delta.size()) + " entries, Xi has rank " + std::to_string(sys.xi.rank()));
    if (d.q_symbolic) {
      if (!d.q.empty()) bad("symbolic degrees must leave the q map empty");
    } else {
      for (int i : d.moved_by)
        if (!d.q.count(i)) bad("degree q missing for mover " + sys.rd.labels[i]);
      for (const auto& [i, qv] : d.q) {
        if (std::find(d.moved_by.begin(), d.moved_by.end(), i) == d.moved_by.end())
          bad("degree q given for non-mover index " + std::to_string(i));
        if (!is_p_power(qv, sys.p))
          bad("q = " + qv.get_str() + " is not a power of p = " + sys.p.get_str());
      }
    }
  }
  if (colors_ok) rep.add("colors", "pass");

  if (sys.colors.empty()) {
    rep.add("mover-coverage", "skipped", "no colors");
  } else {
    bool cover_ok = true;
    for (int i = 0; i < n; ++i) {
      if (in_sp[i]) continue;
      bool moved = false;
      for (const auto& d : sys.colors)
        if (std::find(d.moved_by.begin(), d.moved_by.end(), i) != d.moved_by.end()) moved = true;
      if (!moved) {
        rep.add("mover-coverage", "fail", "simple root " + sys.rd.labels[i] + " outside SP is moved by no color");
        cover_ok = false;
      }
    }
    if (cover_ok) rep.add("mover-coverage", "pass");
  }
  return rep;
}

// --- valuation cone and spherical roots ------------------------------------

ConeQ valuation_cone(const PSphericalSystem& sys) {
  int rank = sys.xi.rank();
  MatZ normals;
  for (size_t k = 0; k < sys.sigma.size(); ++k) {
    auto coords = to_xi_coords(sys, sigma_ambient(sys, k));
    if (!coords) throw math_error("unrepresentable root: sigma " + vecz_str(sys.sigma[k]) + " is not in the rational span of Xi");
    VecQ neg = *coords;
    for (auto& x : neg) x = -x;
    VecZ n = primitive_ray(neg);
    if (!is_zero(n)) normals.push_back(std::move(n));
  }
  return cone_from_inequalities(rank, normals);
}

MatZ spherical_roots_from_cone(const ConeQ& v, const RootDatum& rd, const IntegerLattice& xi, const Int& p) {
  ConeQ d = dual_cone(v);
  if (!d.is_pointed()) throw math_error("spherical_roots_from_cone: -V^vee is not pointed");
  IntegerLattice m = zs_cap_xip(rd, xi, p);
  MatQ basis = to_q(xi.basis);
  MatZ out;
  for (const auto& ray : d.rays) {
    // -ray, as an ambient character
    VecQ ambient(static_cast<size_t>(rd.ambient_dim), Rat(0));
    for (size_t j = 0; j < ray.size(); ++j)
      for (int c = 0; c < rd.ambient_dim; ++c) ambient[c] -= Rat(ray[j]) * basis[j][c];
    auto root_coords = solve_left(rd.simple_roots, ambient);
    if (!root_coords) throw math_error("spherical_roots_from_cone: extremal ray outside the span of the simple roots");
    for (const auto& c : *root_coords)
      if (c < 0)
        throw math_error("spherical_roots_from_cone: -V^vee is not contained in the nonnegative span of the simple roots");
    VecZ dir = primitive_ray(*root_coords);
    IntegerLattice line = intersect_with_span(m, MatZ{dir});
    if (line.rank() == 0)
      throw math_error("spherical_roots_from_cone: extremal ray has no representative in ZS cap Xi_p");
    VecZ g = line.basis[0];
    if (dot(g, dir) < 0)
      for (auto& x : g) x = -x;
    out.push_back(std::move(g));
  }
  sort_rows(out);
  return out;
}

// --- classification --------------------------------------------------------

Classification classify_types(const PSphericalSystem& sys) {
  Classification res;
  int n = sys.rd.num_roots();
  std::vector<bool> in_sp(n, false);
  for (int i : sys.sp)
    if (i >= 0 && i < n) in_sp[i] = true;
  res.types.assign(n, RootType::B);
  for (int i = 0; i < n; ++i) {
    if (in_sp[i]) {
      res.types[i] = RootType::P;
      continue;
    }
    bool alpha_in_sigma = find_sigma_root(sys, i, Int(1)) >= 0;
    if (sys.p != 2) {
      if (alpha_in_sigma) res.types[i] = RootType::A;
      else if (find_sigma_root(sys, i, Int(2)) >= 0) res.types[i] = RootType::APrime;
      else res.types[i] = RootType::B;
    } else {
      if (!alpha_in_sigma) {
        res.types[i] = RootType::B;
      } else if (sys.colors.empty()) {
        res.types[i] = RootType::Undetermined;
      } else {
        bool positive = false;
        auto coords = to_xi_coords(sys, sys.rd.simple_roots[i]);
        if (coords)
          for (const auto& d : sys.colors)
            if (d.ctype == ColorType::A && eval_delta(d, *coords) > 0) positive = true;
        res.types[i] = positive ? RootType::A : RootType::APrime;
      }
    }
  }
  // cross-check against declared color types
  for (const auto& d : sys.colors) {
    RootType want = d.ctype == ColorType::B   ? RootType::B
                    : d.ctype == ColorType::A ? RootType::A
                                              : RootType::APrime;
    for (int i : d.moved_by) {
      if (i < 0 || i >= n) continue;
      if (res.types[i] == RootType::Undetermined) continue;
      if (res.types[i] != want)
        res.problems.push_back("simple root " + sys.rd.labels[i] + ": recovered type " + to_string(res.types[i]) +
                               " but color " + d.name + " declares type " + to_string(d.ctype));
    }
  }
  return res;
}

// --- relation checks -------------------------------------------------------

static std::vector<const ColorRecord*> movers_of(const PSphericalSystem& sys, int i) {
  std::vector<const ColorRecord*> out;
  for (const auto& d : sys.colors)
    if (std::find(d.moved_by.begin(), d.moved_by.end(), i) != d.moved_by.end()) out.push_back(&d);
  return out;
}

static VecQ scaled(const VecQ& v, const Rat& c) {
  VecQ w = v;
  for (auto& x : w) x *= c;
  return w;
}

static VecQ vsum(const VecQ& a, const VecQ& b) {
  VecQ s = a;
  for (size_t i = 0; i < s.size(); ++i) s[i] += b[i];
  return s;
}

Report check_color_relations(const PSphericalSystem& sys) {
  Report rep;
  Classification cls = classify_types(sys);
  for (const auto& pb : cls.problems) rep.add("type-consistency", "fail", pb);
  int n = sys.rd.num_roots();
  PLocalizedLattice xip{sys.xi, sys.p};

  for (int i = 0; i < n; ++i) {
    std::string who = "relation: " + sys.rd.labels[i] + " (type " + to_string(cls.types[i]) + ")";
    VecQ ar = alpha_r(sys, i);
    auto ds = movers_of(sys, i);
    switch (cls.types[i]) {
      case RootType::P: {
        if (std::all_of(ar.begin(), ar.end(), [](const Rat& x) { return x == 0; }))
          rep.add(who, "pass");
        else
          rep.add(who, "fail", "alpha^r = " + vecq_str(ar) + " does not vanish on Xi");
        break;
      }
      case RootType::B: {
        if (ds.empty()) {
          rep.add(who, sys.colors.empty() ? "skipped" : "fail", sys.colors.empty() ? "no colors" : "no color moves it");
          break;
        }
        bool ok = true;
        for (const auto* d : ds) {
          if (d->q_symbolic) { rep.add(who, "undetermined", "degree of " + d->name + " is symbolic"); ok = false; break; }
          VecQ lhs = scaled(d->delta, Rat(d->q.at(i)));
          if (lhs != ar) {
            rep.add(who, "fail", "q*delta_" + d->name + " = " + vecq_str(lhs) + " but alpha^r = " + vecq_str(ar));
            ok = false;
          }
        }
        if (ok) rep.add(who, "pass");
        break;
      }
      case RootType::A: {
        if (ds.size() != 2) {
          rep.add(who, sys.colors.empty() ? "skipped" : "fail",
                  sys.colors.empty() ? "no colors" : "moved by " + std::to_string(ds.size()) + " colors, expected 2");
          break;
        }
        if (ds[0]->q_symbolic || ds[1]->q_symbolic) {
          rep.add(who, "undetermined", "symbolic degrees");
          break;
        }
        bool ok = true;
        VecQ lhs = vsum(scaled(ds[0]->delta, Rat(ds[0]->q.at(i))), scaled(ds[1]->delta, Rat(ds[1]->q.at(i))));
        if (lhs != ar) {
          rep.add(who, "fail", "q*delta_" + ds[0]->name + " + q*delta_" + ds[1]->name + " = " + vecq_str(lhs) +
                                   " but alpha^r = " + vecq_str(ar));
          ok = false;
        }
        if (!member_p(sys.rd.simple_roots[i], xip)) {
          rep.add(who, "fail", "alpha not in Xi_p");
          ok = false;
        }
        auto coords = to_xi_coords(sys, sys.rd.simple_roots[i]);
        if (coords) {
          for (const auto* d : ds) {
            Rat v = Rat(d->q.at(i)) * eval_delta(*d, *coords);
            if (v != 1) {
              rep.add(who, "fail", "q*delta_" + d->name + "(alpha) = " + rat_to_string(v) + ", expected 1");
              ok = false;
            }
          }
        }
        if (ok) rep.add(who, "pass");
        break;
      }
      case RootType::APrime: {
        if (ds.size() != 1) {
          rep.add(who, sys.colors.empty() ? "skipped" : "fail",
                  sys.colors.empty() ? "no colors" : "moved by " + std::to_string(ds.size()) + " colors, expected 1");
          break;
        }
        if (ds[0]->q_symbolic) {
          rep.add(who, "undetermined", "symbolic degree");
          break;
        }
        bool ok = true;
        VecQ lhs = scaled(ds[0]->delta, Rat(2) * Rat(ds[0]->q.at(i)));
        if (lhs != ar) {
          rep.add(who, "fail", "2q*delta_" + ds[0]->name + " = " + vecq_str(lhs) + " but alpha^r = " + vecq_str(ar));
          ok = false;
        }
        if (sys.p != 2) {
          if (member_p(sys.rd.simple_roots[i], xip)) {
            rep.add(who, "fail", "alpha lies in Xi_p (parity obstruction)");
            ok = false;
          }
          for (const auto& chi : sys.xi.basis) {
            Rat pr = sys.rd.pairing(chi, i);
            Rat half = pr / 2;
            if (half.get_den() != 1) {
              rep.add(who, "fail", "<chi, alpha^vee> = " + rat_to_string(pr) + " is odd for chi = " + vecz_str(chi));
              ok = false;
            }
          }
        }
        if (ok) rep.add(who, "pass");
        break;
      }
      case RootType::Undetermined:
        rep.add(who, "undetermined", "p = 2 without color data");
        break;
    }
  }
  return rep;
}

Report check_sharing_rules(const PSphericalSystem& sys) {
  Report rep;
  Classification cls = classify_types(sys);
  MatZ cartan = sys.rd.cartan_matrix();
  bool any = false;
  for (const auto& d : sys.colors) {
    if (d.moved_by.size() < 2) continue;
    any = true;
    std::string who = "sharing: " + d.name;
    // all movers the same type, and that type is A or B
    RootType t0 = cls.types[d.moved_by[0]];
    bool uniform = std::all_of(d.moved_by.begin(), d.moved_by.end(),
                               [&](int i) { return cls.types[i] == t0; });
    if (!uniform || (t0 != RootType::A && t0 != RootType::B)) {
      std::string types;
      for (int i : d.moved_by) types += (types.empty() ? "" : ",") + to_string(cls.types[i]);
      rep.add(who, "fail", "movers have types {" + types + "}; sharing requires all A or all B");
      continue;
    }
    if (t0 == RootType::A) {
      // partner colors must be pairwise distinct
      bool ok = true;
      std::vector<const ColorRecord*> partners;
      for (int i : d.moved_by) {
        const ColorRecord* partner = nullptr;
        for (const auto* e : movers_of(sys, i))
          if (e != &d && e->ctype == ColorType::A) partner = e;
        if (!partner) {
          rep.add(who, "fail", "mover " + sys.rd.labels[i] + " has no second type-A color");
          ok = false;
          continue;
        }
        if (std::find(partners.begin(), partners.end(), partner) != partners.end()) {
          rep.add(who, "fail", "movers share the partner color " + partner->name);
          ok = false;
        }
        partners.push_back(partner);
      }
      if (ok) rep.add(who, "pass");
      continue;
    }
    // type B sharing
    if (d.moved_by.size() != 2) {
      rep.add(who, "fail", "a shared type-B color has exactly two movers");
      continue;
    }
    int i1 = d.moved_by[0], i2 = d.moved_by[1];
    bool ok = true;
    if (cartan[i1][i2] != 0 || cartan[i2][i1] != 0) {
      rep.add(who, "fail", "movers " + sys.rd.labels[i1] + ", " + sys.rd.labels[i2] + " are not orthogonal");
      ok = false;
    }
    // find q1 alpha1 + q2 alpha2 in Sigma with p-power coefficients
    int witness = -1;
    Int q1, q2;
    for (size_t k = 0; k < sys.sigma.size(); ++k) {
      const auto& row = sys.sigma[k];
      bool support_ok = true;
      for (size_t j = 0; j < row.size(); ++j)
        if (row[j] != 0 && static_cast<int>(j) != i1 && static_cast<int>(j) != i2) support_ok = false;
      if (!support_ok || row[i1] == 0 || row[i2] == 0) continue;
      if (is_p_power(row[i1], sys.p) && is_p_power(row[i2], sys.p)) {
        witness = static_cast<int>(k);
        q1 = row[i1];
        q2 = row[i2];
        break;
      }
    }
    if (witness < 0) {
      rep.add(who, "fail", "no sigma of the form q1*" + sys.rd.labels[i1] + " + q2*" + sys.rd.labels[i2] +
                               " with p-power coefficients");
      ok = false;
    } else {
      VecQ lhs = scaled(alpha_r(sys, i1), Rat(1) / Rat(q1));
      VecQ rhs = scaled(alpha_r(sys, i2), Rat(1) / Rat(q2));
      if (lhs != rhs) {
        rep.add(who, "fail", "q1^{-1} alpha1^r = " + vecq_str(lhs) + " differs from q2^{-1} alpha2^r = " + vecq_str(rhs));
        ok = false;
      }
    }
    if (ok) rep.add(who, "pass", witness >= 0 ? "witness sigma " + vecz_str(sys.sigma[witness]) : "");
  }
  if (!any) rep.add("sharing", "pass", "no shared colors");
  return rep;
}

Report check_color_count(const PSphericalSystem& sys) {
  Report rep;
  if (!sys.rk_xi_h) {
    rep.add("color-count", "skipped", "rk Xi(H) not provided");
    return rep;
  }
  Int expected = Int(sys.xi.rank()) + *sys.rk_xi_h;
  Int actual = Int(sys.colors.size());
  if (actual == expected)
    rep.add("color-count", "pass", actual.get_str() + " = rank(Xi) + rk Xi(H)");
  else
    rep.add("color-count", "fail", "#colors = " + actual.get_str() + " but rank(Xi) + rk Xi(H) = " + expected.get_str());
  return rep;
}

}  // namespace spherica
