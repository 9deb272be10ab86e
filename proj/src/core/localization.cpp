#include "localization.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace spherica {

using namespace linalg;

namespace {

std::string vecz_str(const VecZ& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
  return s + ")";
}

// Sigma rows in Xi coordinates; throws on unrepresentable rows.
MatQ sigma_xi_coords(const PSphericalSystem& sys) {
  MatQ out;
  for (size_t k = 0; k < sys.sigma.size(); ++k) {
    auto c = to_xi_coords(sys, sigma_ambient(sys, k));
    if (!c) throw math_error("sigma " + vecz_str(sys.sigma[k]) + " is not in the rational span of Xi");
    out.push_back(std::move(*c));
  }
  return out;
}

VecQ restrict_functional(const PSphericalSystem& sys, const VecQ& delta, const IntegerLattice& new_xi) {
  MatQ old_basis = xi_basis_q(sys);
  VecQ out;
  for (const auto& b : new_xi.basis) {
    auto c = solve_left(old_basis, to_q(b));
    if (!c) throw math_error("restricted lattice escapes the source lattice span");
    out.push_back(dot(delta, *c));
  }
  return out;
}

}  // namespace

NeighborResult is_neighbor_set(const std::vector<size_t>& sigma_prime, const PSphericalSystem& sys) {
  NeighborResult res;
  for (size_t k : sigma_prime)
    if (k >= sys.sigma.size()) throw input_error("is_neighbor_set: index out of range");
  int rank = sys.xi.rank();
  MatQ coords = sigma_xi_coords(sys);
  MatZ all, sub;
  for (const auto& c : coords) all.push_back(primitive_ray(c));
  for (size_t k : sigma_prime) sub.push_back(primitive_ray(coords[k]));
  ConeQ big = cone_from_rays(rank, all);
  ConeQ face = cone_from_rays(rank, sub);
  if (!is_face(face, big)) {
    res.reason = "the cone over the subset is not a face of the cone over Sigma";
    return res;
  }
  std::set<size_t> chosen(sigma_prime.begin(), sigma_prime.end());
  for (size_t k = 0; k < coords.size(); ++k) {
    if (chosen.count(k)) continue;
    if (face.contains(coords[k])) {
      res.reason = "sigma " + vecz_str(sys.sigma[k]) + " also lies on that face; the subset is not cut out exactly";
      return res;
    }
  }
  // witness: minus the sum of the facet normals of the big cone vanishing on
  // the face; it lies in the valuation cone and vanishes exactly on the subset
  VecQ w(static_cast<size_t>(rank), Rat(0));
  for (const auto& u : big.facet_normals) {
    bool tight = true;
    for (const auto& g : sub)
      if (dot(u, g) != 0) { tight = false; break; }
    if (!tight) continue;
    for (int j = 0; j < rank; ++j) w[j] -= Rat(u[j]);
  }
  res.is_neighbor = true;
  res.witness = std::move(w);
  return res;
}

std::vector<std::vector<size_t>> all_neighbor_sets(const PSphericalSystem& sys) {
  size_t m = sys.sigma.size();
  if (m > 16) throw input_error("all_neighbor_sets: Sigma too large for enumeration");
  std::vector<std::vector<size_t>> out;
  for (size_t mask = 0; mask < (size_t(1) << m); ++mask) {
    std::vector<size_t> subset;
    for (size_t k = 0; k < m; ++k)
      if (mask & (size_t(1) << k)) subset.push_back(k);
    if (is_neighbor_set(subset, sys).is_neighbor) out.push_back(std::move(subset));
  }
  return out;
}

LocalizationResult localize_at_S(const PSphericalSystem& sys, const std::vector<int>& s_prime, SMode mode,
                                 const std::optional<VecQ>& lambda) {
  LocalizationResult res;
  int n = sys.rd.num_roots();
  std::vector<bool> keep(n, false);
  for (int i : s_prime) {
    if (i < 0 || i >= n) throw input_error("localize_at_S: root index out of range");
    keep[i] = true;
  }
  std::vector<int> sorted_prime;
  for (int i = 0; i < n; ++i)
    if (keep[i]) sorted_prime.push_back(i);
  std::vector<int> new_index(n, -1);
  for (size_t j = 0; j < sorted_prime.size(); ++j) new_index[sorted_prime[j]] = static_cast<int>(j);

  PSphericalSystem out;
  out.p = sys.p;
  out.rd = sys.rd.restrict_to(sorted_prime);
  out.catalog_path = sys.catalog_path;

  // Sigma: rows supported inside S'
  MatZ kept_sigma;
  for (size_t k = 0; k < sys.sigma.size(); ++k) {
    bool inside = true;
    for (int i = 0; i < n; ++i)
      if (!keep[i] && sys.sigma[k][i] != 0) inside = false;
    if (!inside) {
      res.dropped.push_back("sigma " + vecz_str(sys.sigma[k]) + ": support not inside S'");
      continue;
    }
    VecZ row(sorted_prime.size());
    for (size_t j = 0; j < sorted_prime.size(); ++j) row[j] = sys.sigma[k][sorted_prime[j]];
    res.provenance.push_back("sigma " + vecz_str(row) + " <- sigma " + vecz_str(sys.sigma[k]));
    kept_sigma.push_back(std::move(row));
  }
  out.sigma = std::move(kept_sigma);

  for (int i : sys.sp)
    if (keep[i]) out.sp.push_back(new_index[i]);
  std::sort(out.sp.begin(), out.sp.end());

  // Xi'
  if (mode == SMode::MinimalRank) {
    MatZ span;
    for (const auto& row : out.sigma) {
      VecZ full(n, Int(0));
      for (size_t j = 0; j < sorted_prime.size(); ++j) full[sorted_prime[j]] = row[j];
      span.push_back(sys.rd.root_coords_to_ambient(full));
    }
    out.xi = intersect_with_span(sys.xi, span);
  } else {
    if (!sys.fan) throw input_error("localize_at_S: fan mode requires a fan");
    if (!lambda) throw input_error("localize_at_S: fan mode requires lambda");
    FanCheck fc = validate_fan(*sys.fan);
    if (!fc.valid) throw input_error("localize_at_S: invalid fan: " + fc.violations.front());
    ConeQ v = valuation_cone(sys);
    for (const auto& c : sys.fan->cones) {
      for (const auto& r : c.rays)
        if (!v.contains(r)) throw input_error("localize_at_S: fan support not inside the valuation cone");
      for (const auto& l : c.lineality) {
        VecZ neg(l.size());
        for (size_t j = 0; j < l.size(); ++j) neg[j] = -l[j];
        if (!v.contains(l) || !v.contains(neg))
          throw input_error("localize_at_S: fan support not inside the valuation cone");
      }
    }
    // adaptedness of lambda to S' on the representable simple roots
    for (int i = 0; i < n; ++i) {
      auto c = to_xi_coords(sys, sys.rd.simple_roots[i]);
      if (!c) {
        res.warnings.push_back("adaptedness of lambda not checkable on " + sys.rd.labels[i] + " (outside Xi_Q)");
        continue;
      }
      Rat val = dot(*lambda, *c);
      if (keep[i] && val != 0) throw input_error("localize_at_S: lambda does not vanish on " + sys.rd.labels[i]);
      if (!keep[i] && val <= 0) throw input_error("localize_at_S: lambda is not positive on " + sys.rd.labels[i]);
    }
    FanLocalization fl = localize_fan(*sys.fan, *lambda);
    // Xi' = { x in Xi : v(x) = 0 for v in V(lambda) }, computed in Xi coords
    MatZ coord_kernel;
    if (fl.v_lambda_basis.empty()) {
      coord_kernel.assign(sys.xi.rank(), VecZ(sys.xi.rank(), Int(0)));
      for (int i = 0; i < sys.xi.rank(); ++i) coord_kernel[i][i] = 1;
    } else {
      coord_kernel = left_kernel(transpose(fl.v_lambda_basis));
    }
    MatZ gens;
    for (const auto& c : coord_kernel) {
      VecZ amb(static_cast<size_t>(sys.rd.ambient_dim), Int(0));
      for (size_t j = 0; j < c.size(); ++j)
        for (int a = 0; a < sys.rd.ambient_dim; ++a) amb[a] += c[j] * sys.xi.basis[j][a];
      gens.push_back(std::move(amb));
    }
    out.xi = normal_form(sys.rd.ambient_dim, gens);
  }

  // colors moved by S'
  for (const auto& d : sys.colors) {
    std::vector<int> movers;
    for (int i : d.moved_by)
      if (keep[i]) movers.push_back(new_index[i]);
    if (movers.empty()) {
      res.dropped.push_back("color " + d.name + ": moved only outside S'");
      continue;
    }
    ColorRecord nd;
    nd.name = d.name;
    nd.ctype = d.ctype;
    nd.moved_by = std::move(movers);
    nd.q_symbolic = d.q_symbolic;
    if (!d.q_symbolic)
      for (int i : d.moved_by)
        if (keep[i]) nd.q[new_index[i]] = d.q.at(i);
    nd.delta = restrict_functional(sys, d.delta, out.xi);
    res.provenance.push_back("color " + nd.name + " <- color " + d.name);
    out.colors.push_back(std::move(nd));
  }

  res.sys = std::move(out);
  return res;
}

LocalizationResult localize_at_Sigma(const PSphericalSystem& sys, const std::vector<size_t>& sigma_prime) {
  NeighborResult nb = is_neighbor_set(sigma_prime, sys);
  if (!nb.is_neighbor)
    throw math_error("localize_at_Sigma: the subset is not a set of neighbors: " + nb.reason);

  LocalizationResult res;
  int rank = sys.xi.rank();
  ConeQ v = valuation_cone(sys);
  if (!v.contains(nb.witness)) throw math_error("localize_at_Sigma: witness escaped the valuation cone");

  // C = minimal face of V containing the witness: impose the tight facets
  MatZ tight = v.span_eqs;
  for (const auto& u : v.facet_normals)
    if (dot(to_q(u), nb.witness) == 0) tight.push_back(u);
  ConeQ c = cone_from_inequalities(rank, v.facet_normals, tight);

  // Xi' = Xi cap <C>^perp (covectors in N act on Xi coordinates)
  MatZ span_gens = c.rays;
  span_gens.insert(span_gens.end(), c.lineality.begin(), c.lineality.end());
  MatZ coord_kernel;
  if (span_gens.empty()) {
    coord_kernel.assign(rank, VecZ(rank, Int(0)));
    for (int i = 0; i < rank; ++i) coord_kernel[i][i] = 1;
  } else {
    coord_kernel = left_kernel(transpose(span_gens));
  }
  PSphericalSystem out;
  out.p = sys.p;
  out.rd = sys.rd;
  out.sp = sys.sp;
  out.catalog_path = sys.catalog_path;
  {
    MatZ gens;
    for (const auto& k : coord_kernel) {
      VecZ amb(static_cast<size_t>(sys.rd.ambient_dim), Int(0));
      for (size_t j = 0; j < k.size(); ++j)
        for (int a = 0; a < sys.rd.ambient_dim; ++a) amb[a] += k[j] * sys.xi.basis[j][a];
      gens.push_back(std::move(amb));
    }
    out.xi = normal_form(sys.rd.ambient_dim, gens);
  }

  std::set<size_t> chosen(sigma_prime.begin(), sigma_prime.end());
  for (size_t k = 0; k < sys.sigma.size(); ++k) {
    if (chosen.count(k)) {
      out.sigma.push_back(sys.sigma[k]);
      res.provenance.push_back("sigma " + vecz_str(sys.sigma[k]) + " <- sigma " + vecz_str(sys.sigma[k]));
    } else {
      res.dropped.push_back("sigma " + vecz_str(sys.sigma[k]) + ": strictly negative on the chosen face");
    }
  }

  // type bookkeeping
  Classification before = classify_types(sys);
  int n = sys.rd.num_roots();
  auto in_new_sigma = [&](int i, const Int& mult) {
    for (const auto& row : out.sigma)
      if (sigma_is_multiple_of_root(row, i, mult)) return true;
    return false;
  };
  std::vector<bool> still_a(n, false);
  for (int i = 0; i < n; ++i) {
    RootType t = before.types[i];
    if (sys.p != 2) {
      if (t == RootType::A && in_new_sigma(i, Int(1))) still_a[i] = true;
      if (t == RootType::A && !in_new_sigma(i, Int(1)))
        res.provenance.push_back("type " + sys.rd.labels[i] + ": A -> B");
      if (t == RootType::APrime && !in_new_sigma(i, Int(2)))
        res.provenance.push_back("type " + sys.rd.labels[i] + ": A' -> B");
    } else {
      if ((t == RootType::A || t == RootType::APrime || t == RootType::Undetermined) && in_new_sigma(i, Int(1))) {
        still_a[i] = (t == RootType::A);
        res.warnings.push_back("p = 2: type of " + sys.rd.labels[i] + " in the derived system is undetermined (A or A')");
      }
    }
  }

  for (const auto& d : sys.colors) {
    if (d.ctype == ColorType::A) {
      std::vector<int> movers;
      for (int i : d.moved_by)
        if (still_a[i]) movers.push_back(i);
      if (!movers.empty()) {
        ColorRecord nd;
        nd.name = d.name;
        nd.ctype = ColorType::A;
        nd.moved_by = std::move(movers);
        nd.q_symbolic = true;
        nd.delta = restrict_functional(sys, d.delta, out.xi);
        res.warnings.push_back("color " + nd.name + ": delta restricted up to an unknown p-power factor (q = p^?)");
        res.provenance.push_back("color " + nd.name + " <- color " + d.name);
        out.colors.push_back(std::move(nd));
        continue;
      }
    }
    // remaining colors survive geometrically but their functionals are not
    // determined by the data; emit placeholders
    ColorRecord nd;
    nd.name = d.name;
    nd.ctype = ColorType::B;
    nd.moved_by = d.moved_by;
    nd.q_symbolic = true;
    nd.delta.assign(static_cast<size_t>(out.xi.rank()), Rat(0));
    res.warnings.push_back("color " + nd.name + ": placeholder without a known functional");
    res.provenance.push_back("color " + nd.name + " <- color " + d.name);
    out.colors.push_back(std::move(nd));
  }

  res.sys = std::move(out);
  return res;
}

Report check_neighbor_inequalities(const PSphericalSystem& sys) {
  Report rep;
  Classification cls = classify_types(sys);
  if (!cls.ok()) {
    for (const auto& pb : cls.problems) rep.add("type-consistency", "fail", pb);
    return rep;
  }
  MatQ coords = sigma_xi_coords(sys);
  bool any = false;
  for (const auto& d : sys.colors) {
    if (d.ctype != ColorType::A) continue;
    for (int i : d.moved_by) {
      if (cls.types[i] != RootType::A) continue;
      int alpha_row = find_sigma_root(sys, i, Int(1));
      if (alpha_row < 0) continue;
      for (size_t k = 0; k < sys.sigma.size(); ++k) {
        if (static_cast<int>(k) == alpha_row) continue;
        if (!is_neighbor_set({static_cast<size_t>(alpha_row), k}, sys).is_neighbor) continue;
        any = true;
        std::string who = "neighbor-bound: (" + d.name + ", " + sys.rd.labels[i] + ", sigma " + vecz_str(sys.sigma[k]) + ")";
        Rat val = eval_delta(d, coords[k]);
        // which simple root (if any) is sigma_k?
        int beta = -1;
        for (int j = 0; j < sys.rd.num_roots(); ++j)
          if (sigma_is_multiple_of_root(sys.sigma[k], j, Int(1))) beta = j;
        if (val > 0) {
          bool beta_moves = beta >= 0 && cls.types[beta] == RootType::A &&
                            std::find(d.moved_by.begin(), d.moved_by.end(), beta) != d.moved_by.end();
          if (beta_moves)
            rep.add(who, "pass", "delta > 0 realized by a type-A mover");
          else
            rep.add(who, "fail", "delta_D(sigma) = " + rat_to_string(val) + " > 0 but sigma is not a type-A simple root moving " + d.name);
          continue;
        }
        // two-sided bound applies when sigma moves neither color moved by alpha
        bool moves_shared = false;
        if (beta >= 0)
          for (const auto& e : sys.colors)
            if (std::find(e.moved_by.begin(), e.moved_by.end(), i) != e.moved_by.end() &&
                std::find(e.moved_by.begin(), e.moved_by.end(), beta) != e.moved_by.end() && beta != i)
              moves_shared = true;
        if (beta >= 0 && moves_shared) {
          rep.add(who, "pass", "sigma shares a color with " + sys.rd.labels[i] + "; bound not applicable");
          continue;
        }
        if (d.q_symbolic) {
          rep.add(who, "undetermined", "degree of " + d.name + " is symbolic");
          continue;
        }
        Rat pairing = sys.rd.pairing(sigma_ambient(sys, k), i);
        Rat lower = pairing / Rat(d.q.at(i));
        if (lower <= val && val <= 0)
          rep.add(who, "pass", rat_to_string(lower) + " <= " + rat_to_string(val) + " <= 0");
        else
          rep.add(who, "fail", "delta_D(sigma) = " + rat_to_string(val) + " violates [" + rat_to_string(lower) + ", 0]");
      }
    }
  }
  if (!any) rep.add("neighbor-bound", "pass", "no applicable (color, root, sigma) triples");
  return rep;
}

}  // namespace spherica
