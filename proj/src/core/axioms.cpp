#include "axioms.hpp"

#include "localization.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace spherica {

using namespace linalg;

bool AxiomReport::ok() const {
  return std::all_of(status.begin(), status.end(),
                     [](const auto& kv) { return kv.second != "fail"; });
}

// --- catalog ---------------------------------------------------------------

static std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

static std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

RootCatalog parse_catalog(const std::string& text) {
  RootCatalog cat;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto err = [&](const std::string& msg) {
      return input_error("catalog line " + std::to_string(lineno) + ": " + msg);
    };
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    std::vector<std::string> fields = split(line, '|');
    if (fields.size() < 2) throw err("expected 'coords | sp: ...'");
    CatalogEntry e;
    {
      std::istringstream cs(fields[0]);
      std::string tok;
      while (cs >> tok) {
        try {
          e.root.push_back(Int(tok));
        } catch (const std::exception&) {
          throw err("bad coordinate '" + tok + "'");
        }
      }
      if (e.root.empty()) throw err("empty root vector");
    }
    {
      std::string sp = trim(fields[1]);
      if (sp.rfind("sp:", 0) != 0) throw err("second field must start with 'sp:'");
      sp = trim(sp.substr(3));
      if (sp == "any") {
        e.any_sp = true;
      } else {
        std::istringstream ss(sp);
        std::string tok;
        while (ss >> tok) {
          if (tok.front() != '{' || tok.back() != '}') throw err("SP set must look like {} or {a1,a2}");
          std::string inner = tok.substr(1, tok.size() - 2);
          std::vector<std::string> labels;
          if (!inner.empty())
            for (const auto& l : split(inner, ',')) labels.push_back(trim(l));
          std::sort(labels.begin(), labels.end());
          e.sp_sets.push_back(std::move(labels));
        }
        if (e.sp_sets.empty()) throw err("no admissible SP sets given");
      }
    }
    e.p_constraint = "any";
    if (fields.size() > 2) {
      std::string pc = trim(fields[2]);
      if (pc.rfind("p:", 0) != 0) throw err("third field must start with 'p:'");
      pc = trim(pc.substr(2));
      if (pc != "any" && pc.rfind("=", 0) != 0 && pc.rfind("!=", 0) != 0)
        throw err("p constraint must be 'any', '=N' or '!=N'");
      e.p_constraint = pc;
    }
    if (fields.size() > 3) throw err("too many fields");
    cat.entries.push_back(std::move(e));
  }
  return cat;
}

RootCatalog load_catalog(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw input_error("cannot open catalog file '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_catalog(ss.str());
}

static bool p_constraint_holds(const std::string& pc, const Int& p) {
  if (pc == "any") return true;
  if (pc.rfind("!=", 0) == 0) return p != Int(trim(pc.substr(2)));
  if (pc.rfind("=", 0) == 0) return p == Int(trim(pc.substr(1)));
  return false;
}

Report check_A3(const PSphericalSystem& sys, const RootCatalog& cat) {
  Report rep;
  std::vector<std::string> sp_labels;
  for (int i : sys.sp) sp_labels.push_back(sys.rd.labels[i]);
  std::sort(sp_labels.begin(), sp_labels.end());
  for (size_t k = 0; k < sys.sigma.size(); ++k) {
    std::string sig = "(";
    for (size_t j = 0; j < sys.sigma[k].size(); ++j) sig += (j ? "," : "") + sys.sigma[k][j].get_str();
    sig += ")";
    bool found_vector = false, admissible = false;
    for (const auto& e : cat.entries) {
      if (e.root != sys.sigma[k]) continue;
      if (!p_constraint_holds(e.p_constraint, sys.p)) continue;
      found_vector = true;
      if (e.any_sp) {
        admissible = true;
        break;
      }
      for (const auto& u : e.sp_sets)
        if (std::includes(u.begin(), u.end(), sp_labels.begin(), sp_labels.end())) admissible = true;
      if (admissible) break;
    }
    if (admissible)
      rep.add("catalog: sigma " + sig, "pass");
    else if (found_vector)
      rep.add("catalog: sigma " + sig, "fail", "SP is not admissible for this root");
    else
      rep.add("catalog: sigma " + sig, "fail", "sigma " + sig + " not present in the catalog");
  }
  if (sys.sigma.empty()) rep.add("catalog", "pass", "Sigma is empty");
  return rep;
}

// --- validate --------------------------------------------------------------

namespace {

std::string vecz_str(const VecZ& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
  return s + ")";
}

std::string vecq_str(const VecQ& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + rat_to_string(v[i]);
  return s + ")";
}

struct Ax {
  AxiomReport& rep;
  std::string id;
  bool failed = false;
  bool undetermined = false;
  Ax(AxiomReport& r, std::string i) : rep(r), id(std::move(i)) {}
  void fail(const std::string& witness, const std::string& msg) {
    failed = true;
    rep.failures.push_back({id, witness, msg});
  }
  void undet() { undetermined = true; }
  void close(const std::string& vacuous_status = "pass") {
    if (failed) rep.status[id] = "fail";
    else if (undetermined) rep.status[id] = "undetermined";
    else rep.status[id] = vacuous_status;
  }
};

}  // namespace

AxiomReport validate(const PSphericalSystem& sys, P2Mode mode, const std::optional<RootCatalog>& catalog) {
  AxiomReport rep;
  rep.p2_mode = mode == P2Mode::On || (mode == P2Mode::Auto && sys.p == 2);

  Classification cls = classify_types(sys);
  int n = sys.rd.num_roots();
  IntegerLattice m = zs_cap_xip(sys.rd, sys.xi, sys.p);
  PLocalizedLattice xip{sys.xi, sys.p};

  std::vector<int> s_a;  // S^A: type-A simple roots (recovered)
  for (int i = 0; i < n; ++i)
    if (cls.types[i] == RootType::A) s_a.push_back(i);
  std::vector<const ColorRecord*> delta_a;  // Delta^A
  for (const auto& d : sys.colors)
    if (d.ctype == ColorType::A) delta_a.push_back(&d);

  // A1: sigma primitive in ZS cap Xi_p
  {
    Ax ax(rep, "A1");
    for (size_t k = 0; k < sys.sigma.size(); ++k) {
      try {
        if (!is_primitive(sys.sigma[k], m))
          ax.fail("sigma " + vecz_str(sys.sigma[k]), "not primitive in ZS cap Xi_p");
      } catch (const Error& e) {
        ax.fail("sigma " + vecz_str(sys.sigma[k]), std::string("not in ZS cap Xi_p: ") + e.what());
      }
    }
    ax.close();
  }

  // A2: alpha^r = 0 on Xi for alpha in SP
  {
    Ax ax(rep, "A2");
    for (int i : sys.sp) {
      VecQ ar = alpha_r(sys, i);
      if (!std::all_of(ar.begin(), ar.end(), [](const Rat& x) { return x == 0; }))
        ax.fail(sys.rd.labels[i], "alpha^r = " + vecq_str(ar) + " does not vanish on Xi");
    }
    ax.close();
  }

  // A3: catalog membership
  {
    Ax ax(rep, "A3");
    if (!catalog) {
      rep.status["A3"] = "skipped";
    } else {
      Report a3 = check_A3(sys, *catalog);
      for (const auto& item : a3.items)
        if (item.status == "fail") ax.fail(item.name, item.detail);
      ax.close();
    }
  }

  // A4: delta_D(sigma) <= 0 for D in Delta^A, sigma in Sigma \ S^A
  {
    Ax ax(rep, "A4");
    for (const auto* d : delta_a) {
      for (size_t k = 0; k < sys.sigma.size(); ++k) {
        bool is_sa_root = false;
        for (int i : s_a)
          if (sigma_is_multiple_of_root(sys.sigma[k], i, Int(1))) is_sa_root = true;
        if (is_sa_root) continue;
        if (rep.p2_mode) {
          // only sigma neighboring some alpha in S^A moving D
          bool neighbors = false;
          for (int i : d->moved_by) {
            if (cls.types[i] != RootType::A) continue;
            int row = find_sigma_root(sys, i, Int(1));
            if (row < 0 || static_cast<size_t>(row) == k) continue;
            if (is_neighbor_set({static_cast<size_t>(row), k}, sys).is_neighbor) neighbors = true;
          }
          if (!neighbors) continue;
        }
        auto coords = to_xi_coords(sys, sigma_ambient(sys, k));
        if (!coords) {
          ax.fail("sigma " + vecz_str(sys.sigma[k]), "not in the rational span of Xi");
          continue;
        }
        Rat v = eval_delta(*d, *coords);
        if (v > 0)
          ax.fail("(" + d->name + ", sigma " + vecz_str(sys.sigma[k]) + ")",
                  "delta = " + rat_to_string(v) + " > 0");
      }
    }
    ax.close();
  }

  // A5: each alpha in S^A has exactly two positive type-A colors; every
  // type-A color is positive somewhere on S^A
  std::map<int, std::vector<const ColorRecord*>> positive_pair;
  {
    Ax ax(rep, "A5");
    for (int i : s_a) {
      auto coords = to_xi_coords(sys, sys.rd.simple_roots[i]);
      std::vector<const ColorRecord*> pos;
      if (coords)
        for (const auto* d : delta_a)
          if (eval_delta(*d, *coords) > 0) pos.push_back(d);
      if (pos.size() != 2)
        ax.fail(sys.rd.labels[i], "has " + std::to_string(pos.size()) + " type-A colors with delta > 0, expected 2");
      else
        positive_pair[i] = pos;
    }
    for (const auto* d : delta_a) {
      bool some = false;
      for (int i : s_a) {
        auto coords = to_xi_coords(sys, sys.rd.simple_roots[i]);
        if (coords && eval_delta(*d, *coords) > 0) some = true;
      }
      if (!some) ax.fail(d->name, "positive on no type-A simple root");
    }
    ax.close();
  }

  // A6: the recovered degrees are p-powers and the two-color sum is alpha^r
  {
    Ax ax(rep, "A6");
    if (rep.status["A5"] == "fail" && !s_a.empty()) {
      rep.status["A6"] = "undetermined";
    } else {
      for (int i : s_a) {
        auto it = positive_pair.find(i);
        if (it == positive_pair.end()) continue;
        auto coords = to_xi_coords(sys, sys.rd.simple_roots[i]);
        VecQ ar = alpha_r(sys, i);
        VecQ sum(ar.size(), Rat(0));
        bool local_ok = true;
        for (const auto* d : it->second) {
          Rat v = eval_delta(*d, *coords);
          Rat qd = 1 / v;
          if (qd.get_den() != 1 || !is_p_power(Int(qd.get_num()), sys.p)) {
            ax.fail("(" + sys.rd.labels[i] + ", " + d->name + ")",
                    "delta(alpha)^{-1} = " + rat_to_string(qd) + " is not a power of p");
            local_ok = false;
            continue;
          }
          for (size_t j = 0; j < sum.size(); ++j) sum[j] += qd * d->delta[j];
        }
        if (local_ok && sum != ar)
          ax.fail(sys.rd.labels[i], "q_+ delta_+ + q_- delta_- = " + vecq_str(sum) + " but alpha^r = " + vecq_str(ar));
      }
      ax.close();
    }
  }

  // A7: doubled roots (p != 2 only)
  {
    Ax ax(rep, "A7");
    if (rep.p2_mode) {
      rep.status["A7"] = "skipped";
    } else {
      for (size_t k = 0; k < sys.sigma.size(); ++k) {
        int dbl = -1;
        for (int i = 0; i < n; ++i)
          if (sigma_is_multiple_of_root(sys.sigma[k], i, Int(2))) dbl = i;
        if (dbl < 0) continue;
        std::string who = "2*" + sys.rd.labels[dbl];
        if (member_p(sys.rd.simple_roots[dbl], xip))
          ax.fail(who, "alpha lies in Xi_p");
        for (const auto& chi : sys.xi.basis) {
          Rat half = sys.rd.pairing(chi, dbl) / 2;
          if (!in_z_localized(half, sys.p))
            ax.fail(who, "(1/2)<chi, alpha^vee> = " + rat_to_string(half) + " is outside Z[1/p] for chi = " + vecz_str(chi));
        }
        for (size_t k2 = 0; k2 < sys.sigma.size(); ++k2) {
          if (k2 == k) continue;
          Rat v = sys.rd.pairing(sigma_ambient(sys, k2), dbl);
          if (v > 0)
            ax.fail(who, "alpha^r(sigma " + vecz_str(sys.sigma[k2]) + ") = " + rat_to_string(v) + " > 0");
        }
      }
      ax.close();
    }
  }

  // A8: orthogonal p-power combinations
  {
    Ax ax(rep, "A8");
    MatZ cartan = sys.rd.cartan_matrix();
    for (size_t k = 0; k < sys.sigma.size(); ++k) {
      const auto& row = sys.sigma[k];
      std::vector<int> supp;
      for (int j = 0; j < n; ++j)
        if (row[j] != 0) supp.push_back(j);
      if (supp.size() != 2) continue;
      int i1 = supp[0], i2 = supp[1];
      if (cartan[i1][i2] != 0 || cartan[i2][i1] != 0) continue;
      Int q1 = row[i1], q2 = row[i2];
      if (!is_p_power(q1, sys.p) || !is_p_power(q2, sys.p)) continue;
      std::string who = "sigma " + vecz_str(row);
      VecQ lhs = alpha_r(sys, i1), rhs = alpha_r(sys, i2);
      for (auto& x : lhs) x /= Rat(q1);
      for (auto& x : rhs) x /= Rat(q2);
      if (lhs != rhs)
        ax.fail(who, "q1^{-1} alpha1^r = " + vecq_str(lhs) + " differs from q2^{-1} alpha2^r = " + vecq_str(rhs));
      // degree clause on colors moved by both roots
      for (const auto& d : sys.colors) {
        bool m1 = std::find(d.moved_by.begin(), d.moved_by.end(), i1) != d.moved_by.end();
        bool m2 = std::find(d.moved_by.begin(), d.moved_by.end(), i2) != d.moved_by.end();
        if (!m1 || !m2) continue;
        if (d.q_symbolic) {
          ax.undet();
          continue;
        }
        Rat l = Rat(d.q.at(i1)) / Rat(q1), r = Rat(d.q.at(i2)) / Rat(q2);
        if (l != r)
          ax.fail(who, "q1^{-1} q_{alpha1} = " + rat_to_string(l) + " differs from q2^{-1} q_{alpha2} = " +
                           rat_to_string(r) + " on color " + d.name);
      }
    }
    ax.close();
  }

  return rep;
}

}  // namespace spherica
