#include "io.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace spherica {

using json = nlohmann::ordered_json;
using namespace linalg;

// --- parsing ---------------------------------------------------------------

namespace {

[[noreturn]] void bad(const std::string& field, const std::string& msg) {
  throw input_error("field '" + field + "': " + msg);
}

Int json_int(const json& j, const std::string& field) {
  if (j.is_number_integer()) return Int(static_cast<long>(j.get<long long>()));
  if (j.is_string()) {
    try {
      return Int(j.get<std::string>());
    } catch (const std::exception&) {
      bad(field, "not an integer: '" + j.get<std::string>() + "'");
    }
  }
  bad(field, "expected an integer (decimals are rejected)");
}

Rat json_rat(const json& j, const std::string& field) {
  if (j.is_number_integer()) return Rat(Int(static_cast<long>(j.get<long long>())));
  if (j.is_string()) return rat_from_string(j.get<std::string>());
  bad(field, "expected an exact rational as an \"a/b\" string (decimals are rejected)");
}

MatZ json_int_matrix(const json& j, const std::string& field) {
  if (!j.is_array()) bad(field, "expected a matrix (array of integer rows)");
  MatZ m;
  for (const auto& row : j) {
    if (!row.is_array()) bad(field, "expected integer rows");
    VecZ v;
    for (const auto& x : row) v.push_back(json_int(x, field));
    m.push_back(std::move(v));
  }
  return m;
}

int label_index_or_throw(const RootDatum& rd, const std::string& label, const std::string& field) {
  int i = rd.label_index(label);
  if (i < 0) bad(field, "unknown simple-root label '" + label + "'");
  return i;
}

}  // namespace

PSphericalSystem parse_system(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw input_error(std::string("JSON parse error: ") + e.what());
  }
  if (!j.is_object()) throw input_error("top level must be a JSON object");
  if (!j.contains("format_version") || json_int(j["format_version"], "format_version") != 1)
    throw input_error("field 'format_version': missing or unsupported (expected 1)");

  PSphericalSystem sys;
  if (!j.contains("group")) bad("group", "missing");
  if (j["group"].is_string()) {
    sys.group_spec = j["group"].get<std::string>();
    sys.rd = build_root_datum(sys.group_spec);
  } else if (j["group"].is_object() && j["group"].contains("cartan")) {
    sys.rd = build_root_datum(json_int_matrix(j["group"]["cartan"], "group.cartan"));
  } else {
    bad("group", "expected a type string or {\"cartan\": [[...]]}");
  }

  if (!j.contains("p")) bad("p", "missing");
  sys.p = json_int(j["p"], "p");
  if (sys.p < 1) bad("p", "must be >= 1");

  if (!j.contains("xi")) bad("xi", "missing");
  MatZ xi_rows = json_int_matrix(j["xi"], "xi");
  for (const auto& r : xi_rows)
    if (static_cast<int>(r.size()) != sys.rd.ambient_dim) bad("xi", "row length must equal the ambient dimension");
  sys.xi = normal_form(sys.rd.ambient_dim, xi_rows);

  if (!j.contains("sigma")) bad("sigma", "missing");
  sys.sigma = json_int_matrix(j["sigma"], "sigma");
  for (const auto& r : sys.sigma)
    if (static_cast<int>(r.size()) != sys.rd.num_roots()) bad("sigma", "row length must equal the number of simple roots");

  if (j.contains("sp")) {
    if (!j["sp"].is_array()) bad("sp", "expected a list of root labels");
    for (const auto& l : j["sp"]) {
      if (!l.is_string()) bad("sp", "expected root labels");
      sys.sp.push_back(label_index_or_throw(sys.rd, l.get<std::string>(), "sp"));
    }
    std::sort(sys.sp.begin(), sys.sp.end());
  }

  if (j.contains("colors")) {
    if (!j["colors"].is_array()) bad("colors", "expected a list");
    for (const auto& c : j["colors"]) {
      ColorRecord d;
      if (!c.contains("name") || !c["name"].is_string()) bad("colors", "color without a name");
      d.name = c["name"].get<std::string>();
      std::string where = "colors." + d.name;
      if (!c.contains("type") || !c["type"].is_string()) bad(where, "missing type");
      auto t = color_type_from_string(c["type"].get<std::string>());
      if (!t) bad(where + ".type", "expected one of B, A, A'");
      d.ctype = *t;
      if (!c.contains("moved_by") || !c["moved_by"].is_array()) bad(where, "missing moved_by list");
      for (const auto& l : c["moved_by"]) {
        if (!l.is_string()) bad(where + ".moved_by", "expected root labels");
        d.moved_by.push_back(label_index_or_throw(sys.rd, l.get<std::string>(), where + ".moved_by"));
      }
      std::sort(d.moved_by.begin(), d.moved_by.end());
      if (!c.contains("delta") || !c["delta"].is_array()) bad(where, "missing delta list");
      for (const auto& x : c["delta"]) d.delta.push_back(json_rat(x, where + ".delta"));
      if (c.contains("q")) {
        if (c["q"].is_string()) {
          if (c["q"].get<std::string>() != "p^?") bad(where + ".q", "symbolic degree must be the string \"p^?\"");
          d.q_symbolic = true;
        } else if (c["q"].is_object()) {
          for (const auto& [label, value] : c["q"].items())
            d.q[label_index_or_throw(sys.rd, label, where + ".q")] = json_int(value, where + ".q");
        } else {
          bad(where + ".q", "expected a label -> p-power map or \"p^?\"");
        }
      } else {
        bad(where, "missing q");
      }
      sys.colors.push_back(std::move(d));
    }
  }

  if (j.contains("rk_xi_h")) sys.rk_xi_h = json_int(j["rk_xi_h"], "rk_xi_h");
  if (j.contains("catalog_path")) {
    if (!j["catalog_path"].is_string()) bad("catalog_path", "expected a string");
    sys.catalog_path = j["catalog_path"].get<std::string>();
  }
  if (j.contains("fan")) {
    if (!j["fan"].is_array()) bad("fan", "expected a list of cones");
    std::vector<ConeQ> cones;
    for (const auto& c : j["fan"]) {
      MatZ rays = json_int_matrix(c, "fan");
      for (const auto& r : rays)
        if (static_cast<int>(r.size()) != sys.xi.rank()) bad("fan", "ray length must equal the rank of Xi");
      cones.push_back(cone_from_rays(sys.xi.rank(), rays));
    }
    sys.fan = fan_from_cones(sys.xi.rank(), cones);
  }

  Report structure = check_structure(sys);
  for (const auto& item : structure.items)
    if (item.status == "fail") throw input_error("structural invariant '" + item.name + "': " + item.detail);
  return sys;
}

PSphericalSystem load_system(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw input_error("cannot open system file '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_system(ss.str());
}

// --- emission --------------------------------------------------------------

namespace {

json int_to_json(const Int& x) {
  if (x.fits_slong_p()) return json(x.get_si());
  return json(x.get_str());
}

json matz_to_json(const MatZ& m) {
  json rows = json::array();
  for (const auto& r : m) {
    json row = json::array();
    for (const auto& x : r) row.push_back(int_to_json(x));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::string emit_system(const PSphericalSystem& sys) {
  json j;
  j["format_version"] = 1;
  if (!sys.group_spec.empty())
    j["group"] = sys.group_spec;
  else
    j["group"] = json{{"cartan", matz_to_json(sys.rd.cartan_matrix())}};
  j["p"] = int_to_json(sys.p);
  j["xi"] = matz_to_json(sys.xi.basis);
  j["sigma"] = matz_to_json(sys.sigma);
  json sp = json::array();
  for (int i : sys.sp) sp.push_back(sys.rd.labels[i]);
  j["sp"] = std::move(sp);
  json colors = json::array();
  for (const auto& d : sys.colors) {
    json c;
    c["name"] = d.name;
    c["type"] = to_string(d.ctype);
    json movers = json::array();
    for (int i : d.moved_by) movers.push_back(sys.rd.labels[i]);
    c["moved_by"] = std::move(movers);
    json delta = json::array();
    for (const auto& x : d.delta) delta.push_back(rat_to_string(x));
    c["delta"] = std::move(delta);
    if (d.q_symbolic) {
      c["q"] = "p^?";
    } else {
      json q = json::object();
      for (int i : d.moved_by) q[sys.rd.labels[i]] = int_to_json(d.q.at(i));
      c["q"] = std::move(q);
    }
    colors.push_back(std::move(c));
  }
  j["colors"] = std::move(colors);
  if (sys.rk_xi_h) j["rk_xi_h"] = int_to_json(*sys.rk_xi_h);
  if (sys.catalog_path) j["catalog_path"] = *sys.catalog_path;
  if (sys.fan) {
    json fan = json::array();
    for (const auto& c : sys.fan->cones) {
      MatZ gens = c.rays;
      for (const auto& l : c.lineality) {
        gens.push_back(l);
        VecZ neg(l.size());
        for (size_t k = 0; k < l.size(); ++k) neg[k] = -l[k];
        gens.push_back(std::move(neg));
      }
      fan.push_back(matz_to_json(gens));
    }
    j["fan"] = std::move(fan);
  }
  return j.dump(2) + "\n";
}

// --- reports ---------------------------------------------------------------

std::string report_json(const Report& rep) {
  json j;
  j["schema_version"] = "1";
  j["ok"] = rep.ok();
  json items = json::array();
  for (const auto& i : rep.items)
    items.push_back(json{{"name", i.name}, {"status", i.status}, {"detail", i.detail}});
  j["items"] = std::move(items);
  return j.dump(2) + "\n";
}

std::string axiom_report_json(const AxiomReport& rep) {
  json j;
  j["schema_version"] = rep.schema_version;
  j["p2_mode"] = rep.p2_mode;
  j["ok"] = rep.ok();
  json status = json::object();
  for (const auto& [axiom, st] : rep.status) status[axiom] = st;
  j["status"] = std::move(status);
  json failures = json::array();
  for (const auto& f : rep.failures)
    failures.push_back(json{{"axiom", f.axiom}, {"witness", f.witness}, {"message", f.message}});
  j["failures"] = std::move(failures);
  return j.dump(2) + "\n";
}

// --- fixture generators ----------------------------------------------------

namespace {

// delta given by its values on the simple roots, re-expressed on the Xi basis
VecQ delta_from_root_values(const PSphericalSystem& sys, const VecQ& values_on_roots) {
  VecQ out;
  for (const auto& b : sys.xi.basis) {
    auto c = solve_left(sys.rd.simple_roots, to_q(b));
    if (!c) throw math_error("Xi basis vector outside the root span");
    out.push_back(dot(*c, values_on_roots));
  }
  return out;
}

}  // namespace

PSphericalSystem example_frobenius_diag(const Int& p, const Int& q) {
  if (!is_p_power(q, p)) throw input_error("q = " + q.get_str() + " is not a power of p = " + p.get_str());
  PSphericalSystem sys;
  sys.p = p;
  sys.group_spec = "A1xA1";
  sys.rd = build_root_datum(sys.group_spec);
  VecZ gen = sys.rd.simple_roots[0];
  for (size_t j = 0; j < gen.size(); ++j) gen[j] += q * sys.rd.simple_roots[1][j];
  sys.xi = normal_form(2, MatZ{gen});
  sys.sigma = MatZ{{Int(1), q}};
  ColorRecord d;
  d.name = "D";
  d.ctype = ColorType::B;
  d.moved_by = {0, 1};
  d.q = {{0, Int(1)}, {1, q}};
  d.delta = {sys.rd.pairing(sys.xi.basis[0], 0)};  // alpha1^r on the Xi basis
  sys.colors.push_back(std::move(d));
  sys.rk_xi_h = 0;
  return sys;
}

PSphericalSystem example_sl3_unipotent(const Int& p, const Int& q) {
  if (!is_p_power(q, p)) throw input_error("q = " + q.get_str() + " is not a power of p = " + p.get_str());
  PSphericalSystem sys;
  sys.p = p;
  sys.group_spec = "A2";
  sys.rd = build_root_datum(sys.group_spec);
  VecZ qa1 = sys.rd.simple_roots[0];
  for (auto& x : qa1) x *= q;
  sys.xi = normal_form(2, MatZ{qa1, sys.rd.simple_roots[1]});
  sys.sigma = MatZ{{Int(1), Int(0)}, {Int(0), Int(1)}};
  Rat qi = Rat(1) / Rat(q);
  struct Spec {
    std::string name;
    std::vector<int> movers;
    std::map<int, Int> q;
    VecQ on_roots;  // (delta(alpha1), delta(alpha2))
  };
  std::vector<Spec> specs = {
      {"D0", {0, 1}, {{0, q}, {1, Int(1)}}, {qi, Rat(1)}},
      {"D1", {0}, {{0, Int(1)}}, {Rat(1), -Rat(q) - 1}},
      {"D2", {1}, {{1, Int(1)}}, {-1 - qi, Rat(1)}},
  };
  for (auto& s : specs) {
    ColorRecord d;
    d.name = s.name;
    d.ctype = ColorType::A;
    d.moved_by = s.movers;
    d.q = s.q;
    d.delta = delta_from_root_values(sys, s.on_roots);
    sys.colors.push_back(std::move(d));
  }
  sys.rk_xi_h = 1;
  return sys;
}

PSphericalSystem example_flag(const std::string& group, const Int& p, const std::vector<long>& f) {
  PSphericalSystem sys;
  sys.p = p;
  sys.group_spec = group;
  sys.rd = build_root_datum(group);
  if (static_cast<int>(f.size()) != sys.rd.num_roots())
    throw input_error("f must assign a value to each of the " + std::to_string(sys.rd.num_roots()) + " simple roots");
  sys.xi = normal_form(sys.rd.ambient_dim, MatZ{});
  Int count(0);
  for (int i = 0; i < sys.rd.num_roots(); ++i) {
    if (f[i] < 0) {  // infinity: alpha in SP, no color
      sys.sp.push_back(i);
      continue;
    }
    if (p == 1 && f[i] > 0) throw input_error("p = 1 admits only f = 0 or infinity");
    ColorRecord d;
    d.name = "D_" + sys.rd.labels[i];
    d.ctype = ColorType::B;
    d.moved_by = {i};
    Int deg(1);
    for (long k = 0; k < f[i]; ++k) deg *= p;
    d.q = {{i, deg}};
    sys.colors.push_back(std::move(d));
    count += 1;
  }
  sys.rk_xi_h = count;
  return sys;
}

PSphericalSystem example_so4_quadrangle() {
  PSphericalSystem sys;
  sys.p = 2;
  sys.group_spec = "A3";
  sys.rd = build_root_datum(sys.group_spec);
  sys.xi = normal_form(3, sys.rd.simple_roots);
  sys.sigma = MatZ{{Int(1), Int(0), Int(0)}, {Int(1), Int(1), Int(0)}, {Int(0), Int(1), Int(1)}, {Int(0), Int(0), Int(1)}};
  return sys;
}

// --- root expressions ------------------------------------------------------

VecZ parse_root_expression(const RootDatum& rd, const std::string& expr) {
  VecZ out(static_cast<size_t>(rd.num_roots()), Int(0));
  std::string term;
  std::vector<std::string> terms;
  for (char ch : expr) {
    if (ch == '+') {
      terms.push_back(term);
      term.clear();
    } else if (!isspace(static_cast<unsigned char>(ch))) {
      term += ch;
    }
  }
  terms.push_back(term);
  for (const auto& t : terms) {
    if (t.empty()) throw input_error("empty term in root expression '" + expr + "'");
    size_t pos = 0;
    std::string digits;
    while (pos < t.size() && isdigit(static_cast<unsigned char>(t[pos]))) digits += t[pos++];
    // a bare label may itself start with a letter; coefficient digits precede it
    std::string label = t.substr(pos);
    if (label.empty()) throw input_error("term '" + t + "' has no root label");
    int i = rd.label_index(label);
    if (i < 0) throw input_error("unknown simple-root label '" + label + "' in '" + expr + "'");
    Int coeff = digits.empty() ? Int(1) : Int(digits);
    out[i] += coeff;
  }
  return out;
}

std::string root_expression(const RootDatum& rd, const VecZ& coords) {
  std::string s;
  for (size_t i = 0; i < coords.size(); ++i) {
    if (coords[i] == 0) continue;
    if (!s.empty()) s += "+";
    if (coords[i] != 1) s += coords[i].get_str();
    s += rd.labels[i];
  }
  return s.empty() ? "0" : s;
}

}  // namespace spherica
