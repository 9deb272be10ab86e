#include "spherica.h"

#include "core/axioms.hpp"
#include "core/io.hpp"
#include "core/localization.hpp"

#include <json.hpp>

#include <cstring>
#include <sstream>

using namespace spherica;
using nlohmann::json;

struct sph_system {
  PSphericalSystem sys;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

int fail(const std::string& msg, int code) {
  g_last_error = msg;
  return code;
}

template <typename F>
int guarded(F&& f) {
  try {
    f();
    return SPH_OK;
  } catch (const Error& e) {
    return fail(e.what(), e.kind == Error::Kind::math ? SPH_ERR_MATH : SPH_ERR_INPUT);
  } catch (const std::exception& e) {
    return fail(e.what(), SPH_ERR_INPUT);
  }
}

int require(const void* p, const char* what) {
  if (p) return SPH_OK;
  return fail(std::string("null ") + what, SPH_ERR_INPUT);
}

Int json_to_int(const json& j, const std::string& field) {
  if (j.is_number_integer()) return Int(static_cast<long>(j.get<long long>()));
  if (j.is_string()) return Int(j.get<std::string>());
  throw input_error("example argument '" + field + "' must be an integer");
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, ',')) {
    size_t a = cur.find_first_not_of(" \t");
    size_t b = cur.find_last_not_of(" \t");
    if (a == std::string::npos) continue;
    out.push_back(cur.substr(a, b - a + 1));
  }
  return out;
}

json notes_json(const LocalizationResult& r) {
  json j;
  j["provenance"] = r.provenance;
  j["warnings"] = r.warnings;
  j["dropped"] = r.dropped;
  return j;
}

}  // namespace

extern "C" {

const char* sph_version(void) { return "1.0.0"; }

const char* sph_last_error(void) { return g_last_error.c_str(); }

void sph_string_free(char* s) { std::free(s); }

int sph_system_parse(const char* json_text, sph_system** out) {
  if (int rc = require(json_text, "json_text")) return rc;
  if (int rc = require(out, "out")) return rc;
  return guarded([&] { *out = new sph_system{parse_system(json_text)}; });
}

int sph_system_load(const char* path, sph_system** out) {
  if (int rc = require(path, "path")) return rc;
  if (int rc = require(out, "out")) return rc;
  return guarded([&] { *out = new sph_system{load_system(path)}; });
}

int sph_system_example(const char* name, const char* args_json, sph_system** out) {
  if (int rc = require(name, "name")) return rc;
  if (int rc = require(out, "out")) return rc;
  return guarded([&] {
    json args = json::object();
    if (args_json && *args_json) {
      try {
        args = json::parse(args_json);
      } catch (const json::parse_error& e) {
        throw input_error(std::string("example arguments: JSON parse error: ") + e.what());
      }
    }
    std::string n = name;
    PSphericalSystem sys;
    if (n == "frobenius-diag") {
      sys = example_frobenius_diag(json_to_int(args.value("p", json(1)), "p"),
                                   json_to_int(args.value("q", json(1)), "q"));
    } else if (n == "sl3-unipotent") {
      sys = example_sl3_unipotent(json_to_int(args.value("p", json(1)), "p"),
                                  json_to_int(args.value("q", json(1)), "q"));
    } else if (n == "flag") {
      if (!args.contains("group") || !args["group"].is_string())
        throw input_error("example 'flag' needs a \"group\" string");
      if (!args.contains("f") || !args["f"].is_array())
        throw input_error("example 'flag' needs an \"f\" list of exponents");
      std::vector<long> f;
      for (const auto& x : args["f"]) {
        if (!x.is_number_integer()) throw input_error("example argument 'f' must hold integers");
        f.push_back(static_cast<long>(x.get<long long>()));
      }
      sys = example_flag(args["group"].get<std::string>(), json_to_int(args.value("p", json(1)), "p"), f);
    } else if (n == "so4-quadrangle") {
      sys = example_so4_quadrangle();
    } else {
      throw input_error("unknown example '" + n +
                        "' (expected frobenius-diag, sl3-unipotent, flag or so4-quadrangle)");
    }
    *out = new sph_system{std::move(sys)};
  });
}

void sph_system_free(sph_system* sys) { delete sys; }

int sph_system_emit(const sph_system* sys, char** out_json) {
  if (int rc = require(sys, "system")) return rc;
  if (int rc = require(out_json, "out_json")) return rc;
  return guarded([&] { *out_json = dup_string(emit_system(sys->sys)); });
}

int sph_validate(const sph_system* sys, int p2_mode, const char* catalog_path, char** out_report_json) {
  if (int rc = require(sys, "system")) return rc;
  if (int rc = require(out_report_json, "out_report_json")) return rc;
  return guarded([&] {
    P2Mode mode = p2_mode < 0 ? P2Mode::Auto : (p2_mode == 0 ? P2Mode::Off : P2Mode::On);
    std::optional<RootCatalog> cat;
    if (catalog_path && *catalog_path)
      cat = load_catalog(catalog_path);
    else if (sys->sys.catalog_path)
      cat = load_catalog(*sys->sys.catalog_path);
    *out_report_json = dup_string(axiom_report_json(validate(sys->sys, mode, cat)));
  });
}

int sph_check(const sph_system* sys, char** out_report_json) {
  if (int rc = require(sys, "system")) return rc;
  if (int rc = require(out_report_json, "out_report_json")) return rc;
  return guarded([&] {
    Report rep = check_structure(sys->sys);
    for (auto& part : {check_color_relations(sys->sys), check_sharing_rules(sys->sys),
                       check_color_count(sys->sys), check_neighbor_inequalities(sys->sys)})
      for (const auto& item : part.items) rep.items.push_back(item);
    *out_report_json = dup_string(report_json(rep));
  });
}

int sph_spherical_roots(const sph_system* sys, char** out_json) {
  if (int rc = require(sys, "system")) return rc;
  if (int rc = require(out_json, "out_json")) return rc;
  return guarded([&] {
    MatZ roots = spherical_roots_from_cone(valuation_cone(sys->sys), sys->sys.rd, sys->sys.xi, sys->sys.p);
    json j = json::array();
    for (const auto& r : roots) j.push_back(root_expression(sys->sys.rd, r));
    *out_json = dup_string(j.dump(2) + "\n");
  });
}

int sph_localize_roots(const sph_system* sys, const char* roots, int mode, const char* lambda_json,
                       sph_system** out, char** out_notes_json) {
  if (int rc = require(sys, "system")) return rc;
  if (int rc = require(roots, "roots")) return rc;
  if (int rc = require(out, "out")) return rc;
  return guarded([&] {
    std::vector<int> indices;
    for (const auto& label : split_csv(roots)) {
      int i = sys->sys.rd.label_index(label);
      if (i < 0) throw input_error("unknown simple-root label '" + label + "'");
      indices.push_back(i);
    }
    std::optional<VecQ> lambda;
    if (lambda_json && *lambda_json) {
      json j;
      try {
        j = json::parse(lambda_json);
      } catch (const json::parse_error& e) {
        throw input_error(std::string("lambda: JSON parse error: ") + e.what());
      }
      if (!j.is_array()) throw input_error("lambda must be a JSON list of rationals");
      VecQ l;
      for (const auto& x : j) {
        if (x.is_number_integer())
          l.push_back(Rat(static_cast<long>(x.get<long long>())));
        else if (x.is_string())
          l.push_back(rat_from_string(x.get<std::string>()));
        else
          throw input_error("lambda entries must be integers or \"a/b\" strings");
      }
      lambda = std::move(l);
    }
    LocalizationResult r =
        localize_at_S(sys->sys, indices, mode == 0 ? SMode::MinimalRank : SMode::Fan, lambda);
    *out = new sph_system{std::move(r.sys)};
    if (out_notes_json) *out_notes_json = dup_string(notes_json(r).dump(2) + "\n");
  });
}

int sph_localize_sigma(const sph_system* sys, const char* indices, sph_system** out, char** out_notes_json) {
  if (int rc = require(sys, "system")) return rc;
  if (int rc = require(indices, "indices")) return rc;
  if (int rc = require(out, "out")) return rc;
  return guarded([&] {
    std::vector<size_t> subset;
    for (const auto& tok : split_csv(indices)) {
      try {
        size_t pos = 0;
        long v = std::stol(tok, &pos);
        if (pos != tok.size() || v < 0) throw std::invalid_argument(tok);
        subset.push_back(static_cast<size_t>(v));
      } catch (const std::exception&) {
        throw input_error("bad spherical-root index '" + tok + "'");
      }
    }
    LocalizationResult r = localize_at_Sigma(sys->sys, subset);
    *out = new sph_system{std::move(r.sys)};
    if (out_notes_json) *out_notes_json = dup_string(notes_json(r).dump(2) + "\n");
  });
}

int sph_neighbor_sets(const sph_system* sys, char** out_json) {
  if (int rc = require(sys, "system")) return rc;
  if (int rc = require(out_json, "out_json")) return rc;
  return guarded([&] {
    json j = json::array();
    for (const auto& subset : all_neighbor_sets(sys->sys)) j.push_back(subset);
    *out_json = dup_string(j.dump(2) + "\n");
  });
}

}  // extern "C"
