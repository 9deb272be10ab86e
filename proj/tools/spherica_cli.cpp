// Command-line front end for the spherica library.  Talks to the library
// exclusively through the C interface in spherica.h.  Exit codes follow the
// library status codes: 0 success, 1 mathematical failure (including a
// failed validation), 2 malformed input.

#include <spherica.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

using nlohmann::json;

namespace {

struct SysDeleter {
  void operator()(sph_system* s) const { sph_system_free(s); }
};
using SysPtr = std::unique_ptr<sph_system, SysDeleter>;

struct StrDeleter {
  void operator()(char* s) const { sph_string_free(s); }
};
using StrPtr = std::unique_ptr<char, StrDeleter>;

[[noreturn]] void die(int code) {
  std::cerr << "error: " << sph_last_error() << "\n";
  std::exit(code);
}

SysPtr load(const std::string& path) {
  sph_system* raw = nullptr;
  if (int rc = sph_system_load(path.c_str(), &raw)) die(rc);
  return SysPtr(raw);
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path);
  if (!f) {
    std::cerr << "error: cannot write '" << out_path << "'\n";
    std::exit(2);
  }
  f << text;
}

std::string default_catalog(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  const char* env = std::getenv("SPHERICA_CATALOG");
  return env ? env : "";
}

void print_notes(const StrPtr& notes) {
  if (!notes) return;
  json j = json::parse(notes.get());
  for (const auto& key : {"provenance", "warnings", "dropped"})
    for (const auto& line : j[key]) std::cerr << key << ": " << line.get<std::string>() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact combinatorial invariants of homogeneous spaces in arbitrary characteristic"};
  app.require_subcommand(1);

  std::string file, catalog, p2_mode = "auto", out_path, mode = "minimal";
  std::string roots_arg, sigma_arg, lambda_arg;
  bool as_json = false, with_relations = false;

  auto* validate = app.add_subcommand("validate", "Check the axioms of a system file");
  validate->add_option("file", file, "system JSON file")->required();
  validate->add_option("--p2-mode", p2_mode, "characteristic-2 rules: auto|on|off")
      ->check(CLI::IsMember({"auto", "on", "off"}));
  validate->add_option("--catalog", catalog, "root catalog (default: $SPHERICA_CATALOG)");
  validate->add_flag("--json", as_json, "print the raw JSON report");
  validate->add_flag("--relations", with_relations,
                     "also run the structural, color-relation, sharing and neighbor-bound checks");

  auto* roots = app.add_subcommand("roots", "Spherical roots recovered from the valuation cone");
  roots->add_option("file", file, "system JSON file")->required();
  roots->add_flag("--json", as_json, "print a JSON list");

  auto* localize = app.add_subcommand("localize", "Derive the localized system");
  localize->add_option("file", file, "system JSON file")->required();
  localize->add_option("--roots", roots_arg, "localize at these simple roots (labels, comma-separated)");
  localize->add_option("--sigma", sigma_arg, "localize at these spherical roots (indices, comma-separated)");
  localize->add_option("--mode", mode, "lattice choice for --roots: minimal|fan")
      ->check(CLI::IsMember({"minimal", "fan"}));
  localize->add_option("--lambda", lambda_arg, "covector for --mode fan (JSON list of rationals)");
  localize->add_option("-o,--output", out_path, "write the derived system here instead of stdout");

  auto* neighbors = app.add_subcommand("neighbors", "List all neighbor subsets of the spherical roots");
  neighbors->add_option("file", file, "system JSON file")->required();
  neighbors->add_flag("--json", as_json, "print a JSON list of index lists");

  auto* example = app.add_subcommand("example", "Emit a built-in example system");
  std::string name, args_json;
  example->add_option("name", name, "frobenius-diag | sl3-unipotent | flag | so4-quadrangle")->required();
  example->add_option("--args", args_json, "example arguments as JSON, e.g. '{\"p\": 3, \"q\": 9}'");
  example->add_option("-o,--output", out_path, "write the system here instead of stdout");

  CLI11_PARSE(app, argc, argv);

  if (*validate) {
    SysPtr sys = load(file);
    std::string cat = default_catalog(catalog);
    int p2 = p2_mode == "auto" ? -1 : (p2_mode == "on" ? 1 : 0);
    char* raw = nullptr;
    if (int rc = sph_validate(sys.get(), p2, cat.empty() ? nullptr : cat.c_str(), &raw)) die(rc);
    StrPtr report(raw);
    json j = json::parse(report.get());
    bool ok = j["ok"].get<bool>();
    if (with_relations) {
      char* rel_raw = nullptr;
      if (int rc = sph_check(sys.get(), &rel_raw)) die(rc);
      StrPtr rel(rel_raw);
      json rj = json::parse(rel.get());
      ok = ok && rj["ok"].get<bool>();
      if (as_json) {
        json both{{"axioms", j}, {"relations", rj}};
        std::cout << both.dump(2) << "\n";
      } else {
        for (const auto& [axiom, status] : j["status"].items())
          std::cout << axiom << ": " << status.get<std::string>() << "\n";
        for (const auto& f : j["failures"])
          std::cout << "  " << f["axiom"].get<std::string>() << " " << f["witness"].get<std::string>() << ": "
                    << f["message"].get<std::string>() << "\n";
        for (const auto& item : rj["items"]) {
          std::cout << item["name"].get<std::string>() << ": " << item["status"].get<std::string>();
          std::string detail = item["detail"].get<std::string>();
          if (!detail.empty()) std::cout << " (" << detail << ")";
          std::cout << "\n";
        }
      }
    } else if (as_json) {
      std::cout << report.get();
    } else {
      for (const auto& [axiom, status] : j["status"].items())
        std::cout << axiom << ": " << status.get<std::string>() << "\n";
      for (const auto& f : j["failures"])
        std::cout << "  " << f["axiom"].get<std::string>() << " " << f["witness"].get<std::string>() << ": "
                  << f["message"].get<std::string>() << "\n";
    }
    return ok ? 0 : 1;
  }

  if (*roots) {
    SysPtr sys = load(file);
    char* raw = nullptr;
    if (int rc = sph_spherical_roots(sys.get(), &raw)) die(rc);
    StrPtr list(raw);
    if (as_json) {
      std::cout << list.get();
    } else {
      for (const auto& r : json::parse(list.get())) std::cout << r.get<std::string>() << "\n";
    }
    return 0;
  }

  if (*localize) {
    if (roots_arg.empty() == sigma_arg.empty()) {
      std::cerr << "error: pass exactly one of --roots or --sigma\n";
      return 2;
    }
    SysPtr sys = load(file);
    sph_system* derived_raw = nullptr;
    char* notes_raw = nullptr;
    if (!roots_arg.empty()) {
      int m = mode == "minimal" ? 0 : 1;
      if (int rc = sph_localize_roots(sys.get(), roots_arg.c_str(), m,
                                      lambda_arg.empty() ? nullptr : lambda_arg.c_str(), &derived_raw, &notes_raw))
        die(rc);
    } else {
      if (int rc = sph_localize_sigma(sys.get(), sigma_arg.c_str(), &derived_raw, &notes_raw)) die(rc);
    }
    SysPtr derived(derived_raw);
    StrPtr notes(notes_raw);
    print_notes(notes);
    char* text_raw = nullptr;
    if (int rc = sph_system_emit(derived.get(), &text_raw)) die(rc);
    StrPtr text(text_raw);
    write_output(text.get(), out_path);
    return 0;
  }

  if (*neighbors) {
    SysPtr sys = load(file);
    char* raw = nullptr;
    if (int rc = sph_neighbor_sets(sys.get(), &raw)) die(rc);
    StrPtr list(raw);
    if (as_json) {
      std::cout << list.get();
    } else {
      for (const auto& subset : json::parse(list.get())) {
        std::cout << "{";
        for (size_t i = 0; i < subset.size(); ++i) std::cout << (i ? "," : "") << subset[i].get<long>();
        std::cout << "}\n";
      }
    }
    return 0;
  }

  if (*example) {
    sph_system* raw = nullptr;
    if (int rc = sph_system_example(name.c_str(), args_json.empty() ? nullptr : args_json.c_str(), &raw)) die(rc);
    SysPtr sys(raw);
    char* text_raw = nullptr;
    if (int rc = sph_system_emit(sys.get(), &text_raw)) die(rc);
    StrPtr text(text_raw);
    write_output(text.get(), out_path);
    return 0;
  }

  return 0;
}
