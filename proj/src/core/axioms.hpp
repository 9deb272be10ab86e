#pragma once

#include "spherical.hpp"

#include <map>

namespace spherica {

struct AxiomFailure {
  std::string axiom;    // "A1".."A8"
  std::string witness;  // the sigma / color / root involved
  std::string message;  // evaluated numbers
};

struct AxiomReport {
  std::string schema_version = "1";
  bool p2_mode = false;
  std::map<std::string, std::string> status;  // axiom id -> pass|fail|skipped|undetermined
  std::vector<AxiomFailure> failures;
  bool ok() const;
};

struct CatalogEntry {
  VecZ root;                                  // simple-root coordinates
  bool any_sp = false;                        // no SP restriction
  std::vector<std::vector<std::string>> sp_sets;  // admissible SP label sets (SP must be a subset of one)
  std::string p_constraint;                   // "any", "p=2", "p!=2", ...
};

struct RootCatalog {
  std::vector<CatalogEntry> entries;
};

// Text catalog, one record per line:
//   c1 c2 ... cn | sp: any            (or: sp: {} {a1,a2} ...)  [ | p: any|=2|!=2 ]
// '#' starts a comment.  Throws input errors carrying the line number.
RootCatalog load_catalog(const std::string& path);
RootCatalog parse_catalog(const std::string& text);

// Per-sigma catalog membership with SP admissibility.
Report check_A3(const PSphericalSystem& sys, const RootCatalog& cat);

enum class P2Mode { Auto, On, Off };

AxiomReport validate(const PSphericalSystem& sys, P2Mode mode = P2Mode::Auto,
                     const std::optional<RootCatalog>& catalog = std::nullopt);

}  // namespace spherica
