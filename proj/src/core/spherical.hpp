#pragma once

#include "cone.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace spherica {

// Types that can label a color; simple roots additionally admit P (no color).
enum class ColorType { B, A, APrime };

enum class RootType { P, B, A, APrime, Undetermined };

std::string to_string(ColorType t);
std::string to_string(RootType t);
std::optional<ColorType> color_type_from_string(const std::string& s);

struct ColorRecord {
  std::string name;
  ColorType ctype = ColorType::B;
  std::vector<int> moved_by;  // simple-root indices, sorted ascending
  VecQ delta;                 // functional on the canonical basis of Xi
  std::map<int, Int> q;       // mover index -> p-power degree
  bool q_symbolic = false;    // degrees unknown ("p^?"), q map then empty
};

struct PSphericalSystem {
  Int p = 1;                  // characteristic exponent; 1 encodes char 0
  std::string group_spec;     // type string when known, else "" (emit Cartan)
  RootDatum rd;
  IntegerLattice xi;          // in ambient character coordinates
  MatZ sigma;                 // rows in simple-root coordinates
  std::vector<int> sp;        // simple-root indices, sorted ascending
  std::vector<ColorRecord> colors;
  std::optional<Int> rk_xi_h;
  std::optional<std::string> catalog_path;
  std::optional<Fan> fan;     // optional fan in N_Q (Xi-dual coordinates)
};

struct CheckItem {
  std::string name;
  std::string status;  // pass | fail | skipped | undetermined
  std::string detail;
};

struct Report {
  std::vector<CheckItem> items;
  bool ok() const;
  void add(const std::string& name, const std::string& status, const std::string& detail = "");
};

// --- evaluation helpers ----------------------------------------------------

// Xi basis as rational rows.
MatQ xi_basis_q(const PSphericalSystem& sys);

// alpha^r: restriction of the coroot to Xi, on the dual of the Xi basis.
VecQ alpha_r(const PSphericalSystem& sys, int alpha_index);

// Express an ambient character in Xi_Q coordinates; nullopt when outside the
// rational span of Xi.
std::optional<VecQ> to_xi_coords(const PSphericalSystem& sys, const VecQ& ambient);
std::optional<VecQ> to_xi_coords(const PSphericalSystem& sys, const VecZ& ambient);

// Value of a color functional on an element given in Xi coordinates.
Rat eval_delta(const ColorRecord& d, const VecQ& xi_coords);

// sigma row k as an ambient character vector.
VecZ sigma_ambient(const PSphericalSystem& sys, size_t k);

// True iff sigma equals the simple-root multiple c * alpha_i.
bool sigma_is_multiple_of_root(const VecZ& sigma_row, int alpha_index, const Int& c);

// index of alpha_i in Sigma when the row e_i is present, else -1
int find_sigma_root(const PSphericalSystem& sys, int alpha_index, const Int& mult);

// --- structural invariants -------------------------------------------------

// Field-level invariants of the record itself (coordinates, q powers, mover
// coverage).  Mover coverage is skipped when the color list is empty.
Report check_structure(const PSphericalSystem& sys);

// --- operations ------------------------------------------------------------

// V = { v : sigma(v) <= 0 for all sigma }, in the dual of Xi_Q.
ConeQ valuation_cone(const PSphericalSystem& sys);

// Primitive generators (in simple-root coordinates) of the extremal rays of
// -V^vee inside the lattice { x in ZS : p^k x in Xi }.
MatZ spherical_roots_from_cone(const ConeQ& v, const RootDatum& rd, const IntegerLattice& xi, const Int& p);

struct Classification {
  std::vector<RootType> types;        // per simple root
  std::vector<std::string> problems;  // declared-vs-recovered inconsistencies
  bool ok() const { return problems.empty(); }
};

Classification classify_types(const PSphericalSystem& sys);

Report check_color_relations(const PSphericalSystem& sys);
Report check_sharing_rules(const PSphericalSystem& sys);
Report check_color_count(const PSphericalSystem& sys);

}  // namespace spherica
