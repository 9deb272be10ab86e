#pragma once

#include "spherical.hpp"

namespace spherica {

struct NeighborResult {
  bool is_neighbor = false;
  VecQ witness;        // element of N_Q (on the dual of the Xi basis) with
                       // witness(sigma) = 0 exactly on the subset
  std::string reason;  // why the face test failed
};

// Is Q>=0 * (selected sigma rows) a face of Q>=0 * Sigma?
NeighborResult is_neighbor_set(const std::vector<size_t>& sigma_prime, const PSphericalSystem& sys);

// All neighbor subsets of Sigma (index sets, sorted).  Intended for small
// Sigma; used by the CLI listing and the p=2 axiom quantifier.
std::vector<std::vector<size_t>> all_neighbor_sets(const PSphericalSystem& sys);

struct LocalizationResult {
  PSphericalSystem sys;
  std::vector<std::string> provenance;  // derived element <- source element
  std::vector<std::string> warnings;
  std::vector<std::string> dropped;     // omitted source elements with reason
};

enum class SMode { MinimalRank, Fan };

// Localization at a subset of the simple roots (Levi subsystem).  Fan mode
// reads sys.fan and a covector lambda on N_Q; minimal-rank mode ignores both.
LocalizationResult localize_at_S(const PSphericalSystem& sys, const std::vector<int>& s_prime, SMode mode,
                                 const std::optional<VecQ>& lambda = std::nullopt);

// Localization at a set of neighbors (face of the valuation cone).
LocalizationResult localize_at_Sigma(const PSphericalSystem& sys, const std::vector<size_t>& sigma_prime);

// Validation rule: positivity of delta_D on a neighboring sigma forces sigma
// to be a type-A simple root moving D; otherwise the two-sided bound
// q^{-1} <sigma, alpha^vee> <= delta_D(sigma) <= 0 must hold.
Report check_neighbor_inequalities(const PSphericalSystem& sys);

}  // namespace spherica
