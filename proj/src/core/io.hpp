#pragma once

#include "axioms.hpp"
#include "spherical.hpp"

#include <string>

namespace spherica {

// --- system files ----------------------------------------------------------
//
// Single JSON document; all rationals are exact "a/b" strings (decimals are
// rejected).  parse(emit(sys)) == sys and emit is byte-stable.

PSphericalSystem parse_system(const std::string& json_text);
PSphericalSystem load_system(const std::string& path);
std::string emit_system(const PSphericalSystem& sys);

// The group specification used when re-emitting (type string when the system
// was built from one, else the Cartan matrix).  Stored out-of-band on the
// root datum's labels; emit_system reconstructs it.
// (Type strings are kept in RootDatum::labels conventions; emit falls back to
// the Cartan matrix when no type string is known.)

// --- reports ---------------------------------------------------------------

std::string report_json(const Report& rep);
std::string axiom_report_json(const AxiomReport& rep);

// --- fixture generators ----------------------------------------------------

// Diagonal torus orbit under a Frobenius twist: one shared type-B color.
PSphericalSystem example_frobenius_diag(const Int& p, const Int& q);

// Horospherical SL(3) example with the published three-color delta table.
PSphericalSystem example_sl3_unipotent(const Int& p, const Int& q);

// Flag-variety-like systems: Xi = 0, one type-B color of degree p^f(alpha)
// per simple root outside SP; f entry -1 encodes infinity (alpha in SP).
PSphericalSystem example_flag(const std::string& group, const Int& p, const std::vector<long>& f);

// SL(4)/SO(4)-type configuration in characteristic 2: the quadrangle Sigma.
PSphericalSystem example_so4_quadrangle();

// --- root expressions ------------------------------------------------------

// "a1", "2a1", "a1+a2", "g1.a1+2g2.a1" -> simple-root coordinates.
VecZ parse_root_expression(const RootDatum& rd, const std::string& expr);
std::string root_expression(const RootDatum& rd, const VecZ& coords);

}  // namespace spherica
