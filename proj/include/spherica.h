/* C interface to the spherica library.
 *
 * All functions return a status code:
 *   0  success
 *   1  mathematical impossibility (the requested object does not exist)
 *   2  malformed input
 * On failure the per-thread message from sph_last_error() describes the
 * problem.  Strings returned through char** parameters are heap-allocated;
 * release them with sph_string_free().  Numbers cross the boundary as decimal
 * strings ("a" or "a/b") so exactness is never lost.
 */

#ifndef SPHERICA_H
#define SPHERICA_H

#ifdef __cplusplus
extern "C" {
#endif

#define SPH_OK 0
#define SPH_ERR_MATH 1
#define SPH_ERR_INPUT 2

typedef struct sph_system sph_system;

/* Library version string (static storage; do not free). */
const char* sph_version(void);

/* Message of the last failure on this thread (static storage; do not free;
 * overwritten by the next failing call). */
const char* sph_last_error(void);

void sph_string_free(char* s);

/* --- systems ------------------------------------------------------------ */

/* Parse a system from its JSON text / load it from a file. */
int sph_system_parse(const char* json_text, sph_system** out);
int sph_system_load(const char* path, sph_system** out);

/* Built-in example systems.  `name` is one of
 *   "frobenius-diag"   args {"p": int, "q": int}
 *   "sl3-unipotent"    args {"p": int, "q": int}
 *   "flag"             args {"group": str, "p": int, "f": [int, ...]}
 *                      (f entry -1 marks a parabolic simple root)
 *   "so4-quadrangle"   args {} (characteristic 2, no colors)
 * `args_json` may be NULL for an empty argument object. */
int sph_system_example(const char* name, const char* args_json, sph_system** out);

void sph_system_free(sph_system* sys);

/* Canonical JSON text of the system (byte-stable). */
int sph_system_emit(const sph_system* sys, char** out_json);

/* --- validation --------------------------------------------------------- */

/* Axiom report as JSON.  p2_mode: -1 follow p, 0 off, 1 on.  catalog_path
 * may be NULL (the catalog-membership axiom is then skipped). */
int sph_validate(const sph_system* sys, int p2_mode, const char* catalog_path,
                 char** out_report_json);

/* Structural checks, color relations, sharing rules, color count and the
 * neighbor bounds, as one JSON report. */
int sph_check(const sph_system* sys, char** out_report_json);

/* Spherical roots recovered from the valuation cone, as a JSON list of
 * root expressions ("a1+2a2", ...). */
int sph_spherical_roots(const sph_system* sys, char** out_json);

/* --- localization ------------------------------------------------------- */

/* Localization at a subset of the simple roots.  `roots` is a comma-separated
 * list of labels ("a1,a2").  mode 0 picks the minimal-rank lattice; mode 1
 * localizes the stored fan at the covector `lambda_json` (JSON list of
 * rational strings on the dual lattice basis).  `out_notes_json` (optional,
 * may be NULL) receives {"provenance": [...], "warnings": [...],
 * "dropped": [...]}. */
int sph_localize_roots(const sph_system* sys, const char* roots, int mode,
                       const char* lambda_json, sph_system** out, char** out_notes_json);

/* Localization at a set of neighbors: comma-separated indices into the
 * spherical-root list ("0,2"). */
int sph_localize_sigma(const sph_system* sys, const char* indices,
                       sph_system** out, char** out_notes_json);

/* All subsets of the spherical roots that form neighbor sets, as a JSON list
 * of index lists. */
int sph_neighbor_sets(const sph_system* sys, char** out_json);

#ifdef __cplusplus
}
#endif

#endif /* SPHERICA_H */
