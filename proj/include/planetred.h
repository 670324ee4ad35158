/* planetred: canonical coordinate charts for the planetary problem.
 *
 * C interface to the chart library: opaque handles, integer status codes,
 * JSON text for structured data.  All functions return PLRED_OK (0) on
 * success; on failure plred_last_error() describes what went wrong in the
 * calling thread.  Strings returned through char** are heap-allocated and
 * must be released with plred_string_free.
 */
#ifndef PLANETRED_H
#define PLANETRED_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct plred_state plred_state;   /* masses + a reduced state */
typedef struct plred_coords plred_coords; /* masses + tagged chart coordinates */
typedef struct plred_report plred_report; /* result of a verification run */

typedef enum plred_status {
  PLRED_OK = 0,
  PLRED_ERR_PARSE = 1,
  PLRED_ERR_UNKNOWN_CHART = 2,
  PLRED_ERR_SINGULAR = 3,  /* chart/node singularities, triangle violations */
  PLRED_ERR_DOMAIN = 4,    /* bad actions, collisions, unsupported body count */
  PLRED_ERR_NUMERIC = 5,   /* quadrature or integration failures */
  PLRED_ERR_INTERNAL = 6
} plred_status;

/* Thread-local message for the most recent failure. */
const char* plred_last_error(void);

void plred_string_free(char* s);
void plred_state_free(plred_state* s);
void plred_coords_free(plred_coords* c);
void plred_report_free(plred_report* r);

/* --- states and chart conversion ------------------------------------- */

plred_status plred_state_from_json(const char* text, plred_state** out);
plred_status plred_state_to_json(const plred_state* s, char** out);

plred_status plred_coords_from_json(const char* text, plred_coords** out);
plred_status plred_coords_to_json(const plred_coords* c, char** out);

/* Cartesian state -> chart coordinates. */
plred_status plred_state_to_chart(const plred_state* s, const char* chart, plred_coords** out);
/* Chart coordinates -> Cartesian state. */
plred_status plred_coords_to_state(const plred_coords* c, plred_state** out);
/* Forward-inverse round-trip residual (max coordinate mismatch, angles on the circle). */
plred_status plred_roundtrip_residual(const plred_state* s, const char* chart, double* out);

/* Names of the known charts, newline separated. */
plred_status plred_chart_list(char** out);

/* --- verification ------------------------------------------------------ */

/* Symplecticity of a chart on `samples` seeded random regular points.
 * masses_json: {"m0":..., "mu":..., "m":[...]} fixing the body count. */
plred_status plred_check_canonical(const char* chart, const char* masses_json, int samples,
                                   uint64_t seed, plred_report** out);

/* Partials of the pulled-back Hamiltonian w.r.t. comma-separated coordinates. */
plred_status plred_check_cyclic(const char* chart, const char* masses_json,
                                const char* variables, uint64_t seed, plred_report** out);

/* Average of the perturbing function over the fast angles at the secular
 * point given by a state (two planets). */
plred_status plred_average(const plred_state* s, double* out);

/* First-order agreement of the averaged heliocentric and Jacobi perturbing
 * functions across the given mu values (two planets). */
plred_status plred_equivalence(const plred_state* s, const double* mus, int nmus,
                               plred_report** out);

/* Fixed-step reference integration; drift report and optionally a text table
 * of columns t, dE, dC, dP sampled along the run. */
plred_status plred_integrate(const plred_state* s, double T, double dt, double tolerance,
                             plred_report** out, char** table_out);

/* --- report access ------------------------------------------------------ */

int plred_report_passed(const plred_report* r);
double plred_report_max_deviation(const plred_report* r);
plred_status plred_report_text(const plred_report* r, char** out);

#ifdef __cplusplus
}
#endif

#endif /* PLANETRED_H */
