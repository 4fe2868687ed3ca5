#ifndef CHEN_VERIFY_H
#define CHEN_VERIFY_H

/* C interface to the verification engine. All functions return 0 on
 * success; cv_run_suite returns 1 when the suite ran but a check failed and
 * 2 on input errors (as do the loaders). On any nonzero return,
 * cv_last_error() describes the problem. Strings returned through out
 * parameters are heap-allocated; release them with cv_string_free. */

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct cv_scenario cv_scenario;

/* Parse a scenario from its JSON text. */
int cv_scenario_load(const char* json_text, cv_scenario** out);

/* Reproducible random scenario: m chart variables, chain length n, nu flag
 * layers per system, polynomial degree bound deg. */
int cv_scenario_generate(uint64_t seed, int m, int n, int nu, int deg, cv_scenario** out);

void cv_scenario_free(cv_scenario* sc);

/* Canonical JSON serialization (round-trips exactly). */
int cv_scenario_serialize(const cv_scenario* sc, char** out_json);

/* Run a named suite ("all" for everything). options_json may be NULL or a
 * JSON object with any of: mode ("exact"|"float"), tolerance, ode_step,
 * max_order, iterations. The report is written to *out_report_json.
 * Returns 0 pass, 1 check failure, 2 error. */
int cv_run_suite(const cv_scenario* sc, const char* suite, const char* options_json,
                 char** out_report_json);

/* Comma-separated list of valid suite names (static storage). */
const char* cv_suite_names(void);

/* Message for the most recent failure on this thread (static storage). */
const char* cv_last_error(void);

void cv_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* CHEN_VERIFY_H */
