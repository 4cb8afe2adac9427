#ifndef TCW_H
#define TCW_H

#ifdef __cplusplus
extern "C" {
#endif

/* Tight-closure workbench, public C surface.
 *
 * A session owns parsed scripts, option state, and output buffers. Strings
 * returned by the accessors stay valid until the next load or run call on
 * the same session, or until the session is freed. Sessions are not
 * thread-safe; use one per thread. */

typedef struct tcw_session tcw_session;

/* return values of tcw_run */
#define TCW_OK 0           /* every task completed with a definite answer */
#define TCW_ERROR 1        /* a task or the setup failed; see tcw_last_error */
#define TCW_UNDETERMINED 2 /* all tasks ran, at least one verdict UNDETERMINED */

tcw_session* tcw_session_new(void);
void tcw_session_free(tcw_session* session);

/* Options mirror the CLI flags. Keys: "emax", "kpow", "bound", "smax",
 * "order" (lex|grevlex), "primes" (comma list), "threads",
 * "assert-test-element" (element name), "timings" (0|1).
 * Returns 0 on success, 1 on a bad key or value. */
int tcw_set_option(tcw_session* session, const char* key, const char* value);

/* Parses a workbench script. Returns 0 on success, 1 on a parse error. */
int tcw_load_script(tcw_session* session, const char* text);

/* Runs every task of the loaded script in order, stopping at the first
 * failing task. Fills both output buffers. */
int tcw_run(tcw_session* session);

const char* tcw_output_text(const tcw_session* session);
const char* tcw_output_json(const tcw_session* session);

/* Last error detail and its stable code name ("" while clean). */
const char* tcw_last_error(const tcw_session* session);
const char* tcw_last_error_name(const tcw_session* session);

const char* tcw_version(void);

#ifdef __cplusplus
}
#endif

#endif /* TCW_H */
