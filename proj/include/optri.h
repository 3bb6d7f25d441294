/*
 * optri - a checker for operational annotations: programs as pre- and
 * post-conditions, decided exactly over finite state universes.
 *
 * All objects are opaque handles created and destroyed by this library.
 * Functions return OPTRI_OK on success; on failure they store a malloc'd
 * message in *err (when err is non-NULL) which the caller frees with
 * optri_string_free. Handles are immutable after creation and may be shared
 * across threads.
 */

#ifndef OPTRI_H
#define OPTRI_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  OPTRI_OK = 0,
  OPTRI_ERR_PARSE = 1,    /* program text does not parse */
  OPTRI_ERR_TYPE = 2,     /* program is ill-typed */
  OPTRI_ERR_UNIVERSE = 3, /* bad universe file or universe too large */
  OPTRI_ERR_IO = 4,       /* file not readable */
  OPTRI_ERR_SCRIPT = 5,   /* bad proof script */
  OPTRI_ERR_ARG = 6,      /* invalid argument (NULL handle, bad option) */
  OPTRI_ERR_INTERNAL = 7
} optri_status;

typedef struct optri_program optri_program;
typedef struct optri_universe optri_universe;
typedef struct optri_result optri_result;

typedef struct {
  long long fuel; /* per-path step budget; <= 0 selects the default 10000 */
  int depth_bound; /* recursion depth bound; <= 0 selects the default 64 */
  int jobs;        /* worker threads over initial states; <= 0 selects 1 */
} optri_options;

void optri_options_init(optri_options* opts);

const char* optri_version(void);

void optri_string_free(char* s);

/* -- programs ------------------------------------------------------------ */

optri_status optri_program_parse(const char* source, optri_program** out, char** err);
optri_status optri_program_parse_file(const char* path, optri_program** out, char** err);
void optri_program_free(optri_program* p);

/* Canonical pretty-printed text; parses back to the same tree. */
optri_status optri_program_print(const optri_program* p, char** out);

/* Structural checks, plus full typing against a universe when one is given. */
optri_status optri_program_check(const optri_program* p, const optri_universe* uni_or_null,
                                 char** err);

/* -- universes ------------------------------------------------------------ */

optri_status optri_universe_parse(const char* json_text, optri_universe** out, char** err);
optri_status optri_universe_parse_file(const char* path, optri_universe** out, char** err);
void optri_universe_free(optri_universe* u);

/* Number of initial states of the universe under the program's records. */
optri_status optri_universe_state_count(const optri_universe* u, const optri_program* p,
                                        unsigned long long* out, char** err);

/* -- results --------------------------------------------------------------- */

/* 0 = VALID / PROVED, 1 = INVALID / FAILED, 2 = UNKNOWN. */
int optri_result_code(const optri_result* r);
optri_status optri_result_json(const optri_result* r, char** out);
optri_status optri_result_summary(const optri_result* r, char** out);
void optri_result_free(optri_result* r);

/* -- judgments -------------------------------------------------------------
 * Programs passed together must agree on their record and procedure
 * declarations; the judgment is decided over the shared universe by
 * exhaustive enumeration.
 */

optri_status optri_check_triple(const optri_program* pre, const optri_program* prog,
                                const optri_program* post, const optri_universe* u,
                                const optri_options* opts, optri_result** out, char** err);

optri_status optri_check_ord(const optri_program* left, const optri_program* right,
                             const optri_universe* u, const optri_options* opts,
                             optri_result** out, char** err);

optri_status optri_check_equiv(const optri_program* left, const optri_program* right,
                               const optri_universe* u, const optri_options* opts,
                               optri_result** out, char** err);

optri_status optri_check_conj(const optri_program* left, const optri_program* base,
                              const char* cond_source, const optri_universe* u,
                              const optri_options* opts, optri_result** out, char** err);

/* Post-state set of a program over the universe. */
optri_status optri_poststates(const optri_program* p, const optri_universe* u,
                              const optri_options* opts, optri_result** out, char** err);

/* Checks a .opp proof script; the program and universe paths inside the
 * script resolve relative to the script's directory. */
optri_status optri_prove_file(const char* script_path, const optri_options* opts,
                              optri_result** out, char** err);

#ifdef __cplusplus
}
#endif

#endif /* OPTRI_H */
