/*
 * C interface to the qstr qualitative constraint reasoning engine.
 *
 * All objects are opaque handles created by a qstr_* function and released
 * with the matching *_free function. Functions return a qstr_status; on any
 * status other than QSTR_OK / QSTR_INCONSISTENT a message is available from
 * qstr_last_error() on the calling thread until the next call. Strings
 * returned through char** are owned by the caller and released with
 * qstr_string_free(). Borrowed pointers (const char*, const handles) stay
 * valid as long as the object they came from.
 */
#ifndef QSTR_QSTR_H
#define QSTR_QSTR_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(QSTR_BUILDING_LIBRARY)
#    define QSTR_API __declspec(dllexport)
#  else
#    define QSTR_API __declspec(dllimport)
#  endif
#else
#  define QSTR_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qstr_status {
  QSTR_OK = 0,
  /* The network (or the requested object) has no scenario. */
  QSTR_INCONSISTENT = 1,
  QSTR_E_ARGUMENT = 2,
  QSTR_E_PARSE = 3,
  QSTR_E_IO = 4,
  QSTR_E_MISMATCH = 5,
  QSTR_E_NO_SCENARIO = 6,
  QSTR_E_CONTRADICTION = 7,
  QSTR_E_INTERNAL = 8
} qstr_status;

typedef enum qstr_probability_source {
  QSTR_PROB_NONE = 0,
  QSTR_PROB_EXTERNAL = 1,
  QSTR_PROB_SCENARIO = 2
} qstr_probability_source;

typedef struct qstr_calculus qstr_calculus;
typedef struct qstr_network qstr_network;
typedef struct qstr_scenario_list qstr_scenario_list;
typedef struct qstr_report qstr_report;

QSTR_API const char *qstr_version(void);
QSTR_API const char *qstr_status_string(qstr_status status);
QSTR_API const char *qstr_last_error(void);
QSTR_API void qstr_string_free(char *s);

/* Calculi */
QSTR_API qstr_status qstr_calculus_builtin(const char *name, qstr_calculus **out);
QSTR_API qstr_status qstr_calculus_load(const char *path, qstr_calculus **out);
QSTR_API qstr_status qstr_calculus_parse(const char *text, const char *source,
                                         qstr_calculus **out);
QSTR_API void qstr_calculus_free(qstr_calculus *c);
QSTR_API const char *qstr_calculus_name(const qstr_calculus *c);
QSTR_API size_t qstr_calculus_size(const qstr_calculus *c);
QSTR_API const char *qstr_calculus_relation_name(const qstr_calculus *c, size_t k);
QSTR_API int qstr_calculus_closure_decides(const qstr_calculus *c);
/* Violations, one per line, in *report (empty string when valid). */
QSTR_API qstr_status qstr_calculus_validate(const qstr_calculus *c,
                                            size_t *violation_count,
                                            char **report);
QSTR_API qstr_status qstr_calculus_write(const qstr_calculus *c, char **out);

/* Networks. calculus_dir and override may be NULL. */
QSTR_API qstr_status qstr_network_load(const char *path, const char *calculus_dir,
                                       const qstr_calculus *override_calculus,
                                       qstr_network **out);
QSTR_API qstr_status qstr_network_parse(const char *text, const char *source,
                                        const char *calculus_dir,
                                        const qstr_calculus *override_calculus,
                                        qstr_network **out);
QSTR_API qstr_status qstr_network_create(const qstr_calculus *c, const char *name,
                                         const char *const *variables, size_t n,
                                         qstr_network **out);
QSTR_API qstr_status qstr_network_generate(const qstr_calculus *c, size_t n,
                                           double density, size_t label_size,
                                           uint64_t seed, qstr_network **out);
QSTR_API void qstr_network_free(qstr_network *net);

QSTR_API const char *qstr_network_name(const qstr_network *net);
QSTR_API const char *qstr_network_calculus_name(const qstr_network *net);
QSTR_API int qstr_network_closure_decides(const qstr_network *net);
QSTR_API size_t qstr_network_size(const qstr_network *net);
/* Base relations of the network's calculus. */
QSTR_API size_t qstr_network_relation_count(const qstr_network *net);
QSTR_API const char *qstr_network_relation_name(const qstr_network *net, size_t k);
QSTR_API const char *qstr_network_variable(const qstr_network *net, size_t i);
/* Relation on (i,j) as a bit set over base relation indices. */
QSTR_API qstr_status qstr_network_constraint(const qstr_network *net, size_t i,
                                             size_t j, uint64_t *bits);
QSTR_API qstr_status qstr_network_set_constraint(qstr_network *net, size_t i,
                                                 size_t j,
                                                 const char *const *relations,
                                                 size_t count);
QSTR_API qstr_status qstr_network_refine(qstr_network *net, size_t i, size_t j,
                                         const char *const *relations,
                                         size_t count);
QSTR_API qstr_probability_source qstr_network_probability_source(const qstr_network *net);
/* *present = 0 when the edge carries no distribution. */
QSTR_API qstr_status qstr_network_edge_probability(const qstr_network *net,
                                                   size_t i, size_t j, size_t k,
                                                   double *p, int *present);
/* Exact scenario count behind scenario-derived probabilities (0 otherwise). */
QSTR_API uint64_t qstr_network_scenario_total(const qstr_network *net);
QSTR_API qstr_status qstr_network_scenario_count(const qstr_network *net,
                                                 size_t i, size_t j, size_t k,
                                                 uint64_t *count);
QSTR_API size_t qstr_network_label_count(const qstr_network *net, size_t v);
QSTR_API qstr_status qstr_network_label(const qstr_network *net, size_t v,
                                        size_t k, const char **label, double *p);

QSTR_API qstr_status qstr_network_write(const qstr_network *net, char **out);
/* format: "dot", "asp" or "neurasp". */
QSTR_API qstr_status qstr_network_export(const qstr_network *net,
                                         const char *format, char **out);
/* Pairwise intersection of the constraints; probabilities and labels of a.
   b may mention only a subset of a's variables (matched by name). */
QSTR_API qstr_status qstr_network_intersect(const qstr_network *a,
                                            const qstr_network *b,
                                            qstr_network **out);

/* Reasoning. QSTR_INCONSISTENT is a result, not an error. */
QSTR_API qstr_status qstr_check(const qstr_network *net, qstr_network **closed,
                                size_t *revisions);
QSTR_API qstr_status qstr_solve(const qstr_network *net, qstr_network **scenario);
/* limit 0 means unlimited. */
QSTR_API qstr_status qstr_enumerate(const qstr_network *net, size_t limit,
                                    unsigned jobs, qstr_scenario_list **out);
QSTR_API size_t qstr_scenario_list_size(const qstr_scenario_list *list);
QSTR_API const qstr_network *qstr_scenario_list_at(const qstr_scenario_list *list,
                                                   size_t k);
QSTR_API void qstr_scenario_list_free(qstr_scenario_list *list);

/* Probabilistic layer */
QSTR_API qstr_status qstr_edge_probabilities(const qstr_network *net,
                                             qstr_network **out);
/* Uses the probabilities of probs, or scenario-derived ones when it has none.
   The refinement's variables are matched by name. */
QSTR_API qstr_status qstr_robustness(const qstr_network *probs,
                                     const qstr_network *refinement,
                                     qstr_report **out);
/* Searches the scenarios of feasible (probs itself when NULL) under the
   probabilities of probs. QSTR_INCONSISTENT when there is no scenario. */
QSTR_API qstr_status qstr_max_robust(const qstr_network *probs,
                                     const qstr_network *feasible,
                                     qstr_report **out);
/* background may mention only a subset of net's variables. */
QSTR_API qstr_status qstr_rectify(const qstr_network *net,
                                  const qstr_network *background,
                                  qstr_network **out);

QSTR_API double qstr_report_robustness(const qstr_report *r);
QSTR_API int qstr_report_satisfiable(const qstr_report *r);
QSTR_API const qstr_network *qstr_report_refinement(const qstr_report *r);
QSTR_API size_t qstr_report_edge_count(const qstr_report *r);
QSTR_API qstr_status qstr_report_edge(const qstr_report *r, size_t k, size_t *i,
                                      size_t *j, size_t *relation, double *p);
QSTR_API size_t qstr_report_warning_count(const qstr_report *r);
QSTR_API const char *qstr_report_warning(const qstr_report *r, size_t k);
QSTR_API void qstr_report_free(qstr_report *r);

#ifdef __cplusplus
}
#endif

#endif
