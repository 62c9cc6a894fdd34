/*
 * C API for the quantum privacy-preserving two-party circle intersection
 * (P2CI) simulator.
 *
 * Usage pattern:
 *
 *   pqci_context *ctx = pqci_context_new();
 *   char *report = NULL;
 *   if (pqci_decide(ctx, 3, "2,2,1", "2,3,1", 42, &report) == PQCI_OK) {
 *       ... report is a JSON document ...
 *       pqci_string_free(report);
 *   } else {
 *       fprintf(stderr, "%s\n", pqci_context_error(ctx));
 *   }
 *   pqci_context_free(ctx);
 *
 * Circles are decimal triples "x,y,r" with each component in [1, 2^t - 1].
 * All reports are JSON; the schema ships as docs/pqci-report.schema.json.
 */

#ifndef PQCI_H
#define PQCI_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pqci_status {
    PQCI_OK = 0,
    PQCI_ERR_INVALID_ARGUMENT = 1, /* bad circle, range, or strategy */
    PQCI_ERR_UNSUPPORTED = 2,      /* valid request outside supported limits */
    PQCI_ERR_INTERNAL = 3,
} pqci_status;

/* Opaque handle; owns the last error message. Not thread-safe: use one
 * context per thread. */
typedef struct pqci_context pqci_context;

pqci_context *pqci_context_new(void);
void pqci_context_free(pqci_context *ctx);

/* Message for the most recent failing call on this context, or "" if none.
 * Owned by the context; valid until the next call on it. */
const char *pqci_context_error(const pqci_context *ctx);

const char *pqci_version(void);

/* Every report-producing call stores a malloc'd JSON document in *report_json
 * on success; release it with pqci_string_free. */

/* One honest protocol run deciding whether the two circles intersect. */
pqci_status pqci_decide(pqci_context *ctx, uint32_t t, const char *alice,
                        const char *bob, uint64_t seed, char **report_json);

/* Sweep comparing the protocol outcome with the classical predicate.
 * samples == 0 requests the exhaustive sweep (t <= 3). */
pqci_status pqci_verify(pqci_context *ctx, uint32_t t, uint64_t samples,
                        uint64_t seed, char **report_json);

/* Monte Carlo attack analysis. Strategies: bob-direct-one, bob-direct-both,
 * bob-intercept-resend, bob-entangle-measure, alice-multi-input,
 * alice-superposed, eve-intercept. alice2 is required for alice-multi-input
 * and may be NULL otherwise; decoys applies to eve-intercept. */
pqci_status pqci_attack(pqci_context *ctx, const char *strategy, uint32_t t,
                        const char *alice, const char *bob, const char *alice2,
                        uint64_t trials, uint32_t decoys, uint64_t seed,
                        char **report_json);

/* Gate-cost and qubit accounting for each precision in t_values. */
pqci_status pqci_cost(pqci_context *ctx, const uint32_t *t_values, size_t count,
                      char **report_json);

/* Stage-by-stage run record with state summaries (t <= 3). */
pqci_status pqci_trace(pqci_context *ctx, uint32_t t, const char *alice,
                       const char *bob, uint64_t seed, char **report_json);

/* Classical predicate: sets *result to 1 iff the circles intersect (D < R). */
pqci_status pqci_intersects(pqci_context *ctx, uint32_t t, const char *alice,
                            const char *bob, int *result);

void pqci_string_free(char *s);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* PQCI_H */
