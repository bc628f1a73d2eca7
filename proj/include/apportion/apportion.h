#ifndef APPORTION_APPORTION_H
#define APPORTION_APPORTION_H

#include <stddef.h>
#include <stdint.h>

#if defined(APPORTION_BUILDING)
#define AP_API __attribute__((visibility("default")))
#else
#define AP_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ap_status {
  AP_OK = 0,
  AP_INVALID_ARGUMENT,
  AP_INVALID_DELTA,
  AP_EMPTY_OUTCOME,
  AP_DIMENSION_MISMATCH,
  AP_PARSE,
  AP_INVALID_DISTRIBUTION,
  AP_UNSUPPORTED_TIE_BREAK,
  AP_DEGENERATE_ARRANGEMENT,
  AP_RESOURCE_CAP,
  AP_INTERNAL
} ap_status;

typedef struct ap_instance ap_instance;
typedef struct ap_atlas ap_atlas;
typedef struct ap_decomposition ap_decomposition;

/* Caps for the house-monotone searches. Pass NULL for the defaults. */
typedef struct ap_limits {
  size_t max_nodes;
  int64_t max_horizon;
} ap_limits;

/* Every char** output is a NUL-terminated JSON document owned by the caller
 * and released with ap_string_free. Rationals are strings "num/den". On
 * failure the outputs are untouched and ap_last_error() describes the
 * problem; the message stays valid until the next call on the same thread. */

AP_API const char* ap_status_name(ap_status status);
AP_API const char* ap_last_error(void);
AP_API void ap_string_free(char* s);

AP_API ap_status ap_instance_new(const int64_t* populations, size_t n, int64_t house, ap_instance** out);
/* {"populations":[...],"house":H} */
AP_API ap_status ap_instance_from_json(const char* json, ap_instance** out);
AP_API ap_status ap_instance_to_json(const ap_instance* inst, char** out);
AP_API void ap_instance_free(ap_instance* inst);
AP_API size_t ap_instance_size(const ap_instance* inst);
AP_API int64_t ap_instance_house(const ap_instance* inst);

/* Outcomes are {"base":[...],"tied":[...],"extra":r}. */
AP_API ap_status ap_apportion_stationary(const ap_instance* inst, const char* delta, char** out);
/* q is a rational, "-inf" or "+inf". */
AP_API ap_status ap_apportion_power_mean(const ap_instance* inst, const char* q, char** out);
AP_API ap_status ap_apportion_hamilton(const ap_instance* inst, char** out);
/* {"lower_quota":b,"upper_quota":b,"lower_violations":[...],"upper_violations":[...]} */
AP_API ap_status ap_check_axioms(const ap_instance* inst, const int64_t* seats, size_t n, char** out);

AP_API ap_status ap_atlas_new(const ap_instance* inst, ap_atlas** out);
AP_API ap_status ap_atlas_to_json(const ap_atlas* atlas, char** out);
AP_API ap_status ap_atlas_outcome_at(const ap_atlas* atlas, const char* delta, char** out);
AP_API void ap_atlas_free(ap_atlas* atlas);
/* {"tau":"a/b","tau_bar":"c/d"} */
AP_API ap_status ap_quota_partition(const ap_instance* inst, char** out);
/* {"active":[[state,offset],...],"pieces":[{"lo","hi","state","offset"}],"events":[...]} */
AP_API ap_status ap_sweep_level(const ap_instance* inst, char** out);
AP_API ap_status ap_power_mean_breakpoints(const ap_instance* inst, const char* q_lo, const char* q_hi,
                                           const char* tol, char** out);

/* dist_json: {"atoms":[{"at","mass"}],"uniform":[{"lo","hi","mass"}]}.
 * tiebreak: "uniform", "lexmax", "lexmin" or "random". */
AP_API ap_status ap_expected(const ap_instance* inst, const char* dist_json, const char* tiebreak, char** out);
/* {"samples":[[...],...]} */
AP_API ap_status ap_sample_stationary(const ap_instance* inst, const char* dist_json, const char* tiebreak,
                                      uint64_t seed, size_t reps, char** out);
/* shifts_json may be NULL; otherwise a list of n rationals used for every draw. */
AP_API ap_status ap_sample_fixed_divisor(const ap_instance* inst, uint64_t seed, size_t reps, int paired,
                                         const char* shifts_json, char** out);

AP_API ap_status ap_hm_enumerate(const ap_instance* inst, int64_t house, const ap_limits* limits,
                                 int by_recursion, char** out);
/* {"phi":[...]} */
AP_API ap_status ap_hm_phi(const ap_instance* inst, int64_t house, const ap_limits* limits, char** out);
AP_API ap_status ap_decomposition_new(const ap_instance* inst, const ap_limits* limits, ap_decomposition** out);
/* {"points":[[i_1,...,i_P],...],"weights":[...]} with 0-based states. */
AP_API ap_status ap_decomposition_to_json(const ap_decomposition* dec, char** out);
AP_API void ap_decomposition_free(ap_decomposition* dec);
AP_API ap_status ap_hm_sample(const ap_instance* inst, const ap_decomposition* dec, int64_t house, uint64_t seed,
                              char** out);

/* Instance where every delta-outcome leaves state 0 far from its quota. */
AP_API ap_status ap_gen_adversary_stationary(int64_t house, const char* delta, const char* eps, char** out);
/* signposts_json: list of first signposts delta_i. */
AP_API ap_status ap_gen_adversary_fixed_divisor(const char* signposts_json, const char* eps, char** out);
/* spec_json: {"lines":[{"m":"7/4","c":"0"},...]} */
AP_API ap_status ap_gen_from_arrangement(const char* spec_json, int64_t k, char** out);

#ifdef __cplusplus
}
#endif

#endif
