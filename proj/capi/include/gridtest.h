/* C API for the grid low-degree testing library.
 *
 * All functions return gt_status; GT_OK is 0. On failure, gt_last_error()
 * returns a thread-local description of the most recent error. Handles are
 * opaque; every gt_*_free accepts NULL.
 */
#ifndef GRIDTEST_H
#define GRIDTEST_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gt_status {
    GT_OK = 0,
    GT_ERROR = 1,            /* unclassified failure */
    GT_EINVAL = 2,           /* invalid argument */
    GT_EDOMAIN = 3,          /* domain/codomain mismatch */
    GT_ETOOLARGE = 4,        /* domain or family beyond configured budget */
    GT_EBUDGET = 5,          /* query/enumeration budget exceeded */
    GT_EPARSE = 6,           /* malformed table, descriptor, or config */
    GT_ECONSTRUCT = 7,       /* randomized construction failed */
    GT_EIO = 8               /* file I/O failure */
} gt_status;

const char* gt_version(void);
const char* gt_last_error(void);

/* ---- function tables ---- */

typedef struct gt_oracle gt_oracle;

/* Text table format: line 1 "sizes: s1 ... sn", line 2 "codomain: Z<m>|F<p>",
 * then one "x1 ... xn | value" line per point in lexicographic order. */
gt_status gt_oracle_load(const char* path, gt_oracle** out);
gt_status gt_oracle_save(const gt_oracle* oracle, const char* path);
void gt_oracle_free(gt_oracle* oracle);

/* n_out gets the arity; sizes_buf (when non-NULL, capacity cap) the shape;
 * codomain_buf (when non-NULL) the descriptor, e.g. "Z5" or "F7". */
gt_status gt_oracle_info(const gt_oracle* oracle, int32_t* n_out, int32_t* sizes_buf, int32_t cap,
                         char* codomain_buf, size_t codomain_cap);
uint64_t gt_oracle_query_count(const gt_oracle* oracle);

/* ---- testers ---- */

typedef struct gt_test_summary {
    uint64_t trials;
    uint64_t rejections;
    double rate;
    double ci_lo;   /* Wilson 95% */
    double ci_hi;
    double mean_queries;
    uint64_t junta_arm_rejections; /* deg test only, else 0 */
    uint64_t weak_arm_rejections;
} gt_test_summary;

#define GT_JUNTA_FORM_RECURSIVE 0
#define GT_JUNTA_FORM_REPHRASED 1

/* Junta-degree-d tester. k = 0 picks the default locality; nonzero
 * paper_params switches to k = psi*s^2*d. Field tables are tested over
 * the additive group of F_p; asymmetric grids are lifted to the lcm
 * alphabet first. */
gt_status gt_junta_test(const gt_oracle* oracle, int32_t d, int32_t k, int32_t form,
                        int32_t paper_params, int32_t psi, uint64_t trials, uint64_t seed,
                        int32_t threads, gt_test_summary* out);

/* Weak degree tester; t = 0 picks the smallest verified block length,
 * or t = s^3 under paper_params. Field-valued tables only. */
gt_status gt_weak_deg_test(const gt_oracle* oracle, int32_t d, int32_t t, int32_t paper_params,
                           uint64_t trials, uint64_t seed, int32_t threads, gt_test_summary* out);

/* Conjunction tester (junta arm over the additive group + weak arm). */
gt_status gt_deg_test(const gt_oracle* oracle, int32_t d, int32_t k, int32_t t,
                      int32_t paper_params, int32_t psi, uint64_t trials, uint64_t seed,
                      int32_t threads, gt_test_summary* out);

/* ---- exact distances ---- */

#define GT_FAMILY_JUNTA 0
#define GT_FAMILY_DEGREE 1

/* Exact brute-force distance to the junta-degree-d / degree-d family.
 * Writes the reduced fraction to num/den; when witness_path is non-NULL a
 * nearest member is saved there in table format. */
gt_status gt_exact_distance(const gt_oracle* oracle, int32_t family, int32_t d, uint64_t* num,
                            uint64_t* den, const char* witness_path);

/* ---- small-set expansion sweep ---- */

/* Random subsets of Z_s^n with densities in [density_lo, density_hi] under
 * spherical noise at each rate in nus (snapped to integral radii). Writes a
 * CSV (header n,s,nu,set,delta,lhs,bound,ok) when csv_path is non-NULL.
 * violations_out counts asserted rows with lhs > bound. */
gt_status gt_sse_sweep(int32_t n, int32_t s, const double* nus, int32_t num_nus, int32_t sets,
                       double density_lo, double density_hi, uint64_t seed, int32_t threads,
                       const char* csv_path, int32_t* violations_out);

/* ---- degree-testing lower-bound demo ---- */

typedef struct gt_impossibility_summary {
    uint64_t matrices;
    uint64_t bound_violations;   /* bad fraction > 3^l / n */
    uint64_t collisions;
    uint64_t certificates_ok;    /* verified and inside colspace */
} gt_impossibility_summary;

gt_status gt_impossibility(int32_t n, int32_t l, uint64_t trials, uint64_t seed, int32_t threads,
                           const char* csv_path, gt_impossibility_summary* out);

/* ---- experiments and acceptance ---- */

/* Runs a JSON experiment config (file path). Prints the summary lines to
 * stdout; pass_out gets 1 iff every asserted inequality held. */
gt_status gt_experiment_run(const char* config_path, int32_t threads, int32_t* pass_out);

/* Runs the acceptance suite, printing one PASS/FAIL line per criterion to
 * stdout. only_substring (may be NULL) restricts by criterion name.
 * failures_out gets the number of failing criteria. */
gt_status gt_acceptance_run(const char* only_substring, int32_t threads, int32_t* failures_out);

#ifdef __cplusplus
}
#endif

#endif /* GRIDTEST_H */
