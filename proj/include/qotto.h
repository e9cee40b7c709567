/*
 * qotto.h: C interface to the quantum Otto cycle library.
 *
 * A two-level working system is cycled between hot and cold bosonic
 * reservoirs. Cycles are evaluated either in the standard weak-coupling
 * treatment or at arbitrary coupling strength through a reaction-coordinate
 * mapping of each reservoir onto a single truncated bosonic mode.
 *
 * All functions return a qotto_status; on failure qotto_last_error() gives a
 * human-readable description for the calling thread. Configurations are
 * opaque handles created from key = value text files (see qotto_config_load)
 * or built key by key with qotto_config_set.
 */

#ifndef QOTTO_H
#define QOTTO_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define QOTTO_API __declspec(dllexport)
#else
#define QOTTO_API __attribute__((visibility("default")))
#endif

typedef enum qotto_status {
    QOTTO_OK = 0,
    QOTTO_ERR_CONFIG = 1,      /* bad path, key, value, or invariant */
    QOTTO_ERR_NUMERIC = 2,     /* solver failure or inconsistent operands */
    QOTTO_ERR_UNCONVERGED = 3  /* truncation check failed without override */
} qotto_status;

typedef enum qotto_mode {
    QOTTO_MODE_ENGINE = 0,
    QOTTO_MODE_REFRIGERATOR = 1,
    QOTTO_MODE_NEITHER = 2
} qotto_mode;

typedef struct qotto_config qotto_config; /* opaque */

/* Work/heat ledger of one cycle evaluation. Energies are in the config's
 * energy units; signs: w_out > 0 means net work output, q_hot/q_cold > 0
 * mean energy absorbed from that reservoir. */
typedef struct qotto_cycle_result {
    double w_out;
    double q_hot;
    double q_cold;
    double w_dec_h; /* decoupling work costs */
    double w_dec_c;
    double q_dec_h; /* decoupling heats (adiabatic decoupling only) */
    double q_dec_c;
    double eta;      /* valid only when eta_defined != 0 */
    int eta_defined;
    int mode;        /* qotto_mode */
    int n;           /* Fock truncation used */
    int converged;
    /* labeled point energies relative to the residual-bath reference */
    double e_a, e_a_prime, e_b, e_b_prime, e_c, e_c_prime, e_d, e_d_prime;
} qotto_cycle_result;

/* Parse a key = value config file. On success *out owns a new handle. */
QOTTO_API qotto_status qotto_config_load(const char* path, qotto_config** out);

/* Build an empty config (the eight physics keys must be set before use). */
QOTTO_API qotto_status qotto_config_create(qotto_config** out);

/* Set one key using the file syntax, e.g. ("beta_c", "2.5"). Each key may be
 * assigned once per config; re-assignment is a config error at evaluation. */
QOTTO_API qotto_status qotto_config_set(qotto_config* cfg, const char* key,
                                        const char* value);

QOTTO_API void qotto_config_free(qotto_config* cfg);

/* Evaluate one cycle. */
QOTTO_API qotto_status qotto_cycle_run(const qotto_config* cfg,
                                       qotto_cycle_result* out);

/* The exact CSV column header shared by all CSV output. */
QOTTO_API const char* qotto_csv_header(void);

/* Serialize one cycle as a CSV row (no header, no newline). The returned
 * string must be released with qotto_string_free. */
QOTTO_API qotto_status qotto_cycle_csv_row(const qotto_config* cfg, char** out);

/* Sweep `param` (epsilon_h | delta_h | alpha | beta_c) over a uniform grid
 * of `steps` points from `from` to `to` inclusive, once per variant in the
 * comma-separated list "coupling:stroke:decoupling,...". Writes CSV to
 * out_path ("-" for stdout). threads <= 0 selects hardware concurrency.
 * Returns QOTTO_ERR_UNCONVERGED if a row failed the truncation check and
 * allow_unconverged is zero (the file is still written). */
QOTTO_API qotto_status qotto_sweep_run(const qotto_config* cfg,
                                       const char* param, double from,
                                       double to, int steps,
                                       const char* variants,
                                       const char* out_path, int threads,
                                       int allow_unconverged);

/* Truncation study: rows for n = 5, 10, ..., n_max. Writes a
 * n,W_out,Q_hot,eta,rel_delta CSV to out_path ("-" for stdout). Returns
 * QOTTO_ERR_UNCONVERGED when the final rel_delta exceeds 1e-6 and
 * allow_unconverged is zero. */
QOTTO_API qotto_status qotto_converge_run(const qotto_config* cfg, int n_max,
                                          const char* out_path,
                                          int allow_unconverged);

/* Last error message for the calling thread ("" if none). */
QOTTO_API const char* qotto_last_error(void);

QOTTO_API void qotto_string_free(char* s);

/* Library version as "major.minor.patch". */
QOTTO_API const char* qotto_version(void);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* QOTTO_H */
