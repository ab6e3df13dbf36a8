/**
 * Copyright 2026 The earate Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef EARATE_H
#define EARATE_H

/* C interface to the earate library. Every object is an opaque handle owned
 * by the caller and released with the matching *_free function. Functions
 * returning earate_status leave a thread-local message readable through
 * earate_last_error() when they fail. Returned strings stay valid until the
 * owning handle is freed. */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum earate_status {
    EARATE_OK = 0,
    EARATE_E_DOMAIN = 1,
    EARATE_E_SINGULAR = 2,
    EARATE_E_ITERATION = 3,
    EARATE_E_RESOURCE = 4,
    EARATE_E_CONSISTENCY = 5,
    EARATE_E_IO = 6,
    EARATE_E_INVALID_ARGUMENT = 7,
    EARATE_E_INTERNAL = 8
} earate_status;

typedef enum earate_poly_variant {
    EARATE_POLY_SYMMETRIZED = 0,
    EARATE_POLY_PRINTED = 1
} earate_poly_variant;

typedef struct earate_options {
    int has_ell;          /* 0: continuous phase only */
    uint32_t ell;
    uint32_t cutoff;      /* 0: chosen from tail_tol */
    double tail_tol;
    uint32_t max_cutoff;
    int poly_variant;     /* earate_poly_variant */
    int numeric;          /* evaluate numerical Holevo values */
    int bits;             /* display entropic quantities in bits */
    unsigned workers;     /* 0: hardware concurrency */
} earate_options;

typedef struct earate_report earate_report;
typedef struct earate_table earate_table;
typedef struct earate_verify earate_verify;

const char* earate_version(void);
const char* earate_last_error(void);
const char* earate_status_name(earate_status s);

/* Defaults: no ell, auto cutoff, tail_tol 1e-12, max_cutoff 256,
 * symmetrized polynomials, numeric on, nats. */
void earate_options_init(earate_options* opt);

/* Parses "printed" or "symmetrized". */
earate_status earate_parse_poly_variant(const char* s, int* out);

/* ---- single point -------------------------------------------------------- */

earate_status earate_report_create(double eta, double n_s, double n_b, const earate_options* opt,
                                   earate_report** out);
void earate_report_free(earate_report* r);

/* Nonzero when the headline rate is masked (outside the bound's domain). */
int earate_report_masked(const earate_report* r);

/* Looks up a numeric field by its JSON name. Returns EARATE_OK and writes the
 * value (in the report's units), or EARATE_E_DOMAIN when the field is null,
 * or EARATE_E_INVALID_ARGUMENT for an unknown name. */
earate_status earate_report_get(const earate_report* r, const char* field, double* value);

const char* earate_report_json(const earate_report* r);
const char* earate_report_csv_row(const earate_report* r);
const char* earate_report_text(const earate_report* r);
const char* earate_report_csv_header(void);

/* ---- tables (levelset, converge) -------------------------------------------- */

earate_status earate_levelset_run(double eta, double ns_min, double ns_max, uint32_t ns_count,
                                  double nt_min, double nt_max, uint32_t nt_count,
                                  int with_numeric, const earate_options* opt,
                                  earate_table** out);

earate_status earate_converge_run(double eta, double n_s, double n_b, uint32_t ell_max,
                                  const earate_options* opt, earate_table** out);

void earate_table_free(earate_table* t);
size_t earate_table_rows(const earate_table* t);
const char* earate_table_csv(const earate_table* t);
const char* earate_table_json(const earate_table* t);
const char* earate_table_text(const earate_table* t);

/* ---- verification ---------------------------------------------------------- */

earate_status earate_verify_run(int full, unsigned workers, earate_verify** out);
void earate_verify_free(earate_verify* v);
size_t earate_verify_count(const earate_verify* v);
const char* earate_verify_line(const earate_verify* v, size_t i);
size_t earate_verify_failures(const earate_verify* v);
size_t earate_verify_warnings(const earate_verify* v);

/* ---- files ------------------------------------------------------------------ */

/* Writes `text` to `path`, replacing it. EARATE_E_IO on failure. */
earate_status earate_write_file(const char* path, const char* text);

#ifdef __cplusplus
}
#endif

#endif
