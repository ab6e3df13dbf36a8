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

#include "earate/earate.h"

#include <cerrno>
#include <cstring>
#include <fstream>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include <json.hpp>

#include "earate/error.hpp"
#include "earate/report.hpp"
#include "earate/study.hpp"
#include "earate/verify.hpp"

struct earate_report {
    earate::BoundReport report;
    earate::Units units;
    std::string json;
    std::string csv;
    std::string text;
    nlohmann::json parsed;
};

struct earate_table {
    std::size_t rows = 0;
    std::string csv;
    std::string json;
    std::string text;
};

struct earate_verify {
    std::vector<earate::CheckResult> checks;
    std::vector<std::string> lines;
};

namespace {

thread_local std::string g_last_error;

earate_status fail(earate_status s, const std::string& msg) {
    g_last_error = msg;
    return s;
}

earate_status map_code(earate::ErrorCode c) {
    switch (c) {
        case earate::ErrorCode::ok:
            return EARATE_OK;
        case earate::ErrorCode::domain:
            return EARATE_E_DOMAIN;
        case earate::ErrorCode::singular_parameter:
            return EARATE_E_SINGULAR;
        case earate::ErrorCode::iteration_limit:
            return EARATE_E_ITERATION;
        case earate::ErrorCode::resource:
            return EARATE_E_RESOURCE;
        case earate::ErrorCode::consistency:
            return EARATE_E_CONSISTENCY;
        case earate::ErrorCode::io:
            return EARATE_E_IO;
        case earate::ErrorCode::invalid_argument:
            return EARATE_E_INVALID_ARGUMENT;
    }
    return EARATE_E_INTERNAL;
}

// Runs fn, translating exceptions into status codes.
template <typename Fn>
earate_status guarded(Fn&& fn) {
    try {
        g_last_error.clear();
        fn();
        return EARATE_OK;
    } catch (const earate::Error& e) {
        return fail(map_code(e.code()), e.what());
    } catch (const std::bad_alloc&) {
        return fail(EARATE_E_RESOURCE, "out of memory");
    } catch (const std::exception& e) {
        return fail(EARATE_E_INTERNAL, e.what());
    }
}

earate_options defaults() {
    earate_options o;
    earate_options_init(&o);
    return o;
}

earate::Units units_of(const earate_options& o) {
    return o.bits ? earate::Units::bits : earate::Units::nats;
}

earate::bounds::PolyVariant variant_of(const earate_options& o) {
    return o.poly_variant == EARATE_POLY_PRINTED ? earate::bounds::PolyVariant::printed
                                                 : earate::bounds::PolyVariant::symmetrized;
}

}  // namespace

extern "C" {

const char* earate_version(void) { return "1.0.0"; }

const char* earate_last_error(void) { return g_last_error.c_str(); }

const char* earate_status_name(earate_status s) {
    switch (s) {
        case EARATE_OK:
            return "ok";
        case EARATE_E_DOMAIN:
            return "domain error";
        case EARATE_E_SINGULAR:
            return "singular parameter";
        case EARATE_E_ITERATION:
            return "iteration limit";
        case EARATE_E_RESOURCE:
            return "resource limit";
        case EARATE_E_CONSISTENCY:
            return "internal consistency error";
        case EARATE_E_IO:
            return "I/O error";
        case EARATE_E_INVALID_ARGUMENT:
            return "invalid argument";
        case EARATE_E_INTERNAL:
            break;
    }
    return "internal error";
}

void earate_options_init(earate_options* opt) {
    if (!opt) {
        return;
    }
    opt->has_ell = 0;
    opt->ell = 0;
    opt->cutoff = 0;
    opt->tail_tol = earate::kDefaultTailTol;
    opt->max_cutoff = earate::kDefaultMaxCutoff;
    opt->poly_variant = EARATE_POLY_SYMMETRIZED;
    opt->numeric = 1;
    opt->bits = 0;
    opt->workers = 0;
}

earate_status earate_parse_poly_variant(const char* s, int* out) {
    if (!s || !out) {
        return fail(EARATE_E_INVALID_ARGUMENT, "null argument");
    }
    const auto v = earate::bounds::parse_poly_variant(s);
    if (!v) {
        return fail(EARATE_E_INVALID_ARGUMENT,
                    std::string("unknown polynomial variant '") + s + "'");
    }
    *out = *v == earate::bounds::PolyVariant::printed ? EARATE_POLY_PRINTED : EARATE_POLY_SYMMETRIZED;
    return EARATE_OK;
}

earate_status earate_report_create(double eta, double n_s, double n_b, const earate_options* opt,
                                   earate_report** out) {
    if (!out) {
        return fail(EARATE_E_INVALID_ARGUMENT, "null output handle");
    }
    *out = nullptr;
    const earate_options o = opt ? *opt : defaults();
    return guarded([&] {
        const auto p = earate::make_params(eta, n_s, n_b);
        earate::ReportOptions ro;
        if (o.has_ell) {
            ro.ell = o.ell;
        }
        ro.cutoff = o.cutoff;
        ro.tail_tol = o.tail_tol;
        ro.max_cutoff = o.max_cutoff;
        ro.variant = variant_of(o);
        ro.numeric = o.numeric != 0;
        ro.workers = o.workers;
        auto r = std::make_unique<earate_report>();
        r->report = earate::make_report(p, ro);
        r->units = units_of(o);
        r->json = earate::report_json(r->report, r->units);
        r->csv = earate::report_csv_row(r->report, r->units);
        r->text = earate::report_text(r->report, r->units);
        r->parsed = nlohmann::json::parse(r->json);
        *out = r.release();
    });
}

void earate_report_free(earate_report* r) { delete r; }

int earate_report_masked(const earate_report* r) { return r && r->report.masked() ? 1 : 0; }

earate_status earate_report_get(const earate_report* r, const char* field, double* value) {
    if (!r || !field || !value) {
        return fail(EARATE_E_INVALID_ARGUMENT, "null argument");
    }
    const auto it = r->parsed.find(field);
    if (it == r->parsed.end()) {
        return fail(EARATE_E_INVALID_ARGUMENT, std::string("unknown field '") + field + "'");
    }
    if (it->is_number()) {
        *value = it->get<double>();
        return EARATE_OK;
    }
    if (it->is_boolean()) {
        *value = it->get<bool>() ? 1.0 : 0.0;
        return EARATE_OK;
    }
    return fail(EARATE_E_DOMAIN, std::string("field '") + field + "' is not a present number");
}

const char* earate_report_json(const earate_report* r) { return r ? r->json.c_str() : ""; }
const char* earate_report_csv_row(const earate_report* r) { return r ? r->csv.c_str() : ""; }
const char* earate_report_text(const earate_report* r) { return r ? r->text.c_str() : ""; }

const char* earate_report_csv_header(void) {
    static const std::string header = earate::report_csv_header();
    return header.c_str();
}

earate_status earate_levelset_run(double eta, double ns_min, double ns_max, uint32_t ns_count,
                                  double nt_min, double nt_max, uint32_t nt_count,
                                  int with_numeric, const earate_options* opt,
                                  earate_table** out) {
    if (!out) {
        return fail(EARATE_E_INVALID_ARGUMENT, "null output handle");
    }
    *out = nullptr;
    const earate_options o = opt ? *opt : defaults();
    return guarded([&] {
        earate::GridSpec spec;
        spec.eta = eta;
        spec.ns_range = {ns_min, ns_max, ns_count};
        spec.nt_range = {nt_min, nt_max, nt_count};
        spec.ell = o.has_ell ? std::optional<std::uint32_t>(o.ell) : std::nullopt;
        spec.with_numeric = with_numeric != 0;
        spec.variant = variant_of(o);
        spec.tail_tol = o.tail_tol;
        spec.max_cutoff = o.cutoff > 0 ? o.cutoff : o.max_cutoff;
        spec.workers = o.workers;
        const auto rows = earate::run_levelset(spec);
        auto t = std::make_unique<earate_table>();
        t->rows = rows.size();
        t->csv = earate::levelset_csv(rows, spec.with_numeric, units_of(o));
        t->json = earate::levelset_json(rows, spec.with_numeric, units_of(o));
        t->text = t->csv;
        *out = t.release();
    });
}

earate_status earate_converge_run(double eta, double n_s, double n_b, uint32_t ell_max,
                                  const earate_options* opt, earate_table** out) {
    if (!out) {
        return fail(EARATE_E_INVALID_ARGUMENT, "null output handle");
    }
    *out = nullptr;
    const earate_options o = opt ? *opt : defaults();
    return guarded([&] {
        const auto p = earate::make_params(eta, n_s, n_b);
        earate::ConvergeOptions co;
        co.ell_max = ell_max;
        co.cutoff = o.cutoff;
        co.tail_tol = o.tail_tol;
        co.max_cutoff = o.max_cutoff;
        co.variant = variant_of(o);
        co.workers = o.workers;
        const auto table = earate::run_converge(p, co);
        auto t = std::make_unique<earate_table>();
        t->rows = table.rows.size();
        t->csv = earate::converge_csv(table, units_of(o));
        t->json = earate::converge_json(table, units_of(o));
        t->text = earate::converge_text(table, units_of(o));
        *out = t.release();
    });
}

void earate_table_free(earate_table* t) { delete t; }
size_t earate_table_rows(const earate_table* t) { return t ? t->rows : 0; }
const char* earate_table_csv(const earate_table* t) { return t ? t->csv.c_str() : ""; }
const char* earate_table_json(const earate_table* t) { return t ? t->json.c_str() : ""; }
const char* earate_table_text(const earate_table* t) { return t ? t->text.c_str() : ""; }

earate_status earate_verify_run(int full, unsigned workers, earate_verify** out) {
    if (!out) {
        return fail(EARATE_E_INVALID_ARGUMENT, "null output handle");
    }
    *out = nullptr;
    return guarded([&] {
        earate::VerifyOptions vo;
        vo.level = full ? earate::VerifyLevel::full : earate::VerifyLevel::quick;
        vo.workers = workers;
        auto v = std::make_unique<earate_verify>();
        v->checks = earate::run_verify(vo);
        for (const auto& c : v->checks) {
            v->lines.push_back(earate::format_check(c));
        }
        *out = v.release();
    });
}

void earate_verify_free(earate_verify* v) { delete v; }
size_t earate_verify_count(const earate_verify* v) { return v ? v->checks.size() : 0; }

const char* earate_verify_line(const earate_verify* v, size_t i) {
    return v && i < v->lines.size() ? v->lines[i].c_str() : "";
}

static size_t count_status(const earate_verify* v, earate::CheckStatus s) {
    size_t n = 0;
    if (v) {
        for (const auto& c : v->checks) {
            n += c.status == s;
        }
    }
    return n;
}

size_t earate_verify_failures(const earate_verify* v) { return count_status(v, earate::CheckStatus::fail); }
size_t earate_verify_warnings(const earate_verify* v) { return count_status(v, earate::CheckStatus::warn); }

earate_status earate_write_file(const char* path, const char* text) {
    if (!path || !text) {
        return fail(EARATE_E_INVALID_ARGUMENT, "null argument");
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) {
        return fail(EARATE_E_IO, std::string("cannot open '") + path + "' for writing: " +
                                     std::strerror(errno));
    }
    f << text;
    f.flush();
    if (!f) {
        return fail(EARATE_E_IO, std::string("write to '") + path + "' failed");
    }
    return EARATE_OK;
}

}  // extern "C"
