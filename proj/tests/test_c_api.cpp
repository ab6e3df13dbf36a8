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

#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <string>

#include "earate/earate.h"

TEST_CASE("report through the C interface") {
    earate_options opt;
    earate_options_init(&opt);
    opt.has_ell = 1;
    opt.ell = 3;
    earate_report* r = nullptr;
    REQUIRE(earate_report_create(0.1, 0.5, 2.0, &opt, &r) == EARATE_OK);
    double v = 0.0;
    CHECK(earate_report_get(r, "n_t", &v) == EARATE_OK);
    CHECK(v == doctest::Approx(1.8));
    CHECK(earate_report_get(r, "fidelity_gap_bound", &v) == EARATE_OK);
    CHECK(v == doctest::Approx(1.0339e-14).epsilon(1e-4));
    CHECK(earate_report_get(r, "lemma1_valid", &v) == EARATE_OK);
    CHECK(v == 1.0);
    CHECK(earate_report_get(r, "no_such_field", &v) == EARATE_E_INVALID_ARGUMENT);
    CHECK(earate_report_get(r, "closed_form_rate_reason", &v) == EARATE_E_DOMAIN);
    CHECK(earate_report_masked(r) == 0);
    CHECK(std::string(earate_report_json(r)).front() == '{');
    CHECK(std::string(earate_report_csv_header()).rfind("eta,", 0) == 0);
    CHECK(std::strlen(earate_report_csv_row(r)) > 0);
    CHECK(std::strlen(earate_report_text(r)) > 0);
    earate_report_free(r);
}

TEST_CASE("errors map to status codes") {
    earate_report* r = nullptr;
    CHECK(earate_report_create(0.0, 0.5, 2.0, nullptr, &r) == EARATE_E_DOMAIN);
    CHECK(r == nullptr);
    CHECK(std::string(earate_last_error()).find("eta") != std::string::npos);
    CHECK(earate_report_create(0.1, 0.5, 2.0, nullptr, nullptr) == EARATE_E_INVALID_ARGUMENT);
    earate_options opt;
    earate_options_init(&opt);
    opt.tail_tol = 2.0;
    CHECK(earate_report_create(0.1, 0.5, 2.0, &opt, &r) == EARATE_E_DOMAIN);
    earate_table* t = nullptr;
    CHECK(earate_converge_run(0.1, 0.5, 2.0, 9, nullptr, &t) == EARATE_E_DOMAIN);
    opt.tail_tol = 1e-12;
    opt.cutoff = 300;
    CHECK(earate_converge_run(0.1, 0.5, 2.0, 8, &opt, &t) == EARATE_E_RESOURCE);
    CHECK(std::string(earate_status_name(EARATE_E_IO)) == "I/O error");
    int variant = -1;
    CHECK(earate_parse_poly_variant("printed", &variant) == EARATE_OK);
    CHECK(variant == EARATE_POLY_PRINTED);
    CHECK(earate_parse_poly_variant("nope", &variant) == EARATE_E_INVALID_ARGUMENT);
}

TEST_CASE("masked point") {
    earate_report* r = nullptr;
    REQUIRE(earate_report_create(0.1, 1.0, 0.05, nullptr, &r) == EARATE_OK);
    CHECK(earate_report_masked(r) == 1);
    double v = 0.0;
    CHECK(earate_report_get(r, "closed_form_rate", &v) == EARATE_E_DOMAIN);
    earate_report_free(r);
}

TEST_CASE("tables") {
    earate_options opt;
    earate_options_init(&opt);
    opt.has_ell = 1;
    opt.ell = 6;
    earate_table* t = nullptr;
    REQUIRE(earate_levelset_run(0.1, 1e-3, 10, 3, 1e-2, 10, 4, 0, &opt, &t) == EARATE_OK);
    CHECK(earate_table_rows(t) == 12);
    CHECK(std::string(earate_table_json(t)).front() == '[');
    earate_table_free(t);
    CHECK(earate_levelset_run(0.1, 1e-3, 10, 1, 1e-2, 10, 4, 0, &opt, &t) == EARATE_E_DOMAIN);
    REQUIRE(earate_converge_run(0.3, 0.2, 1.0, 3, nullptr, &t) == EARATE_OK);
    CHECK(earate_table_rows(t) == 4);
    CHECK(std::strlen(earate_table_text(t)) > 0);
    CHECK(std::strlen(earate_table_csv(t)) > 0);
    earate_table_free(t);
}

TEST_CASE("file output") {
    CHECK(earate_write_file("/nonexistent-dir/x.csv", "a") == EARATE_E_IO);
    const auto path = std::filesystem::temp_directory_path() / "earate_c_api_test.txt";
    CHECK(earate_write_file(path.c_str(), "hello\n") == EARATE_OK);
    CHECK(std::filesystem::file_size(path) == 6);
    std::filesystem::remove(path);
}

TEST_CASE("null handles are tolerated") {
    earate_report_free(nullptr);
    earate_table_free(nullptr);
    earate_verify_free(nullptr);
    CHECK(earate_table_rows(nullptr) == 0);
    CHECK(std::string(earate_version()).size() > 0);
}
