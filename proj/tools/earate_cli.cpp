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

// Command-line frontend. Talks to the library only through earate.h.

#include <cstdio>
#include <cstdlib>
#include <string>

#include <CLI11.hpp>

#include "earate/earate.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitMasked = 2;
constexpr int kExitUsage = 64;
constexpr int kExitIo = 73;

struct Globals {
    bool json = false;
    std::string csv_path;
    unsigned cutoff = 0;
    double tail_tol = 1e-12;
    std::string ell;
    bool nats = false;
    bool bits = false;
    std::string variant = "symmetrized";
    unsigned workers = 0;
};

int exit_for(earate_status s) {
    switch (s) {
        case EARATE_OK:
            return kExitOk;
        case EARATE_E_DOMAIN:
        case EARATE_E_INVALID_ARGUMENT:
        case EARATE_E_SINGULAR:
            return kExitUsage;
        case EARATE_E_IO:
            return kExitIo;
        default:
            return kExitInternal;
    }
}

int report_error(earate_status s) {
    std::fprintf(stderr, "earate: %s: %s\n", earate_status_name(s), earate_last_error());
    return exit_for(s);
}

// Parses --ell; "continuous" (or empty) leaves has_ell unset.
earate_status parse_ell(const std::string& text, earate_options& opt) {
    if (text.empty() || text == "continuous") {
        opt.has_ell = 0;
        return EARATE_OK;
    }
    char* end = nullptr;
    const unsigned long v = std::strtoul(text.c_str(), &end, 10);
    if (end == text.c_str() || *end != '\0' || text[0] == '-' || v > 30) {
        std::fprintf(stderr, "earate: --ell expects a non-negative integer or 'continuous', got '%s'\n",
                     text.c_str());
        return EARATE_E_INVALID_ARGUMENT;
    }
    opt.has_ell = 1;
    opt.ell = static_cast<unsigned>(v);
    return EARATE_OK;
}

earate_status build_options(const Globals& g, earate_options& opt) {
    earate_options_init(&opt);
    opt.cutoff = g.cutoff;
    opt.tail_tol = g.tail_tol;
    opt.bits = g.bits ? 1 : 0;
    opt.workers = g.workers;
    int variant = 0;
    if (const auto s = earate_parse_poly_variant(g.variant.c_str(), &variant); s != EARATE_OK) {
        std::fprintf(stderr, "earate: %s\n", earate_last_error());
        return s;
    }
    opt.poly_variant = variant;
    return parse_ell(g.ell, opt);
}

int write_or_fail(const std::string& path, const std::string& text) {
    if (const auto s = earate_write_file(path.c_str(), text.c_str()); s != EARATE_OK) {
        return report_error(s);
    }
    return kExitOk;
}

int run_rate(const Globals& g, double eta, double ns, double nb, bool no_numeric) {
    earate_options opt;
    if (const auto s = build_options(g, opt); s != EARATE_OK) {
        return kExitUsage;
    }
    opt.numeric = no_numeric ? 0 : 1;
    earate_report* r = nullptr;
    if (const auto s = earate_report_create(eta, ns, nb, &opt, &r); s != EARATE_OK) {
        return report_error(s);
    }
    if (g.json) {
        std::printf("%s\n", earate_report_json(r));
    } else {
        std::fputs(earate_report_text(r), stdout);
    }
    int rc = kExitOk;
    if (!g.csv_path.empty()) {
        const std::string csv =
            std::string(earate_report_csv_header()) + "\n" + earate_report_csv_row(r) + "\n";
        rc = write_or_fail(g.csv_path, csv);
    }
    if (rc == kExitOk && earate_report_masked(r)) {
        rc = kExitMasked;
    }
    earate_report_free(r);
    return rc;
}

struct LevelsetArgs {
    double eta = 0.1;
    double ns_min = 1e-3, ns_max = 10.0;
    unsigned ns_count = 40;
    double nt_min = 1e-2, nt_max = 10.0;
    unsigned nt_count = 40;
    bool with_numeric = false;
};

int run_levelset(const Globals& g, const LevelsetArgs& a) {
    Globals gg = g;
    if (gg.ell.empty()) {
        gg.ell = "6";
    }
    earate_options opt;
    if (build_options(gg, opt) != EARATE_OK) {
        return kExitUsage;
    }
    earate_table* t = nullptr;
    const auto s = earate_levelset_run(a.eta, a.ns_min, a.ns_max, a.ns_count, a.nt_min, a.nt_max,
                                       a.nt_count, a.with_numeric ? 1 : 0, &opt, &t);
    if (s != EARATE_OK) {
        return report_error(s);
    }
    int rc = kExitOk;
    if (!g.csv_path.empty()) {
        rc = write_or_fail(g.csv_path, earate_table_csv(t));
    }
    if (g.json) {
        std::fputs(earate_table_json(t), stdout);
    } else if (g.csv_path.empty()) {
        std::fputs(earate_table_csv(t), stdout);
    }
    earate_table_free(t);
    return rc;
}

int run_converge(const Globals& g, double eta, double ns, double nb, unsigned ell_max) {
    earate_options opt;
    if (build_options(g, opt) != EARATE_OK) {
        return kExitUsage;
    }
    earate_table* t = nullptr;
    if (const auto s = earate_converge_run(eta, ns, nb, ell_max, &opt, &t); s != EARATE_OK) {
        return report_error(s);
    }
    std::fputs(g.json ? earate_table_json(t) : earate_table_text(t), stdout);
    int rc = kExitOk;
    if (!g.csv_path.empty()) {
        rc = write_or_fail(g.csv_path, earate_table_csv(t));
    }
    earate_table_free(t);
    return rc;
}

int run_verify(const Globals& g, const std::string& level) {
    earate_verify* v = nullptr;
    if (const auto s = earate_verify_run(level == "full", g.workers, &v); s != EARATE_OK) {
        return report_error(s);
    }
    std::string all;
    for (size_t i = 0; i < earate_verify_count(v); ++i) {
        all += earate_verify_line(v, i);
        all += '\n';
    }
    std::fputs(all.c_str(), stdout);
    std::printf("%zu checks, %zu failed, %zu warnings\n", earate_verify_count(v),
                earate_verify_failures(v), earate_verify_warnings(v));
    int rc = earate_verify_failures(v) == 0 ? kExitOk : kExitInternal;
    if (!g.csv_path.empty()) {
        if (const int w = write_or_fail(g.csv_path, all); w != kExitOk) {
            rc = w;
        }
    }
    earate_verify_free(v);
    return rc;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Achievable-rate bounds for PSK-modulated TMSV over a thermal-loss channel", "earate"};
    app.fallthrough();
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(earate_version()));
    app.set_config("--config", "", "TOML-style key=value file mirroring the flags");

    Globals g;
    app.add_flag("--json", g.json, "Print JSON instead of text");
    app.add_option("--csv", g.csv_path, "Write CSV to PATH");
    app.add_option("--cutoff", g.cutoff, "Per-mode photon cutoff (0 = from tail tolerance)");
    app.add_option("--tail-tol", g.tail_tol, "Truncated tail mass tolerance")
        ->check(CLI::PositiveNumber);
    app.add_option("--ell", g.ell, "Constellation exponent, L = 2^ell, or 'continuous'");
    auto* nats = app.add_flag("--nats", g.nats, "Report in nats (default)");
    auto* bits = app.add_flag("--bits", g.bits, "Report in bits");
    nats->excludes(bits);
    app.add_option("--p-poly-variant", g.variant, "Penalty polynomials")
        ->check(CLI::IsMember({"printed", "symmetrized"}));
    app.add_option("--workers", g.workers, "Worker threads (0 = hardware)");

    double eta = 0, ns = 0, nb = 0;
    bool no_numeric = false;
    auto* rate = app.add_subcommand("rate", "Bound report for one parameter point");
    rate->add_option("--eta", eta, "Transmissivity")->required();
    rate->add_option("--ns", ns, "Mean signal photon number")->required();
    rate->add_option("--nb", nb, "Thermal noise photon number")->required();
    rate->add_flag("--no-numeric", no_numeric, "Skip truncated-Fock numerics");

    LevelsetArgs ls;
    auto* levelset = app.add_subcommand("levelset", "Advantage ratios over an (N_S, N_T) grid");
    levelset->add_option("--eta", ls.eta, "Transmissivity")->capture_default_str();
    levelset->add_option("--ns-min", ls.ns_min, "")->capture_default_str();
    levelset->add_option("--ns-max", ls.ns_max, "")->capture_default_str();
    levelset->add_option("--ns-count", ls.ns_count, "")->capture_default_str();
    levelset->add_option("--nt-min", ls.nt_min, "")->capture_default_str();
    levelset->add_option("--nt-max", ls.nt_max, "")->capture_default_str();
    levelset->add_option("--nt-count", ls.nt_count, "")->capture_default_str();
    levelset->add_flag("--with-numeric", ls.with_numeric, "Add numeric Holevo column");

    unsigned ell_max = 6;
    auto* converge = app.add_subcommand("converge", "Convergence in the constellation size");
    converge->add_option("--eta", eta, "Transmissivity")->required();
    converge->add_option("--ns", ns, "Mean signal photon number")->required();
    converge->add_option("--nb", nb, "Thermal noise photon number")->required();
    converge->add_option("--ell-max", ell_max, "Largest ell (at most 8)")->capture_default_str();

    std::string level = "quick";
    auto* verify = app.add_subcommand("verify", "Oracle equivalence and invariant checks");
    verify->add_option("--level", level, "quick or full")->capture_default_str()
        ->check(CLI::IsMember({"quick", "full"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    if (*rate) {
        return run_rate(g, eta, ns, nb, no_numeric);
    }
    if (*levelset) {
        return run_levelset(g, ls);
    }
    if (*converge) {
        return run_converge(g, eta, ns, nb, ell_max);
    }
    if (*verify) {
        return run_verify(g, level);
    }
    return kExitUsage;
}
