// mathar: exact verification of Mathar's recurrence for OEIS A001711 and a
// general P-recursive recurrence guesser over b-file data.
//
// Exit codes: 0 every check passed, 1 some check failed, 2 usage or runtime error.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "mathar/bfile.hpp"
#include "mathar/commands.hpp"
#include "mathar/oeis_client.hpp"
#include "mathar/poly_parser.hpp"
#include "mathar/recurrence.hpp"
#include "mathar/report.hpp"

namespace {

struct source_options {
    std::string bfile_path;
    std::string id = "A001711";
    bool fetch = false;
    bool offline = false;
    std::string cache_dir;
    int timeout_s = 30;
};

void add_source_options(CLI::App* cmd, source_options& src) {
    cmd->add_option("--bfile", src.bfile_path, "b-file to read instead of the built-in A001711 fixture")
        ->check(CLI::ExistingFile);
    cmd->add_flag("--fetch", src.fetch, "Download the b-file from oeis.org (cached) instead of the fixture");
    cmd->add_flag("--offline", src.offline, "With --fetch, read the cache only and never download");
    cmd->add_option("--cache-dir", src.cache_dir, "b-file cache directory (default $OEIS_CACHE_DIR or ./.oeis-cache)");
    cmd->add_option("--timeout", src.timeout_s, "HTTP timeout in seconds")->check(CLI::PositiveNumber);
}

std::pair<mathar::sequence, std::string> load_source(const source_options& src) {
    if (!src.bfile_path.empty()) {
        return {mathar::to_sequence(mathar::parse_bfile(mathar::read_file(src.bfile_path))), src.bfile_path};
    }
    if (src.fetch) {
        const std::filesystem::path dir = src.cache_dir.empty() ? mathar::default_cache_dir() : std::filesystem::path(src.cache_dir);
        const auto b = mathar::fetch_bfile(src.id, dir, src.offline, std::chrono::seconds(src.timeout_s));
        return {mathar::to_sequence(b), "oeis.org " + src.id};
    }
    if (src.id != "A001711") {
        throw mathar::offline_cache_miss(src.id);
    }
    return {mathar::a001711_fixture_sequence(), "fixture"};
}

mathar::report error_report(const std::string& command, const std::exception& e) {
    mathar::report r;
    r.command = command;
    r.result = mathar::status::error;
    r.set("error", e.what());
    return r;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact verification of Mathar's recurrence for OEIS A001711"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string format = "text";
    app.add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();

    // closed-form
    auto* closed = app.add_subcommand("closed-form", "Closed form against b-file terms a(0..K)");
    std::int64_t closed_n = 19;
    closed->add_option("--n-max", closed_n, "Largest index K")->capture_default_str();
    source_options closed_src;
    add_source_options(closed, closed_src);

    // egf
    auto* egf = app.add_subcommand("egf", "EGF coefficients against the closed form for n = 0..K");
    std::int64_t egf_n = 9;
    std::optional<std::size_t> egf_corrupt;
    egf->add_option("--n-max", egf_n, "Largest index K")->capture_default_str();
    egf->add_option("--corrupt-coeff", egf_corrupt)->group("");

    // prove
    auto* prove = app.add_subcommand("prove", "Symbolic reduction of the recurrence under the closed form");
    std::string prove_rec;
    int pivot = 2;
    prove->add_option("--recurrence", prove_rec, "Coefficients p_0; p_1; p_2 in n, e.g. \"1; -(2n+5); (n+2)^2\"");
    prove->add_option("--pivot", pivot, "Rewrite around h(n+PIVOT)")->capture_default_str();

    // verify
    auto* ver = app.add_subcommand("verify", "Recurrence residuals on closed-form terms for n = 2..K");
    std::int64_t verify_n = 5000;
    std::string verify_rec;
    std::optional<std::int64_t> verify_corrupt;
    ver->add_option("--n-max", verify_n, "Largest index K")->capture_default_str();
    ver->add_option("--recurrence", verify_rec, "Coefficients p_0; ...; p_r in n");
    ver->add_option("--corrupt-term", verify_corrupt)->group("");

    // ode
    auto* ode = app.add_subcommand("ode", "(1-x)^2 y'' - 9(1-x) y' + 16 y = 0 for the EGF y, through x^(K-3)");
    std::int64_t ode_order = 200;
    bool tamper_sign = false;
    ode->add_option("--order", ode_order, "Series precision K")->capture_default_str();
    ode->add_flag("--tamper-sign", tamper_sign)->group("");

    // guess
    auto* gss = app.add_subcommand("guess", "Guess a P-recursive recurrence from b-file terms");
    std::size_t order = 0;
    std::size_t degree = 0;
    std::string expect;
    source_options guess_src;
    add_source_options(gss, guess_src);
    gss->add_option("--id", guess_src.id, "A-number to fetch with --fetch")->capture_default_str();
    gss->add_option("--order", order, "Recurrence order R")->required()->check(CLI::PositiveNumber);
    gss->add_option("--degree", degree, "Coefficient degree D")->required();
    gss->add_option("--expect", expect, "Expected recurrence p_0; ...; p_r (fails on mismatch)");

    // all
    auto* all = app.add_subcommand("all", "closed-form, egf, prove, verify and ode");
    mathar::all_options all_opt;
    source_options all_src;
    add_source_options(all, all_src);
    all->add_option("--n-max-verify", all_opt.n_max_verify, "Largest index for verify")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    mathar::report result;
    const std::string name = app.get_subcommands().front()->get_name();
    try {
        if (*closed) {
            const auto [seq, label] = load_source(closed_src);
            result = mathar::run_closed_form(closed_n, seq, label);
        } else if (*egf) {
            result = mathar::run_egf(egf_n, egf_corrupt);
        } else if (*prove) {
            result = mathar::run_prove(
                prove_rec.empty() ? mathar::mathar_recurrence() : mathar::parse_recurrence(prove_rec), pivot);
        } else if (*ver) {
            result = mathar::run_verify(
                verify_n, verify_rec.empty() ? mathar::mathar_recurrence() : mathar::parse_recurrence(verify_rec),
                verify_corrupt);
        } else if (*ode) {
            mathar::ode_coefficients c;
            if (tamper_sign) {
                c.first = -c.first;
            }
            result = mathar::run_ode(ode_order, c);
        } else if (*gss) {
            const auto [seq, label] = load_source(guess_src);
            std::optional<mathar::recurrence> want;
            if (!expect.empty()) {
                want = mathar::parse_recurrence(expect);
            }
            result = mathar::run_guess(seq, order, degree, want);
            result.set("source", label);
        } else if (*all) {
            const auto [seq, label] = load_source(all_src);
            result = mathar::run_all(seq, all_opt, label);
        }
    } catch (const std::exception& e) {
        result = error_report(name, e);
    }

    if (format == "json") {
        std::cout << mathar::to_json(result).dump(2) << '\n';
    } else {
        std::cout << mathar::to_text(result);
    }
    return result.exit_code();
}
