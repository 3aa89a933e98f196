#pragma once

// OEIS b-files: "index value" lines, '#' comments and blank lines ignored.
// Fetched files are cached verbatim under a directory keyed by A-number.

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <random>
#include <regex>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mathar/errors.hpp"
#include "mathar/exact_arith.hpp"
#include "mathar/recurrence.hpp"

namespace mathar {

struct bfile {
    std::string sequence_id;  // "A001711", or empty when unknown
    std::vector<std::pair<std::int64_t, big_int>> entries;

    friend bool operator==(const bfile&, const bfile&) = default;
};

inline bool is_sequence_id(std::string_view id) {
    static const std::regex pattern("A[0-9]{6}");
    return std::regex_match(id.begin(), id.end(), pattern);
}

namespace detail {

inline bool is_blank(char c) { return c == ' ' || c == '\t' || c == '\r'; }

inline bool parse_signed_decimal(std::string_view s, big_int& out) {
    std::size_t i = 0;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
        i = 1;
    }
    if (i == s.size()) {
        return false;
    }
    for (std::size_t k = i; k < s.size(); ++k) {
        if (s[k] < '0' || s[k] > '9') {
            return false;
        }
    }
    // mpz_set_str rejects a leading '+'.
    const std::string digits(s[0] == '+' ? s.substr(1) : s);
    return out.set_str(digits, 10) == 0;
}

}  // namespace detail

/// Parses b-file text. Indices must increase by exactly one per data line.
/// When expected_id is given it must be an A-number and becomes the id;
/// otherwise the first A-number in a leading comment is used, if any.
inline bfile parse_bfile(std::string_view text, const std::optional<std::string>& expected_id = {}) {
    bfile out;
    if (expected_id) {
        if (!is_sequence_id(*expected_id)) {
            throw invalid_sequence_id(*expected_id);
        }
        out.sequence_id = *expected_id;
    }

    static const std::regex id_in_comment("A[0-9]{6}");
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start < text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view line = text.substr(start, end - start);
        start = end + 1;
        ++line_no;

        std::size_t b = 0;
        while (b < line.size() && detail::is_blank(line[b])) {
            ++b;
        }
        std::size_t e = line.size();
        while (e > b && detail::is_blank(line[e - 1])) {
            --e;
        }
        line = line.substr(b, e - b);
        if (line.empty()) {
            continue;
        }
        if (line.front() == '#') {
            std::match_results<std::string_view::const_iterator> m;
            if (out.sequence_id.empty() && out.entries.empty() &&
                std::regex_search(line.begin(), line.end(), m, id_in_comment)) {
                out.sequence_id = m.str();
            }
            continue;
        }

        std::size_t gap = 0;
        while (gap < line.size() && !detail::is_blank(line[gap])) {
            ++gap;
        }
        std::size_t value_start = gap;
        while (value_start < line.size() && detail::is_blank(line[value_start])) {
            ++value_start;
        }
        if (gap == line.size() || value_start == line.size()) {
            throw malformed_line(line_no);
        }
        big_int index;
        big_int value;
        if (!detail::parse_signed_decimal(line.substr(0, gap), index) ||
            !detail::parse_signed_decimal(line.substr(value_start), value) || !index.fits_slong_p()) {
            throw malformed_line(line_no);
        }
        const std::int64_t idx = index.get_si();
        if (!out.entries.empty() && idx != out.entries.back().first + 1) {
            throw non_contiguous_index(line_no);
        }
        out.entries.emplace_back(idx, std::move(value));
    }
    if (out.entries.empty()) {
        throw empty_bfile();
    }
    return out;
}

/// "<index> <value>\n" per entry, nothing else.
inline std::string render_bfile(const bfile& b) {
    std::string out;
    for (const auto& [i, v] : b.entries) {
        out += std::to_string(i);
        out += ' ';
        out += v.get_str();
        out += '\n';
    }
    return out;
}

inline sequence to_sequence(const bfile& b) {
    sequence seq;
    seq.offset = b.entries.empty() ? 0 : b.entries.front().first;
    seq.terms.reserve(b.entries.size());
    for (const auto& e : b.entries) {
        seq.terms.push_back(e.second);
    }
    return seq;
}

inline bfile from_sequence(const sequence& seq, std::string id = {}) {
    bfile b{std::move(id), {}};
    for (std::size_t j = 0; j < seq.terms.size(); ++j) {
        b.entries.emplace_back(seq.offset + static_cast<std::int64_t>(j), seq.terms[j]);
    }
    return b;
}

/// $OEIS_CACHE_DIR if set, else ./.oeis-cache.
inline std::filesystem::path default_cache_dir() {
    if (const char* env = std::getenv("OEIS_CACHE_DIR"); env != nullptr && *env != '\0') {
        return env;
    }
    return ".oeis-cache";
}

/// "A001711" -> "b001711.txt".
inline std::string bfile_name(const std::string& id) { return "b" + id.substr(1) + ".txt"; }

inline std::filesystem::path cache_path(const std::string& id, const std::filesystem::path& cache_dir) {
    return cache_dir / bfile_name(id);
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw error("cannot read " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Returns the raw bytes of the b-file for an A-number. The HTTPS
/// implementation lives in oeis_client.hpp; tests substitute their own.
using bfile_downloader = std::function<std::string(const std::string& id, std::chrono::seconds timeout)>;

/// Cache-first fetch. An existing cache file is never rewritten; a download is
/// written to a temporary file and renamed into place.
inline bfile fetch_bfile(const std::string& id, const std::filesystem::path& cache_dir, bool offline,
                         const bfile_downloader& download, std::chrono::seconds timeout = std::chrono::seconds(30)) {
    if (!is_sequence_id(id)) {
        throw invalid_sequence_id(id);
    }
    const auto path = cache_path(id, cache_dir);
    if (std::filesystem::exists(path)) {
        return parse_bfile(read_file(path), id);
    }
    if (offline || !download) {
        throw offline_cache_miss(id);
    }
    const std::string body = download(id, timeout);
    const bfile parsed = parse_bfile(body, id);

    std::filesystem::create_directories(cache_dir);
    std::random_device rd;
    const auto tmp = cache_dir / (bfile_name(id) + ".tmp" + std::to_string(rd()));
    {
        std::ofstream out(tmp, std::ios::binary);
        out.write(body.data(), static_cast<std::streamsize>(body.size()));
        if (!out) {
            throw error("cannot write " + tmp.string());
        }
    }
    std::error_code ec;
    if (std::filesystem::exists(path)) {
        std::filesystem::remove(tmp, ec);
    } else {
        std::filesystem::rename(tmp, path, ec);
        if (ec) {
            std::filesystem::remove(tmp, ec);
        }
    }
    return parsed;
}

}  // namespace mathar
