#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mathar {

/// Base for every error raised by the library.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct non_integer_result : error {
    using error::error;
};

struct precision_exceeded : error {
    using error::error;
};

struct division_by_zero_poly : error {
    division_by_zero_poly() : error("division by the zero polynomial") {}
};

struct pole_at_evaluation_point : error {
    using error::error;
};

struct unsupported_order : error {
    using error::error;
};

struct index_out_of_range : error {
    using error::error;
};

struct insufficient_terms : error {
    using error::error;
};

struct invalid_recurrence : error {
    using error::error;
};

struct parse_error : error {
    parse_error(const std::string& what, std::size_t pos)
        : error(what + " at position " + std::to_string(pos)), position(pos) {}
    std::size_t position;
};

// b-file errors carry the 1-based line number of the offending line.
struct malformed_line : error {
    explicit malformed_line(std::size_t line)
        : error("malformed b-file line " + std::to_string(line)), line_no(line) {}
    std::size_t line_no;
};

struct non_contiguous_index : error {
    explicit non_contiguous_index(std::size_t line)
        : error("non-contiguous b-file index at line " + std::to_string(line)), line_no(line) {}
    std::size_t line_no;
};

struct empty_bfile : error {
    empty_bfile() : error("b-file contains no data lines") {}
};

struct invalid_sequence_id : error {
    explicit invalid_sequence_id(const std::string& id)
        : error("not an OEIS A-number: '" + id + "'") {}
};

struct offline_cache_miss : error {
    explicit offline_cache_miss(const std::string& id)
        : error("no cached b-file for " + id + " and fetching is disabled") {}
};

struct http_failure : error {
    http_failure(int code, const std::string& detail)
        : error("HTTP failure (" + std::to_string(code) + "): " + detail), status(code) {}
    int status;  // 0 when no response was received
};

}  // namespace mathar
