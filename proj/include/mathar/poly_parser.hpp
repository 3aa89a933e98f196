#pragma once

// Recursive-descent parser for polynomials in n and for semicolon-separated
// recurrence coefficient lists.
//
//   list    := expr (';' expr)*
//   expr    := term (('+' | '-') term)*
//   term    := unary (['*'] unary)*       juxtaposition multiplies: 2n, (n+1)(n+2)
//   unary   := ('+' | '-') unary | power
//   power   := primary ('^' integer)?
//   primary := integer | 'n' | '(' expr ')'

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "mathar/errors.hpp"
#include "mathar/poly.hpp"
#include "mathar/recurrence.hpp"

namespace mathar {

namespace detail {

class poly_parser {
public:
    explicit poly_parser(std::string text) : text_(std::move(text)) {}

    poly parse_expression_to_end() {
        poly p = expr();
        skip_space();
        if (!at_end()) {
            fail("unexpected '" + std::string(1, peek()) + "'");
        }
        return p;
    }

    std::vector<poly> parse_list() {
        std::vector<poly> out;
        out.push_back(expr());
        skip_space();
        while (!at_end() && peek() == ';') {
            ++pos_;
            out.push_back(expr());
            skip_space();
        }
        if (!at_end()) {
            fail("unexpected '" + std::string(1, peek()) + "'");
        }
        return out;
    }

private:
    [[noreturn]] void fail(const std::string& what) const { throw parse_error(what, pos_); }

    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }

    void skip_space() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) {
            ++pos_;
        }
    }

    bool accept(char c) {
        skip_space();
        if (!at_end() && peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    bool starts_factor() {
        skip_space();
        return !at_end() && (peek() == '(' || peek() == 'n' || std::isdigit(static_cast<unsigned char>(peek())));
    }

    poly expr() {
        poly acc = term();
        for (;;) {
            if (accept('+')) {
                acc += term();
            } else if (accept('-')) {
                acc -= term();
            } else {
                return acc;
            }
        }
    }

    poly term() {
        poly acc = unary();
        for (;;) {
            if (accept('*')) {
                acc *= unary();
            } else if (starts_factor()) {
                acc *= power();
            } else {
                return acc;
            }
        }
    }

    poly unary() {
        if (accept('-')) {
            return -unary();
        }
        if (accept('+')) {
            return unary();
        }
        return power();
    }

    poly power() {
        poly base = primary();
        if (accept('^')) {
            skip_space();
            const auto start = pos_;
            const auto digits = integer_literal();
            if (digits.size() > 3) {
                pos_ = start;
                fail("exponent too large");
            }
            base = base.pow(static_cast<unsigned>(std::stoul(digits)));
        }
        return base;
    }

    poly primary() {
        skip_space();
        if (at_end()) {
            fail("unexpected end of input");
        }
        if (peek() == '(') {
            ++pos_;
            poly inner = expr();
            if (!accept(')')) {
                fail("expected ')'");
            }
            return inner;
        }
        if (peek() == 'n') {
            ++pos_;
            return poly::n();
        }
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            return poly::constant(rat(big_int(integer_literal())));
        }
        fail("unexpected '" + std::string(1, peek()) + "'");
    }

    std::string integer_literal() {
        const auto start = pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
            ++pos_;
        }
        if (start == pos_) {
            fail("expected an integer");
        }
        return text_.substr(start, pos_ - start);
    }

    std::string text_;
    std::size_t pos_ = 0;
};

// U+2212 MINUS SIGN is accepted as '-'.
inline std::string ascii_minus(std::string_view s) {
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s.substr(i, 3) == "\xE2\x88\x92") {
            out += '-';
            i += 2;
        } else {
            out += s[i];
        }
    }
    return out;
}

}  // namespace detail

inline poly parse_poly(std::string_view text) {
    return detail::poly_parser(detail::ascii_minus(text)).parse_expression_to_end();
}

/// "1; -(2n+5); (n+2)^2" -> [p_0, p_1, p_2]. Trailing identically-zero
/// coefficients are dropped, lowering the order.
inline recurrence parse_recurrence(std::string_view text) {
    auto coeffs = detail::poly_parser(detail::ascii_minus(text)).parse_list();
    while (coeffs.size() > 2 && coeffs.back().is_zero()) {
        coeffs.pop_back();
    }
    return recurrence(std::move(coeffs));
}

}  // namespace mathar
