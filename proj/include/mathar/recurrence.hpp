#pragma once

// Linear recurrences with polynomial coefficients,
//
//     p_0(n) a(n) + p_1(n) a(n-1) + ... + p_r(n) a(n-r) = 0,
//
// residual evaluation against a list of terms, bulk verification, and exact
// guessing of a recurrence from terms by an integer nullspace computation.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <future>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "mathar/exact_arith.hpp"
#include "mathar/poly.hpp"

namespace mathar {

/// a(offset), a(offset+1), ... with contiguous indices.
struct sequence {
    std::int64_t offset = 0;
    std::vector<big_int> terms;

    std::int64_t first_index() const noexcept { return offset; }
    std::int64_t last_index() const noexcept {
        return offset + static_cast<std::int64_t>(terms.size()) - 1;
    }
    bool covers(std::int64_t lo, std::int64_t hi) const noexcept {
        return !terms.empty() && lo >= first_index() && hi <= last_index();
    }

    const big_int& at(std::int64_t n) const {
        if (terms.empty() || n < first_index() || n > last_index()) {
            throw index_out_of_range("sequence has no term a(" + std::to_string(n) + ")");
        }
        return terms[static_cast<std::size_t>(n - offset)];
    }

    friend bool operator==(const sequence&, const sequence&) = default;
};

class recurrence {
public:
    /// coeffs = [p_0, ..., p_r]; needs r >= 1 and p_0, p_r not identically zero.
    explicit recurrence(std::vector<poly> coeffs) : coeffs_(std::move(coeffs)) {
        if (coeffs_.size() < 2) {
            throw invalid_recurrence("a recurrence needs at least two coefficient polynomials");
        }
        if (coeffs_.front().is_zero()) {
            throw invalid_recurrence("leading coefficient p_0 is identically zero");
        }
        if (coeffs_.back().is_zero()) {
            throw invalid_recurrence("trailing coefficient p_r is identically zero");
        }
    }

    std::size_t order() const noexcept { return coeffs_.size() - 1; }
    const std::vector<poly>& coefficients() const noexcept { return coeffs_; }
    const poly& operator[](std::size_t i) const { return coeffs_[i]; }

    int max_degree() const {
        int d = 0;
        for (const auto& p : coeffs_) {
            d = std::max(d, p.degree());
        }
        return d;
    }

    /// Integer coefficients with overall content 1 and positive leading
    /// coefficient of p_0.
    recurrence canonical() const {
        big_int l = 1;
        for (const auto& p : coeffs_) {
            const big_int d = denominator_lcm(p);
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
        }
        std::vector<poly> scaled;
        scaled.reserve(coeffs_.size());
        big_int content = 0;
        for (const auto& p : coeffs_) {
            scaled.push_back(rat(l) * p);
            const big_int c = integer_content(scaled.back());
            mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), c.get_mpz_t());
        }
        rat factor = rat(1) / rat(content);
        if (scaled.front().leading() < 0) {
            factor = -factor;
        }
        for (auto& p : scaled) {
            p = factor * p;
        }
        return recurrence(std::move(scaled));
    }

    friend bool operator==(const recurrence&, const recurrence&) = default;

private:
    std::vector<poly> coeffs_;
};

/// a(n) - (2n+5) a(n-1) + (n+2)^2 a(n-2) = 0.
inline recurrence mathar_recurrence() {
    return recurrence({poly::constant(1), -poly::linear(2, 5), poly::linear(1, 2).pow(2)});
}

namespace detail {

inline bool needs_parens(const std::string& s) {
    int depth = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const char c = s[i];
        if (c == '(') {
            ++depth;
        } else if (c == ')') {
            --depth;
        } else if (depth == 0 && i > 0 && (c == '+' || c == '-')) {
            return true;
        }
    }
    return false;
}

inline std::string shifted_term(std::size_t i) {
    return i == 0 ? "a(n)" : "a(n-" + std::to_string(i) + ")";
}

}  // namespace detail

/// "a(n) - (2n+5)*a(n-1) + (n+2)^2*a(n-2) = 0"
inline std::string to_string(const recurrence& rec) {
    std::string out;
    for (std::size_t i = 0; i <= rec.order(); ++i) {
        const poly& p = rec[i];
        if (p.is_zero()) {
            continue;
        }
        const bool negative = p.leading() < 0;
        std::string mag = to_factored_string(negative ? -p : p);
        if (detail::needs_parens(mag)) {
            mag = "(" + mag + ")";
        }
        std::string term = mag == "1" ? detail::shifted_term(i) : mag + "*" + detail::shifted_term(i);
        if (out.empty()) {
            out = negative ? "-" + term : term;
        } else {
            out += negative ? " - " : " + ";
            out += term;
        }
    }
    return out + " = 0";
}

/// Semicolon-separated coefficient list "1; -2n-5; n^2+4n+4", the inverse of
/// what the recurrence parser accepts.
inline std::string to_coefficient_list(const recurrence& rec) {
    std::string out;
    for (std::size_t i = 0; i <= rec.order(); ++i) {
        if (i > 0) {
            out += "; ";
        }
        out += to_string(rec[i]);
    }
    return out;
}

/// sum_i p_i(n) a(n-i), exactly.
inline rat residual(const recurrence& rec, const sequence& seq, std::int64_t n) {
    const auto r = static_cast<std::int64_t>(rec.order());
    if (!seq.covers(n - r, n)) {
        throw index_out_of_range("residual at n = " + std::to_string(n) + " needs a(" +
                                 std::to_string(n - r) + ") .. a(" + std::to_string(n) + ")");
    }
    const rat x(n);
    rat sum = 0;
    for (std::int64_t i = 0; i <= r; ++i) {
        const auto& p = rec[static_cast<std::size_t>(i)];
        if (!p.is_zero()) {
            sum += p.eval(x) * rat(seq.at(n - i));
        }
    }
    return sum;
}

struct verify_report {
    std::int64_t n_lo = 0;
    std::int64_t n_hi = -1;
    std::size_t checks = 0;
    std::size_t failures = 0;
    std::optional<std::int64_t> first_failure;
    rat first_failure_residual = 0;

    bool passed() const noexcept { return failures == 0; }

    /// Combines reports over adjacent or disjoint ranges; associative.
    friend verify_report merge(const verify_report& a, const verify_report& b) {
        if (a.checks == 0) {
            return b;
        }
        if (b.checks == 0) {
            return a;
        }
        verify_report out;
        out.n_lo = std::min(a.n_lo, b.n_lo);
        out.n_hi = std::max(a.n_hi, b.n_hi);
        out.checks = a.checks + b.checks;
        out.failures = a.failures + b.failures;
        const verify_report* first = nullptr;
        if (a.first_failure && (!b.first_failure || *a.first_failure <= *b.first_failure)) {
            first = &a;
        } else if (b.first_failure) {
            first = &b;
        }
        if (first != nullptr) {
            out.first_failure = first->first_failure;
            out.first_failure_residual = first->first_failure_residual;
        }
        return out;
    }

    friend bool operator==(const verify_report&, const verify_report&) = default;
};

/// "PASS 4999 checks n=2..5000" or "FAIL 8 checks n=2..9 (1 failures) first_failure=3 residual=-1"
inline std::string to_string(const verify_report& r) {
    std::string out = r.passed() ? "PASS" : "FAIL";
    out += " " + std::to_string(r.checks) + " checks n=" + std::to_string(r.n_lo) + ".." +
           std::to_string(r.n_hi);
    if (!r.passed()) {
        out += " (" + std::to_string(r.failures) + " failures) first_failure=" +
               std::to_string(*r.first_failure) + " residual=" + to_string(r.first_failure_residual);
    }
    return out;
}

namespace detail {

inline verify_report verify_serial(const recurrence& rec, const sequence& seq, std::int64_t lo,
                                   std::int64_t hi) {
    verify_report out;
    out.n_lo = lo;
    out.n_hi = hi;
    for (std::int64_t n = lo; n <= hi; ++n) {
        const rat res = residual(rec, seq, n);
        ++out.checks;
        if (res != 0) {
            if (!out.first_failure) {
                out.first_failure = n;
                out.first_failure_residual = res;
            }
            ++out.failures;
        }
    }
    return out;
}

}  // namespace detail

/// Checks the residual at every n in [n_lo, n_hi]. Large ranges are split
/// across up to `workers` threads (0 = hardware concurrency); the merged
/// report does not depend on the split.
inline verify_report verify(const recurrence& rec, const sequence& seq, std::int64_t n_lo,
                            std::int64_t n_hi, unsigned workers = 0) {
    const auto r = static_cast<std::int64_t>(rec.order());
    if (n_lo > n_hi) {
        throw std::invalid_argument("verify: empty range");
    }
    if (!seq.covers(n_lo - r, n_hi)) {
        throw index_out_of_range("verify over n = " + std::to_string(n_lo) + ".." +
                                 std::to_string(n_hi) + " needs terms a(" + std::to_string(n_lo - r) +
                                 ") .. a(" + std::to_string(n_hi) + ")");
    }
    if (workers == 0) {
        workers = std::max(1U, std::thread::hardware_concurrency());
    }
    const std::int64_t count = n_hi - n_lo + 1;
    constexpr std::int64_t min_chunk = 256;
    const auto chunks = std::clamp<std::int64_t>(count / min_chunk, 1, workers);
    if (chunks == 1) {
        return detail::verify_serial(rec, seq, n_lo, n_hi);
    }

    std::vector<std::future<verify_report>> parts;
    const std::int64_t step = (count + chunks - 1) / chunks;
    for (std::int64_t lo = n_lo; lo <= n_hi; lo += step) {
        const std::int64_t hi = std::min(n_hi, lo + step - 1);
        parts.push_back(std::async(std::launch::async, [&rec, &seq, lo, hi] {
            return detail::verify_serial(rec, seq, lo, hi);
        }));
    }
    verify_report out;
    for (auto& f : parts) {
        out = merge(out, f.get());
    }
    return out;
}

/// Terms a(0..n_max) from the closed form checked against Mathar's recurrence
/// on n = 2..n_max.
inline verify_report verify_mathar_to(std::int64_t n_max) {
    if (n_max < 2) {
        throw std::invalid_argument("verify_mathar_to needs n_max >= 2");
    }
    const sequence seq{0, a_closed_range(0, static_cast<std::uint64_t>(n_max))};
    return verify(mathar_recurrence(), seq, 2, n_max);
}

/// Extends `initial` (a(offset) .. a(offset+r-1)) to `count` terms by solving
/// the recurrence for a(n). Returns nothing if p_0(n) vanishes or does not
/// divide exactly.
inline std::optional<sequence> unroll(const recurrence& rec, std::int64_t offset,
                                      std::vector<big_int> initial, std::size_t count) {
    const std::size_t r = rec.order();
    if (initial.size() != r) {
        throw std::invalid_argument("unroll needs exactly r initial terms");
    }
    sequence seq{offset, std::move(initial)};
    while (seq.terms.size() < count) {
        const std::int64_t n = seq.last_index() + 1;
        const rat x(n);
        rat rest = 0;
        for (std::size_t i = 1; i <= r; ++i) {
            rest += rec[i].eval(x) * rat(seq.at(n - static_cast<std::int64_t>(i)));
        }
        const rat lead = rec[0].eval(x);
        if (lead == 0) {
            return std::nullopt;
        }
        const rat next = -rest / lead;
        if (!is_integer(next)) {
            return std::nullopt;
        }
        seq.terms.push_back(next.get_num());
    }
    return seq;
}

namespace detail {

using int_matrix = std::vector<std::vector<big_int>>;

// Row echelon form by fraction-free (Bareiss) elimination. Returns the pivot
// column of each of the first rank rows.
inline std::vector<std::size_t> bareiss_echelon(int_matrix& m, std::size_t cols) {
    std::vector<std::size_t> pivots;
    big_int prev = 1;
    big_int rem;
    std::size_t row = 0;
    for (std::size_t c = 0; c < cols && row < m.size(); ++c) {
        std::size_t p = row;
        while (p < m.size() && m[p][c] == 0) {
            ++p;
        }
        if (p == m.size()) {
            continue;
        }
        std::swap(m[row], m[p]);
        const big_int& piv = m[row][c];
        for (std::size_t i = row + 1; i < m.size(); ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) {
                big_int v = piv * m[i][j] - m[i][c] * m[row][j];
                mpz_tdiv_qr(v.get_mpz_t(), rem.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                if (rem != 0) {
                    throw std::logic_error("fraction-free elimination produced an inexact division");
                }
                m[i][j] = std::move(v);
            }
            m[i][c] = 0;
        }
        prev = piv;
        pivots.push_back(c);
        ++row;
    }
    return pivots;
}

// Integer basis of the right nullspace, one primitive vector per free column.
inline std::vector<std::vector<big_int>> integer_nullspace(int_matrix m, std::size_t cols) {
    const auto pivots = bareiss_echelon(m, cols);
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivots) {
        is_pivot[c] = true;
    }
    std::vector<std::vector<big_int>> basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) {
            continue;
        }
        std::vector<rat> x(cols, rat(0));
        x[f] = 1;
        for (std::size_t k = pivots.size(); k-- > 0;) {
            const std::size_t pc = pivots[k];
            rat s = 0;
            for (std::size_t j = pc + 1; j < cols; ++j) {
                if (x[j] != 0) {
                    s += rat(m[k][j]) * x[j];
                }
            }
            x[pc] = -s / rat(m[k][pc]);
        }
        big_int l = 1;
        for (const auto& v : x) {
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
        }
        std::vector<big_int> ints;
        ints.reserve(cols);
        big_int g = 0;
        for (const auto& v : x) {
            ints.push_back(rat(v * l).get_num());
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), ints.back().get_mpz_t());
        }
        for (auto& v : ints) {
            v /= g;
        }
        basis.push_back(std::move(ints));
    }
    return basis;
}

inline std::optional<recurrence> recurrence_from_vector(const std::vector<big_int>& v, std::size_t r,
                                                        std::size_t d) {
    std::vector<poly> coeffs;
    for (std::size_t i = 0; i <= r; ++i) {
        std::vector<rat> c;
        for (std::size_t j = 0; j <= d; ++j) {
            c.emplace_back(v[i * (d + 1) + j]);
        }
        coeffs.emplace_back(std::move(c));
    }
    if (coeffs.front().is_zero() || coeffs.back().is_zero()) {
        return std::nullopt;
    }
    return recurrence(std::move(coeffs)).canonical();
}

inline std::vector<big_int> flatten(const recurrence& rec, std::size_t d) {
    std::vector<big_int> out;
    for (const auto& p : rec.coefficients()) {
        for (std::size_t j = 0; j <= d; ++j) {
            out.push_back(p[j].get_num());
        }
    }
    return out;
}

}  // namespace detail

/// Fewest terms guess() accepts for order r and degree d: one equation per
/// unknown, plus r initial terms, plus 5 surplus equations.
constexpr std::size_t guess_min_terms(std::size_t r, std::size_t d) {
    return (r + 1) * (d + 1) + r + 5;
}

/// Finds a recurrence of order r with coefficient degree <= d annihilating all
/// of seq. Uses every available equation. With a one-dimensional solution space
/// the unique candidate is returned; with a larger one, the lexicographically
/// least verifying candidate among the basis vectors and two fixed
/// combinations of them. Returns nothing if no candidate exists.
inline std::optional<recurrence> guess(const sequence& seq, std::size_t r, std::size_t d) {
    if (r == 0) {
        throw std::invalid_argument("guess: order must be positive");
    }
    if (seq.terms.size() < guess_min_terms(r, d)) {
        throw insufficient_terms("guess(order " + std::to_string(r) + ", degree " + std::to_string(d) +
                                 ") needs at least " + std::to_string(guess_min_terms(r, d)) +
                                 " terms, got " + std::to_string(seq.terms.size()));
    }
    const std::size_t cols = (r + 1) * (d + 1);
    const auto lo = seq.first_index() + static_cast<std::int64_t>(r);
    const auto hi = seq.last_index();

    detail::int_matrix m;
    m.reserve(static_cast<std::size_t>(hi - lo + 1));
    for (std::int64_t n = lo; n <= hi; ++n) {
        std::vector<big_int> row(cols);
        for (std::size_t i = 0; i <= r; ++i) {
            big_int v = seq.at(n - static_cast<std::int64_t>(i));
            for (std::size_t j = 0; j <= d; ++j) {
                row[i * (d + 1) + j] = v;
                v *= n;
            }
        }
        m.push_back(std::move(row));
    }

    const auto basis = detail::integer_nullspace(std::move(m), cols);
    if (basis.empty()) {
        return std::nullopt;
    }

    std::vector<std::vector<big_int>> candidates = basis;
    if (basis.size() > 1) {
        std::vector<big_int> sum(cols, 0);
        std::vector<big_int> weighted(cols, 0);
        for (std::size_t b = 0; b < basis.size(); ++b) {
            for (std::size_t k = 0; k < cols; ++k) {
                sum[k] += basis[b][k];
                weighted[k] += basis[b][k] * static_cast<unsigned long>(b + 1);
            }
        }
        candidates.push_back(std::move(sum));
        candidates.push_back(std::move(weighted));
    }

    std::optional<recurrence> best;
    std::vector<big_int> best_key;
    for (const auto& v : candidates) {
        auto rec = detail::recurrence_from_vector(v, r, d);
        if (!rec || !verify(*rec, seq, lo, hi, 1).passed()) {
            continue;
        }
        auto key = detail::flatten(*rec, d);
        if (!best || key < best_key) {
            best = std::move(rec);
            best_key = std::move(key);
        }
    }
    return best;
}

}  // namespace mathar
