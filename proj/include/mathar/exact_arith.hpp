#pragma once

// Exact integers and rationals, harmonic numbers, and the harmonic-number
// closed form of A001711:
//
//     a(n) = (n+3)!/4 * (2*H_{n+3} - 3)
//
// All arithmetic is done with GMP; mpq_class results are canonical (reduced,
// positive denominator) after every arithmetic operation.

#include <cstdint>
#include <mutex>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "mathar/errors.hpp"

namespace mathar {

using big_int = mpz_class;
using rat = mpq_class;

/// Builds num/den in canonical form. den must be nonzero.
inline rat make_rat(const big_int& num, const big_int& den = 1) {
    if (den == 0) {
        throw std::domain_error("rational with zero denominator");
    }
    rat r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_integer(const rat& r) { return r.get_den() == 1; }

inline std::string to_string(const big_int& v) { return v.get_str(); }

/// "p/q", or just "p" when q = 1.
inline std::string to_string(const rat& r) {
    return is_integer(r) ? r.get_num().get_str() : r.get_str();
}

inline big_int factorial(std::uint64_t m) {
    big_int out;
    mpz_fac_ui(out.get_mpz_t(), m);
    return out;
}

/// Monotone cache of H_0, H_1, ..., H_max. Extending from H_{m-1} to H_m costs
/// one rational addition. Safe to share between threads.
class harmonic_table {
public:
    harmonic_table() : values_{rat(0)} {}

    rat operator()(std::uint64_t m) {
        std::lock_guard lock(mutex_);
        while (values_.size() <= m) {
            const auto k = values_.size();
            values_.push_back(values_.back() + rat(1, k));
        }
        return values_[m];
    }

    std::uint64_t largest_cached() const {
        std::lock_guard lock(mutex_);
        return values_.size() - 1;
    }

private:
    mutable std::mutex mutex_;
    std::vector<rat> values_;
};

inline harmonic_table& shared_harmonic_table() {
    static harmonic_table table;
    return table;
}

/// H_m = 1 + 1/2 + ... + 1/m, with H_0 = 0.
inline rat harmonic(std::uint64_t m) { return shared_harmonic_table()(m); }

namespace detail {

// 4*a(n) = (n+3)! * (2 H_{n+3} - 3), then an exact division by 4.
inline big_int quarter_or_throw(const rat& four_a, std::uint64_t n) {
    const rat a = four_a / 4;
    if (!is_integer(a)) {
        throw non_integer_result("closed form is not integral at n = " + std::to_string(n) +
                                 ": " + to_string(a));
    }
    return a.get_num();
}

}  // namespace detail

/// A001711 via the harmonic closed form.
inline big_int a_closed(std::uint64_t n) {
    const rat four_a = rat(factorial(n + 3)) * (2 * harmonic(n + 3) - 3);
    return detail::quarter_or_throw(four_a, n);
}

/// a_closed(n_lo), ..., a_closed(n_hi), using a running factorial and a running
/// harmonic sum so the whole range costs O(n_hi) big-number operations.
inline std::vector<big_int> a_closed_range(std::uint64_t n_lo, std::uint64_t n_hi) {
    if (n_lo > n_hi) {
        throw std::invalid_argument("a_closed_range: n_lo > n_hi");
    }
    std::vector<big_int> out;
    out.reserve(n_hi - n_lo + 1);

    big_int fact = factorial(n_lo + 3);
    rat h = harmonic(n_lo + 3);
    for (std::uint64_t n = n_lo;; ++n) {
        out.push_back(detail::quarter_or_throw(rat(fact) * (2 * h - 3), n));
        if (n == n_hi) {
            break;
        }
        fact *= n + 4;
        h += rat(1, n + 4);
    }
    return out;
}

}  // namespace mathar
