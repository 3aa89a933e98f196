#pragma once

// Independent reference computations for the tests. Nothing here calls into
// the code under test beyond the GMP scalar types.

#include <cstdint>
#include <vector>

#include <gmpxx.h>

namespace oracle {

/// 1 + 1/2 + ... + 1/m by direct summation, no caching.
inline mpq_class harmonic_sum(std::uint64_t m) {
    mpq_class s = 0;
    for (std::uint64_t k = 1; k <= m; ++k) {
        s += mpq_class(1, k);
    }
    return s;
}

inline mpz_class factorial_product(std::uint64_t m) {
    mpz_class p = 1;
    for (std::uint64_t k = 2; k <= m; ++k) {
        p *= k;
    }
    return p;
}

/// Row j of Pascal's triangle built by additions only; binomial(j, i).
inline std::vector<std::vector<mpz_class>> pascal(std::size_t rows) {
    std::vector<std::vector<mpz_class>> t(rows);
    for (std::size_t j = 0; j < rows; ++j) {
        t[j].assign(j + 1, 1);
        for (std::size_t i = 1; i < j; ++i) {
            t[j][i] = t[j - 1][i - 1] + t[j - 1][i];
        }
    }
    return t;
}

/// Coefficient list of (1-x)^{-k} through x^{n-1}: binomial(j+k-1, k-1).
inline std::vector<mpq_class> inv_one_minus_pow(unsigned k, std::size_t n) {
    const auto t = pascal(n + k);
    std::vector<mpq_class> out(n);
    for (std::size_t j = 0; j < n; ++j) {
        out[j] = t[j + k - 1][k - 1];
    }
    return out;
}

/// Plain O(n^2) Cauchy product of coefficient lists truncated to n terms.
inline std::vector<mpq_class> cauchy(const std::vector<mpq_class>& a, const std::vector<mpq_class>& b,
                                     std::size_t n) {
    std::vector<mpq_class> out(n, 0);
    for (std::size_t i = 0; i < n && i < a.size(); ++i) {
        for (std::size_t j = 0; i + j < n && j < b.size(); ++j) {
            out[i + j] += a[i] * b[j];
        }
    }
    return out;
}

/// A001711 terms a(0), ..., a(9) as listed on the sequence page.
inline const std::vector<mpz_class>& first_ten() {
    static const std::vector<mpz_class> v = {1,      7,       47,       342,      2754,
                                             24552,  241128,  2592720,  30334320, 383970240};
    return v;
}

/// (n+3)! (2 H_{n+3} - 3) / 4 straight from the definition.
inline mpq_class closed_form_direct(std::uint64_t n) {
    return mpq_class(factorial_product(n + 3)) * (2 * harmonic_sum(n + 3) - 3) / 4;
}

}  // namespace oracle
