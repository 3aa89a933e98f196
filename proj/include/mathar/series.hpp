#pragma once

// Truncated formal power series over the rationals.
//
// A series of precision N stores the coefficients of x^0 .. x^{N-1}. Binary
// operations truncate to the smaller operand precision; derivative() loses one
// coefficient.

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mathar/exact_arith.hpp"

namespace mathar {

class series {
public:
    /// Zero series of the given precision.
    explicit series(std::size_t precision) : coeffs_(precision) {
        if (precision == 0) {
            throw std::invalid_argument("series precision must be positive");
        }
    }

    explicit series(std::vector<rat> coeffs) : coeffs_(std::move(coeffs)) {
        if (coeffs_.empty()) {
            throw std::invalid_argument("series precision must be positive");
        }
    }

    series(std::initializer_list<rat> coeffs) : series(std::vector<rat>(coeffs)) {}

    std::size_t precision() const noexcept { return coeffs_.size(); }

    const std::vector<rat>& coefficients() const noexcept { return coeffs_; }

    /// Coefficient of x^k; throws precision_exceeded when k >= precision().
    const rat& coeff(std::size_t k) const {
        if (k >= coeffs_.size()) {
            throw precision_exceeded("coefficient x^" + std::to_string(k) +
                                     " requested from a series of precision " +
                                     std::to_string(coeffs_.size()));
        }
        return coeffs_[k];
    }

    rat& operator[](std::size_t k) { return coeffs_[k]; }
    const rat& operator[](std::size_t k) const { return coeffs_[k]; }

    bool is_zero() const {
        return std::all_of(coeffs_.begin(), coeffs_.end(), [](const rat& c) { return c == 0; });
    }

    /// Same series cut down to the first p coefficients (p <= precision()).
    series truncated(std::size_t p) const {
        if (p == 0 || p > coeffs_.size()) {
            throw precision_exceeded("cannot truncate precision " + std::to_string(coeffs_.size()) +
                                     " to " + std::to_string(p));
        }
        return series(std::vector<rat>(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(p)));
    }

    /// Coefficient-wise equality up to the shared precision.
    friend bool operator==(const series& a, const series& b) {
        const auto p = std::min(a.precision(), b.precision());
        return std::equal(a.coeffs_.begin(), a.coeffs_.begin() + static_cast<std::ptrdiff_t>(p),
                          b.coeffs_.begin());
    }

private:
    std::vector<rat> coeffs_;
};

inline series add(const series& a, const series& b) {
    series out(std::min(a.precision(), b.precision()));
    for (std::size_t k = 0; k < out.precision(); ++k) {
        out[k] = a[k] + b[k];
    }
    return out;
}

inline series sub(const series& a, const series& b) {
    series out(std::min(a.precision(), b.precision()));
    for (std::size_t k = 0; k < out.precision(); ++k) {
        out[k] = a[k] - b[k];
    }
    return out;
}

inline series scale(const series& a, const rat& c) {
    series out(a.precision());
    for (std::size_t k = 0; k < out.precision(); ++k) {
        out[k] = a[k] * c;
    }
    return out;
}

/// Truncated Cauchy product.
inline series mul(const series& a, const series& b) {
    series out(std::min(a.precision(), b.precision()));
    const auto p = out.precision();
    for (std::size_t i = 0; i < p; ++i) {
        if (a[i] == 0) {
            continue;
        }
        for (std::size_t j = 0; i + j < p; ++j) {
            out[i + j] += a[i] * b[j];
        }
    }
    return out;
}

inline series derivative(const series& a) {
    if (a.precision() < 2) {
        throw precision_exceeded("derivative needs a series of precision >= 2");
    }
    series out(a.precision() - 1);
    for (std::size_t k = 0; k < out.precision(); ++k) {
        out[k] = a[k + 1] * (k + 1);
    }
    return out;
}

inline series operator+(const series& a, const series& b) { return add(a, b); }
inline series operator-(const series& a, const series& b) { return sub(a, b); }
inline series operator*(const series& a, const series& b) { return mul(a, b); }
inline series operator*(const rat& c, const series& a) { return scale(a, c); }

/// Polynomial c_0 + c_1 x + ... viewed as a series of precision N.
inline series polynomial_series(std::initializer_list<rat> coeffs, std::size_t n) {
    series out(n);
    std::size_t k = 0;
    for (const auto& c : coeffs) {
        if (k < n) {
            out[k] = c;
        }
        ++k;
    }
    return out;
}

/// -log(1-x) = sum_{m>=1} x^m / m.
inline series log_one_minus_neg(std::size_t n) {
    series out(n);
    for (std::size_t m = 1; m < n; ++m) {
        out[m] = rat(1, m);
    }
    return out;
}

/// (1-x)^{-k}: coefficient of x^j is binomial(j+k-1, k-1).
inline series inv_one_minus_pow(unsigned k, std::size_t n) {
    if (k == 0) {
        throw std::invalid_argument("inv_one_minus_pow: k must be positive");
    }
    series out(n);
    big_int b;
    for (std::size_t j = 0; j < n; ++j) {
        mpz_bin_uiui(b.get_mpz_t(), j + k - 1, k - 1);
        out[j] = b;
    }
    return out;
}

/// phi(x) = -log(1-x) / (1-x)^3.
inline series egf_phi(std::size_t n) { return mul(log_one_minus_neg(n), inv_one_minus_pow(3, n)); }

/// phi'(x) = (1 - 3 log(1-x)) / (1-x)^4, built from the closed form rather than
/// by differentiating egf_phi.
inline series egf_phi_prime(std::size_t n) {
    series numerator = scale(log_one_minus_neg(n), 3);
    numerator[0] += 1;
    return mul(numerator, inv_one_minus_pow(4, n));
}

/// k! * [x^k] f(x) for every k below the precision of f, each required to be
/// an integer.
inline std::vector<big_int> egf_terms_from(const series& phi1) {
    const auto n = phi1.precision();
    std::vector<big_int> out;
    out.reserve(n);
    big_int fact = 1;
    for (std::size_t k = 0; k < n; ++k) {
        if (k > 0) {
            fact *= k;
        }
        const rat term = phi1[k] * fact;
        if (!is_integer(term)) {
            throw non_integer_result("EGF coefficient " + std::to_string(k) + " times " +
                                     std::to_string(k) + "! is " + to_string(term));
        }
        out.push_back(term.get_num());
    }
    return out;
}

/// n! * [x^n] phi'(x) for n = 0 .. N-1; these are the terms of A001711.
inline std::vector<big_int> egf_terms(std::size_t n) { return egf_terms_from(egf_phi_prime(n)); }

/// Coefficients of c2 (1-x)^2 y'' + c1 (1-x) y' + c0 y.
struct ode_coefficients {
    rat second = 1;
    rat first = -9;
    rat zeroth = 16;
};

/// Left-hand side of (1-x)^2 y'' - 9 (1-x) y' + 16 y for the EGF
/// y = phi'(x) = (1 - 3 log(1-x))/(1-x)^4 truncated to N terms. The result has
/// precision N-2 and should be identically zero. (phi itself does not satisfy
/// this equation; its residual is (-2 - log(1-x))/(1-x)^3.)
inline series ode_residual(std::size_t n, const ode_coefficients& c = {}) {
    if (n < 3) {
        throw std::invalid_argument("ode_residual needs N >= 3");
    }
    const series y = egf_phi_prime(n);
    const series d1 = derivative(y);
    const series d2 = derivative(d1);
    const auto p = d2.precision();

    const series one_minus_x = polynomial_series({1, -1}, p);
    const series one_minus_x_sq = polynomial_series({1, -2, 1}, p);

    return scale(one_minus_x_sq * d2, c.second) + scale(one_minus_x * d1, c.first) + scale(y, c.zeroth);
}

}  // namespace mathar
