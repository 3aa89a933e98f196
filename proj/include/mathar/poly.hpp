#pragma once

// Dense univariate polynomials in n over the rationals, and reduced rational
// functions built from them.

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "mathar/exact_arith.hpp"

namespace mathar {

/// Ascending coefficients, no trailing zeros. The zero polynomial has no
/// coefficients and degree -1.
class poly {
public:
    poly() = default;

    explicit poly(std::vector<rat> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    poly(std::initializer_list<rat> coeffs) : coeffs_(coeffs) { trim(); }

    /// Constant polynomial.
    static poly constant(const rat& c) { return poly({c}); }

    /// The indeterminate n.
    static poly n() { return poly({0, 1}); }

    /// a*n + b.
    static poly linear(const rat& a, const rat& b) { return poly({b, a}); }

    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    const std::vector<rat>& coefficients() const noexcept { return coeffs_; }

    /// Coefficient of n^k, zero beyond the degree.
    rat operator[](std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : rat(0); }

    rat leading() const { return is_zero() ? rat(0) : coeffs_.back(); }

    rat eval(const rat& x) const {
        rat acc = 0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
            acc = acc * x + *it;
        }
        return acc;
    }

    bool has_integer_coefficients() const {
        return std::all_of(coeffs_.begin(), coeffs_.end(), [](const rat& c) { return is_integer(c); });
    }

    friend bool operator==(const poly&, const poly&) = default;

    friend poly operator+(const poly& a, const poly& b) {
        std::vector<rat> out(std::max(a.coeffs_.size(), b.coeffs_.size()));
        for (std::size_t k = 0; k < out.size(); ++k) {
            out[k] = a[k] + b[k];
        }
        return poly(std::move(out));
    }

    friend poly operator-(const poly& a) {
        std::vector<rat> out(a.coeffs_);
        for (auto& c : out) {
            c = -c;
        }
        return poly(std::move(out));
    }

    friend poly operator-(const poly& a, const poly& b) { return a + (-b); }

    friend poly operator*(const poly& a, const poly& b) {
        if (a.is_zero() || b.is_zero()) {
            return {};
        }
        std::vector<rat> out(a.coeffs_.size() + b.coeffs_.size() - 1);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
                out[i + j] += a.coeffs_[i] * b.coeffs_[j];
            }
        }
        return poly(std::move(out));
    }

    friend poly operator*(const rat& c, const poly& a) {
        std::vector<rat> out(a.coeffs_);
        for (auto& x : out) {
            x *= c;
        }
        return poly(std::move(out));
    }

    poly& operator+=(const poly& o) { return *this = *this + o; }
    poly& operator-=(const poly& o) { return *this = *this - o; }
    poly& operator*=(const poly& o) { return *this = *this * o; }

    poly pow(unsigned e) const {
        poly out = constant(1);
        for (unsigned i = 0; i < e; ++i) {
            out *= *this;
        }
        return out;
    }

    /// p(n + s).
    poly shifted(const rat& s) const {
        poly out;
        const poly base = linear(1, s);
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
            out = out * base + constant(*it);
        }
        return out;
    }

    /// Scaled to leading coefficient 1; zero stays zero.
    poly monic() const {
        if (is_zero()) {
            return {};
        }
        return rat(1 / leading()) * *this;
    }

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0) {
            coeffs_.pop_back();
        }
    }

    std::vector<rat> coeffs_;
};

/// Euclidean division: a = q*b + r with deg r < deg b.
inline std::pair<poly, poly> divmod(const poly& a, const poly& b) {
    if (b.is_zero()) {
        throw division_by_zero_poly();
    }
    std::vector<rat> rem = a.coefficients();
    const int db = b.degree();
    const rat lead = b.leading();
    if (a.degree() < db) {
        return {poly{}, a};
    }
    std::vector<rat> quot(static_cast<std::size_t>(a.degree() - db + 1));
    const auto& bc = b.coefficients();
    for (int k = a.degree() - db; k >= 0; --k) {
        const rat q = rem[static_cast<std::size_t>(k + db)] / lead;
        quot[static_cast<std::size_t>(k)] = q;
        if (q == 0) {
            continue;
        }
        for (int j = 0; j <= db; ++j) {
            rem[static_cast<std::size_t>(k + j)] -= q * bc[static_cast<std::size_t>(j)];
        }
    }
    return {poly(std::move(quot)), poly(std::move(rem))};
}

/// Monic greatest common divisor; gcd(0, 0) = 0.
inline poly gcd(poly a, poly b) {
    while (!b.is_zero()) {
        poly r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

/// Least common multiple of the coefficient denominators.
inline big_int denominator_lcm(const poly& p) {
    big_int l = 1;
    for (const auto& c : p.coefficients()) {
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    }
    return l;
}

/// gcd of the numerators (nonnegative); 0 for the zero polynomial.
inline big_int integer_content(const poly& p) {
    big_int g = 0;
    for (const auto& c : p.coefficients()) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num_mpz_t());
    }
    return g;
}

namespace detail {

inline std::string coeff_prefix(const rat& c, bool has_var) {
    if (!has_var) {
        return to_string(c);
    }
    if (c == 1) {
        return "";
    }
    if (c == -1) {
        return "-";
    }
    if (is_integer(c)) {
        return to_string(c);
    }
    return "(" + to_string(c) + ")";
}

}  // namespace detail

/// Expanded form, highest degree first: "n^2+4n+4", "2n+5", "-n", "0".
inline std::string to_string(const poly& p) {
    if (p.is_zero()) {
        return "0";
    }
    std::string out;
    const auto& c = p.coefficients();
    for (int k = p.degree(); k >= 0; --k) {
        const rat& a = c[static_cast<std::size_t>(k)];
        if (a == 0) {
            continue;
        }
        std::string term = detail::coeff_prefix(a, k > 0);
        if (k >= 1) {
            term += "n";
        }
        if (k >= 2) {
            term += "^" + std::to_string(k);
        }
        if (!out.empty() && term.front() != '-') {
            out += "+";
        }
        out += term;
    }
    return out;
}

namespace detail {

// Integer roots of an integer polynomial found by trial of the divisors of the
// lowest nonzero coefficient. Gives up (returns nothing) on large constants.
inline std::vector<big_int> integer_root_candidates(const poly& p) {
    std::vector<big_int> out;
    std::size_t low = 0;
    while (low < p.coefficients().size() && p.coefficients()[low] == 0) {
        ++low;
    }
    big_int c = abs(p.coefficients()[low].get_num());
    if (c > 1000000) {
        return out;
    }
    const long limit = c.get_si();
    for (long d = 1; d <= limit; ++d) {
        if (limit % d == 0) {
            out.emplace_back(d);
            out.emplace_back(-d);
        }
    }
    return out;
}

inline std::string linear_factor(const big_int& root) {
    if (root == 0) {
        return "n";
    }
    return root < 0 ? "n+" + to_string(big_int(-root)) : "n-" + to_string(root);
}

}  // namespace detail

/// Factored display of a polynomial with integer coefficients: integer content
/// times powers of linear factors (n - r) for integer roots r, times whatever is
/// left. "(n+2)^2", "-(2n+5)", "3n(n+1)". Falls back to to_string otherwise.
inline std::string to_factored_string(const poly& p) {
    if (p.degree() <= 0 || !p.has_integer_coefficients()) {
        return to_string(p);
    }
    big_int content = integer_content(p);
    if (p.leading() < 0) {
        content = -content;
    }
    // Primitive with positive leading coefficient; stays integral after
    // dividing out monic linear factors.
    poly rest = rat(1) / rat(content) * p;

    std::vector<std::string> pieces;
    auto emit = [&pieces](const big_int& root, unsigned mult) {
        std::string f = root == 0 ? "n" : "(" + detail::linear_factor(root) + ")";
        if (mult > 1) {
            f += "^" + std::to_string(mult);
        }
        pieces.push_back(std::move(f));
    };

    unsigned zero_mult = 0;
    while (rest.degree() > 0 && rest[0] == 0) {
        rest = divmod(rest, poly::n()).first;
        ++zero_mult;
    }
    if (zero_mult > 0) {
        emit(0, zero_mult);
    }
    if (rest.degree() > 0) {
        for (const auto& r : detail::integer_root_candidates(rest)) {
            unsigned mult = 0;
            while (rest.degree() > 0 && rest.eval(rat(r)) == 0) {
                rest = divmod(rest, poly::linear(1, -rat(r))).first;
                ++mult;
            }
            if (mult > 0) {
                emit(r, mult);
            }
        }
    }
    if (rest.degree() > 0) {
        pieces.push_back("(" + to_string(rest) + ")");
    }

    std::string body;
    for (const auto& piece : pieces) {
        body += piece;
    }
    // A lone parenthesized factor needs no parentheses.
    if (pieces.size() == 1 && content == 1 && body.front() == '(' && body.back() == ')') {
        body = body.substr(1, body.size() - 2);
    }
    if (content == 1) {
        return body;
    }
    if (content == -1) {
        return "-" + body;
    }
    return to_string(content) + body;
}

/// Reduced rational function num/den with den monic and gcd(num, den) = 1.
/// Zero is 0/1.
class ratfn {
public:
    ratfn() : den_(poly::constant(1)) {}

    ratfn(poly num) : num_(std::move(num)), den_(poly::constant(1)) {}  // NOLINT(implicit)

    ratfn(const rat& c) : ratfn(poly::constant(c)) {}  // NOLINT(implicit)

    ratfn(int c) : ratfn(rat(c)) {}  // NOLINT(implicit)

    ratfn(poly num, poly den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

    const poly& num() const noexcept { return num_; }
    const poly& den() const noexcept { return den_; }
    bool is_zero() const noexcept { return num_.is_zero(); }
    bool is_polynomial() const noexcept { return den_.degree() == 0; }

    /// Value at x; throws pole_at_evaluation_point when den(x) = 0.
    rat eval(const rat& x) const {
        const rat d = den_.eval(x);
        if (d == 0) {
            throw pole_at_evaluation_point("rational function " + to_string(*this) +
                                           " has a pole at n = " + mathar::to_string(x));
        }
        return num_.eval(x) / d;
    }

    friend bool operator==(const ratfn&, const ratfn&) = default;

    friend ratfn operator+(const ratfn& a, const ratfn& b) {
        if (a.den_ == b.den_) {
            return {a.num_ + b.num_, a.den_};
        }
        return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
    }

    friend ratfn operator-(const ratfn& a) { return {-a.num_, a.den_}; }
    friend ratfn operator-(const ratfn& a, const ratfn& b) { return a + (-b); }

    friend ratfn operator*(const ratfn& a, const ratfn& b) {
        return {a.num_ * b.num_, a.den_ * b.den_};
    }

    friend ratfn operator/(const ratfn& a, const ratfn& b) {
        if (b.is_zero()) {
            throw division_by_zero_poly();
        }
        return {a.num_ * b.den_, a.den_ * b.num_};
    }

    ratfn& operator+=(const ratfn& o) { return *this = *this + o; }
    ratfn& operator-=(const ratfn& o) { return *this = *this - o; }
    ratfn& operator*=(const ratfn& o) { return *this = *this * o; }

    friend std::string to_string(const ratfn& f) {
        if (f.is_polynomial()) {
            return mathar::to_string(f.num_);
        }
        auto wrap = [](const poly& p) {
            const auto s = mathar::to_string(p);
            return p.coefficients().size() > 1 ? "(" + s + ")" : s;
        };
        return wrap(f.num_) + "/" + wrap(f.den_);
    }

private:
    void normalize() {
        if (den_.is_zero()) {
            throw division_by_zero_poly();
        }
        if (num_.is_zero()) {
            den_ = poly::constant(1);
            return;
        }
        const poly g = gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = divmod(num_, g).first;
            den_ = divmod(den_, g).first;
        }
        const rat lead = den_.leading();
        if (lead != 1) {
            num_ = rat(1 / lead) * num_;
            den_ = den_.monic();
        }
    }

    poly num_;
    poly den_;
};

}  // namespace mathar
