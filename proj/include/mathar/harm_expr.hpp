#pragma once

// Expressions linear in shifted harmonic numbers,
//
//     sum_k c_k(n) H_{n+k} + c(n),
//
// with rational-function coefficients, and the rewriting that moves every
// H_{n+k} onto a single base H_{n+s} via H_{m+1} = H_m + 1/(m+1).

#include <cstdint>
#include <cstdlib>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

#include "mathar/exact_arith.hpp"
#include "mathar/poly.hpp"
#include "mathar/recurrence.hpp"

namespace mathar {

inline constexpr int max_harmonic_shift = 64;

class harm_expr {
public:
    using coefficient_map = std::map<int, ratfn>;

    harm_expr() = default;

    /// c * H_{n+k}.
    static harm_expr harm(int shift, const ratfn& c) {
        check_shift(shift);
        harm_expr e;
        if (!c.is_zero()) {
            e.harmonic_.emplace(shift, c);
        }
        return e;
    }

    static harm_expr constant(const ratfn& c) {
        harm_expr e;
        e.rational_ = c;
        return e;
    }

    /// c * h_{n+k} with h_m = 2 H_m - 3.
    static harm_expr h(int shift, const ratfn& c = 1) {
        return harm(shift, ratfn(2) * c) + constant(ratfn(-3) * c);
    }

    const coefficient_map& harmonic_part() const noexcept { return harmonic_; }
    const ratfn& rational_part() const noexcept { return rational_; }

    ratfn coefficient(int shift) const {
        const auto it = harmonic_.find(shift);
        return it == harmonic_.end() ? ratfn() : it->second;
    }

    bool empty() const noexcept { return harmonic_.empty() && rational_.is_zero(); }

    int min_shift() const { return harmonic_.empty() ? 0 : harmonic_.begin()->first; }

    /// Exact value at integer n; needs n + k >= 0 for every shift k present and
    /// no pole of a coefficient at n.
    rat eval(std::int64_t n) const {
        const rat x(n);
        rat sum = rational_.eval(x);
        for (const auto& [k, c] : harmonic_) {
            if (n + k < 0) {
                throw pole_at_evaluation_point("H_{n" + std::string(k < 0 ? "" : "+") + std::to_string(k) +
                                               "} is undefined at n = " + std::to_string(n));
            }
            sum += c.eval(x) * harmonic(static_cast<std::uint64_t>(n + k));
        }
        return sum;
    }

    friend bool operator==(const harm_expr&, const harm_expr&) = default;

    friend harm_expr operator+(harm_expr a, const harm_expr& b) {
        for (const auto& [k, c] : b.harmonic_) {
            a.add_term(k, c);
        }
        a.rational_ += b.rational_;
        return a;
    }

    friend harm_expr operator*(const ratfn& s, harm_expr a) {
        if (s.is_zero()) {
            return {};
        }
        for (auto& [k, c] : a.harmonic_) {
            c = s * c;
        }
        a.rational_ = s * a.rational_;
        return a;
    }

    friend harm_expr operator-(const harm_expr& a) { return ratfn(-1) * a; }
    friend harm_expr operator-(const harm_expr& a, const harm_expr& b) { return a + (-b); }

    harm_expr& operator+=(const harm_expr& o) { return *this = *this + o; }

    /// Adds c * H_{n+k}, dropping the entry if it cancels.
    void add_term(int shift, const ratfn& c) {
        check_shift(shift);
        auto [it, inserted] = harmonic_.try_emplace(shift, c);
        if (!inserted) {
            it->second += c;
        }
        if (it->second.is_zero()) {
            harmonic_.erase(it);
        }
    }

    void add_rational(const ratfn& c) { rational_ += c; }

private:
    static void check_shift(int shift) {
        if (std::abs(shift) > max_harmonic_shift) {
            throw std::out_of_range("harmonic shift " + std::to_string(shift) + " exceeds +/-" +
                                    std::to_string(max_harmonic_shift));
        }
    }

    coefficient_map harmonic_;
    ratfn rational_;
};

inline harm_expr scale(const harm_expr& e, const ratfn& s) { return s * e; }

/// sum_{j=lo..hi} 1/(n+j); zero when lo > hi.
inline ratfn unit_fraction_sum(int lo, int hi) {
    ratfn out;
    for (int j = lo; j <= hi; ++j) {
        out += ratfn(poly::constant(1), poly::linear(1, j));
    }
    return out;
}

/// Rewrites every H_{n+k} as H_{n+s} plus or minus a sum of 1/(n+j). Preserves
/// the value wherever n + min(k, s) >= 0.
inline harm_expr normalize(const harm_expr& e, int base) {
    harm_expr out = harm_expr::constant(e.rational_part());
    for (const auto& [k, c] : e.harmonic_part()) {
        out.add_term(base, c);
        if (k > base) {
            out.add_rational(c * unit_fraction_sum(base + 1, k));
        } else if (k < base) {
            out.add_rational(-(c * unit_fraction_sum(k + 1, base)));
        }
    }
    return out;
}

/// True iff the expression normalized to its smallest shift is 0*H + 0.
inline bool is_zero(const harm_expr& e) {
    const harm_expr n = normalize(e, e.min_shift());
    return n.harmonic_part().empty() && n.rational_part().is_zero();
}

/// (n+3) h_{n+3} - (2n+5) h_{n+2} + (n+2) h_{n+1}.
inline harm_expr mathar_bracket() {
    return harm_expr::h(3, poly::linear(1, 3)) - harm_expr::h(2, poly::linear(2, 5)) +
           harm_expr::h(1, poly::linear(1, 2));
}

/// (n-i+3)!/(n+1)! as a polynomial: (n+2)(n+3) for i = 0, (n+2) for i = 1, 1 for
/// i = 2.
inline poly closed_form_factorial_ratio(std::size_t i) {
    if (i > 2) {
        throw unsupported_order("(n-" + std::to_string(i) + "+3)!/(n+1)! is not a polynomial in n");
    }
    poly out = poly::constant(1);
    for (int j = 2; j <= 3 - static_cast<int>(i); ++j) {
        out *= poly::linear(1, j);
    }
    return out;
}

/// Substitutes a(m) = (m+3)!/4 * h_{m+3} into sum_i p_i(n) a(n-i) and divides
/// by (n+1)!/4, giving sum_i p_i(n) * (n-i+3)!/(n+1)! * h_{n-i+3}.
inline harm_expr reduce_lhs_via_closed_form(const recurrence& rec) {
    if (rec.order() > 2) {
        throw unsupported_order("closed-form reduction handles order <= 2, got order " +
                                std::to_string(rec.order()));
    }
    harm_expr out;
    for (std::size_t i = 0; i <= rec.order(); ++i) {
        const poly c = rec[i] * closed_form_factorial_ratio(i);
        if (!c.is_zero()) {
            out += harm_expr::h(3 - static_cast<int>(i), c);
        }
    }
    return out;
}

/// The same expression written as sum_k b_k h_{n+k} + remainder, with
/// b_k = c_k / 2 and remainder = c + (3/2) sum_k c_k.
struct h_basis_view {
    std::map<int, ratfn> coefficients;
    ratfn remainder;
};

inline h_basis_view to_h_basis(const harm_expr& e) {
    h_basis_view out;
    out.remainder = e.rational_part();
    for (const auto& [k, c] : e.harmonic_part()) {
        out.coefficients.emplace(k, ratfn(rat(1, 2)) * c);
        out.remainder += ratfn(rat(3, 2)) * c;
    }
    return out;
}

/// Monic gcd of every polynomial coefficient numerator and the rational part;
/// 1 if some coefficient is not a polynomial.
inline poly common_polynomial_factor(const harm_expr& e) {
    poly g;
    auto absorb = [&g](const ratfn& c) {
        if (!c.is_polynomial()) {
            return false;
        }
        g = gcd(g, c.num());
        return true;
    };
    for (const auto& [k, c] : e.harmonic_part()) {
        if (!absorb(c)) {
            return poly::constant(1);
        }
    }
    if (!absorb(e.rational_part()) || g.is_zero()) {
        return poly::constant(1);
    }
    return g;
}

/// "2(n+3)/(n+2)*H(n+3) + ..." style rendering; symbol is "H" or "h".
inline std::string to_string(const std::map<int, ratfn>& coeffs, const ratfn& rest,
                             const std::string& symbol = "H") {
    std::string out;
    auto shift_name = [&symbol](int k) {
        if (k == 0) {
            return symbol + "(n)";
        }
        return symbol + "(n" + (k > 0 ? "+" : "") + std::to_string(k) + ")";
    };
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        std::string c = to_string(it->second);
        if (!out.empty()) {
            out += " + ";
        }
        out += "(" + c + ")*" + shift_name(it->first);
    }
    if (!out.empty()) {
        out += " + ";
    }
    return out + "(" + to_string(rest) + ")";
}

inline std::string to_string(const harm_expr& e) {
    return to_string(e.harmonic_part(), e.rational_part(), "H");
}

}  // namespace mathar
