#include <catch_amalgamated.hpp>

#include <random>

#include "mathar/poly_parser.hpp"
#include "mathar/recurrence.hpp"
#include "oracles.hpp"

using namespace mathar;

namespace {

sequence first_ten() { return {0, oracle::first_ten()}; }

sequence closed_form_terms(std::int64_t n_max) {
    std::vector<big_int> t;
    for (std::int64_t n = 0; n <= n_max; ++n) {
        t.push_back(oracle::closed_form_direct(static_cast<std::uint64_t>(n)).get_num());
    }
    return {0, std::move(t)};
}

sequence factorials(std::size_t count) {
    std::vector<big_int> t;
    for (std::size_t n = 0; n < count; ++n) {
        t.push_back(oracle::factorial_product(n));
    }
    return {0, std::move(t)};
}

}  // namespace

TEST_CASE("residuals at single indices", "[recurrence]") {
    const auto seq = first_ten();
    CHECK(residual(mathar_recurrence(), seq, 2) == 0);
    CHECK(residual(mathar_recurrence(), seq, 5) == 0);
    CHECK(residual(parse_recurrence("1; -1"), seq, 1) == 6);
    CHECK_THROWS_AS(residual(mathar_recurrence(), seq, 1), index_out_of_range);
    CHECK_THROWS_AS(residual(mathar_recurrence(), seq, 10), index_out_of_range);
}

TEST_CASE("recurrence construction and canonical form", "[recurrence]") {
    CHECK(mathar_recurrence().order() == 2);
    CHECK(mathar_recurrence().max_degree() == 2);
    CHECK(mathar_recurrence().canonical() == mathar_recurrence());
    CHECK(recurrence({poly::constant(2), parse_poly("-4n")}).canonical() ==
          recurrence({poly::constant(1), parse_poly("-2n")}));
    CHECK(recurrence({poly::constant(rat(1, 2)), poly({0, rat(1, 3)})}).canonical() ==
          recurrence({poly::constant(3), parse_poly("2n")}));
    CHECK(recurrence({poly::constant(-1), parse_poly("n")}).canonical() ==
          recurrence({poly::constant(1), parse_poly("-n")}));
    CHECK_THROWS_AS(recurrence({poly::constant(1)}), invalid_recurrence);
    CHECK_THROWS_AS(recurrence({poly(), poly::constant(1)}), invalid_recurrence);
    CHECK_THROWS_AS(recurrence({poly::constant(1), poly()}), invalid_recurrence);
}

TEST_CASE("recurrence display", "[recurrence]") {
    CHECK(to_string(mathar_recurrence()) == "a(n) - (2n+5)*a(n-1) + (n+2)^2*a(n-2) = 0");
    CHECK(to_coefficient_list(mathar_recurrence()) == "1; -2n-5; n^2+4n+4");
    CHECK(parse_recurrence(to_coefficient_list(mathar_recurrence())) == mathar_recurrence());
    CHECK(to_string(parse_recurrence("1; -n")) == "a(n) - n*a(n-1) = 0");
    CHECK(to_string(parse_recurrence("-2; 0; 3n^2+3n")) == "-2*a(n) + 3n(n+1)*a(n-2) = 0");
}

TEST_CASE("verification over ranges", "[recurrence]") {
    const auto big = verify_mathar_to(5000);
    CHECK(big.passed());
    CHECK(big.checks == 4999);
    CHECK(big.n_lo == 2);
    CHECK(big.n_hi == 5000);
    CHECK(to_string(big) == "PASS 4999 checks n=2..5000");

    CHECK(verify_mathar_to(2).checks == 1);
    CHECK(verify_mathar_to(9).checks == 8);

    const auto ten = verify(mathar_recurrence(), first_ten(), 2, 9);
    CHECK(ten.passed());
    CHECK(ten.checks == 8);

    auto corrupted = first_ten();
    corrupted.terms[3] = 343;
    const auto bad = verify(mathar_recurrence(), corrupted, 2, 9);
    CHECK_FALSE(bad.passed());
    REQUIRE(bad.first_failure);
    CHECK(*bad.first_failure == 3);
    // 343 - 11*47 + 25*7
    CHECK(bad.first_failure_residual == 1);
    // a(3) enters the residuals at n = 3, 4, 5.
    CHECK(bad.failures == 3);
    CHECK(to_string(bad) == "FAIL 8 checks n=2..9 (3 failures) first_failure=3 residual=1");

    CHECK_THROWS_AS(verify(mathar_recurrence(), first_ten(), 1, 9), index_out_of_range);
    CHECK_THROWS_AS(verify(mathar_recurrence(), first_ten(), 5, 4), std::invalid_argument);
}

TEST_CASE("verify agrees with pointwise residuals", "[recurrence][property]") {
    std::mt19937_64 rng(11);
    auto seq = closed_form_terms(600);
    for (int k = 0; k < 5; ++k) {
        seq.terms[2 + rng() % 598] += 1 + static_cast<long>(rng() % 3);
    }
    const auto rep = verify(mathar_recurrence(), seq, 2, 600);
    std::size_t failures = 0;
    std::optional<std::int64_t> first;
    for (std::int64_t n = 2; n <= 600; ++n) {
        if (residual(mathar_recurrence(), seq, n) != 0) {
            ++failures;
            if (!first) {
                first = n;
            }
        }
    }
    CHECK(rep.checks == 599);
    CHECK(rep.failures == failures);
    CHECK(rep.first_failure == first);
}

TEST_CASE("parallel verification matches serial", "[recurrence][concurrency]") {
    auto seq = closed_form_terms(3000);
    seq.terms[1777] += 1;
    seq.terms[2500] -= 1;
    const auto serial = verify(mathar_recurrence(), seq, 2, 3000, 1);
    for (unsigned w : {2U, 3U, 8U, 0U}) {
        REQUIRE(verify(mathar_recurrence(), seq, 2, 3000, w) == serial);
    }
    CHECK(serial.first_failure == 1777);
}

TEST_CASE("merge is associative over split ranges", "[recurrence][property]") {
    std::mt19937_64 rng(5);
    auto seq = closed_form_terms(200);
    seq.terms[50] += 1;
    seq.terms[120] += 1;
    const auto whole = verify(mathar_recurrence(), seq, 2, 200, 1);
    for (int trial = 0; trial < 50; ++trial) {
        std::int64_t a = 2 + static_cast<std::int64_t>(rng() % 197);
        std::int64_t b = 2 + static_cast<std::int64_t>(rng() % 197);
        if (a > b) {
            std::swap(a, b);
        }
        if (a == b) {
            continue;
        }
        const auto x = verify(mathar_recurrence(), seq, 2, a, 1);
        const auto y = verify(mathar_recurrence(), seq, a + 1, b, 1);
        const auto z = verify(mathar_recurrence(), seq, b + 1, 200, 1);
        REQUIRE(merge(merge(x, y), z) == merge(x, merge(y, z)));
        REQUIRE(merge(merge(x, y), z) == whole);
        REQUIRE(merge(z, merge(y, x)) == whole);
    }
}

TEST_CASE("unroll", "[recurrence]") {
    const auto seq = unroll(mathar_recurrence(), 0, {1, 7}, 10);
    REQUIRE(seq);
    CHECK(seq->terms == oracle::first_ten());
    CHECK_FALSE(unroll(parse_recurrence("2; -1"), 0, {1}, 3));
    CHECK_FALSE(unroll(parse_recurrence("n-2; 1"), 0, {1}, 5));
    CHECK_THROWS_AS(unroll(mathar_recurrence(), 0, {1}, 5), std::invalid_argument);
}

TEST_CASE("guessing recovers Mathar's recurrence", "[recurrence][guess]") {
    const auto found = guess(closed_form_terms(19), 2, 2);
    REQUIRE(found);
    CHECK(*found == mathar_recurrence());

    const auto from_fixture = guess(closed_form_terms(99), 2, 2);
    REQUIRE(from_fixture);
    CHECK(*from_fixture == mathar_recurrence());

    CHECK(guess_min_terms(2, 2) == 16);
    CHECK_THROWS_AS(guess(closed_form_terms(14), 2, 2), insufficient_terms);
    CHECK_THROWS_AS(guess(closed_form_terms(19), 0, 2), std::invalid_argument);
}

TEST_CASE("guessing simple sequences", "[recurrence][guess]") {
    const auto fact = guess(factorials(20), 1, 1);
    REQUIRE(fact);
    CHECK(*fact == parse_recurrence("1; -n"));

    const sequence zeros{0, std::vector<big_int>(20, 0)};
    const auto z = guess(zeros, 1, 0);
    REQUIRE(z);
    CHECK(verify(*z, zeros, 1, 19).passed());

    // First-order constant-coefficient fits are impossible for 1, 7, 47, ...
    CHECK_FALSE(guess(closed_form_terms(30), 1, 0));
}

TEST_CASE("guess is invariant under scaling the sequence", "[recurrence][guess][property]") {
    const auto base = closed_form_terms(25);
    for (long c : {-3L, 2L, 7L, 1000003L}) {
        sequence scaled = base;
        for (auto& t : scaled.terms) {
            t *= c;
        }
        REQUIRE(guess(scaled, 2, 2) == guess(base, 2, 2));
    }
    sequence shifted = base;
    shifted.offset = 5;
    REQUIRE(guess(shifted, 2, 2));
}

TEST_CASE("over-provisioned degree still yields a valid recurrence", "[recurrence][guess]") {
    const auto found = guess(closed_form_terms(40), 2, 3);
    REQUIRE(found);
    const auto check = closed_form_terms(300);
    const auto rep = verify(*found, check, 2, 300);
    CHECK(rep.passed());
    for (std::int64_t n = 2; n <= 300; ++n) {
        REQUIRE((residual(*found, check, n) == 0) == (residual(mathar_recurrence(), check, n) == 0));
    }
}

TEST_CASE("guess round-trips random recurrences", "[recurrence][guess][property]") {
    std::mt19937_64 rng(31337);
    std::uniform_int_distribution<int> c(-3, 3);
    int recovered = 0;
    int trials = 0;
    while (trials < 60) {
        const std::size_t r = 1 + rng() % 3;
        const std::size_t d = rng() % 4;
        std::vector<poly> coeffs{poly::constant(1)};
        for (std::size_t i = 1; i <= r; ++i) {
            std::vector<rat> p(d + 1);
            for (auto& x : p) {
                x = c(rng);
            }
            coeffs.emplace_back(std::move(p));
        }
        if (coeffs.back().is_zero()) {
            continue;
        }
        const recurrence rec(coeffs);
        std::vector<big_int> init;
        for (std::size_t i = 0; i < r; ++i) {
            init.emplace_back(c(rng) + 4);
        }
        const auto seq = unroll(rec, 0, init, guess_min_terms(r, d) + 8);
        REQUIRE(seq);
        ++trials;
        const auto found = guess(*seq, r, d);
        REQUIRE(found);
        REQUIRE(found->order() == r);
        REQUIRE(verify(*found, *seq, static_cast<std::int64_t>(r), seq->last_index()).passed());
        if (*found == rec.canonical()) {
            ++recovered;
        }
    }
    // The generating recurrence is recovered exactly whenever it is the unique
    // fit; degenerate draws (e.g. eventually zero sequences) may admit others.
    CHECK(recovered >= trials / 2);
}
