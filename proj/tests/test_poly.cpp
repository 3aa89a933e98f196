#include <catch_amalgamated.hpp>

#include <random>

#include "mathar/poly.hpp"
#include "mathar/poly_parser.hpp"

using namespace mathar;

namespace {

const poly n = poly::n();

poly random_poly(std::mt19937_64& rng, int max_degree) {
    std::uniform_int_distribution<int> coef(-6, 6);
    std::uniform_int_distribution<int> deg(0, max_degree);
    std::vector<rat> c(static_cast<std::size_t>(deg(rng)) + 1);
    for (auto& x : c) {
        x = coef(rng);
    }
    return poly(std::move(c));
}

}  // namespace

TEST_CASE("polynomial canonical form", "[poly]") {
    CHECK(poly({1, 2, 0, 0}).degree() == 1);
    CHECK(poly({0, 0}).is_zero());
    CHECK(poly().degree() == -1);
    CHECK(poly().coefficients().empty());
}

TEST_CASE("the collapsed harmonic coefficient is the zero polynomial", "[poly]") {
    const poly sum = (n + poly::constant(3)) - (2 * n + poly::constant(5)) + (n + poly::constant(2));
    CHECK(sum.is_zero());
    CHECK(sum == poly());
}

TEST_CASE("evaluation", "[poly]") {
    const poly sq = (n + poly::constant(2)).pow(2);
    CHECK(sq.eval(3) == 25);
    CHECK(sq.eval(rat(-1, 2)) == rat(9, 4));
    CHECK(poly().eval(7) == 0);
}

TEST_CASE("division and gcd", "[poly]") {
    const poly a = parse_poly("n^2+3n+2");
    const poly b = parse_poly("n+1");
    const auto [q, r] = divmod(a, b);
    CHECK(q == parse_poly("n+2"));
    CHECK(r.is_zero());
    CHECK(gcd(parse_poly("2n^2+6n+4"), parse_poly("3n^2+3n")) == parse_poly("n+1"));
    CHECK(gcd(poly(), poly()).is_zero());
    CHECK_THROWS_AS(divmod(a, poly()), division_by_zero_poly);
}

TEST_CASE("divmod reconstructs the dividend", "[poly][property]") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const poly a = random_poly(rng, 6);
        poly b = random_poly(rng, 3);
        if (b.is_zero()) {
            continue;
        }
        const auto [q, r] = divmod(a, b);
        REQUIRE(q * b + r == a);
        REQUIRE(r.degree() < b.degree());
        const poly g = gcd(a, b);
        if (!g.is_zero()) {
            REQUIRE(divmod(a, g).second.is_zero());
            REQUIRE(divmod(b, g).second.is_zero());
        }
    }
}

TEST_CASE("rational functions normalize", "[ratfn]") {
    const ratfn f(parse_poly("n^2+3n+2"), parse_poly("n+1"));
    CHECK(f.num() == parse_poly("n+2"));
    CHECK(f.den() == poly::constant(1));
    CHECK(f.is_polynomial());

    const ratfn g(parse_poly("4"), parse_poly("2n+6"));
    CHECK(g.den() == parse_poly("n+3"));
    CHECK(g.num() == poly::constant(2));

    CHECK(ratfn(poly(), parse_poly("n+5")).den() == poly::constant(1));
    CHECK_THROWS_AS(ratfn(poly::constant(1), poly()), division_by_zero_poly);
    CHECK_THROWS_AS(ratfn(1) / ratfn(), division_by_zero_poly);
}

TEST_CASE("rational function arithmetic", "[ratfn]") {
    const ratfn a(poly::constant(1), parse_poly("n+2"));
    const ratfn b(poly::constant(1), parse_poly("n+3"));
    // 1/(n+2) - 1/(n+3) = 1/((n+2)(n+3))
    CHECK(a - b == ratfn(poly::constant(1), parse_poly("n^2+5n+6")));
    CHECK(a * ratfn(parse_poly("n+2")) == ratfn(1));
    CHECK((a / b) == ratfn(parse_poly("n+3"), parse_poly("n+2")));
    CHECK((a + b).eval(0) == rat(5, 6));
    CHECK_THROWS_AS(a.eval(-2), pole_at_evaluation_point);
}

TEST_CASE("ratfn evaluation is a homomorphism", "[ratfn][property]") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        const poly p1 = random_poly(rng, 3);
        const poly q1 = random_poly(rng, 2);
        const poly p2 = random_poly(rng, 3);
        const poly q2 = random_poly(rng, 2);
        if (q1.is_zero() || q2.is_zero()) {
            continue;
        }
        const ratfn f(p1, q1);
        const ratfn g(p2, q2);
        const rat x = static_cast<long>(rng() % 41) - 20;
        if (q1.eval(x) == 0 || q2.eval(x) == 0) {
            continue;
        }
        REQUIRE((f + g).eval(x) == f.eval(x) + g.eval(x));
        REQUIRE((f * g).eval(x) == f.eval(x) * g.eval(x));
        REQUIRE((f - g).eval(x) == f.eval(x) - g.eval(x));
        REQUIRE(f.den().leading() == 1);
        REQUIRE(gcd(f.num(), f.den()).degree() <= 0);
    }
}

TEST_CASE("polynomial display", "[poly]") {
    CHECK(to_string(parse_poly("(n+2)^2")) == "n^2+4n+4");
    CHECK(to_string(parse_poly("-2n-5")) == "-2n-5");
    CHECK(to_string(poly()) == "0");
    CHECK(to_string(poly({rat(1, 2), rat(-1, 3)})) == "(-1/3)n+1/2");
    CHECK(to_factored_string(parse_poly("n^2+4n+4")) == "(n+2)^2");
    CHECK(to_factored_string(parse_poly("2n+5")) == "2n+5");
    CHECK(to_factored_string(parse_poly("-2n-5")) == "-(2n+5)");
    CHECK(to_factored_string(parse_poly("n^2+5n+6")) == "(n+2)(n+3)");
    CHECK(to_factored_string(parse_poly("3n^2+3n")) == "3n(n+1)");
    CHECK(to_factored_string(parse_poly("n")) == "n");
    CHECK(to_factored_string(parse_poly("-n")) == "-n");
    CHECK(to_factored_string(parse_poly("n^2+1")) == "n^2+1");
    CHECK(to_factored_string(parse_poly("7")) == "7");
}

TEST_CASE("factored display round-trips through the parser", "[poly][property]") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        const poly p = random_poly(rng, 4);
        REQUIRE(parse_poly(to_factored_string(p)) == p);
        REQUIRE(parse_poly(to_string(p)) == p);
    }
}

TEST_CASE("expression parser", "[parser]") {
    CHECK(parse_poly("2n+5") == poly::linear(2, 5));
    CHECK(parse_poly(" -(2n + 5) ") == poly::linear(-2, -5));
    CHECK(parse_poly("(n+2)^2") == parse_poly("n^2 + 4*n + 4"));
    CHECK(parse_poly("(n+1)(n+2)") == parse_poly("n^2+3n+2"));
    CHECK(parse_poly("-n^2") == poly({0, 0, -1}));
    CHECK(parse_poly("2^3") == poly::constant(8));
    CHECK(parse_poly("\xE2\x88\x92n") == -poly::n());
    CHECK(parse_poly("0").is_zero());

    CHECK_THROWS_AS(parse_poly(""), parse_error);
    CHECK_THROWS_AS(parse_poly("(n+1"), parse_error);
    CHECK_THROWS_AS(parse_poly("n+"), parse_error);
    CHECK_THROWS_AS(parse_poly("x"), parse_error);
    CHECK_THROWS_AS(parse_poly("n^n"), parse_error);
    CHECK_THROWS_AS(parse_poly("n^1000"), parse_error);
    CHECK_THROWS_AS(parse_poly("n;1"), parse_error);
}

TEST_CASE("recurrence lists", "[parser]") {
    CHECK(parse_recurrence("1; -(2n+5); (n+2)^2") == mathar_recurrence());
    CHECK(parse_recurrence("1;-2n-5;n^2+4n+4") == mathar_recurrence());

    const recurrence trimmed = parse_recurrence("1; -(n+1); 0");
    CHECK(trimmed.order() == 1);
    CHECK(trimmed[1] == poly::linear(-1, -1));

    CHECK_THROWS_AS(parse_recurrence("1"), invalid_recurrence);
    CHECK_THROWS_AS(parse_recurrence("0; n"), invalid_recurrence);
    CHECK_THROWS_AS(parse_recurrence("1;;n"), parse_error);
}
