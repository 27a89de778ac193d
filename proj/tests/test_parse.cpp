#include <doctest.h>

#include "warpconv/parse.hpp"
#include "warpconv/rng.hpp"

using namespace warpconv;

namespace {

Poly x(int mu, uint32_t e = 1) { return Poly::variable(4, VarId::coordinate(mu), e); }

Poly random_poly(SplitMix64& rng) {
    static const std::vector<VarId> pool = {
        VarId::coordinate(0), VarId::coordinate(1), VarId::coordinate(2), VarId::coordinate(3),
        VarId::theta_entry(0, 1), VarId::theta_entry(2, 3), VarId::param_b(1),
        VarId::param_lambda(), VarId::param_eta()};
    Poly p(4);
    int terms = static_cast<int>(rng.below(5));
    for (int t = 0; t < terms; ++t) {
        Monomial m;
        int nvars = static_cast<int>(rng.below(4));
        for (int v = 0; v < nvars; ++v)
            m = m.times(Monomial::variable(pool[rng.below(pool.size())],
                                           1 + static_cast<uint32_t>(rng.below(3))));
        p.add_term(m, sample_gaussian(rng));
    }
    return p;
}

}  // namespace

TEST_CASE("grammar examples") {
    CHECK(parse_poly("x0^2 - x1^2", 4) == x(0, 2) - x(1, 2));

    Poly halfI = Poly::constant(4, GaussianRational(Rational(0), Rational::parse("1/2")));
    CHECK(parse_poly("(1/2)*i*x3", 4) == halfI * x(3));

    Poly th01x0 = Poly::variable(4, VarId::theta_entry(0, 1)) * x(0);
    CHECK(parse_poly("th01*x0 + th01*x0", 4) == GaussianRational(2) * th01x0);
}

TEST_CASE("whitespace, parentheses, exponents") {
    CHECK(parse_poly("  ( x0 + 1 ) ^ 3  ", 4) == (x(0) + Poly::constant(4, GaussianRational(1))).pow(3));
    CHECK(parse_poly("x0^0", 4) == Poly::constant(4, GaussianRational(1)));
    CHECK(parse_poly("2*lam*eta*b0", 4) ==
          GaussianRational(2) * Poly::variable(4, VarId::param_lambda()) *
              Poly::variable(4, VarId::param_eta()) * Poly::variable(4, VarId::param_b(0)));
    CHECK(parse_poly("i^2", 4) == Poly::constant(4, GaussianRational(-1)));
    CHECK(parse_poly("-x0 - 1", 4) == -(x(0) + Poly::constant(4, GaussianRational(1))));
    CHECK(parse_poly("-(x0 - 1)*x1", 4) ==
          (Poly::constant(4, GaussianRational(1)) - x(0)) * x(1));
}

TEST_CASE("rational literals") {
    CHECK(parse_poly("3/4", 4) == Poly::constant(4, GaussianRational(Rational::parse("3/4"))));
    CHECK(parse_poly("6/4", 4) == Poly::constant(4, GaussianRational(Rational::parse("3/2"))));
    CHECK(parse_poly("123456789012345678901234567890", 4) ==
          Poly::constant(4, GaussianRational(Rational(BigInt::parse("123456789012345678901234567890")))));
}

TEST_CASE("errors carry positions") {
    CHECK_THROWS_AS(parse_poly("x9^", 4), ParseError);
    try {
        parse_poly("x9^", 4);
    } catch (const ParseError& e) {
        CHECK(e.position() == 0);  // x9 out of range at offset 0
    }
    try {
        parse_poly("x0^", 4);
    } catch (const ParseError& e) {
        CHECK(e.position() == 3);  // missing exponent digits
    }
    try {
        parse_poly("x0 + ", 4);
    } catch (const ParseError& e) {
        CHECK(e.position() == 5);
    }
    CHECK_THROWS_AS(parse_poly("th10*x0", 4), ParseError);   // indices not ascending
    CHECK_THROWS_AS(parse_poly("th04*x0", 4), ParseError);   // nu out of range
    CHECK_THROWS_AS(parse_poly("y0", 4), ParseError);        // unknown name
    CHECK_THROWS_AS(parse_poly("1/0", 4), ParseError);       // zero denominator
    CHECK_THROWS_AS(parse_poly("(x0", 4), ParseError);       // unbalanced
    CHECK_THROWS_AS(parse_poly("x0 x1", 4), ParseError);     // implicit product not in grammar
    CHECK_THROWS_AS(parse_poly("", 4), ParseError);
}

TEST_CASE("print/parse round trip on random polynomials") {
    SplitMix64 rng(2718);
    for (int it = 0; it < 4000; ++it) {
        Poly p = random_poly(rng);
        CAPTURE(p.canonical_string());
        CHECK(parse_poly(p.canonical_string(), 4) == p);
    }
}

TEST_CASE("parse respects the requested dimension") {
    CHECK_THROWS_AS(parse_poly("x2", 2), ParseError);
    CHECK(parse_poly("x1 + th01", 2) ==
          Poly::variable(2, VarId::coordinate(1)) + Poly::variable(2, VarId::theta_entry(0, 1)));
}
