#include <doctest.h>

#include "warpconv/rational.hpp"
#include "warpconv/rng.hpp"

using warpconv::BigInt;
using warpconv::GaussianRational;
using warpconv::Rational;
using warpconv::SplitMix64;

TEST_CASE("rational canonical form") {
    Rational r(BigInt(6), BigInt(-4));
    CHECK(r.num() == BigInt(-3));
    CHECK(r.den() == BigInt(2));
    CHECK(Rational(BigInt(0), BigInt(-17)) == Rational(0));
    CHECK(Rational(BigInt(0), BigInt(-17)).den() == BigInt(1));
    CHECK_THROWS_AS(Rational(BigInt(1), BigInt(0)), std::domain_error);
}

TEST_CASE("rational parse and print") {
    CHECK(Rational::parse("3/4").to_string() == "3/4");
    CHECK(Rational::parse("-6/4").to_string() == "-3/2");
    CHECK(Rational::parse("5").to_string() == "5");
    CHECK(Rational::parse("0/9").to_string() == "0");
    CHECK_THROWS(Rational::parse("3/0"));
}

TEST_CASE("gaussian rational stated examples") {
    GaussianRational half_plus_i(Rational::parse("1/2"), Rational(1));
    GaussianRational half_minus_i(Rational::parse("1/2"), Rational(-1));
    CHECK(half_plus_i * half_minus_i == GaussianRational(Rational::parse("5/4")));

    CHECK(GaussianRational::i() * GaussianRational::i() == GaussianRational(-1));

    GaussianRational tq(Rational::parse("3/4"));
    CHECK(tq / tq == GaussianRational(1));

    CHECK_THROWS_AS(tq / GaussianRational(), std::domain_error);
}

TEST_CASE("gaussian rational conj and modulus") {
    SplitMix64 rng(11);
    for (int it = 0; it < 2000; ++it) {
        GaussianRational z = warpconv::sample_gaussian(rng);
        CHECK(z.conj().conj() == z);
        Rational n = z.norm_sq();
        CHECK(n >= Rational(0));
        CHECK((n == Rational(0)) == z.is_zero());
        CHECK(z * z.conj() == GaussianRational(n));
    }
}

TEST_CASE("field axioms on random triples") {
    SplitMix64 rng(2024);
    for (int it = 0; it < 10000; ++it) {
        GaussianRational a = warpconv::sample_gaussian(rng);
        GaussianRational b = warpconv::sample_gaussian(rng);
        GaussianRational c = warpconv::sample_gaussian(rng);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + GaussianRational() == a);
        CHECK(a * GaussianRational(1) == a);
        CHECK(a - a == GaussianRational());
    }
}

TEST_CASE("division inverts multiplication for nonzero divisors") {
    SplitMix64 rng(31337);
    int done = 0;
    while (done < 10000) {
        GaussianRational a = warpconv::sample_gaussian(rng);
        GaussianRational b = warpconv::sample_gaussian(rng);
        if (b.is_zero()) continue;
        CHECK((a / b) * b == a);
        ++done;
    }
}

TEST_CASE("rational ordering and float conversion") {
    CHECK(Rational::parse("1/3") < Rational::parse("1/2"));
    CHECK(Rational::parse("-1/3") > Rational::parse("-1/2"));
    CHECK(Rational::parse("-7/2").to_double() == doctest::Approx(-3.5));
    GaussianRational z(Rational::parse("1/4"), Rational::parse("-3/2"));
    CHECK(z.to_complex().real() == doctest::Approx(0.25));
    CHECK(z.to_complex().imag() == doctest::Approx(-1.5));
}
