#include <doctest.h>

#include "warpconv/conformal.hpp"
#include "warpconv/wedge.hpp"

using namespace warpconv;

namespace {

Rational q(const char* s) { return Rational::parse(s); }

// rational point on the unit hyperbola (right branch), |t| < 1
LorentzTransform random_boost(SplitMix64& rng) {
    Rational t(BigInt(rng.range(-4, 4)), BigInt(7));
    Rational t2 = t * t;
    Rational den = Rational(1) - t2;
    return lorentz_boost01((Rational(1) + t2) / den, Rational(2) * t / den);
}

LorentzTransform random_rotation(SplitMix64& rng) {
    Rational t(BigInt(rng.range(-5, 5)), BigInt(6));
    Rational t2 = t * t;
    Rational den = Rational(1) + t2;
    return lorentz_rot23((Rational(1) - t2) / den, Rational(2) * t / den);
}

LorentzTransform random_lorentz(SplitMix64& rng) {
    switch (rng.below(4)) {
        case 0: return random_boost(rng);
        case 1: return random_rotation(rng);
        case 2: return lorentz_reflection_j();
        default: {
            LorentzTransform a = random_boost(rng);
            LorentzTransform b = random_rotation(rng);
            return LorentzTransform(mat_mul(a.matrix, b.matrix));
        }
    }
}

}  // namespace

TEST_CASE("minkowski square and wedge membership") {
    CHECK(minkowski_square(Vec4(q("0"), q("1"), q("0"), q("0"))) == Rational(-1));
    CHECK(minkowski_square(Vec4(q("1"), q("0"), q("0"), q("0"))) == Rational(1));
    CHECK(minkowski_square(Vec4(q("1"), q("1"), q("0"), q("0"))) == Rational(0));

    CHECK(in_right_wedge(Vec4(q("0"), q("1"), q("0"), q("0"))));
    CHECK_FALSE(in_right_wedge(Vec4(q("2"), q("1"), q("0"), q("0"))));
    CHECK(in_left_wedge(Vec4(q("0"), q("-1"), q("5"), q("5"))));
    CHECK_FALSE(in_left_wedge(Vec4(q("0"), q("1"), q("0"), q("0"))));
    // boundary is excluded
    CHECK_FALSE(in_right_wedge(Vec4(q("1"), q("1"), q("0"), q("0"))));
}

TEST_CASE("scale factor examples") {
    Vec4 zero;
    Vec4 x(q("0"), q("1"), q("0"), q("0"));
    CHECK(scale_factor(zero, x) == Rational(1));
    CHECK(scale_factor(Vec4(q("1/2"), q("0"), q("0"), q("0")), x) == q("3/4"));
    CHECK(scale_factor(Vec4(q("7"), q("-3"), q("2"), q("1/5")), zero) == Rational(1));
}

TEST_CASE("special conformal map examples") {
    Vec4 zero;
    Vec4 x(q("0"), q("1"), q("0"), q("0"));
    CHECK(special_conformal_map(zero, x) == x);

    Vec4 image = special_conformal_map(Vec4(q("1/2"), q("0"), q("0"), q("0")), x);
    CHECK(image == Vec4(q("2/3"), q("4/3"), q("0"), q("0")));

    CHECK(special_conformal_map(Vec4(q("3"), q("1"), q("4"), q("1")), zero) == zero);

    Vec4 b(q("1"), q("0"), q("0"), q("0"));
    CHECK_THROWS_AS(special_conformal_map(b, b), SingularPointError);
}

TEST_CASE("theta matrix forms") {
    ThetaMatrix th(q("2"), q("-3"));
    Vec4 v(q("1"), q("5"), q("7"), q("11"));
    CHECK(th.apply(v) == Vec4(q("10"), q("2"), q("-33"), q("21")));
    CHECK(th.apply(v) == mat_apply(th.mixed(), v));

    // upper form is antisymmetric and Minkowski-skew
    Mat4 u = th.upper();
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) CHECK(u[a][b] == -u[b][a]);
    SplitMix64 rng(3);
    for (int it = 0; it < 50; ++it) {
        Vec4 p(sample_rational(rng), sample_rational(rng), sample_rational(rng), sample_rational(rng));
        Vec4 w(sample_rational(rng), sample_rational(rng), sample_rational(rng), sample_rational(rng));
        CHECK(minkowski_dot(th.apply(p), w) == -minkowski_dot(p, th.apply(w)));
    }

    CHECK_THROWS_AS(ThetaMatrix(q("-1"), q("0")), std::invalid_argument);
}

TEST_CASE("admissibility of upper forms") {
    auto lamEta = is_admissible(ThetaMatrix(q("1"), q("0")).upper());
    REQUIRE(lamEta.has_value());
    CHECK(lamEta->first == Rational(1));
    CHECK(lamEta->second == Rational(0));

    auto general = is_admissible(ThetaMatrix(q("5/3"), q("-7/2")).upper());
    REQUIRE(general.has_value());
    CHECK(general->first == q("5/3"));
    CHECK(general->second == q("-7/2"));

    // lambda = -1 pattern: negate the 0-1 block of the lambda = 1 upper form
    Mat4 bad = ThetaMatrix(q("1"), q("0")).upper();
    bad[0][1] = -bad[0][1];
    bad[1][0] = -bad[1][0];
    CHECK_FALSE(is_admissible(bad).has_value());

    CHECK(is_admissible(Mat4{}).has_value());
    CHECK(is_admissible(Mat4{})->first == Rational(0));

    Mat4 notSkew{};
    notSkew[0][2] = Rational(1);
    CHECK_FALSE(is_admissible(notSkew).has_value());
}

TEST_CASE("lorentz builders") {
    CHECK(lorentz_identity().orthochronous);
    CHECK(lorentz_boost01(q("5/4"), q("3/4")).orthochronous);
    CHECK(lorentz_rot23(q("3/5"), q("4/5")).orthochronous);
    CHECK_FALSE(lorentz_reflection_j().orthochronous);

    CHECK_THROWS_AS(lorentz_boost01(q("1"), q("1")), std::invalid_argument);
    CHECK_THROWS_AS(lorentz_rot23(q("1/2"), q("1/2")), std::invalid_argument);

    Mat4 notLorentz{};
    notLorentz[0][0] = Rational(2);
    notLorentz[1][1] = Rational(1);
    notLorentz[2][2] = Rational(1);
    notLorentz[3][3] = Rational(1);
    CHECK_THROWS_AS(LorentzTransform{notLorentz}, std::invalid_argument);
}

TEST_CASE("gamma action examples") {
    ThetaMatrix th(q("3/2"), q("-2/7"));
    Mat4 u = th.upper();

    CHECK(gamma_lambda(lorentz_identity(), u) == u);

    // the 0-1 boost and the 2-3 rotation stabilize the admissible family
    CHECK(gamma_lambda(lorentz_boost01(q("5/4"), q("3/4")), u) == u);
    CHECK(gamma_lambda(lorentz_rot23(q("3/5"), q("4/5")), u) == u);

    // two antichronous applications compose to the orthochronous identity
    LorentzTransform j = lorentz_reflection_j();
    CHECK(gamma_lambda(j, gamma_lambda(j, u)) == u);
}

TEST_CASE("gamma respects composition; antichronous pair recorded") {
    SplitMix64 rng(99);
    ThetaMatrix th(q("1/3"), q("4/5"));
    int antiAntiAgree = 0, antiAntiTotal = 0;
    for (int it = 0; it < 200; ++it) {
        LorentzTransform a = random_lorentz(rng);
        LorentzTransform b = random_lorentz(rng);
        Mat4 viaSteps = gamma_lambda(a, gamma_lambda(b, th.upper()));
        Mat4 viaProduct = gamma_lambda(LorentzTransform(mat_mul(a.matrix, b.matrix)), th.upper());
        if (!a.orthochronous && !b.orthochronous) {
            // not asserted: recorded as data
            ++antiAntiTotal;
            if (viaSteps == viaProduct) ++antiAntiAgree;
        } else {
            CHECK(viaSteps == viaProduct);
        }
    }
    if (antiAntiTotal > 0)
        MESSAGE("antichronous/antichronous compositions agreeing with gamma of the product: "
                << antiAntiAgree << "/" << antiAntiTotal);
}

TEST_CASE("stabilizer keeps the admissible parameters") {
    SplitMix64 rng(123);
    for (int it = 0; it < 100; ++it) {
        ThetaMatrix th = sample_admissible_theta(rng);
        LorentzTransform L = rng.below(2) ? random_boost(rng) : random_rotation(rng);
        auto out = is_admissible(gamma_lambda(L, th.upper()));
        REQUIRE(out.has_value());
        CHECK(out->first == th.lambda);
        CHECK(out->second == th.eta);
    }
}

TEST_CASE("samplers construct valid points deterministically") {
    SplitMix64 a(42), b(42);
    for (int it = 0; it < 200; ++it) {
        Vec4 x = sample_wedge_point(a);
        CHECK(in_right_wedge(x));
        CHECK(sample_wedge_point(b) == x);

        Vec4 v = sample_forward_cone(a);
        CHECK(in_closed_forward_cone(v));
        CHECK(sample_forward_cone(b) == v);

        Vec4 y = sample_left_wedge_point(a);
        CHECK(in_left_wedge(y));
        CHECK(sample_left_wedge_point(b) == y);
    }
    SplitMix64 c(43);
    CHECK(sample_wedge_point(c) != sample_wedge_point(a));
}

TEST_CASE("preservation and separation batches") {
    WedgeReport p = wedge_preservation_check(500, 7);
    CHECK(p.pass());
    CHECK(p.samples == 500);

    WedgeReport s = spacelike_separation_check(500, 7);
    CHECK(s.pass());

    CHECK_THROWS_AS(wedge_preservation_check(0, 1), std::invalid_argument);
    CHECK_THROWS_AS(spacelike_separation_check(0, 1), std::invalid_argument);
}

TEST_CASE("identity deformation preserves trivially") {
    Vec4 x(q("1/2"), q("9/4"), q("-3"), q("5"));
    ThetaMatrix th(q("2"), q("5"));
    Vec4 b = th.apply(Vec4());  // v = 0
    CHECK(b.is_zero());
    CHECK(scale_factor(b, x) == Rational(1));
    CHECK(special_conformal_map(b, x) == x);
}

TEST_CASE("undeformed wedges are spacelike separated") {
    SplitMix64 rng(11);
    for (int it = 0; it < 200; ++it) {
        Vec4 x = sample_wedge_point(rng);
        Vec4 y = sample_left_wedge_point(rng);
        CHECK(minkowski_square(x - y) < Rational(0));
    }
}

TEST_CASE("mobius expansion matches the flow series at low orders") {
    GeneratorSet gs = calibrate_signs(4);
    for (int mu = 0; mu < 4; ++mu) {
        for (int order = 1; order <= 3; ++order)
            CHECK(mobius_series(mu, order) == conformal_flow_series(gs, mu, order));
    }
}
