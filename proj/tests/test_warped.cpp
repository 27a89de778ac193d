#include <doctest.h>

#include "warpconv/conformal.hpp"
#include "warpconv/rng.hpp"
#include "warpconv/warped.hpp"

using namespace warpconv;

namespace {

const Metric g4(4);

std::vector<DiffOp> translations(int dim) {
    std::vector<DiffOp> v;
    for (int s = 0; s < dim; ++s) v.push_back(DiffOp::derivative(dim, s));
    return v;
}

Poly xlow(int mu) { return g4.lowered_coordinate(mu); }

Poly random_coordinate_poly(SplitMix64& rng, int dim, int maxDeg) {
    Poly p(dim);
    int terms = 1 + static_cast<int>(rng.below(3));
    for (int t = 0; t < terms; ++t) {
        Monomial m;
        int deg = static_cast<int>(rng.below(static_cast<uint64_t>(maxDeg + 1)));
        for (int k = 0; k < deg; ++k)
            m = m.times(Monomial::variable(
                VarId::coordinate(static_cast<int>(rng.below(static_cast<uint64_t>(dim))))));
        p.add_term(m, sample_gaussian(rng));
    }
    return p;
}

ThetaSpec random_numeric_theta(SplitMix64& rng, int dim) {
    std::vector<std::vector<Rational>> m(static_cast<size_t>(dim),
                                         std::vector<Rational>(static_cast<size_t>(dim), Rational(0)));
    for (int a = 0; a < dim; ++a)
        for (int b = a + 1; b < dim; ++b) {
            Rational v = sample_rational(rng);
            m[a][b] = v;
            m[b][a] = -v;
        }
    return ThetaSpec::from_rationals(m);
}

}  // namespace

TEST_CASE("series sign calibration fixes the translation case") {
    int sign = calibrated_series_sign();
    CHECK((sign == 1 || sign == -1));

    // x_mu x_theta x_nu = x_mu x_nu - i theta_{mu nu} for every pair at d=4
    TwistSeriesConfig cfg = make_twist_config(translations(4), ThetaSpec::symbolic(4), 3);
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) {
            DeformedProductResult r = twist_product(xlow(mu), xlow(nu), cfg);
            Poly expect = xlow(mu) * xlow(nu) -
                          GaussianRational::i() * cfg.theta.lower(mu, nu, g4);
            CHECK(r.value == expect);
            CHECK(r.terminated);
            CHECK(r.terminationOrder == 1);
        }
}

TEST_CASE("translation commutator gives the constant noncommutative plane") {
    TwistSeriesConfig cfg = make_twist_config(translations(4), ThetaSpec::symbolic(4), 4);
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) {
            DeformedProductResult c = deformed_commutator(xlow(mu), xlow(nu), cfg);
            CHECK(c.value == moyal_reference(cfg.theta, mu, nu));
            for (const auto& [k, comp] : c.orderComponents)
                if (k >= 2) CHECK(comp.is_zero());
        }
    CHECK(moyal_reference(ThetaSpec::symbolic(4), 2, 2).is_zero());
    CHECK(moyal_reference(ThetaSpec::symbolic(4), 1, 0) ==
          -moyal_reference(ThetaSpec::symbolic(4), 0, 1));
}

TEST_CASE("first-order term under the conformal generators matches direct contraction") {
    GeneratorSet gs = calibrate_signs(4);
    TwistSeriesConfig cfg = make_twist_config(gs.vectorFieldK, ThetaSpec::symbolic(4), 1);
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) {
            DeformedProductResult r = twist_product(xlow(mu), xlow(nu), cfg);
            // hand-built contraction: -i theta^{sl} (K_s x_mu)(K_l x_nu)
            Poly expect(4);
            for (int s = 0; s < 4; ++s)
                for (int l = 0; l < 4; ++l) {
                    Poly entry = cfg.theta.upper(s, l);
                    if (entry.is_zero()) continue;
                    expect += entry * gs.vectorFieldK[s].apply(xlow(mu)) *
                              gs.vectorFieldK[l].apply(xlow(nu));
                }
            expect = GaussianRational(Rational(0), Rational(-1)) * expect;
            CHECK(r.orderComponents.at(1) == expect);
            CHECK_FALSE(r.terminated);
        }
}

TEST_CASE("nonconstant commutator: first order matches the closed form, even orders vanish") {
    GeneratorSet gs = calibrate_signs(4);
    TwistSeriesConfig cfg = make_twist_config(gs.vectorFieldK, ThetaSpec::symbolic(4), 2);
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) {
            DeformedProductResult c = deformed_commutator(xlow(mu), xlow(nu), cfg);
            CHECK(c.orderComponents.at(0).is_zero());
            CHECK(c.orderComponents.at(1) == nonconstant_reference(cfg.theta, mu, nu));
            CHECK(c.orderComponents.at(2).is_zero());
        }
}

TEST_CASE("closed-form reference properties") {
    ThetaSpec th = ThetaSpec::symbolic(4);
    CHECK(nonconstant_reference(th, 1, 1).is_zero());
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu)
            CHECK(nonconstant_reference(th, mu, nu) == -nonconstant_reference(th, nu, mu));
}

TEST_CASE("trivial and degenerate cases") {
    GeneratorSet gs = calibrate_signs(4);
    Poly one = Poly::constant(4, GaussianRational(1));
    Poly p = xlow(0) * xlow(2) + GaussianRational(3) * xlow(1);

    TwistSeriesConfig cfg = make_twist_config(gs.vectorFieldK, ThetaSpec::symbolic(4), 3);
    DeformedProductResult r = twist_product(one, p, cfg);
    CHECK(r.value == p);
    CHECK(r.terminated);
    CHECK(r.terminationOrder == 0);

    TwistSeriesConfig zeroCfg = make_twist_config(gs.vectorFieldK, ThetaSpec::zero(4), 3);
    DeformedProductResult rz = twist_product(p, p, zeroCfg);
    CHECK(rz.value == p * p);

    Poly withTheta = Poly::variable(4, VarId::theta_entry(0, 1));
    CHECK_THROWS_AS(twist_product(withTheta, p, cfg), std::invalid_argument);
    Poly withParam = Poly::variable(4, VarId::param_lambda()) * xlow(0);
    CHECK_THROWS_AS(twist_product(withParam, p, cfg), std::invalid_argument);
}

TEST_CASE("translation series terminates at min degree") {
    SplitMix64 rng(404);
    TwistSeriesConfig cfg = make_twist_config(translations(4), ThetaSpec::symbolic(4), 8);
    for (int it = 0; it < 60; ++it) {
        Poly a = random_coordinate_poly(rng, 4, 3);
        Poly b = random_coordinate_poly(rng, 4, 3);
        if (a.is_zero() || b.is_zero()) continue;
        DeformedProductResult r = twist_product(a, b, cfg);
        CHECK(r.terminated);
        CHECK(r.terminationOrder == std::min(a.total_degree(), b.total_degree()));
        Poly sum(4);
        for (const auto& [k, comp] : r.orderComponents) sum += comp;
        CHECK(sum == r.value);
    }
}

TEST_CASE("commutator antisymmetry") {
    GeneratorSet gs = calibrate_signs(4);
    SplitMix64 rng(505);
    TwistSeriesConfig cfg = make_twist_config(gs.vectorFieldK, ThetaSpec::symbolic(4), 2);
    for (int it = 0; it < 10; ++it) {
        Poly a = random_coordinate_poly(rng, 4, 2);
        Poly b = random_coordinate_poly(rng, 4, 2);
        DeformedProductResult ab = deformed_commutator(a, b, cfg);
        DeformedProductResult ba = deformed_commutator(b, a, cfg);
        for (const auto& [k, comp] : ab.orderComponents) CHECK(comp == -ba.orderComponents.at(k));
    }
}

TEST_CASE("numeric evaluation commutes with symbolic computation") {
    GeneratorSet gs = calibrate_signs(4);
    SplitMix64 rng(606);
    for (int it = 0; it < 5; ++it) {
        ThetaSpec numeric = random_numeric_theta(rng, 4);
        std::map<VarId, GaussianRational> values;
        for (int a = 0; a < 4; ++a)
            for (int b = a + 1; b < 4; ++b) {
                // th symbols name the lower-index entries
                GaussianRational low = numeric.lower(a, b, g4).constant_value();
                values.emplace(VarId::theta_entry(a, b), low);
            }

        TwistSeriesConfig sym = make_twist_config(gs.vectorFieldK, ThetaSpec::symbolic(4), 2);
        TwistSeriesConfig num = make_twist_config(gs.vectorFieldK, numeric, 2);
        Poly a = xlow(static_cast<int>(rng.below(4)));
        Poly b = xlow(static_cast<int>(rng.below(4)));
        DeformedProductResult rs = twist_product(a, b, sym);
        DeformedProductResult rn = twist_product(a, b, num);
        CHECK(rs.value.substitute(values) == rn.value);
    }
}

TEST_CASE("parity report for coordinates under the conformal generators") {
    GeneratorSet gs = calibrate_signs(4);
    TwistSeriesConfig cfg = make_twist_config(gs.vectorFieldK, ThetaSpec::symbolic(4), 2);
    ParityReport r = parity_vanishing_check(xlow(0), xlow(1), cfg, 2);
    CHECK(r.pass());
    CHECK(r.entries.size() == 2);

    ParityReport deep = parity_vanishing_check(xlow(0), xlow(1), cfg, 4);
    CHECK(deep.pass());
    CHECK(deep.entries.size() == 3);
    for (const auto& e : deep.entries) CHECK(e.component == "0");

    TwistSeriesConfig pCfg = make_twist_config(translations(4), ThetaSpec::symbolic(4), 2);
    CHECK(parity_vanishing_check(xlow(0), xlow(1), pCfg, 4).pass());

    // equal arguments: every order of the commutator vanishes
    Poly a = xlow(2) * xlow(2) + xlow(0);
    DeformedProductResult c = deformed_commutator(a, a, cfg);
    for (const auto& [k, comp] : c.orderComponents) CHECK(comp.is_zero());
}

TEST_CASE("formal pairing reduction: unequal orders vanish, equal orders re-derive the series") {
    GeneratorSet gs = calibrate_signs(4);
    TwistSeriesConfig cfg = make_twist_config(gs.vectorFieldK, ThetaSpec::symbolic(4), 2);

    CHECK(unequal_order_vanishing_check(xlow(0), xlow(1), cfg, 2).pass());

    for (int mu : {0, 2})
        for (int nu : {1, 3}) {
            DeformedProductResult r = twist_product(xlow(mu), xlow(nu), cfg);
            CHECK(formal_pair_term(xlow(mu), xlow(nu), cfg, 0, 0) == r.orderComponents.at(0));
            CHECK(formal_pair_term(xlow(mu), xlow(nu), cfg, 1, 1) == r.orderComponents.at(1));
            CHECK(formal_pair_term(xlow(mu), xlow(nu), cfg, 2, 2) == r.orderComponents.at(2));
        }

    TwistSeriesConfig pCfg = make_twist_config(translations(4), ThetaSpec::symbolic(4), 2);
    CHECK(unequal_order_vanishing_check(xlow(0), xlow(1), pCfg, 2).pass());
    DeformedProductResult rp = twist_product(xlow(0), xlow(1), pCfg);
    CHECK(formal_pair_term(xlow(0), xlow(1), pCfg, 1, 1) == rp.orderComponents.at(1));
}

TEST_CASE("scaled generators produce the commutator with the scaled matrix") {
    GeneratorSet gs = calibrate_signs(4);
    Poly lam = lambda_symbol();
    Poly eta = eta_symbol();
    auto gens = scaled_generators(ScaledKind::Minus, lam, eta, gs);
    TwistSeriesConfig cfg = make_twist_config(gens, ThetaSpec::symbolic(4), 1);

    ThetaSpec scaledTheta = ThetaSpec::scaled_symbolic({lam, lam, eta, eta});
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) {
            DeformedProductResult c = deformed_commutator(xlow(mu), xlow(nu), cfg);
            CHECK(c.orderComponents.at(1) == nonconstant_reference(scaledTheta, mu, nu));
        }
}
