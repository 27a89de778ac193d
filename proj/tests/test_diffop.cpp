#include <doctest.h>

#include "warpconv/diffop.hpp"
#include "warpconv/metric.hpp"
#include "warpconv/rng.hpp"

using namespace warpconv;

namespace {

Poly x(int mu, uint32_t e = 1) { return Poly::variable(4, VarId::coordinate(mu), e); }

// 2 x_sigma x^l d_l - x^2 d_sigma, the special conformal vector field
DiffOp conformal_vf(const Metric& g, int sigma) {
    DiffOp op(g.dim);
    Poly xs = g.lowered_coordinate(sigma);
    for (int l = 0; l < g.dim; ++l) {
        Poly coeff = GaussianRational(2) * xs * Poly::variable(g.dim, VarId::coordinate(l));
        op += DiffOp::term(coeff, MultiIndex::unit(g.dim, l));
    }
    op -= DiffOp::term(g.coordinate_square(), MultiIndex::unit(g.dim, sigma));
    return op;
}

DiffOp random_diffop(SplitMix64& rng, int dim, int maxOrder, int maxTerms) {
    DiffOp op(dim);
    int terms = 1 + static_cast<int>(rng.below(static_cast<uint64_t>(maxTerms)));
    for (int t = 0; t < terms; ++t) {
        MultiIndex alpha(dim);
        int order = static_cast<int>(rng.below(static_cast<uint64_t>(maxOrder + 1)));
        for (int k = 0; k < order; ++k) alpha.bump(static_cast<int>(rng.below(static_cast<uint64_t>(dim))));
        Poly coeff(dim);
        int nterms = 1 + static_cast<int>(rng.below(2));
        for (int j = 0; j < nterms; ++j) {
            Monomial m;
            int nvars = static_cast<int>(rng.below(3));
            for (int v = 0; v < nvars; ++v)
                m = m.times(Monomial::variable(VarId::coordinate(static_cast<int>(rng.below(static_cast<uint64_t>(dim)))),
                                               1 + static_cast<uint32_t>(rng.below(2))));
            coeff.add_term(m, sample_gaussian(rng));
        }
        op += DiffOp::term(coeff, alpha);
    }
    return op;
}

Poly random_poly(SplitMix64& rng, int dim, int maxDeg) {
    Poly p(dim);
    int terms = 1 + static_cast<int>(rng.below(4));
    for (int t = 0; t < terms; ++t) {
        Monomial m;
        int deg = static_cast<int>(rng.below(static_cast<uint64_t>(maxDeg + 1)));
        for (int k = 0; k < deg; ++k)
            m = m.times(Monomial::variable(VarId::coordinate(static_cast<int>(rng.below(static_cast<uint64_t>(dim))))));
        p.add_term(m, sample_gaussian(rng));
    }
    return p;
}

}  // namespace

TEST_CASE("apply examples") {
    Poly p = x(0) * x(1) + GaussianRational(3) * x(2, 2);
    CHECK(DiffOp::identity(4).apply(p) == p);

    Metric g(4);
    // the sigma=0 conformal field on x_0 gives 2 x0 x0 - x^2
    Poly expect = GaussianRational(2) * x(0, 2) - g.coordinate_square();
    CHECK(conformal_vf(g, 0).apply(g.lowered_coordinate(0)) == expect);

    CHECK(DiffOp::derivative(4, 0).apply(x(1)).is_zero());
}

TEST_CASE("compose examples") {
    DiffOp d0 = DiffOp::derivative(4, 0);
    DiffOp multX0 = DiffOp::multiplication(x(0));

    DiffOp expected = x(0) * DiffOp::derivative(4, 0) + DiffOp::identity(4);
    CHECK(DiffOp::compose(d0, multX0) == expected);

    SplitMix64 rng(5);
    DiffOp a = random_diffop(rng, 4, 3, 3);
    CHECK(DiffOp::compose(a, DiffOp::identity(4)) == a);
    CHECK(DiffOp::compose(DiffOp::identity(4), a) == a);

    MultiIndex both(4);
    both.bump(0);
    both.bump(1);
    CHECK(DiffOp::compose(d0, DiffOp::derivative(4, 1)) ==
          DiffOp::term(Poly::constant(4, GaussianRational(1)), both));
}

TEST_CASE("commutator examples") {
    SplitMix64 rng(9);
    DiffOp a = random_diffop(rng, 4, 3, 3);
    CHECK(DiffOp::commutator(a, a).is_zero());

    CHECK(DiffOp::commutator(DiffOp::derivative(4, 0), DiffOp::multiplication(x(0))) ==
          DiffOp::identity(4));
}

TEST_CASE("compose agrees with sequential application") {
    SplitMix64 rng(1001);
    for (int it = 0; it < 1000; ++it) {
        int dim = 2 + static_cast<int>(rng.below(2));
        DiffOp a = random_diffop(rng, dim, 3, 2);
        DiffOp b = random_diffop(rng, dim, 3, 2);
        Poly p = random_poly(rng, dim, 4);
        CHECK(DiffOp::compose(a, b).apply(p) == a.apply(b.apply(p)));
    }
}

TEST_CASE("compose is associative") {
    SplitMix64 rng(17);
    for (int it = 0; it < 300; ++it) {
        int dim = 2 + static_cast<int>(rng.below(2));
        DiffOp a = random_diffop(rng, dim, 2, 2);
        DiffOp b = random_diffop(rng, dim, 2, 2);
        DiffOp c = random_diffop(rng, dim, 2, 2);
        CHECK(DiffOp::compose(DiffOp::compose(a, b), c) == DiffOp::compose(a, DiffOp::compose(b, c)));
    }
}

TEST_CASE("Jacobi identity") {
    SplitMix64 rng(23);
    for (int it = 0; it < 300; ++it) {
        int dim = 2 + static_cast<int>(rng.below(2));
        DiffOp a = random_diffop(rng, dim, 2, 2);
        DiffOp b = random_diffop(rng, dim, 2, 2);
        DiffOp c = random_diffop(rng, dim, 2, 2);
        DiffOp jac = DiffOp::commutator(a, DiffOp::commutator(b, c)) +
                     DiffOp::commutator(b, DiffOp::commutator(c, a)) +
                     DiffOp::commutator(c, DiffOp::commutator(a, b));
        CHECK(jac.is_zero());
    }
}

TEST_CASE("normal order gives a unique structural form") {
    // x0 * d0 built two ways
    DiffOp viaCompose = DiffOp::compose(DiffOp::multiplication(x(0)), DiffOp::derivative(4, 0));
    DiffOp direct = DiffOp::term(x(0), MultiIndex::unit(4, 0));
    CHECK(viaCompose == direct);
}

TEST_CASE("dimension mismatch rejected") {
    CHECK_THROWS_AS(DiffOp::compose(DiffOp::identity(3), DiffOp::identity(4)), std::invalid_argument);
    CHECK_THROWS_AS(DiffOp::identity(3).apply(Poly::zero(4)), std::invalid_argument);
}
