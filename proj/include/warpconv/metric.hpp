#pragma once

#include <stdexcept>

#include "warpconv/poly.hpp"

namespace warpconv {

// Diagonal Minkowski metric with signature (+1, -1, ..., -1).
struct Metric {
    int dim;

    explicit Metric(int d) : dim(d) {
        if (d < 1) throw std::invalid_argument("Metric: dimension must be >= 1");
    }

    int sign(int mu) const {
        check(mu);
        return mu == 0 ? 1 : -1;
    }

    Rational eta(int mu, int nu) const {
        check(mu);
        check(nu);
        if (mu != nu) return Rational(0);
        return Rational(sign(mu));
    }

    // x_mu as a polynomial in the contravariant coordinates
    Poly lowered_coordinate(int mu) const {
        check(mu);
        return GaussianRational(Rational(sign(mu))) * Poly::variable(dim, VarId::coordinate(mu));
    }

    // x^mu x_mu
    Poly coordinate_square() const {
        Poly r(dim);
        for (int mu = 0; mu < dim; ++mu) {
            r += GaussianRational(Rational(sign(mu))) *
                 Poly::variable(dim, VarId::coordinate(mu), 2);
        }
        return r;
    }

private:
    void check(int mu) const {
        if (mu < 0 || mu >= dim) throw std::invalid_argument("Metric: index out of range");
    }
};

}  // namespace warpconv
