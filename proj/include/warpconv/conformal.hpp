#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "warpconv/diffop.hpp"
#include "warpconv/metric.hpp"

namespace warpconv {

// i-prefactor choices attached to the vector fields to make the generators
// hermitian. Conventions differ across the literature, so these are found by
// exhaustive search against the commutation table rather than assumed.
struct SignChoice {
    int p = 1;
    int k = 1;
    int d = 1;
    int l = 1;
};

// The conformal generators at a fixed spacetime dimension, in both
// vector-field form (real first-order operators) and hermitian form
// (vector field times a calibrated factor of +/- i).
struct GeneratorSet {
    Metric metric;

    // lower-index vector fields
    std::vector<DiffOp> vectorFieldP;  // d_sigma
    std::vector<DiffOp> vectorFieldK;  // 2 x_sigma x^l d_l - x^2 d_sigma
    DiffOp vectorFieldD;               // x^l d_l
    std::vector<std::vector<DiffOp>> vectorFieldL;  // x_mu d_nu - x_nu d_mu

    // hermitian generators (populated by calibrate_signs)
    std::vector<DiffOp> P;
    std::vector<DiffOp> K;
    DiffOp D;
    std::vector<std::vector<DiffOp>> L;
    SignChoice signs;
    bool calibrated = false;

    explicit GeneratorSet(int dim)
        : metric(dim), vectorFieldD(dim), D(dim) {}

    int dim() const { return metric.dim; }

    const DiffOp& hermitian_L(int mu, int nu) const { return L[mu][nu]; }
};

struct RelationCheck {
    std::string id;
    std::string lhs;
    std::string rhs;
    std::string residual;
    bool pass = false;
};

struct AlgebraReport {
    std::vector<RelationCheck> relations;

    bool pass() const {
        for (const auto& r : relations)
            if (!r.pass) return false;
        return true;
    }

    size_t failure_count() const {
        size_t n = 0;
        for (const auto& r : relations)
            if (!r.pass) ++n;
        return n;
    }
};

inline GeneratorSet build_vector_fields(int dim) {
    if (dim < 2) throw std::invalid_argument("build_vector_fields: dimension must be >= 2");
    GeneratorSet g(dim);
    const Metric& metric = g.metric;

    for (int sigma = 0; sigma < dim; ++sigma)
        g.vectorFieldP.push_back(DiffOp::derivative(dim, sigma));

    Poly xsq = metric.coordinate_square();
    for (int sigma = 0; sigma < dim; ++sigma) {
        DiffOp op(dim);
        Poly xs = metric.lowered_coordinate(sigma);
        for (int l = 0; l < dim; ++l) {
            Poly coeff = GaussianRational(2) * xs * Poly::variable(dim, VarId::coordinate(l));
            op += DiffOp::term(coeff, MultiIndex::unit(dim, l));
        }
        op -= DiffOp::term(xsq, MultiIndex::unit(dim, sigma));
        g.vectorFieldK.push_back(op);
    }

    {
        DiffOp dil(dim);
        for (int l = 0; l < dim; ++l)
            dil += DiffOp::term(Poly::variable(dim, VarId::coordinate(l)), MultiIndex::unit(dim, l));
        g.vectorFieldD = dil;
    }

    g.vectorFieldL.assign(static_cast<size_t>(dim), std::vector<DiffOp>(static_cast<size_t>(dim), DiffOp(dim)));
    for (int mu = 0; mu < dim; ++mu) {
        for (int nu = 0; nu < dim; ++nu) {
            if (mu == nu) continue;
            DiffOp op = DiffOp::term(metric.lowered_coordinate(mu), MultiIndex::unit(dim, nu)) -
                        DiffOp::term(metric.lowered_coordinate(nu), MultiIndex::unit(dim, mu));
            g.vectorFieldL[static_cast<size_t>(mu)][static_cast<size_t>(nu)] = op;
        }
    }
    return g;
}

namespace detail {

inline void apply_signs(GeneratorSet& g, const SignChoice& s) {
    const int dim = g.dim();
    auto phase = [](int sign) { return GaussianRational(Rational(0), Rational(sign)); };

    g.P.clear();
    g.K.clear();
    for (int sigma = 0; sigma < dim; ++sigma) {
        g.P.push_back(phase(s.p) * g.vectorFieldP[static_cast<size_t>(sigma)]);
        g.K.push_back(phase(s.k) * g.vectorFieldK[static_cast<size_t>(sigma)]);
    }
    g.D = phase(s.d) * g.vectorFieldD;
    g.L.assign(static_cast<size_t>(dim), std::vector<DiffOp>(static_cast<size_t>(dim), DiffOp(dim)));
    for (int mu = 0; mu < dim; ++mu)
        for (int nu = 0; nu < dim; ++nu)
            if (mu != nu)
                g.L[static_cast<size_t>(mu)][static_cast<size_t>(nu)] =
                    phase(s.l) * g.vectorFieldL[static_cast<size_t>(mu)][static_cast<size_t>(nu)];
    g.signs = s;
    g.calibrated = true;
}

// Generator labels for relation enumeration.
struct GenRef {
    enum class Type { P, K, D, L } type;
    int i = 0;
    int j = 0;
    std::string name;
};

inline std::vector<GenRef> generator_list(int dim) {
    std::vector<GenRef> v;
    for (int s = 0; s < dim; ++s) v.push_back({GenRef::Type::P, s, 0, "P" + std::to_string(s)});
    for (int s = 0; s < dim; ++s) v.push_back({GenRef::Type::K, s, 0, "K" + std::to_string(s)});
    v.push_back({GenRef::Type::D, 0, 0, "D"});
    for (int mu = 0; mu < dim; ++mu)
        for (int nu = mu + 1; nu < dim; ++nu)
            v.push_back({GenRef::Type::L, mu, nu, "L" + std::to_string(mu) + std::to_string(nu)});
    return v;
}

inline const DiffOp& gen_op(const GeneratorSet& g, const GenRef& r) {
    switch (r.type) {
        case GenRef::Type::P:
            return g.P[static_cast<size_t>(r.i)];
        case GenRef::Type::K:
            return g.K[static_cast<size_t>(r.i)];
        case GenRef::Type::D:
            return g.D;
        default:
            return g.L[static_cast<size_t>(r.i)][static_cast<size_t>(r.j)];
    }
}

// signed L with arbitrary index order; L_{mu,mu} = 0
inline DiffOp signed_L(const GeneratorSet& g, int mu, int nu) {
    if (mu == nu) return DiffOp::zero(g.dim());
    return g.L[static_cast<size_t>(mu)][static_cast<size_t>(nu)];
}

// Expected commutator [a, b] from the conformal table.
inline DiffOp expected_commutator(const GeneratorSet& g, const GenRef& a, const GenRef& b) {
    using T = GenRef::Type;
    const int dim = g.dim();
    const Metric& eta = g.metric;
    const GaussianRational I = GaussianRational::i();

    if (a.type == T::L && b.type == T::L) {
        int mu = a.i, nu = a.j, rho = b.i, sg = b.j;
        DiffOp sum = eta.eta(mu, sg).is_zero() ? DiffOp::zero(dim)
                                               : GaussianRational(eta.eta(mu, sg)) * signed_L(g, nu, rho);
        if (!eta.eta(nu, rho).is_zero()) sum += GaussianRational(eta.eta(nu, rho)) * signed_L(g, mu, sg);
        if (!eta.eta(mu, rho).is_zero()) sum -= GaussianRational(eta.eta(mu, rho)) * signed_L(g, nu, sg);
        if (!eta.eta(nu, sg).is_zero()) sum -= GaussianRational(eta.eta(nu, sg)) * signed_L(g, mu, rho);
        return I * sum;
    }
    if ((a.type == T::P || a.type == T::K) && b.type == T::L) {
        const auto& fam = a.type == T::P ? g.P : g.K;
        int rho = a.i, mu = b.i, nu = b.j;
        DiffOp sum = DiffOp::zero(dim);
        if (!eta.eta(rho, mu).is_zero())
            sum += GaussianRational(eta.eta(rho, mu)) * fam[static_cast<size_t>(nu)];
        if (!eta.eta(rho, nu).is_zero())
            sum -= GaussianRational(eta.eta(rho, nu)) * fam[static_cast<size_t>(mu)];
        return I * sum;
    }
    if (a.type == T::L && (b.type == T::P || b.type == T::K))
        return -expected_commutator(g, b, a);

    if (a.type == T::P && b.type == T::D) return I * g.P[static_cast<size_t>(a.i)];
    if (a.type == T::D && b.type == T::P) return -(I * g.P[static_cast<size_t>(b.i)]);
    if (a.type == T::K && b.type == T::D) return -(I * g.K[static_cast<size_t>(a.i)]);
    if (a.type == T::D && b.type == T::K) return I * g.K[static_cast<size_t>(b.i)];

    if (a.type == T::P && b.type == T::K) {
        int rho = a.i, mu = b.i;
        DiffOp sum = DiffOp::zero(dim);
        if (!eta.eta(rho, mu).is_zero()) sum += GaussianRational(eta.eta(rho, mu)) * g.D;
        sum -= signed_L(g, rho, mu);
        return GaussianRational(Rational(0), Rational(2)) * sum;
    }
    if (a.type == T::K && b.type == T::P) return -expected_commutator(g, b, a);

    // all remaining pairs commute
    return DiffOp::zero(dim);
}

inline bool conformal_table_holds(const GeneratorSet& g) {
    auto gens = generator_list(g.dim());
    for (const auto& a : gens)
        for (const auto& b : gens) {
            DiffOp lhs = DiffOp::commutator(gen_op(g, a), gen_op(g, b));
            if (lhs != expected_commutator(g, a, b)) return false;
        }
    return true;
}

}  // namespace detail

// Fixes the +/- i prefactors by exhaustive search over the 16 assignments,
// trying s_P, s_K, s_D, s_L each as +1 before -1 (outer to inner loop) and
// returning the first assignment under which every relation of the table
// holds exactly.
inline GeneratorSet calibrate_signs(int dim) {
    GeneratorSet g = build_vector_fields(dim);
    for (int sp : {1, -1})
        for (int sk : {1, -1})
            for (int sd : {1, -1})
                for (int sl : {1, -1}) {
                    detail::apply_signs(g, SignChoice{sp, sk, sd, sl});
                    if (detail::conformal_table_holds(g)) return g;
                }
    throw std::logic_error("calibrate_signs: no sign assignment satisfies the conformal algebra");
}

// Checks every generator pair against the commutation table and reports the
// exact residual operator for each relation.
inline AlgebraReport verify_conformal_algebra(const GeneratorSet& g) {
    if (!g.calibrated) throw std::invalid_argument("verify_conformal_algebra: set not calibrated");
    AlgebraReport report;
    auto gens = detail::generator_list(g.dim());
    for (const auto& a : gens)
        for (const auto& b : gens) {
            DiffOp lhs = DiffOp::commutator(detail::gen_op(g, a), detail::gen_op(g, b));
            DiffOp rhs = detail::expected_commutator(g, a, b);
            DiffOp residual = lhs - rhs;
            RelationCheck rc;
            rc.id = "[" + a.name + "," + b.name + "]";
            rc.lhs = lhs.canonical_string();
            rc.rhs = rhs.canonical_string();
            rc.residual = residual.canonical_string();
            rc.pass = residual.is_zero();
            report.relations.push_back(std::move(rc));
        }
    return report;
}

// Antisymmetric array of generators satisfying the pseudo-orthogonal algebra
// in d+2 slots with extended signature (+1, -1, ..., -1, +1). Slots 0..d-1
// carry the Minkowski indices; the two extra slots hold the P-K and P+K
// combinations and the dilation sits in the extra-extra block.
struct So2dSet {
    Metric metric;             // base Minkowski metric
    int edim;                  // d + 2
    std::vector<std::vector<DiffOp>> J;
    std::string embedding;     // human-readable description of the slot layout

    explicit So2dSet(int dim) : metric(dim), edim(dim + 2) {}

    int extended_sign(int a) const { return (a == 0 || a == edim - 1) ? 1 : -1; }

    Rational extended_eta(int a, int b) const {
        if (a != b) return Rational(0);
        return Rational(extended_sign(a));
    }
};

namespace detail {

inline bool so2d_relations_hold(const So2dSet& s) {
    const int n = s.edim;
    const GaussianRational I = GaussianRational::i();
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int e = 0; e < n; ++e) {
                    DiffOp lhs = DiffOp::commutator(s.J[a][b], s.J[c][e]);
                    DiffOp rhs = DiffOp::zero(s.metric.dim);
                    if (!s.extended_eta(a, e).is_zero())
                        rhs += GaussianRational(s.extended_eta(a, e)) * s.J[b][c];
                    if (!s.extended_eta(b, c).is_zero())
                        rhs += GaussianRational(s.extended_eta(b, c)) * s.J[a][e];
                    if (!s.extended_eta(a, c).is_zero())
                        rhs -= GaussianRational(s.extended_eta(a, c)) * s.J[b][e];
                    if (!s.extended_eta(b, e).is_zero())
                        rhs -= GaussianRational(s.extended_eta(b, e)) * s.J[a][c];
                    if (lhs != I * rhs) return false;
                }
    return true;
}

inline So2dSet assemble_so2d(const GeneratorSet& g, int minusSlot, int dSign) {
    const int dim = g.dim();
    So2dSet s(dim);
    const int plusSlot = minusSlot == dim ? dim + 1 : dim;
    s.J.assign(static_cast<size_t>(s.edim), std::vector<DiffOp>(static_cast<size_t>(s.edim), DiffOp(dim)));

    const GaussianRational half(Rational(BigInt(1), BigInt(2)));
    for (int mu = 0; mu < dim; ++mu)
        for (int nu = 0; nu < dim; ++nu)
            if (mu != nu) s.J[mu][nu] = g.L[static_cast<size_t>(mu)][static_cast<size_t>(nu)];

    for (int mu = 0; mu < dim; ++mu) {
        DiffOp jMinus = half * (g.P[static_cast<size_t>(mu)] - g.K[static_cast<size_t>(mu)]);
        DiffOp jPlus = half * (g.P[static_cast<size_t>(mu)] + g.K[static_cast<size_t>(mu)]);
        s.J[minusSlot][mu] = jMinus;
        s.J[mu][minusSlot] = -jMinus;
        s.J[plusSlot][mu] = jPlus;
        s.J[mu][plusSlot] = -jPlus;
    }

    DiffOp dOp = dSign > 0 ? g.D : -g.D;
    s.J[dim][dim + 1] = dOp;
    s.J[dim + 1][dim] = -dOp;

    s.embedding = "slot" + std::to_string(minusSlot) + ",mu = (P-K)/2; slot" +
                  std::to_string(plusSlot) + ",mu = (P+K)/2; J[" + std::to_string(dim) + "][" +
                  std::to_string(dim + 1) + "] = " + (dSign > 0 ? "+D" : "-D");
    return s;
}

}  // namespace detail

// Populates the antisymmetric (d+2)-slot array. The slot layout for the two
// P/K combinations and the sign on the dilation are fixed by brute force over
// the four candidates (minus-combination slot d first, then d+1; +D before -D).
inline So2dSet build_so2d(const GeneratorSet& g) {
    if (!g.calibrated) throw std::invalid_argument("build_so2d: set not calibrated");
    const int dim = g.dim();
    for (int minusSlot : {dim, dim + 1})
        for (int dSign : {1, -1}) {
            So2dSet s = detail::assemble_so2d(g, minusSlot, dSign);
            if (detail::so2d_relations_hold(s)) return s;
        }
    throw std::logic_error("build_so2d: no embedding satisfies the pseudo-orthogonal algebra");
}

// Exact check of [J_ab, J_cd] = i(eta_ad J_bc + eta_bc J_ad - eta_ac J_bd
// - eta_bd J_ac) over every index quadruple.
inline AlgebraReport verify_so2d(const So2dSet& s) {
    AlgebraReport report;
    const int n = s.edim;
    const GaussianRational I = GaussianRational::i();
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int e = 0; e < n; ++e) {
                    DiffOp lhs = DiffOp::commutator(s.J[a][b], s.J[c][e]);
                    DiffOp rhs = DiffOp::zero(s.metric.dim);
                    if (!s.extended_eta(a, e).is_zero())
                        rhs += GaussianRational(s.extended_eta(a, e)) * s.J[b][c];
                    if (!s.extended_eta(b, c).is_zero())
                        rhs += GaussianRational(s.extended_eta(b, c)) * s.J[a][e];
                    if (!s.extended_eta(a, c).is_zero())
                        rhs -= GaussianRational(s.extended_eta(a, c)) * s.J[b][e];
                    if (!s.extended_eta(b, e).is_zero())
                        rhs -= GaussianRational(s.extended_eta(b, e)) * s.J[a][c];
                    rhs = I * rhs;
                    DiffOp residual = lhs - rhs;
                    RelationCheck rc;
                    rc.id = "[J" + std::to_string(a) + std::to_string(b) + ",J" + std::to_string(c) +
                            std::to_string(e) + "]";
                    rc.lhs = lhs.canonical_string();
                    rc.rhs = rhs.canonical_string();
                    rc.residual = residual.canonical_string();
                    rc.pass = residual.is_zero();
                    report.relations.push_back(std::move(rc));
                }
    return report;
}

enum class ScaledKind { Plus, Minus };

// Componentwise-scaled generator family at d = 4: components 0, 1 carry the
// lambda factor and components 2, 3 the eta factor. Plus selects the
// translation fields, minus the special conformal fields. Scale factors may
// be numeric or carry the lam/eta parameter symbols; a numeric lambda must be
// positive. Returns vector-field (lower-index) forms.
inline std::vector<DiffOp> scaled_generators(ScaledKind kind, const Poly& lambda, const Poly& eta,
                                             const GeneratorSet& g) {
    if (g.dim() != 4) throw std::invalid_argument("scaled_generators: requires dimension 4");
    if (lambda.dim() != 4 || eta.dim() != 4)
        throw std::invalid_argument("scaled_generators: scale polynomials must have dimension 4");
    if (lambda.is_constant()) {
        GaussianRational c = lambda.constant_value();
        if (!c.is_real() || !(c.re() > Rational(0)))
            throw std::invalid_argument("scaled_generators: numeric lambda must be > 0");
    }
    const auto& fields = kind == ScaledKind::Plus ? g.vectorFieldP : g.vectorFieldK;
    std::vector<DiffOp> out;
    for (int mu = 0; mu < 4; ++mu) {
        const Poly& scale = mu < 2 ? lambda : eta;
        out.push_back(scale * fields[static_cast<size_t>(mu)]);
    }
    return out;
}

inline Poly lambda_symbol(int dim = 4) { return Poly::variable(dim, VarId::param_lambda()); }
inline Poly eta_symbol(int dim = 4) { return Poly::variable(dim, VarId::param_eta()); }

// Truncated exponential of b^sigma K_sigma applied to x^mu: the flow series
// of the special conformal vector field with symbolic parameters b0..b{d-1},
// summed through order maxOrder (b-degree maxOrder).
inline Poly conformal_flow_series(const GeneratorSet& g, int mu, int maxOrder) {
    const int dim = g.dim();
    if (mu < 0 || mu >= dim) throw std::invalid_argument("conformal_flow_series: index out of range");
    DiffOp generator(dim);
    for (int sigma = 0; sigma < dim; ++sigma)
        generator += Poly::variable(dim, VarId::param_b(sigma)) * g.vectorFieldK[static_cast<size_t>(sigma)];

    Poly current = Poly::variable(dim, VarId::coordinate(mu));
    Poly acc = current;
    Rational factorial(1);
    for (int k = 1; k <= maxOrder; ++k) {
        current = generator.apply(current);
        factorial *= Rational(k);
        acc += GaussianRational(Rational(1) / factorial) * current;
    }
    return acc;
}

}  // namespace warpconv
