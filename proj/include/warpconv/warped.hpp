#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "warpconv/diffop.hpp"
#include "warpconv/metric.hpp"

namespace warpconv {

// Upper-index antisymmetric deformation matrix with polynomial entries. One
// representation covers the symbolic matrix, exact numeric rational matrices,
// and componentwise-scaled symbolic variants. The th symbols name the
// lower-index entries theta_{mu nu}; the upper form carries the metric signs.
class ThetaSpec {
public:
    static ThetaSpec symbolic(int dim) {
        ThetaSpec t(dim);
        Metric g(dim);
        for (int mu = 0; mu < dim; ++mu)
            for (int nu = 0; nu < dim; ++nu) {
                if (mu == nu) continue;
                Poly sym = mu < nu ? Poly::variable(dim, VarId::theta_entry(mu, nu))
                                   : -Poly::variable(dim, VarId::theta_entry(nu, mu));
                GaussianRational raise{Rational(g.sign(mu) * g.sign(nu))};
                t.upper_[static_cast<size_t>(mu)][static_cast<size_t>(nu)] = raise * sym;
            }
        return t;
    }

    static ThetaSpec from_rationals(const std::vector<std::vector<Rational>>& m) {
        int dim = static_cast<int>(m.size());
        ThetaSpec t(dim);
        for (int mu = 0; mu < dim; ++mu) {
            if (static_cast<int>(m[mu].size()) != dim)
                throw std::invalid_argument("ThetaSpec: matrix is not square");
            for (int nu = 0; nu < dim; ++nu)
                t.upper_[mu][nu] = Poly::constant(dim, GaussianRational(m[mu][nu]));
        }
        t.validate();
        return t;
    }

    // Entries s_mu s_nu th^{mu nu}; the scales may carry lam/eta symbols.
    static ThetaSpec scaled_symbolic(const std::vector<Poly>& scales) {
        int dim = static_cast<int>(scales.size());
        ThetaSpec t = symbolic(dim);
        for (int mu = 0; mu < dim; ++mu)
            for (int nu = 0; nu < dim; ++nu)
                t.upper_[mu][nu] = scales[mu] * scales[nu] * t.upper_[mu][nu];
        return t;
    }

    static ThetaSpec from_entries(std::vector<std::vector<Poly>> entries) {
        int dim = static_cast<int>(entries.size());
        ThetaSpec t(dim);
        for (int mu = 0; mu < dim; ++mu) {
            if (static_cast<int>(entries[static_cast<size_t>(mu)].size()) != dim)
                throw std::invalid_argument("ThetaSpec: matrix is not square");
            for (int nu = 0; nu < dim; ++nu)
                t.upper_[static_cast<size_t>(mu)][static_cast<size_t>(nu)] =
                    std::move(entries[static_cast<size_t>(mu)][static_cast<size_t>(nu)]);
        }
        t.validate();
        return t;
    }

    static ThetaSpec zero(int dim) { return ThetaSpec(dim); }

    int dim() const { return dim_; }
    const Poly& upper(int mu, int nu) const { return upper_[static_cast<size_t>(mu)][static_cast<size_t>(nu)]; }

    Poly lower(int mu, int nu, const Metric& g) const {
        Rational s = Rational(g.sign(mu)) * Rational(g.sign(nu));
        return GaussianRational(s) * upper(mu, nu);
    }

    // (theta x)_mu = x^a theta_{a mu} with both theta indices lowered by the
    // metric; the coordinate contracts the first index.
    Poly lowered_contraction_with_x(int mu, const Metric& g) const {
        Poly out(dim_);
        for (int a = 0; a < dim_; ++a)
            out += lower(a, mu, g) * Poly::variable(dim_, VarId::coordinate(a));
        return out;
    }

    void validate() const {
        for (int mu = 0; mu < dim_; ++mu)
            for (int nu = 0; nu < dim_; ++nu)
                if (upper(mu, nu) != -upper(nu, mu))
                    throw std::invalid_argument("ThetaSpec: matrix is not antisymmetric");
    }

private:
    explicit ThetaSpec(int dim)
        : dim_(dim),
          upper_(static_cast<size_t>(dim), std::vector<Poly>(static_cast<size_t>(dim), Poly(dim))) {
        if (dim < 1) throw std::invalid_argument("ThetaSpec: dimension must be >= 1");
    }

    int dim_;
    std::vector<std::vector<Poly>> upper_;
};

struct TwistSeriesConfig {
    std::vector<DiffOp> generators;  // lower-index vector fields, one per coordinate
    ThetaSpec theta;
    int maxOrder = 2;
    int seriesSign = -1;  // prefactor is (seriesSign * i)^k / k!

    TwistSeriesConfig(std::vector<DiffOp> gens, ThetaSpec th, int maxOrd, int sign)
        : generators(std::move(gens)), theta(std::move(th)), maxOrder(maxOrd), seriesSign(sign) {
        int dim = theta.dim();
        if (static_cast<int>(generators.size()) != dim)
            throw std::invalid_argument("TwistSeriesConfig: one generator per coordinate required");
        for (const auto& g : generators)
            if (g.dim() != dim) throw std::invalid_argument("TwistSeriesConfig: dimension mismatch");
        if (maxOrder < 0) throw std::invalid_argument("TwistSeriesConfig: maxOrder must be >= 0");
        if (sign != 1 && sign != -1) throw std::invalid_argument("TwistSeriesConfig: sign must be +/-1");
        theta.validate();
    }
};

struct DeformedProductResult {
    Poly value;
    std::map<int, Poly> orderComponents;
    bool terminated = false;
    int terminationOrder = -1;  // last order that can contribute once terminated

    explicit DeformedProductResult(int dim) : value(dim) {}
};

namespace detail {

// Cached view of a theta entry for the contraction loop.
struct ThetaEntryView {
    bool zero = true;
    bool single = false;
    GaussianRational coeff;
    Monomial mono;
    const Poly* poly = nullptr;
};

inline std::vector<std::vector<ThetaEntryView>> theta_views(const ThetaSpec& theta) {
    int dim = theta.dim();
    std::vector<std::vector<ThetaEntryView>> v(static_cast<size_t>(dim),
                                               std::vector<ThetaEntryView>(static_cast<size_t>(dim)));
    for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b) {
            const Poly& p = theta.upper(a, b);
            ThetaEntryView& view = v[static_cast<size_t>(a)][static_cast<size_t>(b)];
            view.poly = &p;
            if (p.is_zero()) continue;
            view.zero = false;
            if (p.term_count() == 1) {
                view.single = true;
                view.coeff = p.terms().begin()->second;
                view.mono = p.terms().begin()->first;
            }
        }
    return v;
}

// All k-fold generator application chains, indexed by the base-d encoding of
// the index tuple with the outermost (leftmost) generator most significant.
inline std::vector<Poly> extend_chains(const std::vector<Poly>& prev,
                                       const std::vector<DiffOp>& gens) {
    std::vector<Poly> next;
    next.reserve(prev.size() * gens.size());
    for (size_t sigma = 0; sigma < gens.size(); ++sigma)
        for (const Poly& p : prev)
            next.push_back(p.is_zero() ? p : gens[sigma].apply(p));
    return next;
}

inline bool all_zero(const std::vector<Poly>& v) {
    for (const Poly& p : v)
        if (!p.is_zero()) return false;
    return true;
}

inline GaussianRational series_prefactor(int sign, int k) {
    // (sign * i)^k / k!
    static const int reCycle[4] = {1, 0, -1, 0};
    static const int imCycle[4] = {0, 1, 0, -1};
    int s = (k % 2 == 0) ? 1 : sign;
    BigInt fact(1);
    for (int j = 2; j <= k; ++j) fact *= BigInt(j);
    Rational inv(BigInt(1), fact);
    return GaussianRational(Rational(reCycle[k % 4] * s) * inv, Rational(imCycle[k % 4] * s) * inv);
}

}  // namespace detail

// Twist-series deformed product through order cfg.maxOrder:
//   sum_k ((sign*i)^k / k!) theta^{s1 l1} ... theta^{sk lk}
//         (G_{s1}...G_{sk} A)(G_{l1}...G_{lk} B)
// with the index contraction enumerated directly over all d^{2k} tuples.
// Termination is recorded when every generator chain of some length
// annihilates one of the factors.
inline DeformedProductResult twist_product(const Poly& A, const Poly& B,
                                           const TwistSeriesConfig& cfg) {
    const int dim = cfg.theta.dim();
    if (A.dim() != dim || B.dim() != dim)
        throw std::invalid_argument("twist_product: operand dimension mismatch");
    for (const Poly* p : {&A, &B})
        if (p->contains_kind(VarId::Kind::ThetaEntry) || p->contains_kind(VarId::Kind::Param))
            throw std::invalid_argument(
                "twist_product: operands must be polynomials in the coordinates only");

    DeformedProductResult result(dim);
    auto views = detail::theta_views(cfg.theta);

    std::vector<Poly> chainsA{A}, chainsB{B};
    for (int k = 0; k <= cfg.maxOrder; ++k) {
        if (k > 0) {
            chainsA = detail::extend_chains(chainsA, cfg.generators);
            chainsB = detail::extend_chains(chainsB, cfg.generators);
            if (detail::all_zero(chainsA) || detail::all_zero(chainsB)) {
                result.terminated = true;
                result.terminationOrder = k - 1;
                break;
            }
        }

        Poly component(dim);
        if (k == 0) {
            component = A * B;
        } else {
            const size_t count = chainsA.size();
            std::vector<int> digitsA(static_cast<size_t>(k)), digitsB(static_cast<size_t>(k));
            for (size_t codeA = 0; codeA < count; ++codeA) {
                const Poly& pa = chainsA[codeA];
                if (pa.is_zero()) continue;
                {
                    size_t c = codeA;
                    for (int i = k - 1; i >= 0; --i) {
                        digitsA[static_cast<size_t>(i)] = static_cast<int>(c % static_cast<size_t>(dim));
                        c /= static_cast<size_t>(dim);
                    }
                }
                Poly inner(dim);
                for (size_t codeB = 0; codeB < count; ++codeB) {
                    const Poly& pb = chainsB[codeB];
                    if (pb.is_zero()) continue;
                    {
                        size_t c = codeB;
                        for (int i = k - 1; i >= 0; --i) {
                            digitsB[static_cast<size_t>(i)] = static_cast<int>(c % static_cast<size_t>(dim));
                            c /= static_cast<size_t>(dim);
                        }
                    }
                    GaussianRational coeff(1);
                    Monomial mono;
                    Poly generic(dim);
                    bool isGeneric = false;
                    bool isZero = false;
                    for (int i = 0; i < k; ++i) {
                        const auto& view = views[static_cast<size_t>(digitsA[static_cast<size_t>(i)])]
                                                [static_cast<size_t>(digitsB[static_cast<size_t>(i)])];
                        if (view.zero) {
                            isZero = true;
                            break;
                        }
                        if (view.single) {
                            coeff *= view.coeff;
                            mono = mono.times(view.mono);
                        } else {
                            if (!isGeneric) {
                                generic = Poly::term(dim, mono, coeff);
                                isGeneric = true;
                            }
                            generic *= *view.poly;
                        }
                    }
                    if (isZero) continue;
                    if (!isGeneric)
                        inner.add_scaled_shifted(pb, mono, coeff);
                    else
                        inner += generic * pb;
                }
                if (!inner.is_zero()) component += pa * inner;
            }
            component = detail::series_prefactor(cfg.seriesSign, k) * component;
        }
        result.orderComponents.emplace(k, component);
        result.value += component;
    }
    return result;
}

// Deformed commutator: componentwise difference of the two deformed products.
inline DeformedProductResult deformed_commutator(const Poly& A, const Poly& B,
                                                 const TwistSeriesConfig& cfg) {
    DeformedProductResult ab = twist_product(A, B, cfg);
    DeformedProductResult ba = twist_product(B, A, cfg);
    DeformedProductResult out(cfg.theta.dim());
    for (const auto& [k, comp] : ab.orderComponents) {
        Poly diff = comp;
        auto it = ba.orderComponents.find(k);
        if (it != ba.orderComponents.end()) diff -= it->second;
        out.orderComponents.emplace(k, diff);
        out.value += diff;
    }
    for (const auto& [k, comp] : ba.orderComponents) {
        if (out.orderComponents.count(k)) continue;
        out.orderComponents.emplace(k, -comp);
        out.value -= comp;
    }
    out.terminated = ab.terminated && ba.terminated;
    if (out.terminated)
        out.terminationOrder = std::max(ab.terminationOrder, ba.terminationOrder);
    return out;
}

// Fixes the series sign convention by requiring that the translation twist
// reproduce x_mu x_nu - i theta_{mu nu} on the coordinates. Run once at
// startup; a surviving ambiguity or a failure of both candidates indicates an
// implementation bug.
inline int calibrate_series_sign() {
    const int dim = 2;
    Metric g(dim);
    std::vector<DiffOp> translations{DiffOp::derivative(dim, 0), DiffOp::derivative(dim, 1)};
    Poly x0 = g.lowered_coordinate(0);
    Poly x1 = g.lowered_coordinate(1);
    ThetaSpec theta = ThetaSpec::symbolic(dim);
    Poly expected = x0 * x1 - GaussianRational::i() * theta.lower(0, 1, g);
    for (int sign : {1, -1}) {
        TwistSeriesConfig cfg(translations, theta, 2, sign);
        if (twist_product(x0, x1, cfg).value == expected) return sign;
    }
    throw std::logic_error("calibrate_series_sign: neither sign reproduces the translation case");
}

inline int calibrated_series_sign() {
    static const int sign = calibrate_series_sign();
    return sign;
}

inline TwistSeriesConfig make_twist_config(std::vector<DiffOp> generators, ThetaSpec theta,
                                           int maxOrder) {
    return TwistSeriesConfig(std::move(generators), std::move(theta), maxOrder,
                             calibrated_series_sign());
}

// Closed-form references for the deformed coordinate commutator.

// Constant case (translation generators): -2i theta_{mu nu}, indices lowered.
inline Poly moyal_reference(const ThetaSpec& theta, int mu, int nu) {
    Metric g(theta.dim());
    return GaussianRational(Rational(0), Rational(-2)) * theta.lower(mu, nu, g);
}

// Nonconstant case (special conformal generators), first order in theta:
// -2i theta_{mu nu} x^4 - 4i((theta x)_mu x_nu - (theta x)_nu x_mu) x^2.
inline Poly nonconstant_reference(const ThetaSpec& theta, int mu, int nu) {
    const int dim = theta.dim();
    Metric g(dim);
    Poly xsq = g.coordinate_square();
    Poly x4 = xsq * xsq;
    Poly thetaXmu = theta.lowered_contraction_with_x(mu, g);
    Poly thetaXnu = theta.lowered_contraction_with_x(nu, g);
    Poly xmu = g.lowered_coordinate(mu);
    Poly xnu = g.lowered_coordinate(nu);
    GaussianRational m2i(Rational(0), Rational(-2));
    GaussianRational m4i(Rational(0), Rational(-4));
    return m2i * theta.lower(mu, nu, g) * x4 + m4i * (thetaXmu * xnu - thetaXnu * xmu) * xsq;
}

struct ParityReport {
    struct Entry {
        int order;
        bool zero;
        std::string component;
    };
    std::vector<Entry> entries;

    bool pass() const {
        for (const auto& e : entries)
            if (!e.zero) return false;
        return true;
    }
};

// Asserts that every even-order component of the deformed commutator
// vanishes identically, through maxEven.
inline ParityReport parity_vanishing_check(const Poly& A, const Poly& B,
                                           const TwistSeriesConfig& cfg, int maxEven) {
    TwistSeriesConfig wide(cfg.generators, cfg.theta, std::max(cfg.maxOrder, maxEven),
                           cfg.seriesSign);
    DeformedProductResult commutator = deformed_commutator(A, B, wide);
    ParityReport report;
    for (int k = 0; k <= maxEven; k += 2) {
        ParityReport::Entry e;
        e.order = k;
        auto it = commutator.orderComponents.find(k);
        Poly comp = it == commutator.orderComponents.end() ? Poly::zero(cfg.theta.dim()) : it->second;
        e.zero = comp.is_zero();
        e.component = comp.canonical_string();
        report.entries.push_back(std::move(e));
    }
    return report;
}

// ---------------------------------------------------------------------------
// Partial-integration-free reduction of a single (k, l) term of the defining
// double integral. The oscillatory pairing of a v-monomial against a
// u-monomial is evaluated formally:
//   <v^A, u^B> = 0 unless A == B, else (-i)^|A| prod_mu A_mu! eta^{mu mu A_mu}.
// Used to confirm that unequal orders drop out of the series, and to
// re-derive low equal orders through an independent route.

namespace detail {

// coordinates: 0..d-1 -> x, d..2d-1 -> v, 2d..3d-1 -> u
inline Poly pair_v_u(const Poly& wide, int dim) {
    Metric g(dim);
    Poly out(3 * dim);
    for (const auto& [m, c] : wide.terms()) {
        std::vector<uint32_t> expV(static_cast<size_t>(dim), 0), expU(static_cast<size_t>(dim), 0);
        Monomial kept;
        for (const auto& [var, e] : m.factors()) {
            if (var.is_coordinate() && var.index1() >= dim) {
                if (var.index1() < 2 * dim)
                    expV[static_cast<size_t>(var.index1() - dim)] = e;
                else
                    expU[static_cast<size_t>(var.index1() - 2 * dim)] = e;
            } else {
                kept = kept.times(Monomial::variable(var, e));
            }
        }
        if (expV != expU) continue;
        int total = 0;
        GaussianRational factor(1);
        for (int muI = 0; muI < dim; ++muI) {
            uint32_t a = expV[static_cast<size_t>(muI)];
            total += static_cast<int>(a);
            BigInt fact(1);
            for (uint32_t j = 2; j <= a; ++j) fact *= BigInt(j);
            Rational f(fact);
            if (g.sign(muI) < 0 && a % 2 == 1) f = -f;
            factor *= GaussianRational(f);
        }
        // times (-i)^total
        static const int re[4] = {1, 0, -1, 0};
        static const int im[4] = {0, -1, 0, 1};
        factor *= GaussianRational(Rational(re[total % 4]), Rational(im[total % 4]));
        out.add_term(kept, c * factor);
    }
    return out;
}

}  // namespace detail

// The would-be (k, l) contribution of the double-integral definition,
// reduced with the formal pairing rule. Equal orders reproduce the series
// term; unequal orders must assemble to the zero polynomial.
inline Poly formal_pair_term(const Poly& A, const Poly& B, const TwistSeriesConfig& cfg, int k,
                             int l) {
    const int dim = cfg.theta.dim();
    const int wideDim = 3 * dim;
    Metric g(dim);

    // W_v = (theta v)^sigma G_sigma and W_u = u^lambda G_lambda on the
    // widened ring; (theta v)^sigma = theta^{sigma rho} eta_{rho rho} v^rho.
    DiffOp wv(wideDim), wu(wideDim);
    for (int sigma = 0; sigma < dim; ++sigma) {
        Poly thetaV(wideDim);
        for (int rho = 0; rho < dim; ++rho) {
            Poly entry = cfg.theta.upper(sigma, rho).redim(wideDim);
            if (entry.is_zero()) continue;
            thetaV += GaussianRational(Rational(g.sign(rho))) * entry *
                      Poly::variable(wideDim, VarId::coordinate(dim + rho));
        }
        DiffOp gen = cfg.generators[static_cast<size_t>(sigma)].redim(wideDim);
        wv += DiffOp::compose(DiffOp::multiplication(thetaV), gen);
        wu += DiffOp::compose(
            DiffOp::multiplication(Poly::variable(wideDim, VarId::coordinate(2 * dim + sigma))), gen);
    }

    Poly left = A.redim(wideDim);
    for (int i = 0; i < k; ++i) left = wv.apply(left);
    Poly right = B.redim(wideDim);
    for (int j = 0; j < l; ++j) right = wu.apply(right);

    Poly paired = detail::pair_v_u(left * right, dim);
    BigInt kf(1), lf(1);
    for (int j = 2; j <= k; ++j) kf *= BigInt(j);
    for (int j = 2; j <= l; ++j) lf *= BigInt(j);
    return GaussianRational(Rational(BigInt(1), kf * lf)) * paired.redim(dim);
}

struct MixedOrderReport {
    struct Entry {
        int k;
        int l;
        bool zero;
    };
    std::vector<Entry> entries;

    bool pass() const {
        for (const auto& e : entries)
            if (!e.zero) return false;
        return true;
    }
};

// Confirms that the reduction rules kill every unequal-order pair (k, l)
// with k, l <= maxK, k != l.
inline MixedOrderReport unequal_order_vanishing_check(const Poly& A, const Poly& B,
                                                      const TwistSeriesConfig& cfg, int maxK) {
    MixedOrderReport report;
    for (int k = 0; k <= maxK; ++k)
        for (int l = 0; l <= maxK; ++l) {
            if (k == l) continue;
            report.entries.push_back({k, l, formal_pair_term(A, B, cfg, k, l).is_zero()});
        }
    return report;
}

}  // namespace warpconv
