#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "warpconv/rng.hpp"

namespace warpconv {

using Complex = std::complex<double>;
using GridFunction = std::vector<Complex>;
using MatrixC = std::vector<std::vector<Complex>>;

// Finite momentum grid for the massless one-particle space. Weights
// approximate the invariant measure d^n p (2|p|)^{-1}; the 2-omega
// normalization is folded into the weights so the smeared ladder-operator
// relations hold exactly on the grid.
struct MomentumGrid {
    int n = 1;
    std::vector<std::vector<double>> points;
    std::vector<double> weights;

    static MomentumGrid symmetric_line(int count = 8, double spacing = 0.5) {
        if (count < 2 || count % 2 != 0)
            throw std::invalid_argument("MomentumGrid: count must be even and >= 2");
        MomentumGrid g;
        g.n = 1;
        for (int k = 1; k <= count / 2; ++k) {
            for (double sgn : {1.0, -1.0}) {
                double p = sgn * spacing * k;
                g.points.push_back({p});
                g.weights.push_back(spacing / (2.0 * std::abs(p)));
            }
        }
        return g;
    }

    // Axis-aligned nonzero points, +/- k*spacing along each axis.
    static MomentumGrid axis_grid(int n, int perAxis, double spacing) {
        if (n < 1 || n > 3) throw std::invalid_argument("MomentumGrid: n must be 1..3");
        MomentumGrid g;
        g.n = n;
        for (int axis = 0; axis < n; ++axis)
            for (int k = 1; k <= perAxis; ++k)
                for (double sgn : {1.0, -1.0}) {
                    std::vector<double> p(static_cast<size_t>(n), 0.0);
                    p[static_cast<size_t>(axis)] = sgn * spacing * k;
                    g.points.push_back(p);
                    double norm = spacing * k;
                    g.weights.push_back(std::pow(spacing, n) / (2.0 * norm));
                }
        return g;
    }

    size_t modes() const { return points.size(); }

    double omega(size_t i) const {
        double s = 0;
        for (double c : points[i]) s += c * c;
        return std::sqrt(s);
    }

    // on-shell (n+1)-momentum (|p|, p)
    std::vector<double> onshell(size_t i) const {
        std::vector<double> p;
        p.push_back(omega(i));
        for (double c : points[i]) p.push_back(c);
        return p;
    }

    void validate() const {
        if (points.size() != weights.size())
            throw std::invalid_argument("MomentumGrid: points/weights size mismatch");
        for (size_t i = 0; i < points.size(); ++i) {
            if (static_cast<int>(points[i].size()) != n)
                throw std::invalid_argument("MomentumGrid: point dimension mismatch");
            if (omega(i) == 0.0) throw std::invalid_argument("MomentumGrid: point at the origin");
            if (!(weights[i] > 0.0)) throw std::invalid_argument("MomentumGrid: weights must be > 0");
        }
    }

    Complex inner(const GridFunction& f, const GridFunction& g) const {
        Complex s = 0;
        for (size_t i = 0; i < modes(); ++i) s += weights[i] * std::conj(f[i]) * g[i];
        return s;
    }

    double norm(const GridFunction& f) const { return std::sqrt(std::abs(inner(f, f))); }
};

// Antisymmetric upper-index deformation matrix on on-shell momenta,
// skew with respect to the Minkowski product.
struct ThetaNumeric {
    std::vector<std::vector<double>> upper;  // (n+1) x (n+1)

    static ThetaNumeric zero(int n) {
        ThetaNumeric t;
        t.upper.assign(static_cast<size_t>(n + 1), std::vector<double>(static_cast<size_t>(n + 1), 0.0));
        return t;
    }

    void validate() const {
        size_t d = upper.size();
        for (size_t a = 0; a < d; ++a) {
            if (upper[a].size() != d) throw std::invalid_argument("ThetaNumeric: not square");
            for (size_t b = 0; b < d; ++b)
                if (std::abs(upper[a][b] + upper[b][a]) > 1e-14)
                    throw std::invalid_argument("ThetaNumeric: not antisymmetric");
        }
    }

    // p theta q = p_mu theta^{mu nu} q_nu with indices lowered by the
    // Minkowski metric; antisymmetric in (p, q).
    double pairing(const std::vector<double>& p, const std::vector<double>& q) const {
        size_t d = upper.size();
        double s = 0;
        for (size_t a = 0; a < d; ++a) {
            double pa = a == 0 ? p[a] : -p[a];
            if (pa == 0.0) continue;
            for (size_t b = 0; b < d; ++b) {
                double qb = b == 0 ? q[b] : -q[b];
                s += pa * upper[a][b] * qb;
            }
        }
        return s;
    }
};

// Occupation-number basis of the truncated bosonic space over the grid
// modes, with the per-state total on-shell momentum cached for the
// deformation phases.
class FockSpace {
public:
    FockSpace(MomentumGrid grid, int mMax) : grid_(std::move(grid)), mMax_(mMax) {
        grid_.validate();
        if (mMax < 0) throw std::invalid_argument("FockSpace: mMax must be >= 0");
        std::vector<uint8_t> state(grid_.modes(), 0);
        enumerate(state, 0, mMax_);
        std::sort(states_.begin(), states_.end(), [](const auto& a, const auto& b) {
            int ta = 0, tb = 0;
            for (uint8_t v : a) ta += v;
            for (uint8_t v : b) tb += v;
            if (ta != tb) return ta < tb;
            return a < b;
        });
        for (size_t i = 0; i < states_.size(); ++i) index_.emplace(states_[i], i);

        totals_.reserve(states_.size());
        occupations_.reserve(states_.size());
        for (const auto& s : states_) {
            std::vector<double> total(static_cast<size_t>(grid_.n + 1), 0.0);
            int occ = 0;
            for (size_t j = 0; j < s.size(); ++j) {
                if (s[j] == 0) continue;
                occ += s[j];
                auto p = grid_.onshell(j);
                for (size_t a = 0; a < total.size(); ++a) total[a] += s[j] * p[a];
            }
            totals_.push_back(std::move(total));
            occupations_.push_back(occ);
        }
    }

    const MomentumGrid& grid() const { return grid_; }
    int mMax() const { return mMax_; }
    size_t dim() const { return states_.size(); }
    const std::vector<uint8_t>& state(size_t i) const { return states_[i]; }
    int occupation(size_t i) const { return occupations_[i]; }
    const std::vector<double>& total_momentum(size_t i) const { return totals_[i]; }

    size_t index_of(const std::vector<uint8_t>& s) const {
        auto it = index_.find(s);
        if (it == index_.end()) throw std::logic_error("FockSpace: state not in basis");
        return it->second;
    }

private:
    void enumerate(std::vector<uint8_t>& state, size_t mode, int remaining) {
        if (mode == state.size()) {
            states_.push_back(state);
            return;
        }
        for (int k = 0; k <= remaining; ++k) {
            state[mode] = static_cast<uint8_t>(k);
            enumerate(state, mode + 1, remaining - k);
        }
        state[mode] = 0;
    }

    MomentumGrid grid_;
    int mMax_;
    std::vector<std::vector<uint8_t>> states_;
    std::map<std::vector<uint8_t>, size_t> index_;
    std::vector<std::vector<double>> totals_;
    std::vector<int> occupations_;
};

using FockSpacePtr = std::shared_ptr<const FockSpace>;

inline FockSpacePtr make_default_space() {
    return std::make_shared<FockSpace>(MomentumGrid::symmetric_line(), 3);
}

struct FockVector {
    FockSpacePtr space;
    std::vector<Complex> amp;
    bool truncated = false;  // a creation component beyond mMax was dropped

    explicit FockVector(FockSpacePtr s) : space(std::move(s)), amp(space->dim(), Complex(0)) {}

    double norm() const {
        double s = 0;
        for (const Complex& a : amp) s += std::norm(a);
        return std::sqrt(s);
    }

    FockVector& operator+=(const FockVector& o) {
        for (size_t i = 0; i < amp.size(); ++i) amp[i] += o.amp[i];
        truncated = truncated || o.truncated;
        return *this;
    }

    FockVector& operator-=(const FockVector& o) {
        for (size_t i = 0; i < amp.size(); ++i) amp[i] -= o.amp[i];
        truncated = truncated || o.truncated;
        return *this;
    }

    FockVector& operator*=(Complex c) {
        for (Complex& a : amp) a *= c;
        return *this;
    }

    friend FockVector operator+(FockVector a, const FockVector& b) { return a += b; }
    friend FockVector operator-(FockVector a, const FockVector& b) { return a -= b; }
    friend FockVector operator*(Complex c, FockVector v) { return v *= c; }
};

inline Complex inner(const FockVector& a, const FockVector& b) {
    Complex s = 0;
    for (size_t i = 0; i < a.amp.size(); ++i) s += std::conj(a.amp[i]) * b.amp[i];
    return s;
}

inline FockVector vacuum(const FockSpacePtr& space) {
    FockVector v(space);
    v.amp[0] = Complex(1);
    return v;
}

// multiplies each m-particle sector by sqrt(m + 1)
inline FockVector sqrt_number_plus_one(const FockVector& v) {
    FockVector out = v;
    for (size_t i = 0; i < out.amp.size(); ++i)
        out.amp[i] *= std::sqrt(static_cast<double>(v.space->occupation(i)) + 1.0);
    return out;
}

namespace detail {

// Shared kernel for free and deformed ladder operators. phaseSign = 0 gives
// the free operators; otherwise the deformation phase e^{i phaseSign p theta P}
// is attached with P the total momentum of the state the operator acts
// against (the state left after annihilation, the existing state before
// creation; the two agree because p theta p = 0).
inline FockVector ladder_create(const ThetaNumeric* theta, int phaseSign, const GridFunction& f,
                                const FockVector& psi) {
    const FockSpace& sp = *psi.space;
    const MomentumGrid& grid = sp.grid();
    FockVector out(psi.space);
    out.truncated = psi.truncated;
    std::vector<uint8_t> scratch;
    for (size_t s = 0; s < sp.dim(); ++s) {
        if (psi.amp[s] == Complex(0)) continue;
        const auto& state = sp.state(s);
        const bool full = sp.occupation(s) >= sp.mMax();
        for (size_t j = 0; j < grid.modes(); ++j) {
            Complex coeff = std::sqrt(grid.weights[j]) * f[j];
            if (coeff == Complex(0)) continue;
            if (full) {
                out.truncated = true;
                continue;
            }
            scratch = state;
            ++scratch[j];
            size_t t = sp.index_of(scratch);
            Complex phase(1);
            if (theta && phaseSign != 0) {
                double arg = phaseSign * theta->pairing(grid.onshell(j), sp.total_momentum(s));
                phase = std::polar(1.0, arg);
            }
            out.amp[t] += psi.amp[s] * coeff * phase * std::sqrt(static_cast<double>(state[j]) + 1.0);
        }
    }
    return out;
}

inline FockVector ladder_annihilate(const ThetaNumeric* theta, int phaseSign, const GridFunction& f,
                                    const FockVector& psi) {
    const FockSpace& sp = *psi.space;
    const MomentumGrid& grid = sp.grid();
    FockVector out(psi.space);
    out.truncated = psi.truncated;
    std::vector<uint8_t> scratch;
    for (size_t s = 0; s < sp.dim(); ++s) {
        if (psi.amp[s] == Complex(0)) continue;
        const auto& state = sp.state(s);
        for (size_t j = 0; j < grid.modes(); ++j) {
            if (state[j] == 0) continue;
            Complex coeff = std::sqrt(grid.weights[j]) * std::conj(f[j]);
            if (coeff == Complex(0)) continue;
            scratch = state;
            --scratch[j];
            size_t t = sp.index_of(scratch);
            Complex phase(1);
            if (theta && phaseSign != 0) {
                double arg = -phaseSign * theta->pairing(grid.onshell(j), sp.total_momentum(t));
                phase = std::polar(1.0, arg);
            }
            out.amp[t] += psi.amp[s] * coeff * phase * std::sqrt(static_cast<double>(state[j]));
        }
    }
    return out;
}

}  // namespace detail

inline FockVector create(const GridFunction& f, const FockVector& psi) {
    return detail::ladder_create(nullptr, 0, f, psi);
}

inline FockVector annihilate(const GridFunction& f, const FockVector& psi) {
    return detail::ladder_annihilate(nullptr, 0, f, psi);
}

inline GridFunction conjugated(const GridFunction& f) {
    GridFunction g(f.size());
    for (size_t i = 0; i < f.size(); ++i) g[i] = std::conj(f[i]);
    return g;
}

// phi(f) = a(conj(fMinus)) + a*(fPlus)
inline FockVector field(const GridFunction& fPlus, const GridFunction& fMinus,
                        const FockVector& psi) {
    return annihilate(conjugated(fMinus), psi) + create(fPlus, psi);
}

// Phase-vs-ladder ordering for the deformed operators, calibrated once
// against the two-creator multiplier identity and then frozen.
inline int calibrated_deformation_sign();

inline FockVector deformed_create(const ThetaNumeric& theta, const GridFunction& f,
                                  const FockVector& psi, int sign) {
    return detail::ladder_create(&theta, sign, f, psi);
}

inline FockVector deformed_annihilate(const ThetaNumeric& theta, const GridFunction& f,
                                      const FockVector& psi, int sign) {
    return detail::ladder_annihilate(&theta, sign, f, psi);
}

// Momentum-phase realization of the field deformed along the translation
// group: each ladder operator is dressed with e^{+/-i p theta P}.
inline FockVector deformed_field_P(const ThetaNumeric& theta, const GridFunction& fPlus,
                                   const GridFunction& fMinus, const FockVector& psi) {
    int sign = calibrated_deformation_sign();
    return deformed_annihilate(theta, conjugated(fMinus), psi, sign) +
           deformed_create(theta, fPlus, psi, sign);
}

// --- one-particle operators and second quantization --------------------------

inline GridFunction apply_matrix(const MatrixC& v, const GridFunction& f) {
    size_t n = f.size();
    GridFunction out(n, Complex(0));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) out[i] += v[i][j] * f[j];
    return out;
}

// Unitarity in the weighted grid inner product: V^dagger W V = W with
// W = diag(weights).
inline double unitarity_defect(const MatrixC& v, const MomentumGrid& grid) {
    size_t n = grid.modes();
    double worst = 0;
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b) {
            Complex s = 0;
            for (size_t c = 0; c < n; ++c) s += grid.weights[c] * std::conj(v[c][a]) * v[c][b];
            Complex want = a == b ? Complex(grid.weights[a]) : Complex(0);
            worst = std::max(worst, std::abs(s - want));
        }
    return worst;
}

inline double involution_defect(const MatrixC& v) {
    size_t n = v.size();
    double worst = 0;
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b) {
            Complex s = 0;
            for (size_t c = 0; c < n; ++c) s += v[a][c] * v[c][b];
            Complex want = a == b ? Complex(1) : Complex(0);
            worst = std::max(worst, std::abs(s - want));
        }
    return worst;
}

// Gamma(V): applies the one-particle unitary to every tensor slot. The
// vacuum is invariant by construction.
inline FockVector second_quantize(const MatrixC& v, const FockVector& psi, double tol = 1e-12) {
    const FockSpace& sp = *psi.space;
    if (unitarity_defect(v, sp.grid()) > tol)
        throw std::invalid_argument("second_quantize: operator is not unitary on the grid");

    FockVector out(psi.space);
    out.truncated = psi.truncated;
    for (size_t s = 0; s < sp.dim(); ++s) {
        if (psi.amp[s] == Complex(0)) continue;
        const auto& state = sp.state(s);
        // build Gamma(V)|state> by applying rotated creators to the vacuum
        FockVector cur = vacuum(psi.space);
        double normFact = 1.0;
        for (size_t j = 0; j < state.size(); ++j) {
            for (uint8_t r = 0; r < state[j]; ++r) {
                // rotated mode creator: the grid function of the j-th mode is
                // delta_j / sqrt(w_j); apply V to it and feed the creator
                GridFunction column(sp.grid().modes());
                for (size_t i = 0; i < column.size(); ++i)
                    column[i] = v[i][j] / std::sqrt(sp.grid().weights[j]);
                cur = create(column, cur);
            }
            for (uint8_t r = 2; r <= state[j]; ++r) normFact *= r;
        }
        cur *= psi.amp[s] / std::sqrt(normFact);
        out += cur;
    }
    return out;
}

// Self-adjoint involutive unitary on the weighted one-particle space:
// V = 1 - 2 |psi><psi| / <psi, psi>, with the bra taken in the weighted
// inner product.
inline MatrixC make_householder(const MomentumGrid& grid, const GridFunction& psi) {
    size_t n = grid.modes();
    Complex nrm = grid.inner(psi, psi);
    if (std::abs(nrm) == 0.0) throw std::invalid_argument("make_householder: zero vector");
    MatrixC v(n, std::vector<Complex>(n, Complex(0)));
    for (size_t i = 0; i < n; ++i) {
        v[i][i] = Complex(1);
        for (size_t j = 0; j < n; ++j)
            v[i][j] -= 2.0 * psi[i] * grid.weights[j] * std::conj(psi[j]) / nrm;
    }
    return v;
}

// --- smearing ----------------------------------------------------------------

struct SpacetimeSamples {
    std::vector<std::vector<double>> points;  // (n+1)-dimensional sample positions
    std::vector<double> weights;
    std::vector<Complex> values;
};

// f^{+/-}(p) = sum_j w_j f(x_j) e^{+/- i p.x_j} with p on-shell and
// p.x = |p| x^0 - p.x (Minkowski).
inline std::pair<GridFunction, GridFunction> smear(const SpacetimeSamples& f,
                                                   const MomentumGrid& grid) {
    if (f.points.size() != f.weights.size() || f.points.size() != f.values.size())
        throw std::invalid_argument("smear: sample arrays must have equal length");
    GridFunction plus(grid.modes(), Complex(0)), minus(grid.modes(), Complex(0));
    for (size_t i = 0; i < grid.modes(); ++i) {
        auto p = grid.onshell(i);
        for (size_t j = 0; j < f.points.size(); ++j) {
            const auto& x = f.points[j];
            if (x.size() != p.size()) throw std::invalid_argument("smear: sample dimension mismatch");
            double px = p[0] * x[0];
            for (size_t a = 1; a < p.size(); ++a) px -= p[a] * x[a];
            plus[i] += f.weights[j] * f.values[j] * std::polar(1.0, px);
            minus[i] += f.weights[j] * f.values[j] * std::polar(1.0, -px);
        }
    }
    return {plus, minus};
}

// --- calibration --------------------------------------------------------------

// Symmetric tensor -> occupation amplitudes. The tensor is given on index
// tuples (i_1..i_m); the amplitude of an occupation state n is
// sqrt(m!/prod n_j!) sqrt(prod w) Psi(sorted tuple).
inline FockVector occupation_from_symmetric_tensor(
    const FockSpacePtr& space, int m, const std::function<Complex(const std::vector<size_t>&)>& tensor) {
    const FockSpace& sp = *space;
    FockVector out(space);
    double mFact = 1.0;
    for (int j = 2; j <= m; ++j) mFact *= j;
    for (size_t s = 0; s < sp.dim(); ++s) {
        if (sp.occupation(s) != m) continue;
        const auto& state = sp.state(s);
        std::vector<size_t> tuple;
        double denom = 1.0;
        double wprod = 1.0;
        for (size_t j = 0; j < state.size(); ++j) {
            for (uint8_t r = 0; r < state[j]; ++r) tuple.push_back(j);
            for (uint8_t r = 2; r <= state[j]; ++r) denom *= r;
            wprod *= std::pow(sp.grid().weights[j], static_cast<double>(state[j]));
        }
        out.amp[s] = std::sqrt(mFact / denom) * std::sqrt(wprod) * tensor(tuple);
    }
    return out;
}

namespace detail {

inline bool two_creator_identity_holds(int sign) {
    auto space = std::make_shared<FockSpace>(MomentumGrid::symmetric_line(2, 0.7), 2);
    ThetaNumeric theta = ThetaNumeric::zero(1);
    theta.upper[0][1] = 0.37;
    theta.upper[1][0] = -0.37;

    GridFunction f1 = {Complex(0.8, 0.1), Complex(-0.3, 0.45)};
    GridFunction f2 = {Complex(0.2, -0.7), Complex(0.55, 0.25)};

    FockVector lhs = deformed_create(theta, f1, deformed_create(theta, f2, vacuum(space), sign), sign);

    const MomentumGrid& grid = space->grid();
    auto sTensor = [&](const std::vector<size_t>& tuple) {
        // sqrt(2!) P_2 applied to S_2 (f1 x f2), S_2(p,q) = e^{i p theta q}
        Complex sym = 0;
        const std::vector<std::pair<size_t, size_t>> perms = {{tuple[0], tuple[1]},
                                                              {tuple[1], tuple[0]}};
        for (const auto& [a, b] : perms) {
            double phase = theta.pairing(grid.onshell(a), grid.onshell(b));
            sym += std::polar(1.0, phase) * f1[a] * f2[b];
        }
        // (1/2!) * sum over the 2 permutations, times sqrt(2!)
        return sym / 2.0 * std::sqrt(2.0);
    };
    FockVector rhs = occupation_from_symmetric_tensor(space, 2, sTensor);

    FockVector diff = lhs - rhs;
    return diff.norm() <= 1e-10 * std::max(1.0, rhs.norm());
}

}  // namespace detail

inline int calibrated_deformation_sign() {
    static const int sign = [] {
        bool plus = detail::two_creator_identity_holds(1);
        bool minus = detail::two_creator_identity_holds(-1);
        if (plus == minus)
            throw std::logic_error("calibrated_deformation_sign: calibration did not single out a sign");
        return plus ? 1 : -1;
    }();
    return sign;
}

// --- randomized verification batteries ----------------------------------------

struct BatteryReport {
    std::string name;
    uint64_t samples = 0;
    double maxResidual = 0.0;
    double tolerance = 0.0;
    uint64_t violations = 0;

    bool pass() const { return violations == 0; }

    void record(double residual) {
        maxResidual = std::max(maxResidual, residual);
        if (residual > tolerance) ++violations;
    }
};

struct FockTolerances {
    double unitarity = 1e-12;  // linearity, vacuum, commutators
    double identity = 1e-10;   // multiplier identity, hermiticity, bounds, conjugation
};

namespace detail {

inline GridFunction random_grid_function(SplitMix64& rng, size_t modes, bool normalized,
                                         const MomentumGrid* grid) {
    GridFunction f(modes);
    for (auto& c : f)
        c = Complex(static_cast<double>(rng.range(-1000, 1000)) / 1000.0,
                    static_cast<double>(rng.range(-1000, 1000)) / 1000.0);
    if (normalized && grid) {
        double n = grid->norm(f);
        if (n > 0)
            for (auto& c : f) c /= n;
    }
    return f;
}

inline ThetaNumeric random_theta(SplitMix64& rng, int n) {
    ThetaNumeric t = ThetaNumeric::zero(n);
    for (int a = 0; a <= n; ++a)
        for (int b = a + 1; b <= n; ++b) {
            double v = static_cast<double>(rng.range(-1000, 1000)) / 500.0;
            t.upper[static_cast<size_t>(a)][static_cast<size_t>(b)] = v;
            t.upper[static_cast<size_t>(b)][static_cast<size_t>(a)] = -v;
        }
    return t;
}

// random normalized state supported on occupation <= mMax - headroom
inline FockVector random_safe_state(SplitMix64& rng, const FockSpacePtr& space, int headroom) {
    FockVector v(space);
    int cap = space->mMax() - headroom;
    for (size_t i = 0; i < space->dim(); ++i) {
        if (space->occupation(i) > cap) continue;
        v.amp[i] = Complex(static_cast<double>(rng.range(-1000, 1000)) / 1000.0,
                           static_cast<double>(rng.range(-1000, 1000)) / 1000.0);
    }
    double n = v.norm();
    if (n > 0) v *= Complex(1.0 / n);
    return v;
}

}  // namespace detail

// [a(f), a*(g)] = (f, g) and [a(f), a(g)] = 0 on the truncation-safe sector.
inline BatteryReport commutator_battery(const FockSpacePtr& space, uint64_t samples, uint64_t seed,
                                        double tol = 1e-12) {
    BatteryReport report{"smeared commutation relations", samples, 0.0, tol, 0};
    const MomentumGrid& grid = space->grid();
    for (uint64_t i = 0; i < samples; ++i) {
        SplitMix64 rng = SplitMix64::derived(seed, i);
        GridFunction f = detail::random_grid_function(rng, grid.modes(), true, &grid);
        GridFunction g = detail::random_grid_function(rng, grid.modes(), true, &grid);
        FockVector psi = detail::random_safe_state(rng, space, 1);

        FockVector lhs = annihilate(f, create(g, psi)) - create(g, annihilate(f, psi));
        FockVector want = psi;
        want *= grid.inner(f, g);
        report.record((lhs - want).norm());

        FockVector sym = annihilate(f, annihilate(g, psi)) - annihilate(g, annihilate(f, psi));
        report.record(sym.norm());
    }
    return report;
}

// The deformed field agrees with the free field on the vacuum.
inline BatteryReport vacuum_battery(const FockSpacePtr& space, uint64_t samples, uint64_t seed,
                                    double tol = 1e-12) {
    BatteryReport report{"vacuum invariance of the deformation", samples, 0.0, tol, 0};
    const MomentumGrid& grid = space->grid();
    for (uint64_t i = 0; i < samples; ++i) {
        SplitMix64 rng = SplitMix64::derived(seed, i);
        GridFunction fp = detail::random_grid_function(rng, grid.modes(), false, nullptr);
        GridFunction fm = detail::random_grid_function(rng, grid.modes(), false, nullptr);
        ThetaNumeric theta = detail::random_theta(rng, grid.n);
        FockVector omega = vacuum(space);
        FockVector deformed = deformed_field_P(theta, fp, fm, omega);
        FockVector free = field(fp, fm, omega);
        double scale = std::max(1.0, free.norm());
        report.record((deformed - free).norm() / scale);
    }
    return report;
}

// <Phi, phi_theta(f) Psi> = <phi_theta(fbar) Phi, Psi> on the safe sector;
// the conjugate smearing swaps and conjugates the momentum pieces.
inline BatteryReport hermiticity_check(const FockSpacePtr& space, uint64_t samples, uint64_t seed,
                                       double tol = 1e-10) {
    BatteryReport report{"hermiticity of the deformed field", samples, 0.0, tol, 0};
    const MomentumGrid& grid = space->grid();
    for (uint64_t i = 0; i < samples; ++i) {
        SplitMix64 rng = SplitMix64::derived(seed, i);
        GridFunction fp = detail::random_grid_function(rng, grid.modes(), false, nullptr);
        GridFunction fm = detail::random_grid_function(rng, grid.modes(), false, nullptr);
        ThetaNumeric theta = detail::random_theta(rng, grid.n);
        FockVector phi = detail::random_safe_state(rng, space, 1);
        FockVector psi = detail::random_safe_state(rng, space, 1);

        GridFunction fpBar = conjugated(fm);
        GridFunction fmBar = conjugated(fp);

        if (rng.below(2) == 0) {
            Complex lhs = inner(phi, deformed_field_P(theta, fp, fm, psi));
            Complex rhs = inner(deformed_field_P(theta, fpBar, fmBar, phi), psi);
            report.record(std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
        } else {
            // conjugated variant built from a random involutive unitary
            GridFunction h = detail::random_grid_function(rng, grid.modes(), false, nullptr);
            MatrixC v = make_householder(grid, h);
            auto analogue = [&](const GridFunction& plus, const GridFunction& minus,
                                const FockVector& state) {
                GridFunction tp = apply_matrix(v, plus);
                GridFunction tm = conjugated(apply_matrix(v, conjugated(minus)));
                return second_quantize(v, deformed_field_P(theta, tp, tm, second_quantize(v, state)));
            };
            Complex lhs = inner(phi, analogue(fp, fm, psi));
            Complex rhs = inner(analogue(fpBar, fmBar, phi), psi);
            report.record(std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
        }
    }
    return report;
}

// || phi_theta(f) Psi || <= ||f+|| ||sqrt(N+1) Psi|| + ||f-|| ||sqrt(N+1) Psi||
inline BatteryReport bound_check(const FockSpacePtr& space, uint64_t samples, uint64_t seed,
                                 double tol = 1e-10) {
    BatteryReport report{"free-field bound for the deformed field", samples, 0.0, tol, 0};
    const MomentumGrid& grid = space->grid();
    for (uint64_t i = 0; i < samples; ++i) {
        SplitMix64 rng = SplitMix64::derived(seed, i);
        GridFunction fp = detail::random_grid_function(rng, grid.modes(), false, nullptr);
        GridFunction fm = detail::random_grid_function(rng, grid.modes(), false, nullptr);
        ThetaNumeric theta = detail::random_theta(rng, grid.n);
        FockVector psi = detail::random_safe_state(rng, space, 1);

        double lhs = deformed_field_P(theta, fp, fm, psi).norm();
        double nPlus = sqrt_number_plus_one(psi).norm();
        double rhs = grid.norm(fp) * nPlus + grid.norm(fm) * nPlus;
        report.record(std::max(0.0, lhs - rhs));
    }
    return report;
}

// Multiplier identity for m deformed creators on the vacuum.
inline BatteryReport multiplier_identity_check(const FockSpacePtr& space, int m, uint64_t samples,
                                               uint64_t seed, double tol = 1e-10) {
    BatteryReport report{"multiplier identity m=" + std::to_string(m), samples, 0.0, tol, 0};
    const MomentumGrid& grid = space->grid();
    if (m > space->mMax()) throw std::invalid_argument("multiplier_identity_check: m exceeds truncation");
    int sign = calibrated_deformation_sign();
    for (uint64_t it = 0; it < samples; ++it) {
        SplitMix64 rng = SplitMix64::derived(seed, it);
        ThetaNumeric theta = detail::random_theta(rng, grid.n);
        std::vector<GridFunction> fs;
        for (int k = 0; k < m; ++k)
            fs.push_back(detail::random_grid_function(rng, grid.modes(), false, nullptr));

        FockVector lhs = vacuum(space);
        for (int k = m - 1; k >= 0; --k) lhs = deformed_create(theta, fs[static_cast<size_t>(k)], lhs, sign);

        auto tensor = [&](const std::vector<size_t>& tuple) {
            // sqrt(m!) P_m (S_m (f_1 x ... x f_m)),
            // S_m(p_1..p_m) = prod_{l<k} e^{i p_l theta p_k}
            std::vector<size_t> perm(tuple.size());
            for (size_t k = 0; k < perm.size(); ++k) perm[k] = k;
            Complex sym = 0;
            double mFact = 1.0;
            for (size_t k = 2; k <= perm.size(); ++k) mFact *= static_cast<double>(k);
            do {
                Complex term = 1;
                for (size_t k = 0; k < perm.size(); ++k) term *= fs[k][tuple[perm[k]]];
                double phase = 0;
                for (size_t l = 0; l < perm.size(); ++l)
                    for (size_t k = l + 1; k < perm.size(); ++k)
                        phase += theta.pairing(grid.onshell(tuple[perm[l]]),
                                               grid.onshell(tuple[perm[k]]));
                sym += std::polar(1.0, phase) * term;
            } while (std::next_permutation(perm.begin(), perm.end()));
            return sym / mFact * std::sqrt(mFact);
        };
        FockVector rhs = occupation_from_symmetric_tensor(space, m, tensor);
        report.record((lhs - rhs).norm() / std::max(1.0, rhs.norm()));
    }
    return report;
}

// Norm chain for the conjugated deformation: the outer second-quantized
// involution must not change the norm, and the one-particle pieces keep
// their norms under the involution.
inline BatteryReport conjugation_identity_check(const FockSpacePtr& space, uint64_t samples,
                                                uint64_t seed, double tol = 1e-10) {
    BatteryReport report{"conjugated deformation norm chain", samples, 0.0, tol, 0};
    const MomentumGrid& grid = space->grid();
    for (uint64_t i = 0; i < samples; ++i) {
        SplitMix64 rng = SplitMix64::derived(seed, i);
        GridFunction fp = detail::random_grid_function(rng, grid.modes(), false, nullptr);
        GridFunction fm = detail::random_grid_function(rng, grid.modes(), false, nullptr);
        ThetaNumeric theta = detail::random_theta(rng, grid.n);
        FockVector psi = detail::random_safe_state(rng, space, 1);

        MatrixC v;
        if (i == 0) {
            // identity involution: the chain collapses to the plain norm
            v.assign(grid.modes(), std::vector<Complex>(grid.modes(), Complex(0)));
            for (size_t a = 0; a < grid.modes(); ++a) v[a][a] = Complex(1);
        } else {
            GridFunction h = detail::random_grid_function(rng, grid.modes(), false, nullptr);
            v = make_householder(grid, h);
        }
        if (involution_defect(v) > 1e-12)
            throw std::logic_error("conjugation_identity_check: synthesized map is not involutive");

        GridFunction tp = apply_matrix(v, fp);
        GridFunction tm = conjugated(apply_matrix(v, conjugated(fm)));

        FockVector rotated = second_quantize(v, psi);
        FockVector core = deformed_field_P(theta, tp, tm, rotated);
        double lhs = second_quantize(v, core).norm();
        double rhs = core.norm();
        report.record(std::abs(lhs - rhs) / std::max(1.0, rhs));

        report.record(std::abs(grid.norm(tp) - grid.norm(fp)) / std::max(1.0, grid.norm(fp)));
        report.record(std::abs(grid.norm(apply_matrix(v, fm)) - grid.norm(fm)) /
                      std::max(1.0, grid.norm(fm)));
    }
    return report;
}

// Norm preservation of the second-quantized unitary.
inline BatteryReport gamma_norm_battery(const FockSpacePtr& space, uint64_t samples, uint64_t seed,
                                        double tol = 1e-12) {
    BatteryReport report{"second-quantized norm preservation", samples, 0.0, tol, 0};
    const MomentumGrid& grid = space->grid();
    for (uint64_t i = 0; i < samples; ++i) {
        SplitMix64 rng = SplitMix64::derived(seed, i);
        GridFunction h = detail::random_grid_function(rng, grid.modes(), false, nullptr);
        MatrixC v = make_householder(grid, h);
        FockVector psi = detail::random_safe_state(rng, space, 0);
        report.record(std::abs(second_quantize(v, psi).norm() - psi.norm()));
    }
    return report;
}

}  // namespace warpconv
