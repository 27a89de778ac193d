#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "warpconv/metric.hpp"
#include "warpconv/poly.hpp"
#include "warpconv/rational.hpp"
#include "warpconv/rng.hpp"

namespace warpconv {

// Contravariant four-vector with exact rational components.
struct Vec4 {
    std::array<Rational, 4> c{};

    Vec4() = default;
    Vec4(Rational a, Rational b, Rational d, Rational e) : c{std::move(a), std::move(b), std::move(d), std::move(e)} {}

    const Rational& operator[](int i) const { return c[static_cast<size_t>(i)]; }
    Rational& operator[](int i) { return c[static_cast<size_t>(i)]; }

    friend Vec4 operator+(const Vec4& a, const Vec4& b) {
        Vec4 r;
        for (int i = 0; i < 4; ++i) r[i] = a[i] + b[i];
        return r;
    }

    friend Vec4 operator-(const Vec4& a, const Vec4& b) {
        Vec4 r;
        for (int i = 0; i < 4; ++i) r[i] = a[i] - b[i];
        return r;
    }

    Vec4 operator-() const {
        Vec4 r;
        for (int i = 0; i < 4; ++i) r[i] = -c[static_cast<size_t>(i)];
        return r;
    }

    friend bool operator==(const Vec4& a, const Vec4& b) { return a.c == b.c; }

    bool is_zero() const {
        for (const auto& v : c)
            if (!v.is_zero()) return false;
        return true;
    }

    std::string to_string() const {
        std::string s = "(";
        for (int i = 0; i < 4; ++i) {
            if (i) s += ", ";
            s += c[static_cast<size_t>(i)].to_string();
        }
        return s + ")";
    }
};

using Mat4 = std::array<std::array<Rational, 4>, 4>;

inline int metric_sign4(int mu) { return mu == 0 ? 1 : -1; }

inline Rational minkowski_square(const Vec4& x) {
    return x[0] * x[0] - x[1] * x[1] - x[2] * x[2] - x[3] * x[3];
}

inline Rational minkowski_dot(const Vec4& a, const Vec4& b) {
    return a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3];
}

inline bool in_right_wedge(const Vec4& x) { return x[1] > x[0].abs(); }
inline bool in_left_wedge(const Vec4& x) { return x[1] < -(x[0].abs()); }

inline bool in_closed_forward_cone(const Vec4& v) {
    return v[0] >= Rational(0) && minkowski_square(v) >= Rational(0);
}

// sigma_b(x) = 1 - 2 b.x + b^2 x^2
inline Rational scale_factor(const Vec4& b, const Vec4& x) {
    return Rational(1) - Rational(2) * minkowski_dot(b, x) +
           minkowski_square(b) * minkowski_square(x);
}

class SingularPointError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// x_b^mu = (x^mu - b^mu x^2) / sigma_b(x), componentwise contravariant.
inline Vec4 special_conformal_map(const Vec4& b, const Vec4& x) {
    Rational sigma = scale_factor(b, x);
    if (sigma.is_zero()) throw SingularPointError("special_conformal_map: sigma_b(x) = 0");
    Rational xsq = minkowski_square(x);
    Vec4 r;
    for (int mu = 0; mu < 4; ++mu) r[mu] = (x[mu] - b[mu] * xsq) / sigma;
    return r;
}

// Admissible deformation matrix, parameterized by lambda >= 0 and eta. The
// displayed matrix is the mixed-index action on contravariant vectors:
//   (theta v)^0 = lambda v^1, (theta v)^1 = lambda v^0,
//   (theta v)^2 = eta v^3,    (theta v)^3 = -eta v^2.
// The antisymmetric upper-index form follows by raising with the metric.
struct ThetaMatrix {
    Rational lambda;
    Rational eta;

    ThetaMatrix(Rational lam, Rational et) : lambda(std::move(lam)), eta(std::move(et)) {
        if (lambda < Rational(0)) throw std::invalid_argument("ThetaMatrix: lambda must be >= 0");
    }

    Mat4 mixed() const {
        Mat4 m{};
        m[0][1] = lambda;
        m[1][0] = lambda;
        m[2][3] = eta;
        m[3][2] = -eta;
        return m;
    }

    Mat4 upper() const {
        Mat4 u = mixed();
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b)
                if (metric_sign4(b) < 0) u[static_cast<size_t>(a)][static_cast<size_t>(b)] =
                    -u[static_cast<size_t>(a)][static_cast<size_t>(b)];
        return u;
    }

    Vec4 apply(const Vec4& v) const {
        return Vec4(lambda * v[1], lambda * v[0], eta * v[3], -(eta * v[2]));
    }
};

inline Vec4 mat_apply(const Mat4& m, const Vec4& v) {
    Vec4 r;
    for (int i = 0; i < 4; ++i) {
        Rational acc(0);
        for (int j = 0; j < 4; ++j) acc += m[static_cast<size_t>(i)][static_cast<size_t>(j)] * v[j];
        r[i] = acc;
    }
    return r;
}

inline Mat4 mat_mul(const Mat4& a, const Mat4& b) {
    Mat4 r{};
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k) {
            if (a[static_cast<size_t>(i)][static_cast<size_t>(k)].is_zero()) continue;
            for (int j = 0; j < 4; ++j)
                r[static_cast<size_t>(i)][static_cast<size_t>(j)] +=
                    a[static_cast<size_t>(i)][static_cast<size_t>(k)] *
                    b[static_cast<size_t>(k)][static_cast<size_t>(j)];
        }
    return r;
}

inline Mat4 mat_transpose(const Mat4& a) {
    Mat4 r{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            r[static_cast<size_t>(i)][static_cast<size_t>(j)] = a[static_cast<size_t>(j)][static_cast<size_t>(i)];
    return r;
}

// Exact Lorentz transformation: Lambda^T eta Lambda = eta is verified at
// construction. Orthochronous iff the time-time entry is positive.
struct LorentzTransform {
    Mat4 matrix{};
    bool orthochronous = true;

    explicit LorentzTransform(Mat4 m) : matrix(std::move(m)) {
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) {
                Rational acc(0);
                for (int c = 0; c < 4; ++c)
                    acc += matrix[static_cast<size_t>(c)][static_cast<size_t>(a)] * Rational(metric_sign4(c)) *
                           matrix[static_cast<size_t>(c)][static_cast<size_t>(b)];
                Rational want = a == b ? Rational(metric_sign4(a)) : Rational(0);
                if (acc != want)
                    throw std::invalid_argument("LorentzTransform: matrix does not preserve the metric");
            }
        orthochronous = matrix[0][0] > Rational(0);
    }
};

inline LorentzTransform lorentz_identity() {
    Mat4 m{};
    for (int i = 0; i < 4; ++i) m[static_cast<size_t>(i)][static_cast<size_t>(i)] = Rational(1);
    return LorentzTransform(m);
}

// Boost in the 0-1 plane from an exact rational point on the unit hyperbola.
inline LorentzTransform lorentz_boost01(const Rational& ch, const Rational& sh) {
    if (ch * ch - sh * sh != Rational(1) || !(ch > Rational(0)))
        throw std::invalid_argument("lorentz_boost01: (ch, sh) not on the unit hyperbola");
    Mat4 m{};
    m[0][0] = ch;
    m[0][1] = sh;
    m[1][0] = sh;
    m[1][1] = ch;
    m[2][2] = Rational(1);
    m[3][3] = Rational(1);
    return LorentzTransform(m);
}

// Rotation in the 2-3 plane from an exact rational point on the unit circle.
inline LorentzTransform lorentz_rot23(const Rational& c, const Rational& s) {
    if (c * c + s * s != Rational(1))
        throw std::invalid_argument("lorentz_rot23: (c, s) not on the unit circle");
    Mat4 m{};
    m[0][0] = Rational(1);
    m[1][1] = Rational(1);
    m[2][2] = c;
    m[2][3] = -s;
    m[3][2] = s;
    m[3][3] = c;
    return LorentzTransform(m);
}

// The reflection j = diag(-1, -1, 1, 1); antichronous, det +1.
inline LorentzTransform lorentz_reflection_j() {
    Mat4 m{};
    m[0][0] = Rational(-1);
    m[1][1] = Rational(-1);
    m[2][2] = Rational(1);
    m[3][3] = Rational(1);
    return LorentzTransform(m);
}

// gamma_Lambda(theta) on the upper-index representation: Lambda theta
// Lambda^T for orthochronous Lambda, with an extra minus sign otherwise.
inline Mat4 gamma_lambda(const LorentzTransform& L, const Mat4& upperTheta) {
    Mat4 r = mat_mul(mat_mul(L.matrix, upperTheta), mat_transpose(L.matrix));
    if (!L.orthochronous)
        for (auto& row : r)
            for (auto& v : row) v = -v;
    return r;
}

// Tests whether an upper-index antisymmetric matrix lies in the admissible
// family; on success returns the (lambda, eta) pair.
inline std::optional<std::pair<Rational, Rational>> is_admissible(const Mat4& upper) {
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            if (upper[static_cast<size_t>(a)][static_cast<size_t>(b)] !=
                -upper[static_cast<size_t>(b)][static_cast<size_t>(a)])
                return std::nullopt;
    // mixed action M^m_n = theta^{m a} eta_{a n}
    Mat4 m = upper;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            if (metric_sign4(b) < 0)
                m[static_cast<size_t>(a)][static_cast<size_t>(b)] =
                    -m[static_cast<size_t>(a)][static_cast<size_t>(b)];
    Rational lambda = m[0][1];
    Rational eta = m[2][3];
    if (m[1][0] != lambda || m[3][2] != -eta) return std::nullopt;
    if (lambda < Rational(0)) return std::nullopt;
    static const std::pair<int, int> structural[] = {{0, 1}, {1, 0}, {2, 3}, {3, 2}};
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            bool isStructural = false;
            for (auto [p, q] : structural)
                if (a == p && b == q) isStructural = true;
            if (!isStructural && !m[static_cast<size_t>(a)][static_cast<size_t>(b)].is_zero())
                return std::nullopt;
        }
    return std::make_pair(lambda, eta);
}

// --- deterministic exact sampling ------------------------------------------

// Numerator/denominator ranges for the batch checks; coverage knobs only.
struct WedgeSampleConfig {
    RationalSampleConfig component{20, 10};
    RationalSampleConfig delta{20, 10};  // numerator drawn from [1, max]
};

inline Vec4 sample_wedge_point(SplitMix64& rng, const WedgeSampleConfig& cfg = {}) {
    Rational x0 = sample_rational(rng, cfg.component);
    Rational x2 = sample_rational(rng, cfg.component);
    Rational x3 = sample_rational(rng, cfg.component);
    Rational delta = sample_positive_rational(rng, cfg.delta);
    return Vec4(x0, x0.abs() + delta, x2, x3);
}

inline Vec4 sample_left_wedge_point(SplitMix64& rng, const WedgeSampleConfig& cfg = {}) {
    Vec4 x = sample_wedge_point(rng, cfg);
    x[1] = -x[1];
    return x;
}

inline Vec4 sample_forward_cone(SplitMix64& rng, const WedgeSampleConfig& cfg = {}) {
    Rational v1 = sample_rational(rng, cfg.component);
    Rational v2 = sample_rational(rng, cfg.component);
    Rational v3 = sample_rational(rng, cfg.component);
    Rational r = Rational(1) + sample_nonneg_rational(rng, cfg.component);
    Rational v0 = r * (Rational(1) + v1.abs() + v2.abs() + v3.abs());
    Vec4 v(v0, v1, v2, v3);
    if (!in_closed_forward_cone(v)) throw std::logic_error("sample_forward_cone: construction failed");
    return v;
}

inline ThetaMatrix sample_admissible_theta(SplitMix64& rng, const WedgeSampleConfig& cfg = {}) {
    return ThetaMatrix(sample_nonneg_rational(rng, cfg.component), sample_rational(rng, cfg.component));
}

// --- batch property checks ---------------------------------------------------

struct WedgeFailure {
    uint64_t sample = 0;
    std::string what;
    std::vector<std::pair<std::string, std::string>> data;  // exact rational inputs
};

struct WedgeReport {
    uint64_t samples = 0;
    uint64_t seed = 0;
    std::vector<WedgeFailure> failures;

    bool pass() const { return failures.empty(); }
};

// For every sample: theta v points along the right wedge, the scale factor
// is strictly positive on the wedge, and the image of a right-wedge point
// stays in the right wedge; mirrored for the left wedge with -theta u.
inline WedgeReport wedge_preservation_check(uint64_t samples, uint64_t seed) {
    if (samples < 1) throw std::invalid_argument("wedge_preservation_check: samples must be >= 1");
    WedgeReport report;
    report.samples = samples;
    report.seed = seed;
    for (uint64_t i = 0; i < samples; ++i) {
        SplitMix64 rng = SplitMix64::derived(seed, i);
        Vec4 x = sample_wedge_point(rng);
        Vec4 v = sample_forward_cone(rng);
        ThetaMatrix theta = sample_admissible_theta(rng);
        Vec4 b = theta.apply(v);

        auto record = [&](const std::string& what, const Vec4& point, const Vec4& shift) {
            WedgeFailure f;
            f.sample = i;
            f.what = what;
            f.data = {{"x", point.to_string()},
                      {"b", shift.to_string()},
                      {"lambda", theta.lambda.to_string()},
                      {"eta", theta.eta.to_string()},
                      {"sigma", scale_factor(shift, point).to_string()}};
            report.failures.push_back(std::move(f));
        };

        Rational sigma = scale_factor(b, x);
        if (!(sigma > Rational(0))) {
            record("scale factor not positive on right wedge", x, b);
            continue;
        }
        if (!in_right_wedge(special_conformal_map(b, x)))
            record("right wedge not preserved", x, b);

        Vec4 y = sample_left_wedge_point(rng);
        Vec4 u = sample_forward_cone(rng);
        Vec4 bl = -theta.apply(u);
        Rational sigmaL = scale_factor(bl, y);
        if (!(sigmaL > Rational(0))) {
            record("scale factor not positive on left wedge", y, bl);
            continue;
        }
        if (!in_left_wedge(special_conformal_map(bl, y)))
            record("left wedge not preserved", y, bl);
    }
    return report;
}

// For x in the right wedge and y in the left wedge, the deformed images stay
// spacelike separated: (x_{theta v} - y_{-theta u})^2 < 0, exactly.
inline WedgeReport spacelike_separation_check(uint64_t samples, uint64_t seed) {
    if (samples < 1) throw std::invalid_argument("spacelike_separation_check: samples must be >= 1");
    WedgeReport report;
    report.samples = samples;
    report.seed = seed;
    for (uint64_t i = 0; i < samples; ++i) {
        SplitMix64 rng = SplitMix64::derived(seed, i);
        Vec4 x = sample_wedge_point(rng);
        Vec4 y = sample_left_wedge_point(rng);
        Vec4 v = sample_forward_cone(rng);
        Vec4 u = sample_forward_cone(rng);
        ThetaMatrix theta = sample_admissible_theta(rng);

        Vec4 img1 = special_conformal_map(theta.apply(v), x);
        Vec4 img2 = special_conformal_map(-theta.apply(u), y);
        Rational sep = minkowski_square(img1 - img2);
        if (!(sep < Rational(0))) {
            WedgeFailure f;
            f.sample = i;
            f.what = "images not spacelike separated";
            f.data = {{"x", x.to_string()},       {"y", y.to_string()},
                      {"v", v.to_string()},       {"u", u.to_string()},
                      {"lambda", theta.lambda.to_string()}, {"eta", theta.eta.to_string()},
                      {"separation", sep.to_string()}};
            report.failures.push_back(std::move(f));
        }
    }
    return report;
}

// Formal expansion of the special conformal map in the parameters b0..b3:
// (x^mu - b^mu x^2) * sum_{j<=N} (2 b.x - b^2 x^2)^j, truncated at total
// b-degree N. Valid as a formal power series; no convergence claim.
inline Poly mobius_series(int mu, int maxOrder, int dim = 4) {
    if (mu < 0 || mu >= dim) throw std::invalid_argument("mobius_series: index out of range");
    Metric g(dim);
    auto isB = [](VarId v) { return v.is_param_b(); };

    Poly bDotX(dim), bSq(dim);
    for (int a = 0; a < dim; ++a) {
        Poly ba = Poly::variable(dim, VarId::param_b(a));
        GaussianRational s{Rational(g.sign(a))};
        bDotX += s * ba * Poly::variable(dim, VarId::coordinate(a));
        bSq += s * ba * ba;
    }
    Poly xSq = g.coordinate_square();
    Poly u = GaussianRational(2) * bDotX - bSq * xSq;

    Poly inv = Poly::constant(dim, GaussianRational(1));
    Poly upow = Poly::constant(dim, GaussianRational(1));
    for (int j = 1; j <= maxOrder; ++j) {
        upow = (upow * u).truncate_where(isB, maxOrder);
        inv += upow;
    }
    Poly numerator = Poly::variable(dim, VarId::coordinate(mu)) -
                     Poly::variable(dim, VarId::param_b(mu)) * xSq;
    return (numerator * inv).truncate_where(isB, maxOrder);
}

}  // namespace warpconv
