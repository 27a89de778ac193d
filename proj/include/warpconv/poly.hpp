#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "warpconv/rational.hpp"

namespace warpconv {

// Symbol identifier for the polynomial ring. Three classes:
//   coordinates x0..x{d-1}, antisymmetric-matrix entries th{mu}{nu} with
//   mu < nu (the mirrored entry is carried as a negated coefficient), and
//   scalar parameters b0..b{d-1}, lam, eta.
// The packed code orders symbols canonically: Coordinate < ThetaEntry < Param,
// then by index.
class VarId {
public:
    enum class Kind : uint8_t { Coordinate = 0, ThetaEntry = 1, Param = 2 };

    static constexpr int kLambdaIndex = 100;
    static constexpr int kEtaIndex = 101;

    static VarId coordinate(int mu) {
        require(mu >= 0 && mu < 16, "coordinate index out of range");
        return VarId(Kind::Coordinate, mu, 0);
    }

    static VarId theta_entry(int mu, int nu) {
        require(mu >= 0 && nu >= 0 && mu < 10 && nu < 10, "theta index out of range");
        require(mu < nu, "theta entry requires mu < nu");
        return VarId(Kind::ThetaEntry, mu, nu);
    }

    static VarId param_b(int k) {
        require(k >= 0 && k < 10, "b-parameter index out of range");
        return VarId(Kind::Param, k, 0);
    }

    static VarId param_lambda() { return VarId(Kind::Param, kLambdaIndex, 0); }
    static VarId param_eta() { return VarId(Kind::Param, kEtaIndex, 0); }

    Kind kind() const { return static_cast<Kind>(code_ >> 16); }
    int index1() const { return static_cast<int>((code_ >> 8) & 0xff); }
    int index2() const { return static_cast<int>(code_ & 0xff); }
    uint32_t code() const { return code_; }

    bool is_coordinate() const { return kind() == Kind::Coordinate; }
    bool is_theta() const { return kind() == Kind::ThetaEntry; }
    bool is_param_b() const { return kind() == Kind::Param && index1() < 10; }

    std::string name() const {
        switch (kind()) {
            case Kind::Coordinate:
                return "x" + std::to_string(index1());
            case Kind::ThetaEntry:
                return "th" + std::to_string(index1()) + std::to_string(index2());
            default:
                if (index1() == kLambdaIndex) return "lam";
                if (index1() == kEtaIndex) return "eta";
                return "b" + std::to_string(index1());
        }
    }

    friend bool operator==(VarId a, VarId b) { return a.code_ == b.code_; }
    friend bool operator!=(VarId a, VarId b) { return a.code_ != b.code_; }
    friend bool operator<(VarId a, VarId b) { return a.code_ < b.code_; }

private:
    VarId(Kind k, int i, int j)
        : code_((static_cast<uint32_t>(k) << 16) | (static_cast<uint32_t>(i) << 8) |
                static_cast<uint32_t>(j)) {}

    static void require(bool ok, const char* msg) {
        if (!ok) throw std::invalid_argument(msg);
    }

    uint32_t code_;
};

// Product of symbol powers; factors sorted by VarId, exponents > 0.
class Monomial {
public:
    Monomial() = default;

    static Monomial one() { return Monomial(); }

    static Monomial variable(VarId v, uint32_t exp = 1) {
        Monomial m;
        if (exp > 0) m.factors_.emplace_back(v, exp);
        return m;
    }

    const std::vector<std::pair<VarId, uint32_t>>& factors() const { return factors_; }
    bool is_one() const { return factors_.empty(); }

    int total_degree() const {
        int d = 0;
        for (const auto& [v, e] : factors_) d += static_cast<int>(e);
        return d;
    }

    int degree_where(const std::function<bool(VarId)>& pred) const {
        int d = 0;
        for (const auto& [v, e] : factors_)
            if (pred(v)) d += static_cast<int>(e);
        return d;
    }

    uint32_t exponent_of(VarId v) const {
        for (const auto& [w, e] : factors_)
            if (w == v) return e;
        return 0;
    }

    Monomial times(const Monomial& o) const {
        Monomial r;
        r.factors_.reserve(factors_.size() + o.factors_.size());
        size_t i = 0, j = 0;
        while (i < factors_.size() && j < o.factors_.size()) {
            if (factors_[i].first == o.factors_[j].first) {
                r.factors_.emplace_back(factors_[i].first, factors_[i].second + o.factors_[j].second);
                ++i;
                ++j;
            } else if (factors_[i].first < o.factors_[j].first) {
                r.factors_.push_back(factors_[i++]);
            } else {
                r.factors_.push_back(o.factors_[j++]);
            }
        }
        for (; i < factors_.size(); ++i) r.factors_.push_back(factors_[i]);
        for (; j < o.factors_.size(); ++j) r.factors_.push_back(o.factors_[j]);
        return r;
    }

    // Removes one power of v; returns multiplicity before removal (0 if absent).
    std::pair<Monomial, uint32_t> reduce_power(VarId v) const {
        Monomial r;
        uint32_t mult = 0;
        for (const auto& [w, e] : factors_) {
            if (w == v) {
                mult = e;
                if (e > 1) r.factors_.emplace_back(w, e - 1);
            } else {
                r.factors_.emplace_back(w, e);
            }
        }
        return {std::move(r), mult};
    }

    friend bool operator==(const Monomial& a, const Monomial& b) { return a.factors_ == b.factors_; }
    friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }

private:
    std::vector<std::pair<VarId, uint32_t>> factors_;
};

// Graded-lexicographic term order used for canonical storage and printing:
// higher total degree first; within a degree level, the monomial whose
// exponent vector is lexicographically larger (reading symbols in canonical
// VarId order) comes first.
struct MonomialOrder {
    bool operator()(const Monomial& a, const Monomial& b) const {
        int da = a.total_degree(), db = b.total_degree();
        if (da != db) return da > db;
        const auto& fa = a.factors();
        const auto& fb = b.factors();
        size_t i = 0, j = 0;
        while (i < fa.size() && j < fb.size()) {
            if (fa[i].first != fb[j].first) return fa[i].first < fb[j].first;
            if (fa[i].second != fb[j].second) return fa[i].second > fb[j].second;
            ++i;
            ++j;
        }
        return i < fa.size();
    }
};

// Sparse multivariate polynomial over GaussianRational. Canonical form is
// maintained by construction: no zero coefficients are stored, so equality
// is structural. Every polynomial carries the spacetime dimension it lives
// in; mixed-dimension arithmetic is rejected.
class Poly {
public:
    using TermMap = std::map<Monomial, GaussianRational, MonomialOrder>;

    explicit Poly(int dim) : dim_(dim) {
        if (dim < 1) throw std::invalid_argument("Poly: dimension must be >= 1");
    }

    static Poly zero(int dim) { return Poly(dim); }

    static Poly constant(int dim, GaussianRational c) {
        Poly p(dim);
        if (!c.is_zero()) p.terms_.emplace(Monomial::one(), std::move(c));
        return p;
    }

    static Poly variable(int dim, VarId v, uint32_t exp = 1) {
        Poly p(dim);
        if (v.is_coordinate() && v.index1() >= dim)
            throw std::invalid_argument("Poly: coordinate index out of range for dimension");
        if (exp == 0) return constant(dim, GaussianRational(1));
        p.terms_.emplace(Monomial::variable(v, exp), GaussianRational(1));
        return p;
    }

    static Poly term(int dim, Monomial m, GaussianRational c) {
        Poly p(dim);
        if (!c.is_zero()) p.terms_.emplace(std::move(m), std::move(c));
        return p;
    }

    int dim() const { return dim_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }
    const TermMap& terms() const { return terms_; }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
    }

    GaussianRational constant_value() const {
        if (terms_.empty()) return GaussianRational();
        auto it = terms_.find(Monomial::one());
        return it == terms_.end() ? GaussianRational() : it->second;
    }

    int total_degree() const {
        if (terms_.empty()) return -1;
        return terms_.begin()->first.total_degree();  // map is degree-descending
    }

    int degree_where(const std::function<bool(VarId)>& pred) const {
        int d = 0;
        for (const auto& [m, c] : terms_) {
            int k = m.degree_where(pred);
            if (k > d) d = k;
        }
        return d;
    }

    bool contains_kind(VarId::Kind k) const {
        for (const auto& [m, c] : terms_)
            for (const auto& [v, e] : m.factors())
                if (v.kind() == k) return true;
        return false;
    }

    void add_term(const Monomial& m, const GaussianRational& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    // *this += c * p  (the workhorse of every accumulation loop)
    void add_scaled(const Poly& p, const GaussianRational& c) {
        check_dim(p);
        if (c.is_zero()) return;
        for (const auto& [m, pc] : p.terms_) add_term(m, pc * c);
    }

    // *this += c * mono * p
    void add_scaled_shifted(const Poly& p, const Monomial& mono, const GaussianRational& c) {
        check_dim(p);
        if (c.is_zero()) return;
        for (const auto& [m, pc] : p.terms_) add_term(m.times(mono), pc * c);
    }

    Poly operator-() const {
        Poly r(dim_);
        for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
        return r;
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        a.check_dim(b);
        Poly r = a;
        for (const auto& [m, c] : b.terms_) r.add_term(m, c);
        return r;
    }

    friend Poly operator-(const Poly& a, const Poly& b) {
        a.check_dim(b);
        Poly r = a;
        for (const auto& [m, c] : b.terms_) r.add_term(m, -c);
        return r;
    }

    friend Poly operator*(const Poly& a, const Poly& b) {
        a.check_dim(b);
        Poly r(a.dim_);
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) r.add_term(ma.times(mb), ca * cb);
        return r;
    }

    friend Poly operator*(const GaussianRational& c, const Poly& p) {
        Poly r(p.dim_);
        if (c.is_zero()) return r;
        for (const auto& [m, pc] : p.terms_) r.terms_.emplace(m, c * pc);
        return r;
    }

    friend Poly operator*(const Poly& p, const GaussianRational& c) { return c * p; }

    Poly& operator+=(const Poly& o) {
        check_dim(o);
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }

    Poly& operator-=(const Poly& o) {
        check_dim(o);
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }

    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    Poly pow(uint32_t e) const {
        Poly acc = constant(dim_, GaussianRational(1));
        Poly base = *this;
        while (e) {
            if (e & 1) acc = acc * base;
            e >>= 1;
            if (e) base = base * base;
        }
        return acc;
    }

    friend bool operator==(const Poly& a, const Poly& b) {
        return a.dim_ == b.dim_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    // Formal partial derivative with respect to coordinate x^mu; theta
    // symbols and parameters are constants.
    Poly partial_derivative(int mu) const {
        if (mu < 0 || mu >= dim_) throw std::invalid_argument("partial_derivative: index out of range");
        VarId x = VarId::coordinate(mu);
        Poly r(dim_);
        for (const auto& [m, c] : terms_) {
            auto [reduced, mult] = m.reduce_power(x);
            if (mult == 0) continue;
            r.add_term(reduced, c * GaussianRational(static_cast<int64_t>(mult)));
        }
        return r;
    }

    // Splits into homogeneous components by degree in the symbols selected by
    // pred; the components sum back to *this. Zero polynomial yields an empty map.
    std::map<int, Poly> grade_where(const std::function<bool(VarId)>& pred) const {
        std::map<int, Poly> out;
        for (const auto& [m, c] : terms_) {
            int k = m.degree_where(pred);
            auto it = out.find(k);
            if (it == out.end()) it = out.emplace(k, Poly(dim_)).first;
            it->second.terms_.emplace(m, c);
        }
        return out;
    }

    std::map<int, Poly> theta_order() const {
        return grade_where([](VarId v) { return v.is_theta(); });
    }

    Poly truncate_where(const std::function<bool(VarId)>& pred, int maxDegree) const {
        Poly r(dim_);
        for (const auto& [m, c] : terms_)
            if (m.degree_where(pred) <= maxDegree) r.terms_.emplace(m, c);
        return r;
    }

    // Substitutes exact values for a subset of symbols.
    Poly substitute(const std::map<VarId, GaussianRational>& values) const {
        Poly r(dim_);
        for (const auto& [m, c] : terms_) {
            GaussianRational coeff = c;
            Monomial rest;
            for (const auto& [v, e] : m.factors()) {
                auto it = values.find(v);
                if (it == values.end()) {
                    rest = rest.times(Monomial::variable(v, e));
                    continue;
                }
                GaussianRational p(1);
                GaussianRational base = it->second;
                for (uint32_t k = 0; k < e; ++k) p *= base;
                coeff *= p;
            }
            r.add_term(rest, coeff);
        }
        return r;
    }

    // Same polynomial viewed in another ambient dimension. Shrinking is only
    // allowed when no coordinate with an out-of-range index occurs.
    Poly redim(int newDim) const {
        Poly r(newDim);
        for (const auto& [m, c] : terms_) {
            for (const auto& [v, e] : m.factors())
                if (v.is_coordinate() && v.index1() >= newDim)
                    throw std::invalid_argument("Poly::redim: coordinate out of range");
            r.terms_.emplace(m, c);
        }
        return r;
    }

    // Deterministic text form; see the accompanying parser for the grammar.
    std::string canonical_string() const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            bool negative = c.re().sign() < 0 || (c.re().is_zero() && c.im().sign() < 0);
            GaussianRational mag = negative ? -c : c;
            if (first) {
                if (negative) out += "-";
                first = false;
            } else {
                out += negative ? " - " : " + ";
            }
            out += term_string(mag, m);
        }
        return out;
    }

private:
    void check_dim(const Poly& o) const {
        if (dim_ != o.dim_) throw std::invalid_argument("Poly: dimension mismatch");
    }

    static std::string coeff_string(const GaussianRational& c) {
        if (c.is_real()) return c.re().to_string();
        if (c.re().is_zero()) {
            if (c.im().is_one()) return "i";
            return c.im().to_string() + "*i";
        }
        return "(" + c.to_string() + ")";
    }

    static std::string term_string(const GaussianRational& mag, const Monomial& m) {
        std::string factors;
        for (const auto& [v, e] : m.factors()) {
            if (!factors.empty()) factors += "*";
            factors += v.name();
            if (e > 1) factors += "^" + std::to_string(e);
        }
        if (factors.empty()) return coeff_string(mag);
        if (mag.is_one()) return factors;
        return coeff_string(mag) + "*" + factors;
    }

    int dim_;
    TermMap terms_;
};

}  // namespace warpconv
