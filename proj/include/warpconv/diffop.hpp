#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "warpconv/poly.hpp"

namespace warpconv {

// Derivative multi-index: order of differentiation per coordinate.
class MultiIndex {
public:
    explicit MultiIndex(int dim) : orders_(static_cast<size_t>(dim), 0) {
        if (dim < 1) throw std::invalid_argument("MultiIndex: dimension must be >= 1");
    }

    static MultiIndex unit(int dim, int mu) {
        MultiIndex m(dim);
        m.bump(mu);
        return m;
    }

    int dim() const { return static_cast<int>(orders_.size()); }
    uint32_t operator[](int mu) const { return orders_[static_cast<size_t>(mu)]; }

    int order() const {
        int s = 0;
        for (uint32_t o : orders_) s += static_cast<int>(o);
        return s;
    }

    void bump(int mu, uint32_t by = 1) {
        if (mu < 0 || mu >= dim()) throw std::invalid_argument("MultiIndex: index out of range");
        orders_[static_cast<size_t>(mu)] += by;
    }

    MultiIndex plus(const MultiIndex& o) const {
        MultiIndex r = *this;
        for (int mu = 0; mu < dim(); ++mu) r.orders_[static_cast<size_t>(mu)] += o[mu];
        return r;
    }

    bool operator==(const MultiIndex& o) const { return orders_ == o.orders_; }
    bool operator<(const MultiIndex& o) const { return orders_ < o.orders_; }

    std::string to_string() const {
        std::string s = "[";
        for (int mu = 0; mu < dim(); ++mu) {
            if (mu) s += ",";
            s += std::to_string(orders_[static_cast<size_t>(mu)]);
        }
        return s + "]";
    }

private:
    std::vector<uint32_t> orders_;
};

// Differential operator with polynomial coefficients, kept in normal order:
// all derivatives stand to the right of their coefficient polynomials, so
// equality of operators is structural equality of the term map.
class DiffOp {
public:
    explicit DiffOp(int dim) : dim_(dim) {
        if (dim < 1) throw std::invalid_argument("DiffOp: dimension must be >= 1");
    }

    static DiffOp zero(int dim) { return DiffOp(dim); }

    static DiffOp identity(int dim) {
        DiffOp d(dim);
        d.terms_.emplace(MultiIndex(dim), Poly::constant(dim, GaussianRational(1)));
        return d;
    }

    static DiffOp derivative(int dim, int mu) {
        DiffOp d(dim);
        d.terms_.emplace(MultiIndex::unit(dim, mu), Poly::constant(dim, GaussianRational(1)));
        return d;
    }

    // coefficient * d^alpha
    static DiffOp term(Poly coeff, MultiIndex alpha) {
        if (coeff.dim() != alpha.dim()) throw std::invalid_argument("DiffOp: dimension mismatch");
        DiffOp d(coeff.dim());
        if (!coeff.is_zero()) d.terms_.emplace(std::move(alpha), std::move(coeff));
        return d;
    }

    // coefficient * identity
    static DiffOp multiplication(Poly coeff) {
        int dim = coeff.dim();
        return term(std::move(coeff), MultiIndex(dim));
    }

    int dim() const { return dim_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<MultiIndex, Poly>& terms() const { return terms_; }

    int order() const {
        int o = 0;
        for (const auto& [a, c] : terms_)
            if (a.order() > o) o = a.order();
        return o;
    }

    void add_term(const MultiIndex& alpha, const Poly& coeff) {
        if (coeff.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(alpha, coeff);
        if (!inserted) {
            it->second += coeff;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    friend DiffOp operator+(const DiffOp& a, const DiffOp& b) {
        a.check_dim(b);
        DiffOp r = a;
        for (const auto& [alpha, c] : b.terms_) r.add_term(alpha, c);
        return r;
    }

    friend DiffOp operator-(const DiffOp& a, const DiffOp& b) {
        a.check_dim(b);
        DiffOp r = a;
        for (const auto& [alpha, c] : b.terms_) r.add_term(alpha, -c);
        return r;
    }

    DiffOp operator-() const {
        DiffOp r(dim_);
        for (const auto& [alpha, c] : terms_) r.terms_.emplace(alpha, -c);
        return r;
    }

    friend DiffOp operator*(const GaussianRational& s, const DiffOp& d) {
        DiffOp r(d.dim_);
        if (s.is_zero()) return r;
        for (const auto& [alpha, c] : d.terms_) r.terms_.emplace(alpha, s * c);
        return r;
    }

    // Left multiplication by a polynomial (as an operator product).
    friend DiffOp operator*(const Poly& p, const DiffOp& d) {
        if (p.dim() != d.dim_) throw std::invalid_argument("DiffOp: dimension mismatch");
        DiffOp r(d.dim_);
        for (const auto& [alpha, c] : d.terms_) r.add_term(alpha, p * c);
        return r;
    }

    DiffOp& operator+=(const DiffOp& o) {
        check_dim(o);
        for (const auto& [alpha, c] : o.terms_) add_term(alpha, c);
        return *this;
    }

    DiffOp& operator-=(const DiffOp& o) {
        check_dim(o);
        for (const auto& [alpha, c] : o.terms_) add_term(alpha, -c);
        return *this;
    }

    friend bool operator==(const DiffOp& a, const DiffOp& b) {
        return a.dim_ == b.dim_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const DiffOp& a, const DiffOp& b) { return !(a == b); }

    Poly apply(const Poly& p) const {
        if (p.dim() != dim_) throw std::invalid_argument("DiffOp::apply: dimension mismatch");
        Poly out(dim_);
        for (const auto& [alpha, coeff] : terms_) {
            Poly dp = differentiate(p, alpha);
            if (dp.is_zero()) continue;
            out += coeff * dp;
        }
        return out;
    }

    // Operator product A(B(.)), re-normal-ordered with the generalized
    // Leibniz rule: d^a (c * d^b .) = sum_{g<=a} C(a,g) (d^{a-g} c) d^{g+b}.
    static DiffOp compose(const DiffOp& A, const DiffOp& B) {
        A.check_dim(B);
        const int dim = A.dim_;
        DiffOp out(dim);
        for (const auto& [alpha, ac] : A.terms_) {
            for (const auto& [beta, bc] : B.terms_) {
                // walk all gamma <= alpha
                std::vector<uint32_t> gamma(static_cast<size_t>(dim), 0);
                while (true) {
                    GaussianRational binom(1);
                    MultiIndex g(dim), rest(dim);
                    for (int mu = 0; mu < dim; ++mu) {
                        uint32_t gm = gamma[static_cast<size_t>(mu)];
                        g.bump(mu, gm);
                        rest.bump(mu, alpha[mu] - gm);
                        binom *= GaussianRational(static_cast<int64_t>(binomial(alpha[mu], gm)));
                    }
                    Poly dcoeff = differentiate(bc, rest);
                    if (!dcoeff.is_zero()) out.add_term(g.plus(beta), binom * (ac * dcoeff));
                    // next gamma in mixed radix over [0..alpha]
                    int mu = 0;
                    for (; mu < dim; ++mu) {
                        if (gamma[static_cast<size_t>(mu)] < alpha[mu]) {
                            ++gamma[static_cast<size_t>(mu)];
                            break;
                        }
                        gamma[static_cast<size_t>(mu)] = 0;
                    }
                    if (mu == dim) break;
                }
            }
        }
        return out;
    }

    static DiffOp commutator(const DiffOp& A, const DiffOp& B) {
        return compose(A, B) - compose(B, A);
    }

    // Same operator viewed in a larger ambient dimension (extra coordinates
    // are never differentiated).
    DiffOp redim(int newDim) const {
        if (newDim < dim_) throw std::invalid_argument("DiffOp::redim: cannot shrink");
        DiffOp r(newDim);
        for (const auto& [alpha, c] : terms_) {
            MultiIndex beta(newDim);
            for (int mu = 0; mu < dim_; ++mu) beta.bump(mu, alpha[mu]);
            r.terms_.emplace(std::move(beta), c.redim(newDim));
        }
        return r;
    }

    std::string canonical_string() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (const auto& [alpha, c] : terms_) {
            if (!s.empty()) s += " + ";
            s += "(" + c.canonical_string() + ")*d" + alpha.to_string();
        }
        return s;
    }

private:
    void check_dim(const DiffOp& o) const {
        if (dim_ != o.dim_) throw std::invalid_argument("DiffOp: dimension mismatch");
    }

    static Poly differentiate(const Poly& p, const MultiIndex& alpha) {
        Poly out = p;
        for (int mu = 0; mu < alpha.dim(); ++mu)
            for (uint32_t k = 0; k < alpha[mu]; ++k) {
                if (out.is_zero()) return out;
                out = out.partial_derivative(mu);
            }
        return out;
    }

    static uint64_t binomial(uint32_t n, uint32_t k) {
        if (k > n) return 0;
        if (k > n - k) k = n - k;
        uint64_t r = 1;
        for (uint32_t j = 1; j <= k; ++j) r = r * (n - k + j) / j;
        return r;
    }

    int dim_;
    std::map<MultiIndex, Poly> terms_;
};

}  // namespace warpconv
