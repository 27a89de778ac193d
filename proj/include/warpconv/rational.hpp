#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include "warpconv/bigint.hpp"

namespace warpconv {

// Exact rational number. Canonical at all times: gcd(|num|, den) = 1,
// den > 0, zero is 0/1. Equality is therefore structural.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(int64_t v) : num_(v), den_(1) {}  // NOLINT: implicit by design
    Rational(BigInt v) : num_(std::move(v)), den_(1) {}

    Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw std::domain_error("Rational: zero denominator");
        normalize();
    }

    static Rational parse(std::string_view s) {
        size_t slash = s.find('/');
        if (slash == std::string_view::npos) return Rational(BigInt::parse(s));
        return Rational(BigInt::parse(s.substr(0, slash)), BigInt::parse(s.substr(slash + 1)));
    }

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_integer() const { return den_.is_one(); }
    int sign() const { return num_.sign(); }

    Rational operator-() const {
        Rational r = *this;
        r.num_ = -r.num_;
        return r;
    }

    Rational abs() const { return sign() < 0 ? -*this : *this; }

    friend Rational operator+(const Rational& a, const Rational& b) {
        if (a.den_.is_one() && b.den_.is_one()) return Rational(a.num_ + b.num_);
        return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }

    friend Rational operator-(const Rational& a, const Rational& b) {
        if (a.den_.is_one() && b.den_.is_one()) return Rational(a.num_ - b.num_);
        return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }

    friend Rational operator*(const Rational& a, const Rational& b) {
        if (a.num_.is_zero() || b.num_.is_zero()) return Rational();
        if (a.den_.is_one() && b.den_.is_one()) return Rational(a.num_ * b.num_);
        Rational r;
        r.num_ = a.num_ * b.num_;
        r.den_ = a.den_ * b.den_;
        r.reduce();
        return r;
    }

    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.is_zero()) throw std::domain_error("Rational: division by zero");
        if (a.is_zero()) return Rational();
        Rational r;
        r.num_ = a.num_ * b.den_;
        r.den_ = a.den_ * b.num_;
        if (r.den_.sign() < 0) {
            r.num_ = -r.num_;
            r.den_ = -r.den_;
        }
        r.reduce();
        return r;
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) { return cmp(a, b) < 0; }
    friend bool operator>(const Rational& a, const Rational& b) { return cmp(a, b) > 0; }
    friend bool operator<=(const Rational& a, const Rational& b) { return cmp(a, b) <= 0; }
    friend bool operator>=(const Rational& a, const Rational& b) { return cmp(a, b) >= 0; }

    static int cmp(const Rational& a, const Rational& b) {
        if (a.den_ == b.den_) return BigInt::cmp(a.num_, b.num_);
        return BigInt::cmp(a.num_ * b.den_, b.num_ * a.den_);
    }

    std::string to_string() const {
        if (den_.is_one()) return num_.to_string();
        return num_.to_string() + "/" + den_.to_string();
    }

    double to_double() const { return num_.to_double() / den_.to_double(); }

private:
    void normalize() {
        if (den_.sign() < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        if (num_.is_zero()) {
            den_ = BigInt(1);
            return;
        }
        reduce();
    }

    void reduce() {
        if (den_.is_one()) return;
        BigInt g = BigInt::gcd(num_, den_);
        if (!g.is_one()) {
            num_ = num_ / g;
            den_ = den_ / g;
        }
    }

    BigInt num_;
    BigInt den_;
};

// Complex number with exact rational real and imaginary parts.
class GaussianRational {
public:
    GaussianRational() = default;
    GaussianRational(int64_t v) : re_(v) {}  // NOLINT: implicit by design
    GaussianRational(Rational re) : re_(std::move(re)) {}
    GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

    static GaussianRational i() { return GaussianRational(Rational(0), Rational(1)); }

    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }

    bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
    bool is_one() const { return re_.is_one() && im_.is_zero(); }
    bool is_real() const { return im_.is_zero(); }

    GaussianRational conj() const { return GaussianRational(re_, -im_); }

    Rational norm_sq() const { return re_ * re_ + im_ * im_; }

    GaussianRational operator-() const { return GaussianRational(-re_, -im_); }

    friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
        return GaussianRational(a.re_ + b.re_, a.im_ + b.im_);
    }

    friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
        return GaussianRational(a.re_ - b.re_, a.im_ - b.im_);
    }

    friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
        if (a.im_.is_zero() && b.im_.is_zero()) return GaussianRational(a.re_ * b.re_);
        if (a.im_.is_zero()) return GaussianRational(a.re_ * b.re_, a.re_ * b.im_);
        if (b.im_.is_zero()) return GaussianRational(a.re_ * b.re_, a.im_ * b.re_);
        return GaussianRational(a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_);
    }

    friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
        if (b.is_zero()) throw std::domain_error("GaussianRational: division by zero");
        if (b.im_.is_zero()) return GaussianRational(a.re_ / b.re_, a.im_ / b.re_);
        Rational n = b.norm_sq();
        GaussianRational num = a * b.conj();
        return GaussianRational(num.re_ / n, num.im_ / n);
    }

    GaussianRational& operator+=(const GaussianRational& o) { return *this = *this + o; }
    GaussianRational& operator-=(const GaussianRational& o) { return *this = *this - o; }
    GaussianRational& operator*=(const GaussianRational& o) { return *this = *this * o; }
    GaussianRational& operator/=(const GaussianRational& o) { return *this = *this / o; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

    // Text form: "a", "a/b", "i", "-i", "q*i", "a + q*i", "a - q*i".
    std::string to_string() const {
        if (im_.is_zero()) return re_.to_string();
        std::string imPart;
        Rational imAbs = im_.abs();
        if (imAbs.is_one())
            imPart = "i";
        else
            imPart = imAbs.to_string() + "*i";
        if (re_.is_zero()) return im_.sign() < 0 ? "-" + imPart : imPart;
        return re_.to_string() + (im_.sign() < 0 ? " - " : " + ") + imPart;
    }

    std::complex<double> to_complex() const { return {re_.to_double(), im_.to_double()}; }

private:
    Rational re_;
    Rational im_;
};

}  // namespace warpconv
