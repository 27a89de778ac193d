#pragma once

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>

#include "warpconv/poly.hpp"

namespace warpconv {

// Raised for any malformed polynomial text; position is a 0-based byte
// offset into the input.
class ParseError : public std::runtime_error {
public:
    ParseError(size_t position, const std::string& message)
        : std::runtime_error("parse error at position " + std::to_string(position) + ": " + message),
          position_(position) {}

    size_t position() const { return position_; }

private:
    size_t position_;
};

namespace detail {

// Recursive descent over the expression grammar:
//   expr    := ['-'|'+'] term (('+'|'-') term)*
//   term    := factor ('*' factor)*
//   factor  := primary ['^' integer]
//   primary := integer ['/' integer] | 'i' | variable | '(' expr ')'
//   variable := x<k> | th<m><n> | b<k> | lam | eta
class PolyParser {
public:
    PolyParser(std::string_view text, int dim) : text_(text), dim_(dim) {}

    Poly parse() {
        skip_ws();
        Poly p = parse_expr();
        skip_ws();
        if (pos_ != text_.size()) fail(pos_, "unexpected trailing input");
        return p;
    }

private:
    Poly parse_expr() {
        bool negate = false;
        skip_ws();
        if (peek() == '-') {
            negate = true;
            ++pos_;
        } else if (peek() == '+') {
            ++pos_;
        }
        Poly acc = parse_term();
        if (negate) acc = -acc;
        while (true) {
            skip_ws();
            char c = peek();
            if (c == '+') {
                ++pos_;
                acc += parse_term();
            } else if (c == '-') {
                ++pos_;
                acc -= parse_term();
            } else {
                return acc;
            }
        }
    }

    Poly parse_term() {
        Poly acc = parse_factor();
        while (true) {
            skip_ws();
            if (peek() == '*') {
                ++pos_;
                acc *= parse_factor();
            } else {
                return acc;
            }
        }
    }

    Poly parse_factor() {
        Poly base = parse_primary();
        skip_ws();
        if (peek() == '^') {
            ++pos_;
            skip_ws();
            size_t at = pos_;
            uint64_t e = parse_uint(at, "exponent must be a non-negative integer");
            if (e > 0xffffffffull) fail(at, "exponent too large");
            return base.pow(static_cast<uint32_t>(e));
        }
        return base;
    }

    Poly parse_primary() {
        skip_ws();
        size_t at = pos_;
        char c = peek();
        if (c == '\0') fail(at, "unexpected end of input");
        if (c == '(') {
            ++pos_;
            Poly p = parse_expr();
            skip_ws();
            if (peek() != ')') fail(pos_, "expected ')'");
            ++pos_;
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return parse_rational(at);
        if (std::isalpha(static_cast<unsigned char>(c))) return parse_symbol(at);
        fail(at, "expected a number, symbol or '('");
        return Poly(dim_);  // unreachable
    }

    Poly parse_rational(size_t at) {
        std::string numDigits = read_digits(at, "expected digits");
        skip_ws();
        if (peek() == '/') {
            ++pos_;
            skip_ws();
            size_t denAt = pos_;
            std::string denDigits = read_digits(denAt, "expected denominator digits");
            BigInt den = BigInt::parse(denDigits);
            if (den.is_zero()) fail(denAt, "zero denominator");
            return Poly::constant(dim_, GaussianRational(Rational(BigInt::parse(numDigits), den)));
        }
        return Poly::constant(dim_, GaussianRational(Rational(BigInt::parse(numDigits))));
    }

    Poly parse_symbol(size_t at) {
        std::string word;
        while (std::isalnum(static_cast<unsigned char>(peek()))) word.push_back(text_[pos_++]);

        if (word == "i") return Poly::constant(dim_, GaussianRational::i());
        if (word == "lam") return Poly::variable(dim_, VarId::param_lambda());
        if (word == "eta") return Poly::variable(dim_, VarId::param_eta());

        if (word.size() == 2 && word[0] == 'x' && std::isdigit(static_cast<unsigned char>(word[1]))) {
            int k = word[1] - '0';
            if (k >= dim_) fail(at, "coordinate index out of range");
            return Poly::variable(dim_, VarId::coordinate(k));
        }
        if (word.size() == 2 && word[0] == 'b' && std::isdigit(static_cast<unsigned char>(word[1]))) {
            int k = word[1] - '0';
            if (k >= dim_) fail(at, "b-parameter index out of range");
            return Poly::variable(dim_, VarId::param_b(k));
        }
        if (word.size() == 4 && word[0] == 't' && word[1] == 'h' &&
            std::isdigit(static_cast<unsigned char>(word[2])) &&
            std::isdigit(static_cast<unsigned char>(word[3]))) {
            int mu = word[2] - '0';
            int nu = word[3] - '0';
            if (mu >= dim_ || nu >= dim_) fail(at, "theta index out of range");
            if (mu >= nu) fail(at, "theta indices must satisfy mu < nu");
            return Poly::variable(dim_, VarId::theta_entry(mu, nu));
        }
        fail(at, "unknown variable name '" + word + "'");
        return Poly(dim_);  // unreachable
    }

    std::string read_digits(size_t at, const char* msg) {
        std::string digits;
        while (std::isdigit(static_cast<unsigned char>(peek()))) digits.push_back(text_[pos_++]);
        if (digits.empty()) fail(at, msg);
        return digits;
    }

    uint64_t parse_uint(size_t at, const char* msg) {
        std::string digits = read_digits(at, msg);
        if (digits.size() > 10) fail(at, "exponent too large");
        return std::stoull(digits);
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    [[noreturn]] void fail(size_t at, const std::string& msg) const { throw ParseError(at, msg); }

    std::string_view text_;
    int dim_;
    size_t pos_ = 0;
};

}  // namespace detail

inline Poly parse_poly(std::string_view text, int dim) {
    return detail::PolyParser(text, dim).parse();
}

}  // namespace warpconv
