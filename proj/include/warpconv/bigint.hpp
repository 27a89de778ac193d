#pragma once

#include <array>
#include <cstdint>
#include <cstring>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace warpconv {

namespace detail {

// Little-endian limb storage with a small inline buffer. Coefficients in the
// symbolic engine are almost always one or two limbs, so heap traffic here
// dominates everything else if we let it.
class LimbVec {
public:
    static constexpr uint32_t kInline = 4;

    LimbVec() = default;

    LimbVec(const LimbVec& o) { assign(o.data(), o.size_); }

    LimbVec(LimbVec&& o) noexcept {
        size_ = o.size_;
        if (o.on_heap_) {
            heap_ = o.heap_;
            cap_ = o.cap_;
            on_heap_ = true;
            o.on_heap_ = false;
            o.cap_ = kInline;
        } else {
            std::memcpy(inl_.data(), o.inl_.data(), o.size_ * sizeof(uint32_t));
        }
        o.size_ = 0;
    }

    LimbVec& operator=(const LimbVec& o) {
        if (this != &o) assign(o.data(), o.size_);
        return *this;
    }

    LimbVec& operator=(LimbVec&& o) noexcept {
        if (this == &o) return *this;
        release();
        if (o.on_heap_) {
            heap_ = o.heap_;
            cap_ = o.cap_;
            on_heap_ = true;
            o.on_heap_ = false;
            o.cap_ = kInline;
        } else {
            std::memcpy(inl_.data(), o.inl_.data(), o.size_ * sizeof(uint32_t));
        }
        size_ = o.size_;
        o.size_ = 0;
        return *this;
    }

    ~LimbVec() { release(); }

    uint32_t size() const { return size_; }
    bool empty() const { return size_ == 0; }
    uint32_t* data() { return on_heap_ ? heap_ : inl_.data(); }
    const uint32_t* data() const { return on_heap_ ? heap_ : inl_.data(); }
    uint32_t operator[](uint32_t i) const { return data()[i]; }
    uint32_t& operator[](uint32_t i) { return data()[i]; }
    uint32_t back() const { return data()[size_ - 1]; }

    void clear() { size_ = 0; }

    void resize(uint32_t n, uint32_t fill = 0) {
        reserve(n);
        uint32_t* d = data();
        for (uint32_t i = size_; i < n; ++i) d[i] = fill;
        size_ = n;
    }

    void push_back(uint32_t v) {
        reserve(size_ + 1);
        data()[size_++] = v;
    }

    void pop_back() { --size_; }

    void assign(const uint32_t* src, uint32_t n) {
        reserve(n);
        std::memcpy(data(), src, n * sizeof(uint32_t));
        size_ = n;
    }

    void reserve(uint32_t n) {
        if (n <= cap_) return;
        uint32_t newCap = cap_ * 2 < n ? n : cap_ * 2;
        uint32_t* mem = new uint32_t[newCap];
        std::memcpy(mem, data(), size_ * sizeof(uint32_t));
        release();
        heap_ = mem;
        cap_ = newCap;
        on_heap_ = true;
    }

private:
    void release() {
        if (on_heap_) delete[] heap_;
        on_heap_ = false;
        cap_ = kInline;
    }

    uint32_t size_ = 0;
    uint32_t cap_ = kInline;
    bool on_heap_ = false;
    union {
        std::array<uint32_t, kInline> inl_;
        uint32_t* heap_;
    };
};

}  // namespace detail

// Signed arbitrary-precision integer; sign/magnitude, base 2^32.
// Canonical form: no leading zero limbs, zero has empty magnitude and sign 0.
class BigInt {
public:
    BigInt() = default;

    BigInt(int64_t v) {  // NOLINT: implicit by design, mirrors built-in ints
        if (v == 0) return;
        sign_ = v < 0 ? -1 : 1;
        uint64_t m = v < 0 ? ~static_cast<uint64_t>(v) + 1 : static_cast<uint64_t>(v);
        mag_.push_back(static_cast<uint32_t>(m));
        if (m >> 32) mag_.push_back(static_cast<uint32_t>(m >> 32));
    }

    static BigInt from_uint64(uint64_t m) {
        BigInt r;
        if (m == 0) return r;
        r.sign_ = 1;
        r.mag_.push_back(static_cast<uint32_t>(m));
        if (m >> 32) r.mag_.push_back(static_cast<uint32_t>(m >> 32));
        return r;
    }

    static BigInt parse(std::string_view s) {
        size_t i = 0;
        int sign = 1;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
            if (s[i] == '-') sign = -1;
            ++i;
        }
        if (i == s.size()) throw std::invalid_argument("BigInt: empty numeral");
        BigInt r;
        uint64_t chunk = 0;
        uint64_t chunkScale = 1;
        for (; i < s.size(); ++i) {
            if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("BigInt: invalid digit");
            chunk = chunk * 10 + static_cast<uint64_t>(s[i] - '0');
            chunkScale *= 10;
            if (chunkScale == 1000000000ull) {
                r.mul_small_add(1000000000u, static_cast<uint32_t>(chunk));
                chunk = 0;
                chunkScale = 1;
            }
        }
        if (chunkScale > 1) r.mul_small_add(static_cast<uint32_t>(chunkScale), static_cast<uint32_t>(chunk));
        if (!r.mag_.empty()) r.sign_ = sign;
        return r;
    }

    bool is_zero() const { return sign_ == 0; }
    int sign() const { return sign_; }

    bool fits_int64() const {
        if (mag_.size() > 2) return false;
        uint64_t m = mag_u64();
        if (sign_ >= 0) return m <= static_cast<uint64_t>(std::numeric_limits<int64_t>::max());
        return m <= static_cast<uint64_t>(std::numeric_limits<int64_t>::max()) + 1;
    }

    int64_t to_int64() const {
        uint64_t m = mag_u64();
        return sign_ < 0 ? -static_cast<int64_t>(m) : static_cast<int64_t>(m);
    }

    bool is_one() const { return sign_ == 1 && mag_.size() == 1 && mag_[0] == 1; }

    BigInt operator-() const {
        BigInt r = *this;
        r.sign_ = -r.sign_;
        return r;
    }

    BigInt abs() const {
        BigInt r = *this;
        if (r.sign_ < 0) r.sign_ = 1;
        return r;
    }

    friend BigInt operator+(const BigInt& a, const BigInt& b) {
        if (a.sign_ == 0) return b;
        if (b.sign_ == 0) return a;
        BigInt r;
        if (a.sign_ == b.sign_) {
            r.sign_ = a.sign_;
            add_mag(a.mag_, b.mag_, r.mag_);
        } else {
            int c = cmp_mag(a.mag_, b.mag_);
            if (c == 0) return BigInt();
            if (c > 0) {
                r.sign_ = a.sign_;
                sub_mag(a.mag_, b.mag_, r.mag_);
            } else {
                r.sign_ = b.sign_;
                sub_mag(b.mag_, a.mag_, r.mag_);
            }
        }
        return r;
    }

    friend BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

    friend BigInt operator*(const BigInt& a, const BigInt& b) {
        if (a.sign_ == 0 || b.sign_ == 0) return BigInt();
        BigInt r;
        r.sign_ = a.sign_ * b.sign_;
        if (a.mag_.size() == 1 && b.mag_.size() == 1) {
            uint64_t p = static_cast<uint64_t>(a.mag_[0]) * b.mag_[0];
            r.mag_.push_back(static_cast<uint32_t>(p));
            if (p >> 32) r.mag_.push_back(static_cast<uint32_t>(p >> 32));
            return r;
        }
        mul_mag(a.mag_, b.mag_, r.mag_);
        return r;
    }

    BigInt& operator+=(const BigInt& o) { return *this = *this + o; }
    BigInt& operator-=(const BigInt& o) { return *this = *this - o; }
    BigInt& operator*=(const BigInt& o) { return *this = *this * o; }

    // Truncated division (quotient rounds toward zero), remainder same sign
    // as the dividend; |r| < |b|.
    static void divrem(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
        if (b.sign_ == 0) throw std::domain_error("BigInt: division by zero");
        int c = cmp_mag(a.mag_, b.mag_);
        if (c < 0) {
            q = BigInt();
            r = a;
            return;
        }
        BigInt qq, rr;
        divrem_mag(a.mag_, b.mag_, qq.mag_, rr.mag_);
        qq.sign_ = qq.mag_.empty() ? 0 : a.sign_ * b.sign_;
        rr.sign_ = rr.mag_.empty() ? 0 : a.sign_;
        q = std::move(qq);
        r = std::move(rr);
    }

    friend BigInt operator/(const BigInt& a, const BigInt& b) {
        BigInt q, r;
        divrem(a, b, q, r);
        return q;
    }

    friend BigInt operator%(const BigInt& a, const BigInt& b) {
        BigInt q, r;
        divrem(a, b, q, r);
        return r;
    }

    friend bool operator==(const BigInt& a, const BigInt& b) {
        if (a.sign_ != b.sign_ || a.mag_.size() != b.mag_.size()) return false;
        return std::memcmp(a.mag_.data(), b.mag_.data(), a.mag_.size() * sizeof(uint32_t)) == 0;
    }

    friend bool operator!=(const BigInt& a, const BigInt& b) { return !(a == b); }

    friend bool operator<(const BigInt& a, const BigInt& b) { return cmp(a, b) < 0; }
    friend bool operator>(const BigInt& a, const BigInt& b) { return cmp(a, b) > 0; }
    friend bool operator<=(const BigInt& a, const BigInt& b) { return cmp(a, b) <= 0; }
    friend bool operator>=(const BigInt& a, const BigInt& b) { return cmp(a, b) >= 0; }

    static int cmp(const BigInt& a, const BigInt& b) {
        if (a.sign_ != b.sign_) return a.sign_ < b.sign_ ? -1 : 1;
        int c = cmp_mag(a.mag_, b.mag_);
        return a.sign_ >= 0 ? c : -c;
    }

    static BigInt gcd(const BigInt& a, const BigInt& b) {
        if (a.sign_ == 0) return b.abs();
        if (b.sign_ == 0) return a.abs();
        if (a.mag_.size() <= 2 && b.mag_.size() <= 2)
            return from_uint64(std::gcd(a.mag_u64(), b.mag_u64()));
        BigInt x = a.abs(), y = b.abs();
        while (!y.is_zero()) {
            BigInt q, r;
            divrem(x, y, q, r);
            x = std::move(y);
            y = std::move(r);
        }
        return x;
    }

    BigInt pow(uint32_t e) const {
        BigInt base = *this, acc = BigInt(1);
        while (e) {
            if (e & 1) acc *= base;
            e >>= 1;
            if (e) base *= base;
        }
        return acc;
    }

    std::string to_string() const {
        if (sign_ == 0) return "0";
        detail::LimbVec work = mag_;
        std::string out;
        while (work.size()) {
            uint32_t rem = div_small_inplace(work, 1000000000u);
            if (work.size()) {
                char buf[9];
                for (int k = 0; k < 9; ++k) {
                    buf[k] = static_cast<char>('0' + rem % 10);
                    rem /= 10;
                }
                out.append(buf, 9);
            } else {
                std::string head = std::to_string(rem);
                out.append(head.rbegin(), head.rend());
            }
        }
        if (sign_ < 0) out.push_back('-');
        return std::string(out.rbegin(), out.rend());
    }

    double to_double() const {
        double m = 0.0;
        for (uint32_t i = mag_.size(); i-- > 0;) m = m * 4294967296.0 + static_cast<double>(mag_[i]);
        return sign_ < 0 ? -m : m;
    }

    size_t limb_count() const { return mag_.size(); }

private:
    uint64_t mag_u64() const {
        uint64_t m = 0;
        if (mag_.size() > 1) m = static_cast<uint64_t>(mag_[1]) << 32;
        if (mag_.size() > 0) m |= mag_[0];
        return m;
    }

    void mul_small_add(uint32_t f, uint32_t addend) {
        uint64_t carry = addend;
        for (uint32_t i = 0; i < mag_.size(); ++i) {
            uint64_t cur = static_cast<uint64_t>(mag_[i]) * f + carry;
            mag_[i] = static_cast<uint32_t>(cur);
            carry = cur >> 32;
        }
        while (carry) {
            mag_.push_back(static_cast<uint32_t>(carry));
            carry >>= 32;
        }
    }

    static uint32_t div_small_inplace(detail::LimbVec& v, uint32_t d) {
        uint64_t rem = 0;
        for (uint32_t i = v.size(); i-- > 0;) {
            uint64_t cur = (rem << 32) | v[i];
            v[i] = static_cast<uint32_t>(cur / d);
            rem = cur % d;
        }
        trim(v);
        return static_cast<uint32_t>(rem);
    }

    static void trim(detail::LimbVec& v) {
        while (v.size() && v.back() == 0) v.pop_back();
    }

    static int cmp_mag(const detail::LimbVec& a, const detail::LimbVec& b) {
        if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
        for (uint32_t i = a.size(); i-- > 0;) {
            if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
        }
        return 0;
    }

    static void add_mag(const detail::LimbVec& a, const detail::LimbVec& b, detail::LimbVec& out) {
        const detail::LimbVec& lo = a.size() >= b.size() ? b : a;
        const detail::LimbVec& hi = a.size() >= b.size() ? a : b;
        out.resize(hi.size());
        uint64_t carry = 0;
        uint32_t i = 0;
        for (; i < lo.size(); ++i) {
            uint64_t cur = static_cast<uint64_t>(hi[i]) + lo[i] + carry;
            out[i] = static_cast<uint32_t>(cur);
            carry = cur >> 32;
        }
        for (; i < hi.size(); ++i) {
            uint64_t cur = static_cast<uint64_t>(hi[i]) + carry;
            out[i] = static_cast<uint32_t>(cur);
            carry = cur >> 32;
        }
        if (carry) out.push_back(static_cast<uint32_t>(carry));
    }

    // requires |a| >= |b|
    static void sub_mag(const detail::LimbVec& a, const detail::LimbVec& b, detail::LimbVec& out) {
        out.resize(a.size());
        int64_t borrow = 0;
        uint32_t i = 0;
        for (; i < b.size(); ++i) {
            int64_t cur = static_cast<int64_t>(a[i]) - b[i] - borrow;
            borrow = cur < 0 ? 1 : 0;
            out[i] = static_cast<uint32_t>(cur + (borrow << 32));
        }
        for (; i < a.size(); ++i) {
            int64_t cur = static_cast<int64_t>(a[i]) - borrow;
            borrow = cur < 0 ? 1 : 0;
            out[i] = static_cast<uint32_t>(cur + (borrow << 32));
        }
        trim(out);
    }

    static void mul_mag(const detail::LimbVec& a, const detail::LimbVec& b, detail::LimbVec& out) {
        out.resize(a.size() + b.size(), 0);
        for (uint32_t i = 0; i < a.size(); ++i) {
            uint64_t carry = 0;
            uint64_t ai = a[i];
            for (uint32_t j = 0; j < b.size(); ++j) {
                uint64_t cur = ai * b[j] + out[i + j] + carry;
                out[i + j] = static_cast<uint32_t>(cur);
                carry = cur >> 32;
            }
            out[i + b.size()] = static_cast<uint32_t>(carry);
        }
        trim(out);
    }

    // Knuth algorithm D on normalized operands; requires |a| >= |b| > 0.
    static void divrem_mag(const detail::LimbVec& a, const detail::LimbVec& b,
                           detail::LimbVec& q, detail::LimbVec& r) {
        if (b.size() == 1) {
            detail::LimbVec work = a;
            uint32_t rem = 0;
            {
                uint64_t acc = 0;
                for (uint32_t i = work.size(); i-- > 0;) {
                    uint64_t cur = (acc << 32) | work[i];
                    work[i] = static_cast<uint32_t>(cur / b[0]);
                    acc = cur % b[0];
                }
                rem = static_cast<uint32_t>(acc);
            }
            trim(work);
            q = std::move(work);
            r.clear();
            if (rem) r.push_back(rem);
            return;
        }

        const uint32_t n = b.size();
        const uint32_t m = a.size() - n;
        const int shift = 31 - static_cast<int>(bit_width_of(b.back())) + 1;

        detail::LimbVec u, v;
        shl_bits(a, shift, u);
        u.resize(a.size() + 1, 0);
        shl_bits(b, shift, v);

        q.clear();
        q.resize(m + 1, 0);
        const uint64_t base = 1ull << 32;
        const uint64_t vTop = v[n - 1];
        const uint64_t vNext = v[n - 2];

        for (uint32_t jj = m + 1; jj-- > 0;) {
            uint64_t numer = (static_cast<uint64_t>(u[jj + n]) << 32) | u[jj + n - 1];
            uint64_t qhat = numer / vTop;
            uint64_t rhat = numer % vTop;
            if (qhat >= base) {
                qhat = base - 1;
                rhat = numer - qhat * vTop;
            }
            while (rhat < base && qhat * vNext > ((rhat << 32) | u[jj + n - 2])) {
                --qhat;
                rhat += vTop;
            }
            // multiply-subtract qhat*v from u[jj..jj+n]
            int64_t borrow = 0;
            uint64_t carry = 0;
            for (uint32_t i = 0; i < n; ++i) {
                uint64_t p = qhat * v[i] + carry;
                carry = p >> 32;
                int64_t cur = static_cast<int64_t>(u[jj + i]) - static_cast<int64_t>(p & 0xffffffffull) - borrow;
                borrow = cur < 0 ? 1 : 0;
                u[jj + i] = static_cast<uint32_t>(cur + (borrow << 32));
            }
            int64_t top = static_cast<int64_t>(u[jj + n]) - static_cast<int64_t>(carry) - borrow;
            if (top < 0) {
                // qhat one too large: add v back
                --qhat;
                uint64_t c2 = 0;
                for (uint32_t i = 0; i < n; ++i) {
                    uint64_t cur = static_cast<uint64_t>(u[jj + i]) + v[i] + c2;
                    u[jj + i] = static_cast<uint32_t>(cur);
                    c2 = cur >> 32;
                }
                top += static_cast<int64_t>(c2);
            }
            u[jj + n] = static_cast<uint32_t>(top);
            q[jj] = static_cast<uint32_t>(qhat);
        }
        trim(q);
        u.resize(n);
        shr_bits_apply(u, shift, r);
    }

    static uint32_t bit_width_of(uint32_t x) {
        uint32_t w = 0;
        while (x) {
            ++w;
            x >>= 1;
        }
        return w;
    }

    static void shl_bits(const detail::LimbVec& in, int s, detail::LimbVec& out) {
        out.clear();
        if (s == 0) {
            out = in;
            return;
        }
        out.resize(in.size() + 1, 0);
        uint32_t carry = 0;
        for (uint32_t i = 0; i < in.size(); ++i) {
            out[i] = (in[i] << s) | carry;
            carry = static_cast<uint32_t>(static_cast<uint64_t>(in[i]) >> (32 - s));
        }
        out[in.size()] = carry;
        trim(out);
    }

    static void shr_bits_apply(const detail::LimbVec& in, int s, detail::LimbVec& out) {
        out = in;
        if (s == 0) {
            trim(out);
            return;
        }
        for (uint32_t i = 0; i < out.size(); ++i) {
            uint32_t hi = (i + 1 < out.size()) ? out[i + 1] : 0;
            out[i] = (out[i] >> s) | static_cast<uint32_t>(static_cast<uint64_t>(hi) << (32 - s));
        }
        trim(out);
    }

    int8_t sign_ = 0;
    detail::LimbVec mag_;
};

}  // namespace warpconv
