#ifndef GRIDTEST_BIGINT_HPP
#define GRIDTEST_BIGINT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "gridtest/common.hpp"

namespace gridtest {

/// Arbitrary-precision unsigned integer, base 2^32 little-endian limbs.
/// Covers the exact combinatorics this project needs (multinomials,
/// powers, hypergeometric weights); not a general bignum library.
class BigUint {
public:
    BigUint() = default;
    BigUint(std::uint64_t v) {
        if (v) {
            limbs_.push_back(static_cast<std::uint32_t>(v));
            if (v >> 32) limbs_.push_back(static_cast<std::uint32_t>(v >> 32));
        }
    }

    bool is_zero() const { return limbs_.empty(); }

    static int compare(const BigUint& a, const BigUint& b) {
        if (a.limbs_.size() != b.limbs_.size()) return a.limbs_.size() < b.limbs_.size() ? -1 : 1;
        for (std::size_t i = a.limbs_.size(); i-- > 0;)
            if (a.limbs_[i] != b.limbs_[i]) return a.limbs_[i] < b.limbs_[i] ? -1 : 1;
        return 0;
    }
    friend bool operator==(const BigUint& a, const BigUint& b) { return compare(a, b) == 0; }
    friend bool operator!=(const BigUint& a, const BigUint& b) { return compare(a, b) != 0; }
    friend bool operator<(const BigUint& a, const BigUint& b) { return compare(a, b) < 0; }
    friend bool operator<=(const BigUint& a, const BigUint& b) { return compare(a, b) <= 0; }
    friend bool operator>(const BigUint& a, const BigUint& b) { return compare(a, b) > 0; }
    friend bool operator>=(const BigUint& a, const BigUint& b) { return compare(a, b) >= 0; }

    BigUint& operator+=(const BigUint& o) {
        if (limbs_.size() < o.limbs_.size()) limbs_.resize(o.limbs_.size(), 0);
        std::uint64_t carry = 0;
        for (std::size_t i = 0; i < limbs_.size(); ++i) {
            std::uint64_t s = carry + limbs_[i] + (i < o.limbs_.size() ? o.limbs_[i] : 0);
            limbs_[i] = static_cast<std::uint32_t>(s);
            carry = s >> 32;
        }
        if (carry) limbs_.push_back(static_cast<std::uint32_t>(carry));
        return *this;
    }
    friend BigUint operator+(BigUint a, const BigUint& b) { return a += b; }

    // Requires *this >= o.
    BigUint& operator-=(const BigUint& o) {
        require(*this >= o, Errc::invalid_argument, "BigUint: negative subtraction");
        std::int64_t borrow = 0;
        for (std::size_t i = 0; i < limbs_.size(); ++i) {
            std::int64_t d = (std::int64_t)limbs_[i] - borrow - (i < o.limbs_.size() ? (std::int64_t)o.limbs_[i] : 0);
            borrow = d < 0;
            if (d < 0) d += (std::int64_t)1 << 32;
            limbs_[i] = static_cast<std::uint32_t>(d);
        }
        trim();
        return *this;
    }
    friend BigUint operator-(BigUint a, const BigUint& b) { return a -= b; }

    BigUint& mul_small(std::uint64_t m) {
        if (m == 0 || is_zero()) { limbs_.clear(); return *this; }
        std::uint64_t lo = static_cast<std::uint32_t>(m), hi = m >> 32;
        if (hi == 0) {
            std::uint64_t carry = 0;
            for (auto& l : limbs_) {
                std::uint64_t p = (std::uint64_t)l * lo + carry;
                l = static_cast<std::uint32_t>(p);
                carry = p >> 32;
            }
            while (carry) {
                limbs_.push_back(static_cast<std::uint32_t>(carry));
                carry >>= 32;
            }
            return *this;
        }
        *this = *this * BigUint(m);
        return *this;
    }

    friend BigUint operator*(const BigUint& a, const BigUint& b) {
        if (a.is_zero() || b.is_zero()) return BigUint();
        BigUint r;
        r.limbs_.assign(a.limbs_.size() + b.limbs_.size(), 0);
        for (std::size_t i = 0; i < a.limbs_.size(); ++i) {
            std::uint64_t carry = 0;
            for (std::size_t j = 0; j < b.limbs_.size(); ++j) {
                std::uint64_t cur = r.limbs_[i + j] + (std::uint64_t)a.limbs_[i] * b.limbs_[j] + carry;
                r.limbs_[i + j] = static_cast<std::uint32_t>(cur);
                carry = cur >> 32;
            }
            std::size_t k = i + b.limbs_.size();
            while (carry) {
                std::uint64_t cur = r.limbs_[k] + carry;
                r.limbs_[k] = static_cast<std::uint32_t>(cur);
                carry = cur >> 32;
                ++k;
            }
        }
        r.trim();
        return r;
    }
    BigUint& operator*=(const BigUint& o) { return *this = *this * o; }

    /// Divide by a 32-bit value in place, returning the remainder.
    std::uint32_t divmod_small(std::uint32_t d) {
        require(d != 0, Errc::invalid_argument, "BigUint: division by zero");
        std::uint64_t rem = 0;
        for (std::size_t i = limbs_.size(); i-- > 0;) {
            std::uint64_t cur = (rem << 32) | limbs_[i];
            limbs_[i] = static_cast<std::uint32_t>(cur / d);
            rem = cur % d;
        }
        trim();
        return static_cast<std::uint32_t>(rem);
    }

    /// Schoolbook long division.
    static void divmod(const BigUint& a, const BigUint& b, BigUint& q, BigUint& r) {
        require(!b.is_zero(), Errc::invalid_argument, "BigUint: division by zero");
        q = BigUint();
        r = BigUint();
        if (a < b) { r = a; return; }
        if (b.limbs_.size() == 1) {
            q = a;
            r = BigUint(q.divmod_small(b.limbs_[0]));
            return;
        }
        // bit-by-bit from the top; slow but only used on modest operands
        q.limbs_.assign(a.limbs_.size(), 0);
        for (std::size_t bit = a.limbs_.size() * 32; bit-- > 0;) {
            r.shl1();
            if ((a.limbs_[bit / 32] >> (bit % 32)) & 1u) r.set_bit0();
            if (r >= b) {
                r -= b;
                q.limbs_[bit / 32] |= (1u << (bit % 32));
            }
        }
        q.trim();
    }

    friend BigUint operator/(const BigUint& a, const BigUint& b) {
        BigUint q, r;
        divmod(a, b, q, r);
        return q;
    }
    friend BigUint operator%(const BigUint& a, const BigUint& b) {
        BigUint q, r;
        divmod(a, b, q, r);
        return r;
    }

    static BigUint gcd(BigUint a, BigUint b) {
        while (!b.is_zero()) {
            BigUint q, r;
            divmod(a, b, q, r);
            a = std::move(b);
            b = std::move(r);
        }
        return a;
    }

    static BigUint pow(std::uint64_t base, std::uint64_t exp) {
        BigUint r(1);
        BigUint b(base);
        while (exp) {
            if (exp & 1) r *= b;
            b *= b;
            exp >>= 1;
        }
        return r;
    }

    static BigUint factorial(std::uint32_t n) {
        BigUint r(1);
        for (std::uint32_t i = 2; i <= n; ++i) r.mul_small(i);
        return r;
    }

    static BigUint binomial(std::uint32_t n, std::uint32_t k) {
        if (k > n) return BigUint();
        if (k > n - k) k = n - k;
        BigUint r(1);
        for (std::uint32_t j = 1; j <= k; ++j) {
            r.mul_small(n - k + j);
            r.divmod_small(j); // exact at every step
        }
        return r;
    }

    bool fits_u64() const { return limbs_.size() <= 2; }
    std::uint64_t to_u64() const {
        require(fits_u64(), Errc::invalid_argument, "BigUint: does not fit 64 bits");
        std::uint64_t v = 0;
        if (limbs_.size() > 0) v = limbs_[0];
        if (limbs_.size() > 1) v |= (std::uint64_t)limbs_[1] << 32;
        return v;
    }

    double to_double() const {
        double v = 0;
        for (std::size_t i = limbs_.size(); i-- > 0;) v = v * 4294967296.0 + limbs_[i];
        return v;
    }

    std::string str() const {
        if (is_zero()) return "0";
        BigUint t = *this;
        std::string out;
        while (!t.is_zero()) {
            std::uint32_t r = t.divmod_small(1000000000u);
            std::string part = std::to_string(r);
            if (!t.is_zero()) part = std::string(9 - part.size(), '0') + part;
            out = part + out;
        }
        return out;
    }

private:
    void trim() {
        while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
    }
    void shl1() {
        std::uint32_t carry = 0;
        for (auto& l : limbs_) {
            std::uint32_t nc = l >> 31;
            l = (l << 1) | carry;
            carry = nc;
        }
        if (carry) limbs_.push_back(carry);
    }
    void set_bit0() {
        if (limbs_.empty()) limbs_.push_back(1);
        else limbs_[0] |= 1u;
    }

    std::vector<std::uint32_t> limbs_;
};

/// Signed exact rational over BigUint, stored reduced.
class BigRat {
public:
    BigRat() : num_(0), den_(1), neg_(false) {}
    BigRat(std::int64_t v) : num_(v < 0 ? (std::uint64_t)(-v) : (std::uint64_t)v), den_(1), neg_(v < 0) {}
    BigRat(BigUint n, BigUint d, bool neg = false) : num_(std::move(n)), den_(std::move(d)), neg_(neg) {
        require(!den_.is_zero(), Errc::invalid_argument, "BigRat: zero denominator");
        normalize();
    }

    bool is_zero() const { return num_.is_zero(); }
    bool negative() const { return neg_; }
    const BigUint& num() const { return num_; }
    const BigUint& den() const { return den_; }

    friend BigRat operator+(const BigRat& a, const BigRat& b) {
        BigUint l = a.num_ * b.den_, r = b.num_ * a.den_;
        BigUint d = a.den_ * b.den_;
        if (a.neg_ == b.neg_) return BigRat(l + r, std::move(d), a.neg_);
        if (l == r) return BigRat();
        if (l > r) return BigRat(l - r, std::move(d), a.neg_);
        return BigRat(r - l, std::move(d), b.neg_);
    }
    friend BigRat operator-(const BigRat& a, const BigRat& b) { return a + b.negated(); }
    friend BigRat operator*(const BigRat& a, const BigRat& b) {
        return BigRat(a.num_ * b.num_, a.den_ * b.den_, a.neg_ != b.neg_);
    }
    friend BigRat operator/(const BigRat& a, const BigRat& b) {
        require(!b.is_zero(), Errc::invalid_argument, "BigRat: division by zero");
        return BigRat(a.num_ * b.den_, a.den_ * b.num_, a.neg_ != b.neg_);
    }
    BigRat negated() const {
        BigRat r = *this;
        if (!r.is_zero()) r.neg_ = !r.neg_;
        return r;
    }

    friend bool operator==(const BigRat& a, const BigRat& b) {
        return a.neg_ == b.neg_ && a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const BigRat& a, const BigRat& b) { return !(a == b); }
    friend bool operator<(const BigRat& a, const BigRat& b) { return (b - a).sign() > 0; }
    friend bool operator<=(const BigRat& a, const BigRat& b) { return !(b < a); }

    int sign() const { return is_zero() ? 0 : (neg_ ? -1 : 1); }

    static BigRat pow(const BigRat& b, std::uint32_t e) {
        BigRat r(1);
        for (std::uint32_t i = 0; i < e; ++i) r = r * b;
        return r;
    }

    double to_double() const {
        // scale so the quotient keeps ~18 significant digits
        BigUint q, r;
        BigUint scaled = num_ * BigUint::pow(10, 18);
        BigUint::divmod(scaled, den_, q, r);
        double v = q.to_double() / 1e18;
        return neg_ ? -v : v;
    }

    std::string str() const {
        std::string s = neg_ ? "-" : "";
        return s + num_.str() + "/" + den_.str();
    }

private:
    void normalize() {
        if (num_.is_zero()) {
            den_ = BigUint(1);
            neg_ = false;
            return;
        }
        BigUint g = BigUint::gcd(num_, den_);
        if (BigUint(1) < g) {
            num_ = num_ / g;
            den_ = den_ / g;
        }
    }

    BigUint num_, den_;
    bool neg_;
};

} // namespace gridtest

#endif
