#include "cpafdm/bigint.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace cpafdm {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using u128 = unsigned __int128;

void BigUint::trim() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
}

BigUint::BigUint(u64 value) {
    if (value != 0) {
        limbs_.push_back(static_cast<u32>(value));
        if (value >> 32) limbs_.push_back(static_cast<u32>(value >> 32));
    }
}

BigUint BigUint::from_decimal(const std::string& digits) {
    if (digits.empty()) throw std::invalid_argument("empty decimal string");
    BigUint r;
    for (char c : digits) {
        if (c < '0' || c > '9')
            throw std::invalid_argument("invalid decimal digit in \"" + digits + "\"");
        r.mul_word(10);
        r.add_word(static_cast<u32>(c - '0'));
    }
    return r;
}

BigUint BigUint::factorial(unsigned n) {
    BigUint r(1);
    for (unsigned k = 2; k <= n; ++k) r.mul_word(k);
    return r;
}

BigUint BigUint::binomial(unsigned n, unsigned k) {
    if (k > n) return BigUint(0);
    if (k > n - k) k = n - k;
    BigUint r(1);
    for (unsigned i = 1; i <= k; ++i) {
        r.mul_word(n - k + i);
        u32 rem = r.divmod_word(i);
        if (rem != 0) throw std::logic_error("binomial: inexact division");
    }
    return r;
}

std::size_t BigUint::bit_length() const {
    if (limbs_.empty()) return 0;
    std::size_t bits = (limbs_.size() - 1) * 32;
    u32 top = limbs_.back();
    while (top) {
        ++bits;
        top >>= 1;
    }
    return bits;
}

double BigUint::log2() const {
    if (is_zero()) return -std::numeric_limits<double>::infinity();
    std::size_t bl = bit_length();
    if (bl <= 64) return std::log2(static_cast<double>(to_u64()));
    // value ~= m * 2^(bl-64) with m holding the top 64 bits
    std::size_t shift = bl - 64;
    u64 m = 0;
    for (std::size_t bit = 0; bit < 64; ++bit) {
        std::size_t pos = shift + bit;
        u32 limb = limbs_[pos / 32];
        if ((limb >> (pos % 32)) & 1u) m |= (u64(1) << bit);
    }
    return std::log2(static_cast<double>(m)) + static_cast<double>(shift);
}

double BigUint::log10() const { return log2() * 0.30102999566398119521; }

double BigUint::to_double() const {
    if (is_zero()) return 0.0;
    if (bit_length() > 1024) return std::numeric_limits<double>::infinity();
    double r = 0.0;
    for (std::size_t i = limbs_.size(); i-- > 0;) r = r * 4294967296.0 + limbs_[i];
    return r;
}

std::uint64_t BigUint::to_u64() const {
    if (limbs_.size() > 2) throw std::overflow_error("BigUint does not fit in 64 bits");
    u64 r = 0;
    if (limbs_.size() > 1) r = u64(limbs_[1]) << 32;
    if (!limbs_.empty()) r |= limbs_[0];
    return r;
}

std::string BigUint::to_decimal() const {
    if (is_zero()) return "0";
    BigUint tmp = *this;
    std::vector<u32> groups;  // base 10^9, little-endian
    while (!tmp.is_zero()) groups.push_back(tmp.divmod_word(1000000000u));
    std::string out = std::to_string(groups.back());
    char buf[16];
    for (std::size_t i = groups.size() - 1; i-- > 0;) {
        std::snprintf(buf, sizeof(buf), "%09u", groups[i]);
        out += buf;
    }
    return out;
}

BigUint& BigUint::add_word(u32 w) {
    u64 carry = w;
    for (std::size_t i = 0; carry && i < limbs_.size(); ++i) {
        u64 cur = u64(limbs_[i]) + carry;
        limbs_[i] = static_cast<u32>(cur);
        carry = cur >> 32;
    }
    if (carry) limbs_.push_back(static_cast<u32>(carry));
    return *this;
}

BigUint& BigUint::mul_word(u32 w) {
    if (w == 0) {
        limbs_.clear();
        return *this;
    }
    u64 carry = 0;
    for (auto& limb : limbs_) {
        u64 cur = u64(limb) * w + carry;
        limb = static_cast<u32>(cur);
        carry = cur >> 32;
    }
    while (carry) {
        limbs_.push_back(static_cast<u32>(carry));
        carry >>= 32;
    }
    return *this;
}

u32 BigUint::divmod_word(u32 d) {
    if (d == 0) throw std::invalid_argument("division by zero");
    u64 rem = 0;
    for (std::size_t i = limbs_.size(); i-- > 0;) {
        u64 cur = (rem << 32) | limbs_[i];
        limbs_[i] = static_cast<u32>(cur / d);
        rem = cur % d;
    }
    trim();
    return static_cast<u32>(rem);
}

BigUint operator+(const BigUint& a, const BigUint& b) {
    BigUint r;
    const auto& x = a.limbs_;
    const auto& y = b.limbs_;
    std::size_t n = std::max(x.size(), y.size());
    r.limbs_.resize(n);
    u64 carry = 0;
    for (std::size_t i = 0; i < n; ++i) {
        u64 cur = carry;
        if (i < x.size()) cur += x[i];
        if (i < y.size()) cur += y[i];
        r.limbs_[i] = static_cast<u32>(cur);
        carry = cur >> 32;
    }
    if (carry) r.limbs_.push_back(static_cast<u32>(carry));
    return r;
}

BigUint operator-(const BigUint& a, const BigUint& b) {
    if (a < b) throw std::underflow_error("BigUint subtraction would be negative");
    BigUint r;
    r.limbs_.resize(a.limbs_.size());
    std::int64_t borrow = 0;
    for (std::size_t i = 0; i < a.limbs_.size(); ++i) {
        std::int64_t cur = std::int64_t(a.limbs_[i]) - borrow -
                           (i < b.limbs_.size() ? std::int64_t(b.limbs_[i]) : 0);
        if (cur < 0) {
            cur += (std::int64_t(1) << 32);
            borrow = 1;
        } else {
            borrow = 0;
        }
        r.limbs_[i] = static_cast<u32>(cur);
    }
    r.trim();
    return r;
}

BigUint operator*(const BigUint& a, const BigUint& b) {
    if (a.is_zero() || b.is_zero()) return BigUint();
    BigUint r;
    r.limbs_.assign(a.limbs_.size() + b.limbs_.size(), 0);
    for (std::size_t i = 0; i < a.limbs_.size(); ++i) {
        u64 carry = 0;
        for (std::size_t j = 0; j < b.limbs_.size(); ++j) {
            u128 cur = u128(a.limbs_[i]) * b.limbs_[j] + r.limbs_[i + j] + carry;
            r.limbs_[i + j] = static_cast<u32>(cur);
            carry = static_cast<u64>(cur >> 32);
        }
        std::size_t k = i + b.limbs_.size();
        while (carry) {
            u64 cur = u64(r.limbs_[k]) + (carry & 0xffffffffu);
            r.limbs_[k] = static_cast<u32>(cur);
            carry = (carry >> 32) + (cur >> 32);
            ++k;
        }
    }
    r.trim();
    return r;
}

std::strong_ordering operator<=>(const BigUint& a, const BigUint& b) {
    if (a.limbs_.size() != b.limbs_.size())
        return a.limbs_.size() <=> b.limbs_.size();
    for (std::size_t i = a.limbs_.size(); i-- > 0;) {
        if (a.limbs_[i] != b.limbs_[i]) return a.limbs_[i] <=> b.limbs_[i];
    }
    return std::strong_ordering::equal;
}

}  // namespace cpafdm
