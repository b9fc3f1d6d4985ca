#include "ldlab/bigint.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ldlab {

BigUint::BigUint(std::uint64_t v) {
    if (v != 0) {
        limbs_.push_back(static_cast<std::uint32_t>(v));
        if (v >> 32) limbs_.push_back(static_cast<std::uint32_t>(v >> 32));
    }
}

void BigUint::normalize() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
}

BigUint& BigUint::operator+=(const BigUint& rhs) {
    const std::size_t n = std::max(limbs_.size(), rhs.limbs_.size());
    limbs_.resize(n, 0);
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t s = carry + limbs_[i];
        if (i < rhs.limbs_.size()) s += rhs.limbs_[i];
        limbs_[i] = static_cast<std::uint32_t>(s);
        carry = s >> 32;
    }
    if (carry) limbs_.push_back(static_cast<std::uint32_t>(carry));
    return *this;
}

BigUint& BigUint::operator*=(const BigUint& rhs) {
    if (is_zero() || rhs.is_zero()) {
        limbs_.clear();
        return *this;
    }
    std::vector<std::uint32_t> out(limbs_.size() + rhs.limbs_.size(), 0);
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
        std::uint64_t carry = 0;
        for (std::size_t j = 0; j < rhs.limbs_.size(); ++j) {
            std::uint64_t cur = out[i + j] +
                                std::uint64_t(limbs_[i]) * rhs.limbs_[j] + carry;
            out[i + j] = static_cast<std::uint32_t>(cur);
            carry = cur >> 32;
        }
        std::size_t k = i + rhs.limbs_.size();
        while (carry) {
            std::uint64_t cur = out[k] + carry;
            out[k] = static_cast<std::uint32_t>(cur);
            carry = cur >> 32;
            ++k;
        }
    }
    limbs_ = std::move(out);
    normalize();
    return *this;
}

BigUint& BigUint::mul_small(std::uint32_t m) {
    if (m == 0) {
        limbs_.clear();
        return *this;
    }
    std::uint64_t carry = 0;
    for (auto& limb : limbs_) {
        const std::uint64_t cur = std::uint64_t(limb) * m + carry;
        limb = static_cast<std::uint32_t>(cur);
        carry = cur >> 32;
    }
    while (carry) {
        limbs_.push_back(static_cast<std::uint32_t>(carry));
        carry >>= 32;
    }
    return *this;
}

BigUint& BigUint::div_exact_small(std::uint32_t d) {
    if (d == 0) throw std::invalid_argument("BigUint: division by zero");
    if (div_mod_small(d) != 0)
        throw std::logic_error("BigUint: division was not exact");
    return *this;
}

BigUint BigUint::pow(std::uint64_t base, std::uint64_t exponent) {
    BigUint result(1);
    BigUint b(base);
    while (exponent) {
        if (exponent & 1) result *= b;
        exponent >>= 1;
        if (exponent) b *= b;
    }
    return result;
}

std::strong_ordering BigUint::operator<=>(const BigUint& rhs) const {
    if (limbs_.size() != rhs.limbs_.size())
        return limbs_.size() <=> rhs.limbs_.size();
    for (std::size_t i = limbs_.size(); i-- > 0;) {
        if (limbs_[i] != rhs.limbs_[i]) return limbs_[i] <=> rhs.limbs_[i];
    }
    return std::strong_ordering::equal;
}

std::size_t BigUint::bit_length() const {
    if (limbs_.empty()) return 0;
    std::uint32_t top = limbs_.back();
    std::size_t bits = (limbs_.size() - 1) * 32;
    while (top) {
        ++bits;
        top >>= 1;
    }
    return bits;
}

double BigUint::log2() const {
    if (is_zero()) return -std::numeric_limits<double>::infinity();
    const std::size_t bits = bit_length();
    if (bits <= 63) return std::log2(static_cast<double>(to_u64()));
    // value ~= top64 * 2^(bits-64) where top64 holds the leading 64 bits
    std::uint64_t top = 0;
    for (std::size_t b = 64; b-- > 0;) {
        const std::size_t pos = bits - 64 + b;
        const std::uint32_t bit = (limbs_[pos / 32] >> (pos % 32)) & 1u;
        top = (top << 1) | bit;
    }
    return std::log2(static_cast<double>(top)) + static_cast<double>(bits - 64);
}

std::uint64_t BigUint::to_u64() const {
    if (!fits_u64()) throw std::overflow_error("BigUint: value exceeds 64 bits");
    std::uint64_t v = 0;
    if (limbs_.size() > 1) v = std::uint64_t(limbs_[1]) << 32;
    if (!limbs_.empty()) v |= limbs_[0];
    return v;
}

std::uint32_t BigUint::div_mod_small(std::uint32_t d) {
    std::uint64_t rem = 0;
    for (std::size_t i = limbs_.size(); i-- > 0;) {
        std::uint64_t cur = (rem << 32) | limbs_[i];
        limbs_[i] = static_cast<std::uint32_t>(cur / d);
        rem = cur % d;
    }
    normalize();
    return static_cast<std::uint32_t>(rem);
}

std::string BigUint::to_string() const {
    if (is_zero()) return "0";
    BigUint tmp(*this);
    std::string out;
    while (!tmp.is_zero()) {
        std::uint32_t chunk = tmp.div_mod_small(1000000000u);
        if (tmp.is_zero()) {
            out = std::to_string(chunk) + out;
        } else {
            std::string part = std::to_string(chunk);
            out = std::string(9 - part.size(), '0') + part + out;
        }
    }
    return out;
}

}  // namespace ldlab
