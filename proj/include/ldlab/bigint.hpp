// bigint.hpp -- arbitrary-precision unsigned integers for exact counting.
//
// Ball volumes and tuple-count bounds overflow 64 bits already at desk
// scale, so the counting oracles run on BigUint. Deliberately minimal:
// add, multiply, power, compare, decimal output.

#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace ldlab {

class BigUint {
  public:
    BigUint() = default;
    BigUint(std::uint64_t v);

    static BigUint pow(std::uint64_t base, std::uint64_t exponent);

    BigUint& operator+=(const BigUint& rhs);
    BigUint& operator*=(const BigUint& rhs);
    BigUint& mul_small(std::uint32_t m);
    BigUint& div_exact_small(std::uint32_t d);  // throws unless divisible
    friend BigUint operator+(BigUint a, const BigUint& b) { a += b; return a; }
    friend BigUint operator*(BigUint a, const BigUint& b) { a *= b; return a; }

    bool operator==(const BigUint& rhs) const { return limbs_ == rhs.limbs_; }
    std::strong_ordering operator<=>(const BigUint& rhs) const;

    bool is_zero() const { return limbs_.empty(); }
    std::size_t bit_length() const;
    double log2() const;  // -inf for zero
    bool fits_u64() const { return limbs_.size() <= 2; }
    std::uint64_t to_u64() const;  // throws std::overflow_error if too wide
    std::string to_string() const;

  private:
    // little-endian base-2^32 limbs, normalized (no high zero limbs)
    std::vector<std::uint32_t> limbs_;

    void normalize();
    std::uint32_t div_mod_small(std::uint32_t d);
};

}  // namespace ldlab
