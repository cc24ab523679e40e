#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace cpafdm {

// Unsigned arbitrary-precision integer, little-endian base-2^32 limbs.
//
// Covers what permutation ranks and combinatorial counts need: word-sized
// multiply/divide, schoolbook products, decimal I/O, and log2 for
// log-domain range checks. Values are normalized (no leading zero limbs);
// zero is the empty limb vector.
class BigUint {
public:
    BigUint() = default;
    BigUint(std::uint64_t value);

    static BigUint from_decimal(const std::string& digits);
    static BigUint factorial(unsigned n);
    static BigUint binomial(unsigned n, unsigned k);

    bool is_zero() const { return limbs_.empty(); }
    std::size_t bit_length() const;
    double log2() const;   // -inf for zero
    double log10() const;
    double to_double() const;
    std::uint64_t to_u64() const;  // throws std::overflow_error if it does not fit
    std::string to_decimal() const;

    BigUint& add_word(std::uint32_t w);
    BigUint& mul_word(std::uint32_t w);
    // In-place quotient, returns remainder. d must be nonzero.
    std::uint32_t divmod_word(std::uint32_t d);

    friend BigUint operator+(const BigUint& a, const BigUint& b);
    friend BigUint operator-(const BigUint& a, const BigUint& b);  // requires a >= b
    friend BigUint operator*(const BigUint& a, const BigUint& b);

    friend bool operator==(const BigUint& a, const BigUint& b) = default;
    friend std::strong_ordering operator<=>(const BigUint& a, const BigUint& b);

private:
    std::vector<std::uint32_t> limbs_;
    void trim();
};

}  // namespace cpafdm
