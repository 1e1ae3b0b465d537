#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qsdc/rng.hpp"

namespace qsdc {

/// Fixed-length bit vector over GF(2). Bit 0 is the least significant /
/// rightmost character of the string form, so "1011" has bit(0) = 1,
/// bit(1) = 1, bit(2) = 0, bit(3) = 1. Length is fixed at construction;
/// the value never changes afterwards, so instances are freely shareable
/// across threads. Backed by packed 64-bit words (lengths run into the
/// thousands in stabilizer runs).
class BitVector {
public:
    /// All-zero vector of length m (m >= 1).
    explicit BitVector(std::size_t m);

    static BitVector zeros(std::size_t m) { return BitVector(m); }

    /// Low `m` bits of `value`, bit i of the vector = bit i of value.
    static BitVector from_uint(std::size_t m, std::uint64_t value);

    /// Parse the MSB-first string form, e.g. "1011". Also accepts the hex
    /// form "0x..." (big-endian nibbles), in which case `m` must be given
    /// because leading zeros are significant.
    static BitVector parse(const std::string& text);
    static BitVector parse_hex(const std::string& text, std::size_t m);

    static BitVector random(std::size_t m, CounterRng& rng);

    std::size_t size() const { return size_; }
    int bit(std::size_t i) const;
    bool is_zero() const;
    std::size_t popcount() const;

    /// MSB-first binary string, e.g. "1011".
    std::string str() const;
    /// "0x"-prefixed big-endian hex, for long vectors.
    std::string hex() const;

    /// Bitwise addition modulo 2. Lengths must match.
    BitVector operator^(const BitVector& other) const;

    bool operator==(const BitVector& other) const;
    bool operator!=(const BitVector& other) const { return !(*this == other); }

    /// Integer value; only valid for size() <= 64.
    std::uint64_t to_uint() const;

    friend int inner_product_mod2(const BitVector& x, const BitVector& y);

private:
    BitVector(std::size_t m, std::vector<std::uint64_t> words)
        : size_(m), words_(std::move(words)) {}
    void mask_tail();

    std::size_t size_;
    std::vector<std::uint64_t> words_;
};

/// Inner product modulo 2: XOR over i of x_i * y_i. Lengths must match.
int inner_product_mod2(const BitVector& x, const BitVector& y);

/// Exhaustive census of the characteristic inner product: counts of
/// x in B^m with c.x = 0 and c.x = 1. Enumerates all 2^m vectors, so
/// m is capped at 20. Nonzero c splits B^m exactly in half.
std::pair<std::uint64_t, std::uint64_t> cip_census(const BitVector& c);

} // namespace qsdc
