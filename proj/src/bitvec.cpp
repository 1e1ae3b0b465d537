#include "qsdc/bitvec.hpp"

#include <bit>

#include "qsdc/errors.hpp"

namespace qsdc {

namespace {
constexpr std::size_t kWordBits = 64;
constexpr std::size_t kCensusMaxBits = 20;

std::size_t words_for(std::size_t m) { return (m + kWordBits - 1) / kWordBits; }
} // namespace

BitVector::BitVector(std::size_t m) : size_(m), words_(words_for(m), 0) {
    if (m == 0) throw dimension_error("BitVector length must be >= 1");
}

BitVector BitVector::from_uint(std::size_t m, std::uint64_t value) {
    BitVector v(m);
    v.words_[0] = value;
    v.mask_tail();
    return v;
}

BitVector BitVector::parse(const std::string& text) {
    if (text.rfind("0x", 0) == 0)
        throw dimension_error("hex form needs an explicit length, use parse_hex");
    if (text.empty()) throw dimension_error("empty bit string");
    BitVector v(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        char ch = text[text.size() - 1 - i]; // rightmost char is bit 0
        if (ch == '1')
            v.words_[i / kWordBits] |= std::uint64_t(1) << (i % kWordBits);
        else if (ch != '0')
            throw dimension_error("bit string may contain only 0 and 1");
    }
    return v;
}

BitVector BitVector::parse_hex(const std::string& text, std::size_t m) {
    if (text.rfind("0x", 0) != 0) throw dimension_error("hex form must start with 0x");
    std::size_t nibbles = text.size() - 2;
    if (nibbles != (m + 3) / 4)
        throw dimension_error("hex digit count does not match length " + std::to_string(m));
    BitVector v(m);
    for (std::size_t i = 0; i < nibbles; ++i) {
        char ch = text[text.size() - 1 - i]; // rightmost nibble holds bits 0..3
        std::uint64_t val;
        if (ch >= '0' && ch <= '9') val = ch - '0';
        else if (ch >= 'a' && ch <= 'f') val = 10 + ch - 'a';
        else if (ch >= 'A' && ch <= 'F') val = 10 + ch - 'A';
        else throw dimension_error("bad hex digit");
        std::size_t base = i * 4;
        if (base + 4 > m && (val >> (m - base)) != 0)
            throw dimension_error("hex value has bits above length " + std::to_string(m));
        v.words_[base / kWordBits] |= val << (base % kWordBits);
        if (base % kWordBits > kWordBits - 4 && base / kWordBits + 1 < v.words_.size())
            v.words_[base / kWordBits + 1] |= val >> (kWordBits - base % kWordBits);
    }
    v.mask_tail();
    return v;
}

BitVector BitVector::random(std::size_t m, CounterRng& rng) {
    BitVector v(m);
    for (auto& w : v.words_) w = rng.next_u64();
    v.mask_tail();
    return v;
}

void BitVector::mask_tail() {
    std::size_t rem = size_ % kWordBits;
    if (rem != 0) words_.back() &= (std::uint64_t(1) << rem) - 1;
}

int BitVector::bit(std::size_t i) const {
    if (i >= size_) throw dimension_error("bit index out of range");
    return static_cast<int>((words_[i / kWordBits] >> (i % kWordBits)) & 1);
}

bool BitVector::is_zero() const {
    for (auto w : words_)
        if (w != 0) return false;
    return true;
}

std::size_t BitVector::popcount() const {
    std::size_t n = 0;
    for (auto w : words_) n += std::popcount(w);
    return n;
}

std::string BitVector::str() const {
    std::string s(size_, '0');
    for (std::size_t i = 0; i < size_; ++i)
        if (bit(i)) s[size_ - 1 - i] = '1';
    return s;
}

std::string BitVector::hex() const {
    static const char* digits = "0123456789abcdef";
    std::size_t nibbles = (size_ + 3) / 4;
    std::string s = "0x";
    for (std::size_t i = nibbles; i-- > 0;) {
        std::size_t base = i * 4;
        std::uint64_t val = (words_[base / kWordBits] >> (base % kWordBits)) & 0xF;
        if (base % kWordBits > kWordBits - 4 && base / kWordBits + 1 < words_.size())
            val |= (words_[base / kWordBits + 1] << (kWordBits - base % kWordBits)) & 0xF;
        s += digits[val];
    }
    return s;
}

BitVector BitVector::operator^(const BitVector& other) const {
    if (size_ != other.size_)
        throw dimension_error("xor of unequal lengths " + std::to_string(size_) +
                              " and " + std::to_string(other.size_));
    BitVector out(size_);
    for (std::size_t i = 0; i < words_.size(); ++i)
        out.words_[i] = words_[i] ^ other.words_[i];
    return out;
}

bool BitVector::operator==(const BitVector& other) const {
    return size_ == other.size_ && words_ == other.words_;
}

std::uint64_t BitVector::to_uint() const {
    if (size_ > kWordBits) throw dimension_error("vector too long for to_uint");
    return words_[0];
}

int inner_product_mod2(const BitVector& x, const BitVector& y) {
    if (x.size_ != y.size_)
        throw dimension_error("inner product of unequal lengths " +
                              std::to_string(x.size_) + " and " + std::to_string(y.size_));
    std::uint64_t parity = 0;
    for (std::size_t i = 0; i < x.words_.size(); ++i)
        parity ^= x.words_[i] & y.words_[i];
    return std::popcount(parity) & 1;
}

std::pair<std::uint64_t, std::uint64_t> cip_census(const BitVector& c) {
    if (c.size() > kCensusMaxBits)
        throw resource_error("cip_census enumerates 2^m vectors; m > 20 refused");
    std::uint64_t mask = c.to_uint();
    std::uint64_t count1 = 0;
    std::uint64_t total = std::uint64_t(1) << c.size();
    for (std::uint64_t x = 0; x < total; ++x)
        count1 += std::popcount(mask & x) & 1;
    return {total - count1, count1};
}

} // namespace qsdc
