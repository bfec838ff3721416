#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace olenc
{

/// Fixed-length bit sequence packed into 64-bit words.
/// Index 0 is the leftmost bit of the textual form, so
/// BitString::from_string("10").bit(0) == 1.
class BitString
{
public:
    BitString() = default;
    explicit BitString(std::size_t size);

    /// Parses a string of '0'/'1' characters. Whitespace and '_' are
    /// ignored; any other character throws std::invalid_argument.
    static BitString from_string(std::string_view text);

    /// Parses ceil(size/4) hex digits; digit j carries bits 4j..4j+3 with
    /// bit 4j in the most significant position of the digit.
    static BitString from_hex(std::string_view digits, std::size_t size);

    std::size_t size() const noexcept { return size_; }
    bool empty() const noexcept { return size_ == 0; }

    bool bit(std::size_t i) const;
    void set_bit(std::size_t i, bool value);
    void push_back(bool value);
    void append(const BitString& tail);
    BitString slice(std::size_t pos, std::size_t count) const;

    // Trailing bits of the last word are kept zero, so defaulted
    // equality over the words is exact.
    bool operator==(const BitString&) const = default;

    /// XOR with an equal-length operand; length mismatch throws.
    BitString& operator^=(const BitString& rhs);
    friend BitString operator^(BitString lhs, const BitString& rhs)
    {
        lhs ^= rhs;
        return lhs;
    }

    bool all_zero() const noexcept;
    std::size_t popcount() const noexcept;

    std::string str() const;
    std::string hex() const;

    std::span<const std::uint64_t> words() const noexcept { return words_; }

private:
    void trim_tail();

    std::vector<std::uint64_t> words_;
    std::size_t size_ = 0;
};

/// XOR of two equal-length bit strings; length mismatch throws.
BitString xor_bits(const BitString& a, const BitString& b);

} // namespace olenc
