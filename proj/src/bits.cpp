#include "olenc/bits.hpp"

#include <bit>
#include <stdexcept>

namespace olenc
{

namespace
{
    constexpr char hex_digit(unsigned v)
    {
        return v < 10 ? char('0' + v) : char('a' + v - 10);
    }

    unsigned hex_value(char c)
    {
        if (c >= '0' && c <= '9')
            return unsigned(c - '0');
        if (c >= 'a' && c <= 'f')
            return unsigned(c - 'a' + 10);
        if (c >= 'A' && c <= 'F')
            return unsigned(c - 'A' + 10);
        throw std::invalid_argument{"invalid hex digit"};
    }
} // namespace

BitString::BitString(std::size_t size)
    : words_((size + 63) / 64, 0)
    , size_{size}
{
}

BitString BitString::from_string(std::string_view text)
{
    BitString out;
    for (const char c : text)
    {
        if (c == '0' || c == '1')
            out.push_back(c == '1');
        else if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '_')
            continue;
        else
            throw std::invalid_argument{"invalid bit character in \"" + std::string{text} + "\""};
    }
    return out;
}

BitString BitString::from_hex(std::string_view digits, std::size_t size)
{
    if (digits.size() != (size + 3) / 4)
        throw std::invalid_argument{"hex digit count does not match declared bit count"};

    BitString out(size);
    for (std::size_t j = 0; j < digits.size(); ++j)
    {
        const unsigned v = hex_value(digits[j]);
        for (std::size_t k = 0; k < 4; ++k)
        {
            const std::size_t i = 4 * j + k;
            const bool b = (v >> (3 - k)) & 1u;
            if (i < size)
                out.set_bit(i, b);
            else if (b)
                throw std::invalid_argument{"hex payload sets bits beyond declared bit count"};
        }
    }
    return out;
}

bool BitString::bit(std::size_t i) const
{
    if (i >= size_)
        throw std::out_of_range{"bit index out of range"};
    return (words_[i >> 6] >> (i & 63)) & 1u;
}

void BitString::set_bit(std::size_t i, bool value)
{
    if (i >= size_)
        throw std::out_of_range{"bit index out of range"};
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (value)
        words_[i >> 6] |= mask;
    else
        words_[i >> 6] &= ~mask;
}

void BitString::push_back(bool value)
{
    if ((size_ & 63) == 0)
        words_.push_back(0);
    if (value)
        words_.back() |= std::uint64_t{1} << (size_ & 63);
    ++size_;
}

void BitString::append(const BitString& tail)
{
    if (tail.empty())
        return;

    const std::size_t base = size_ >> 6;
    const std::size_t off = size_ & 63;
    size_ += tail.size_;
    words_.resize((size_ + 63) / 64, 0);

    for (std::size_t j = 0; j < tail.words_.size(); ++j)
    {
        const std::uint64_t w = tail.words_[j];
        words_[base + j] |= w << off;
        if (off != 0 && base + j + 1 < words_.size())
            words_[base + j + 1] |= w >> (64 - off);
    }
}

BitString BitString::slice(std::size_t pos, std::size_t count) const
{
    if (pos + count > size_)
        throw std::out_of_range{"slice range out of bounds"};

    BitString out(count);
    const std::size_t base = pos >> 6;
    const std::size_t off = pos & 63;
    for (std::size_t j = 0; j < out.words_.size(); ++j)
    {
        std::uint64_t w = words_[base + j] >> off;
        if (off != 0 && base + j + 1 < words_.size())
            w |= words_[base + j + 1] << (64 - off);
        out.words_[j] = w;
    }
    out.trim_tail();
    return out;
}

BitString& BitString::operator^=(const BitString& rhs)
{
    if (size_ != rhs.size_)
        throw std::invalid_argument{"bit string length mismatch"};
    for (std::size_t j = 0; j < words_.size(); ++j)
        words_[j] ^= rhs.words_[j];
    return *this;
}

bool BitString::all_zero() const noexcept
{
    for (const std::uint64_t w : words_)
        if (w != 0)
            return false;
    return true;
}

std::size_t BitString::popcount() const noexcept
{
    std::size_t n = 0;
    for (const std::uint64_t w : words_)
        n += std::size_t(std::popcount(w));
    return n;
}

std::string BitString::str() const
{
    std::string out(size_, '0');
    for (std::size_t i = 0; i < size_; ++i)
        if ((words_[i >> 6] >> (i & 63)) & 1u)
            out[i] = '1';
    return out;
}

std::string BitString::hex() const
{
    std::string out((size_ + 3) / 4, '0');
    for (std::size_t j = 0; j < out.size(); ++j)
    {
        unsigned v = 0;
        for (std::size_t k = 0; k < 4; ++k)
        {
            const std::size_t i = 4 * j + k;
            if (i < size_ && ((words_[i >> 6] >> (i & 63)) & 1u))
                v |= 1u << (3 - k);
        }
        out[j] = hex_digit(v);
    }
    return out;
}

void BitString::trim_tail()
{
    if ((size_ & 63) != 0 && !words_.empty())
        words_.back() &= (std::uint64_t{1} << (size_ & 63)) - 1;
}

BitString xor_bits(const BitString& a, const BitString& b)
{
    BitString out = a;
    out ^= b;
    return out;
}

} // namespace olenc
