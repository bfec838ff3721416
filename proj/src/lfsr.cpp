#include "olenc/lfsr.hpp"

#include <bit>
#include <stdexcept>

namespace olenc
{

namespace
{
    std::uint64_t step(std::uint64_t state, std::uint64_t fb, int n)
    {
        const std::uint64_t out = std::popcount(state & fb) & 1u;
        return (state >> 1) | (out << (n - 1));
    }
} // namespace

std::uint64_t lfsr_feedback_mask(const GenPoly& poly)
{
    const int n = poly.degree();
    if (n < 1 || n > 63)
        throw std::domain_error{"lfsr: generator degree must be in [1, 63]"};
    if (!poly.has_constant_term())
        throw std::invalid_argument{"lfsr: generator needs a nonzero constant term"};

    std::uint64_t fb = 1; // the s_{t-n} term
    for (int k = 1; k < n; ++k)
        if (poly.has_term(k))
            fb |= std::uint64_t{1} << (n - k);
    return fb;
}

std::uint64_t lfsr_seed_state(const BitString& seed)
{
    std::uint64_t state = 0;
    for (std::size_t j = 0; j < seed.size(); ++j)
        if (seed.bit(j))
            state |= std::uint64_t{1} << j;
    return state;
}

BitString lfsr_stream(const GenPoly& poly, const BitString& seed, std::size_t count)
{
    const int n = poly.degree();
    const std::uint64_t fb = lfsr_feedback_mask(poly);
    if (seed.size() != std::size_t(n))
        throw std::invalid_argument{"lfsr_stream: seed length must equal the generator degree"};

    std::uint64_t state = lfsr_seed_state(seed);
    BitString out(count);
    for (std::size_t i = 0; i < count; ++i)
    {
        const bool next = std::popcount(state & fb) & 1u;
        out.set_bit(i, next);
        state = (state >> 1) | (std::uint64_t{next} << (n - 1));
    }
    return out;
}

std::uint64_t lfsr_state_period(const GenPoly& poly, const BitString& seed)
{
    const int n = poly.degree();
    if (n > 20)
        throw std::domain_error{"lfsr_state_period: degree capped at 20"};
    const std::uint64_t fb = lfsr_feedback_mask(poly);
    if (seed.size() != std::size_t(n))
        throw std::invalid_argument{"lfsr_state_period: seed length must equal the generator degree"};

    const std::uint64_t start = lfsr_seed_state(seed);
    std::uint64_t state = start;
    std::uint64_t t = 0;
    // The update map is invertible (the s_{t-n} tap is always present), so
    // the walk is purely periodic and must come back.
    do
    {
        state = step(state, fb, n);
        ++t;
    } while (state != start);
    return t;
}

} // namespace olenc
