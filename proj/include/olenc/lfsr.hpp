#pragma once

#include "olenc/bits.hpp"
#include "olenc/gf2.hpp"

#include <cstdint>

namespace olenc
{

/// Bits of the register sequence s defined by the generator polynomial:
///   s_t = seed[t]                                  for 0 <= t < n
///   s_t = s_{t-n} ^ XOR of s_{t-k} over tap exponents k in (0, n)
/// The returned stream starts at s_n, i.e. the n seed bits themselves are
/// not part of the output. Seed bit 0 is s_0, the oldest register bit.
///
/// Read this way, the generator label g is a tap description: the emitted
/// stream equals that of a plain Fibonacci register whose characteristic
/// polynomial is the reciprocal of g. The label is what circulates in
/// files and the CLI; the recurrence above is the normative behaviour.
///
/// \pre poly has a nonzero constant term and degree n in [1, 63]
/// \pre seed.size() == n
BitString lfsr_stream(const GenPoly& poly, const BitString& seed, std::size_t count);

/// Smallest t >= 1 with state(t) == state(0) for the recurrence above.
/// The all-zero seed is a fixed point, so it reports 1. Walks states
/// directly; degree is capped at 20 to keep the walk bounded.
std::uint64_t lfsr_state_period(const GenPoly& poly, const BitString& seed);

/// Feedback mask over the packed state word (bit j holds s_{t-n+j}):
/// the emitted bit is parity(state & mask).
std::uint64_t lfsr_feedback_mask(const GenPoly& poly);

/// Packs a seed into the state word consumed by lfsr_feedback_mask.
std::uint64_t lfsr_seed_state(const BitString& seed);

} // namespace olenc
