#pragma once

#include "olenc/bits.hpp"
#include "olenc/gf2.hpp"

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace olenc
{

/// A finite bit source ran dry mid-record.
class underrun_error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Sequential bit supply consumed by the key generator.
class BitSource
{
public:
    virtual ~BitSource() = default;
    virtual bool next() = 0;
};

/// Serves a fixed bit string and throws underrun_error past its end.
class InjectedSource final : public BitSource
{
public:
    explicit InjectedSource(BitString bits)
        : bits_{std::move(bits)}
    {
    }

    bool next() override;

private:
    BitString bits_;
    std::size_t pos_ = 0;
};

/// Deterministic stand-in for the physical entropy source. The ini token is
/// hashed with FNV-1a/64 into a stream seed; block b of the stream is
/// splitmix64(seed + b * 0x9e3779b97f4a7c15) and its bits are emitted most
/// significant first. Same token, same stream — on every platform.
class ReferencePrng final : public BitSource
{
public:
    static constexpr const char* generator_name = "splitmix64";

    explicit ReferencePrng(std::string_view ini);

    bool next() override;

    const std::string& ini() const noexcept { return ini_; }

private:
    std::string ini_;
    std::uint64_t base_;
    std::uint64_t block_ = 0;
    std::uint64_t buffer_ = 0;
    int available_ = 0;
};

/// First `count` bits of the reference stream for an ini token.
BitString reference_prng(std::string_view ini, std::size_t count);

/// One reset cycle's secret: which register was selected and the seed it
/// was loaded with.
struct TrueSecretRecord
{
    std::uint32_t lfsr_index = 0;
    BitString seed;

    bool zero_seed() const noexcept { return seed.all_zero(); }

    bool operator==(const TrueSecretRecord&) const = default;
};

/// Key generator configuration: the bank of parallel registers plus the
/// per-cycle output length and the number of reset cycles.
class OkgConfig
{
public:
    /// \pre polys: nonempty, pairwise distinct, all primitive of one degree
    /// \pre part_length >= 1, resets >= 1
    /// With reject_zero_seeds set, generate_key refuses all-zero seeds
    /// instead of merely flagging them.
    OkgConfig(std::vector<GenPoly> polys, std::size_t part_length,
              std::uint64_t resets, bool reject_zero_seeds = false);

    /// Convenience setup using the first `count` primitive polynomials of
    /// the given degree, in canonical (ascending bitmask) order.
    static OkgConfig with_auto_polys(int degree, std::uint32_t count,
                                     std::size_t part_length, std::uint64_t resets,
                                     bool reject_zero_seeds = false);

    const std::vector<GenPoly>& polys() const noexcept { return polys_; }
    std::uint32_t parallelism() const noexcept { return std::uint32_t(polys_.size()); }
    int degree() const noexcept { return polys_.front().degree(); }
    std::size_t part_length() const noexcept { return part_length_; }
    std::uint64_t resets() const noexcept { return resets_; }
    bool reject_zero_seeds() const noexcept { return reject_zero_seeds_; }

    /// Bits consumed per cycle to pick a register: ceil(log2 P), 0 for P=1.
    std::uint32_t index_width() const noexcept;

    /// Bits consumed per reset cycle (index + seed).
    std::size_t record_width() const noexcept
    {
        return index_width() + std::size_t(degree());
    }

private:
    std::vector<GenPoly> polys_;
    std::size_t part_length_;
    std::uint64_t resets_;
    bool reject_zero_seeds_;
};

/// Generated key material together with the schedule that produced it.
struct AnonKey
{
    BitString bits;
    std::vector<TrueSecretRecord> schedule;

    /// Any cycle seeded with the all-zero state (stuck register).
    bool degenerate() const noexcept
    {
        for (const auto& r : schedule)
            if (r.zero_seed())
                return true;
        return false;
    }
};

/// Reads one reset record from the source: ceil(log2 P) index bits (big
/// endian, reduced mod P when P is not a power of two) followed by n seed
/// bits.
TrueSecretRecord parse_record(BitSource& source, const OkgConfig& config);

/// Runs config.resets() cycles, each contributing part_length bits.
AnonKey generate_key(const OkgConfig& config, BitSource& source);

/// Runs ceil(total_bits / part_length) cycles and truncates the final part so
/// the key is exactly total_bits long. Equals the plain overload when
/// total_bits == resets * part_length.
AnonKey generate_key(const OkgConfig& config, BitSource& source, std::size_t total_bits);

/// Counts adjacent schedule pairs that reuse the register (interrupted
/// resets) versus pairs that switch (clean resets). The two counts sum to
/// schedule length - 1.
std::pair<std::uint64_t, std::uint64_t> interruption_profile(const AnonKey& key);

} // namespace olenc
