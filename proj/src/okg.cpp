#include "olenc/okg.hpp"

#include "olenc/lfsr.hpp"

#include <algorithm>
#include <bit>

namespace olenc
{

namespace
{
    std::uint64_t fnv1a64(std::string_view s)
    {
        std::uint64_t h = 14695981039346656037ull;
        for (const char c : s)
        {
            h ^= static_cast<unsigned char>(c);
            h *= 1099511628211ull;
        }
        return h;
    }

    std::uint64_t splitmix64(std::uint64_t z)
    {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
} // namespace

bool InjectedSource::next()
{
    if (pos_ >= bits_.size())
        throw underrun_error{"bit source exhausted after " +
                             std::to_string(bits_.size()) + " bits"};
    return bits_.bit(pos_++);
}

ReferencePrng::ReferencePrng(std::string_view ini)
    : ini_{ini}
    , base_{fnv1a64(ini)}
{
}

bool ReferencePrng::next()
{
    if (available_ == 0)
    {
        ++block_;
        buffer_ = splitmix64(base_ + block_ * 0x9e3779b97f4a7c15ull);
        available_ = 64;
    }
    return (buffer_ >> --available_) & 1u;
}

BitString reference_prng(std::string_view ini, std::size_t count)
{
    ReferencePrng src{ini};
    BitString out(count);
    for (std::size_t i = 0; i < count; ++i)
        out.set_bit(i, src.next());
    return out;
}

OkgConfig::OkgConfig(std::vector<GenPoly> polys, std::size_t part_length,
                     std::uint64_t resets, bool reject_zero_seeds)
    : polys_{std::move(polys)}
    , part_length_{part_length}
    , resets_{resets}
    , reject_zero_seeds_{reject_zero_seeds}
{
    if (polys_.empty())
        throw std::invalid_argument{"okg: at least one generator polynomial required"};
    if (part_length_ == 0)
        throw std::invalid_argument{"okg: part length must be >= 1"};
    if (resets_ == 0)
        throw std::invalid_argument{"okg: reset count must be >= 1"};

    const int n = polys_.front().degree();
    for (const GenPoly& p : polys_)
    {
        if (p.degree() != n)
            throw std::invalid_argument{"okg: generators must share one degree"};
        if (!is_primitive(p))
            throw std::invalid_argument{"okg: generator " + p.str() + " is not primitive"};
    }
    std::vector<std::uint64_t> masks;
    for (const GenPoly& p : polys_)
        masks.push_back(p.mask());
    std::sort(masks.begin(), masks.end());
    if (std::adjacent_find(masks.begin(), masks.end()) != masks.end())
        throw std::invalid_argument{"okg: generators must be pairwise distinct"};
}

OkgConfig OkgConfig::with_auto_polys(int degree, std::uint32_t count,
                                     std::size_t part_length, std::uint64_t resets,
                                     bool reject_zero_seeds)
{
    std::vector<GenPoly> all = enumerate_primitive(degree);
    if (count == 0 || count > all.size())
        throw std::invalid_argument{
            "okg: requested " + std::to_string(count) + " generators but degree " +
            std::to_string(degree) + " offers " + std::to_string(all.size())};
    all.resize(count, GenPoly{1});
    return OkgConfig{std::move(all), part_length, resets, reject_zero_seeds};
}

std::uint32_t OkgConfig::index_width() const noexcept
{
    const std::uint32_t p = parallelism();
    return p <= 1 ? 0 : std::uint32_t(std::bit_width(p - 1));
}

TrueSecretRecord parse_record(BitSource& source, const OkgConfig& config)
{
    std::uint32_t value = 0;
    for (std::uint32_t i = 0; i < config.index_width(); ++i)
        value = (value << 1) | std::uint32_t(source.next());

    TrueSecretRecord record;
    record.lfsr_index = value % config.parallelism();
    record.seed = BitString(std::size_t(config.degree()));
    for (std::size_t j = 0; j < record.seed.size(); ++j)
        record.seed.set_bit(j, source.next());
    return record;
}

namespace
{
    AnonKey generate_parts(const OkgConfig& config, BitSource& source,
                           std::uint64_t parts, std::size_t total_bits)
    {
        AnonKey key;
        key.schedule.reserve(parts);
        std::size_t remaining = total_bits;
        for (std::uint64_t c = 0; c < parts; ++c)
        {
            TrueSecretRecord record = parse_record(source, config);
            if (record.zero_seed() && config.reject_zero_seeds())
                throw std::invalid_argument{
                    "okg: all-zero seed in cycle " + std::to_string(c) +
                    " (strict mode)"};

            const std::size_t take = std::min(config.part_length(), remaining);
            const BitString part =
                lfsr_stream(config.polys()[record.lfsr_index], record.seed, take);
            key.bits.append(part);
            key.schedule.push_back(std::move(record));
            remaining -= take;
        }
        return key;
    }
} // namespace

AnonKey generate_key(const OkgConfig& config, BitSource& source)
{
    return generate_parts(config, source, config.resets(),
                          config.resets() * config.part_length());
}

AnonKey generate_key(const OkgConfig& config, BitSource& source, std::size_t total_bits)
{
    const std::uint64_t parts =
        (total_bits + config.part_length() - 1) / config.part_length();
    return generate_parts(config, source, parts, total_bits);
}

std::pair<std::uint64_t, std::uint64_t> interruption_profile(const AnonKey& key)
{
    std::uint64_t interrupted = 0;
    std::uint64_t clean = 0;
    for (std::size_t c = 1; c < key.schedule.size(); ++c)
    {
        if (key.schedule[c].lfsr_index == key.schedule[c - 1].lfsr_index)
            ++interrupted;
        else
            ++clean;
    }
    return {interrupted, clean};
}

} // namespace olenc
