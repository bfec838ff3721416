#pragma once

#include <cmath>
#include <limits>

namespace olenc
{

inline constexpr double seconds_per_year = 31'536'000.0; // 365-day year

/// A time span kept as log2(seconds) so astronomically large attack
/// durations stay representable.
struct Duration
{
    double log2_seconds = -std::numeric_limits<double>::infinity();

    static Duration from_seconds(double s)
    {
        return {std::log2(s)};
    }

    double seconds() const { return std::exp2(log2_seconds); }
    double years() const
    {
        return std::exp2(log2_seconds - std::log2(seconds_per_year));
    }
    double log10_years() const
    {
        return (log2_seconds - std::log2(seconds_per_year)) * std::log10(2.0);
    }

    /// Same span multiplied by a positive factor (layer count, path length).
    Duration scaled(double factor) const
    {
        return {log2_seconds + std::log2(factor)};
    }
};

} // namespace olenc
