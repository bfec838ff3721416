// Timing harness: serial reference kernels vs the OpenMP kernels.
// Not a correctness gate (the test suite covers agreement); prints a table.

#include "olenc/attack.hpp"
#include "olenc/gf2.hpp"
#include "olenc/lfsr.hpp"
#include "olenc/okg.hpp"

#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace
{

double seconds(std::chrono::steady_clock::time_point a,
               std::chrono::steady_clock::time_point b)
{
    return std::chrono::duration<double>(b - a).count();
}

template <typename Fn> double time_once(Fn&& fn)
{
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    return seconds(t0, t1);
}

olenc::AttackScenario make_scenario(std::uint32_t degree, std::uint32_t parallelism,
                                    std::uint64_t part_bits, std::uint64_t resets)
{
    olenc::OkgConfig config = olenc::OkgConfig::with_auto_polys(
        degree, parallelism, part_bits, resets);

    std::mt19937_64 rng{7};
    olenc::BitString raw((config.record_width()) * resets);
    for (std::size_t i = 0; i < raw.size(); ++i)
        raw.set_bit(i, rng() & 1u);
    // Nudge every seed away from zero so the planted schedule is clean.
    for (std::uint64_t c = 0; c < resets; ++c)
        raw.set_bit(c * config.record_width() + config.index_width(), 1);
    olenc::InjectedSource source{raw};

    const std::uint64_t message_bits = part_bits * resets - degree / 2;
    olenc::AnonKey key = olenc::generate_key(config, source, message_bits);

    olenc::BitString message(message_bits);
    for (std::size_t i = 0; i < message_bits; ++i)
        message.set_bit(i, rng() & 1u);

    olenc::AttackScenario sc{config, olenc::xor_bits(message, key.bits), message, {}};
    sc.budget = olenc::BigInt{1} << 62;
    return sc;
}

} // namespace

int main()
{
#ifdef _OPENMP
    const int team = omp_get_max_threads();
#else
    const int team = 1;
#endif
    std::printf("threads available: %d\n\n", team);

    std::printf("%-34s %12s %12s %8s\n", "workload", "serial s", "parallel s",
                "speedup");

    {
        // Schedule search, P=2 n=11 N=2: (2 * 2^11)^2 = 16.8M schedules.
        const auto sc = make_scenario(11, 2, 4096, 2);
        olenc::AttackReport serial_report, parallel_report;
        const double ts = time_once([&] {
            serial_report = olenc::enumerate_schedules_serial(
                sc, olenc::AttackMode::known_plaintext);
        });
        const double tp = time_once([&] {
            parallel_report = olenc::enumerate_schedules_parallel(
                sc, olenc::AttackMode::known_plaintext, 0);
        });
        const bool agree = serial_report.matches.size() == parallel_report.matches.size();
        std::printf("%-34s %12.3f %12.3f %7.2fx%s\n", "schedule search (16.8M)", ts, tp,
                    ts / tp, agree ? "" : "  MISMATCH");
    }

    {
        // Primitive-polynomial enumeration at degree 24 (2.8M survivors).
        std::vector<olenc::GenPoly> serial_list, parallel_list;
        const double ts =
            time_once([&] { serial_list = olenc::enumerate_primitive(24, 1); });
        const double tp =
            time_once([&] { parallel_list = olenc::enumerate_primitive(24, 0); });
        const bool agree = serial_list == parallel_list;
        std::printf("%-34s %12.3f %12.3f %7.2fx%s\n", "primitive polys (degree 24)", ts,
                    tp, ts / tp, agree ? "" : "  MISMATCH");
    }

    return 0;
}
