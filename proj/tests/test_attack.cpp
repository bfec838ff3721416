#include "olenc/attack.hpp"

#include "olenc/lfsr.hpp"

#include <doctest.h>

#include <stdexcept>

#include <random>
#include <sstream>
#include <vector>

using olenc::AttackMatch;
using olenc::AttackMode;
using olenc::AttackReport;
using olenc::AttackScenario;
using olenc::BigInt;
using olenc::BitString;
using olenc::OkgConfig;

namespace
{

AttackScenario worked_scenario()
{
    AttackScenario sc{OkgConfig::with_auto_polys(3, 2, 5, 2),
                      BitString::from_string("1010011100"), {}, {}};
    sc.known_plaintext = BitString::from_string("1001101011");
    return sc;
}

BitString seed_of(const OkgConfig& config, std::uint64_t value)
{
    const int n = config.degree();
    BitString seed{std::size_t(n)};
    for (int j = 0; j < n; ++j)
        seed.set_bit(std::size_t(j), (value >> (n - 1 - j)) & 1u);
    return seed;
}

// Schedule walk written as nested digits over full key strings; shares only
// lfsr_stream with the library, nothing of the search kernel.
struct NaiveMatch
{
    std::uint64_t ordinal;
    std::vector<olenc::ScheduleEntry> schedule;
    bool degenerate;
};

std::vector<NaiveMatch> naive_search(const AttackScenario& sc)
{
    const OkgConfig& cfg = sc.config;
    const std::uint64_t resets = cfg.resets();
    const std::uint64_t branch = std::uint64_t(cfg.parallelism())
                                 << unsigned(cfg.degree());
    std::uint64_t total = 1;
    for (std::uint64_t c = 0; c < resets; ++c)
        total *= branch;

    const BitString target = olenc::xor_bits(sc.intercepted, *sc.known_plaintext);
    std::vector<NaiveMatch> out;
    for (std::uint64_t g = 0; g < total; ++g)
    {
        std::vector<olenc::ScheduleEntry> schedule(resets);
        bool degenerate = false;
        std::uint64_t rest = g;
        for (std::uint64_t c = resets; c-- > 0;)
        {
            const std::uint64_t digit = rest % branch;
            rest /= branch;
            schedule[c].poly = std::uint32_t(digit >> unsigned(cfg.degree()));
            schedule[c].seed = digit & ((std::uint64_t{1} << cfg.degree()) - 1);
            degenerate |= schedule[c].seed == 0;
        }
        BitString key;
        for (std::uint64_t c = 0; c < resets; ++c)
            key.append(olenc::lfsr_stream(cfg.polys()[schedule[c].poly],
                                          seed_of(cfg, schedule[c].seed),
                                          cfg.part_length()));
        if (key.slice(0, target.size()) == target)
            out.push_back({g, std::move(schedule), degenerate});
    }
    return out;
}

AttackScenario random_planted_scenario(std::mt19937_64& rng)
{
    const int degree = 3 + int(rng() % 2);
    const std::uint32_t parallelism = 1 + std::uint32_t(rng() % 2);
    const std::uint64_t resets = 1 + rng() % 3;
    const std::size_t lk = 4 + rng() % 4;
    OkgConfig cfg = OkgConfig::with_auto_polys(degree, parallelism, lk, resets);

    // Random message length inside ((N-1) Lk, N Lk].
    const std::size_t len = (resets - 1) * lk + 1 + rng() % lk;
    BitString message(len);
    for (std::size_t i = 0; i < len; ++i)
        message.set_bit(i, rng() & 1u);

    BitString raw(cfg.record_width() * resets);
    for (std::size_t i = 0; i < raw.size(); ++i)
        raw.set_bit(i, rng() & 1u);
    olenc::InjectedSource source{raw};
    const olenc::AnonKey key = olenc::generate_key(cfg, source, len);

    AttackScenario sc{std::move(cfg), olenc::xor_bits(message, key.bits), {}, {}};
    sc.known_plaintext = std::move(message);
    return sc;
}

} // namespace

TEST_CASE("keyspace formulas")
{
    CHECK(olenc::keyspace_nominal(2, 2, 3) == 28);
    CHECK(olenc::keyspace_true(2, 2, 3) == 196);
    CHECK(olenc::keyspace_nominal(1, 5, 3) == 7);
    CHECK(olenc::keyspace_true(1, 5, 3) == BigInt{7 * 7 * 7} * 49);
    // P^N * (2^n - 1) with big exponents stays exact.
    const BigInt p100 = olenc::keyspace_nominal(3, 100, 5);
    CHECK(p100 == pow(BigInt{3}, 100) * 31);
    CHECK(olenc::keyspace_true(3, 100, 5) == pow(BigInt{3} * 31, 100));
}

TEST_CASE("log2 of big integers is exact where doubles are")
{
    CHECK(olenc::big_log2(BigInt{1} << 100) == doctest::Approx(100.0).epsilon(1e-12));
    CHECK(olenc::big_log2(BigInt{1}) == doctest::Approx(0.0));
    CHECK(olenc::big_log2(pow(BigInt{3}, 100) * 31) ==
          doctest::Approx(163.4504463825).epsilon(1e-9));
    CHECK_THROWS_AS((void)olenc::big_log2(BigInt{0}), std::domain_error);
}

TEST_CASE("attack time scales keyspace by tau")
{
    const olenc::Duration d = olenc::attack_time(BigInt{1} << 60, 1e-18);
    CHECK(d.seconds() == doctest::Approx(1.15292).epsilon(1e-4));
    CHECK(olenc::attack_time(BigInt{0}, 1e-18).log2_seconds ==
          -std::numeric_limits<double>::infinity());
}

TEST_CASE("known-plaintext search recovers the planted schedule")
{
    const AttackReport report = olenc::brute_force_recover(worked_scenario(), 1);

    REQUIRE(report.matches.size() == 1);
    const AttackMatch& m = report.matches.front();
    CHECK(m.ordinal == 92);
    REQUIRE(m.schedule.size() == 2);
    CHECK(m.schedule[0].poly == 0);
    CHECK(m.schedule[0].seed == 0b101);
    CHECK(m.schedule[1].poly == 1);
    CHECK(m.schedule[1].seed == 0b100);
    CHECK_FALSE(m.degenerate);
    CHECK_FALSE(m.flow.has_value());

    CHECK(report.tries == 196);
    CHECK(report.degenerate_tries == 60);
    CHECK(report.space_nominal == 28);
    CHECK(report.space_true == 196);
    CHECK(report.tau_equivalent_seconds() == doctest::Approx(2.56e-16));
}

TEST_CASE("search agrees with the nested-loop oracle on random scenarios")
{
    std::mt19937_64 rng{41};
    for (int round = 0; round < 25; ++round)
    {
        const AttackScenario sc = random_planted_scenario(rng);
        const auto expect = naive_search(sc);
        const AttackReport got =
            olenc::enumerate_schedules_serial(sc, AttackMode::known_plaintext);

        REQUIRE(got.matches.size() == expect.size());
        for (std::size_t i = 0; i < expect.size(); ++i)
        {
            REQUIRE(got.matches[i].ordinal == expect[i].ordinal);
            REQUIRE(got.matches[i].schedule == expect[i].schedule);
            REQUIRE(got.matches[i].degenerate == expect[i].degenerate);
        }
        CHECK(got.tries == olenc::keyspace_true(sc.config.parallelism(),
                                                sc.config.resets(),
                                                sc.config.degree()));
    }
}

TEST_CASE("visit counters split the walk into plain and degenerate")
{
    std::mt19937_64 rng{42};
    for (int round = 0; round < 10; ++round)
    {
        const AttackScenario sc = random_planted_scenario(rng);
        const AttackReport got =
            olenc::enumerate_schedules_serial(sc, AttackMode::known_plaintext);
        const std::uint32_t p = sc.config.parallelism();
        const std::uint64_t resets = sc.config.resets();
        const int n = sc.config.degree();
        CHECK(got.tries == olenc::keyspace_true(p, resets, n));
        const BigInt walk = pow(BigInt{p} << n, unsigned(resets));
        CHECK(got.tries + got.degenerate_tries == walk);
    }
}

TEST_CASE("thread counts do not change the report")
{
    const AttackScenario sc = worked_scenario();
    const AttackReport base = olenc::brute_force_recover(sc, 1);
    for (const int threads : {2, 5, 8})
    {
        const AttackReport other = olenc::brute_force_recover(sc, threads);
        CHECK(other.matches == base.matches);
        CHECK(other.tries == base.tries);
        CHECK(other.degenerate_tries == base.degenerate_tries);
        CHECK(other.space_nominal == base.space_nominal);
        CHECK(other.space_true == base.space_true);
    }
}

TEST_CASE("correlation search maps the flow set after peeling")
{
    AttackScenario sc{OkgConfig::with_auto_polys(3, 2, 5, 2),
                      BitString::from_string("1010011100"), {}, {}};
    sc.outgoing = {
        BitString::from_string("1111100000"), // decoy, reachable
        BitString::from_string("1001101011"), // the true plaintext
        BitString::from_string("0101010101"), // decoy, unreachable
    };
    const AttackReport report = olenc::correlate_flows(sc, 1);

    REQUIRE(report.matches.size() == 2);
    CHECK(report.matches[0].ordinal == 92);
    REQUIRE(report.matches[0].flow.has_value());
    CHECK(*report.matches[0].flow == 1);
    CHECK(report.matches[1].ordinal == 234);
    CHECK(*report.matches[1].flow == 0);
    CHECK(report.matches[1].schedule[0].poly == 1);
    CHECK(report.matches[1].schedule[0].seed == 0b110);
    CHECK(report.tries == 196);

    // The parallel kernel sees the same flow hits.
    const AttackReport wide = olenc::correlate_flows(sc, 4);
    CHECK(wide.matches == report.matches);
}

TEST_CASE("an empty outgoing set still walks the space")
{
    AttackScenario sc{OkgConfig::with_auto_polys(3, 2, 5, 2),
                      BitString::from_string("1010011100"), {}, {}};
    const AttackReport report = olenc::correlate_flows(sc, 1);
    CHECK(report.matches.empty());
    CHECK(report.tries == 196);
    CHECK(report.degenerate_tries == 60);
}

TEST_CASE("degenerate planted schedules are found and flagged")
{
    OkgConfig cfg = OkgConfig::with_auto_polys(3, 2, 5, 2);
    // Cycle 0 on register 1 with the zero seed, cycle 1 on register 0.
    olenc::InjectedSource source{BitString::from_string("1000" "0101")};
    const olenc::AnonKey key = olenc::generate_key(cfg, source);
    REQUIRE(key.degenerate());

    BitString message = BitString::from_string("1101011010");
    AttackScenario sc{cfg, olenc::xor_bits(message, key.bits), {}, {}};
    sc.known_plaintext = message;

    const AttackReport report = olenc::brute_force_recover(sc, 1);
    REQUIRE(!report.matches.empty());
    CHECK(report.matches.front().degenerate);
    CHECK(report.matches.front().schedule[0].seed == 0);
    CHECK(report.degenerate_tries == 60);
}

TEST_CASE("scenario validation")
{
    SUBCASE("missing plaintext")
    {
        AttackScenario sc{OkgConfig::with_auto_polys(3, 2, 5, 2),
                          BitString::from_string("1010011100"), {}, {}};
        CHECK_THROWS_AS((void)olenc::brute_force_recover(sc, 1),
                        std::invalid_argument);
    }
    SUBCASE("length mismatch between flows")
    {
        AttackScenario sc = worked_scenario();
        sc.known_plaintext = BitString::from_string("101");
        CHECK_THROWS_AS((void)olenc::brute_force_recover(sc, 1),
                        std::invalid_argument);
    }
    SUBCASE("intercepted length must lie inside the final cycle")
    {
        AttackScenario sc = worked_scenario();
        sc.intercepted = BitString::from_string("10100");
        sc.known_plaintext = BitString::from_string("10011");
        // 5 bits with N = 2 and Lk = 5 leaves cycle 1 unused: rejected.
        CHECK_THROWS_AS((void)olenc::brute_force_recover(sc, 1),
                        std::invalid_argument);
    }
    SUBCASE("multi-layer stripping is out of scope")
    {
        AttackScenario sc = worked_scenario();
        sc.layers = 2;
        CHECK_THROWS_AS((void)olenc::brute_force_recover(sc, 1),
                        std::invalid_argument);
    }
}

TEST_CASE("budget guard reports the required space")
{
    AttackScenario sc = worked_scenario();
    sc.budget = 100;
    try
    {
        (void)olenc::brute_force_recover(sc, 1);
        FAIL("expected budget_error");
    }
    catch (const olenc::budget_error& e)
    {
        CHECK(e.required == 196);
    }
}

TEST_CASE("report rendering is stable without timing")
{
    const AttackReport report = olenc::brute_force_recover(worked_scenario(), 1);
    std::ostringstream out;
    olenc::write_attack_report(out, report, worked_scenario().config, false);
    CHECK(out.str() ==
          "# schedule search report\n"
          "# entry format cycle:(register,seed)\n"
          "match 0:(0,101) 1:(1,100)\n"
          "# degenerate_schedules 60\n"
          "tries,keyspace_nominal,keyspace_true,elapsed_s,tau_equivalent_s\n"
          "196,28,196,-,2.56e-16\n");
}
