#pragma once

#include "olenc/bits.hpp"
#include "olenc/duration.hpp"
#include "olenc/okg.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace olenc
{

using BigInt = boost::multiprecision::cpp_int;

/// The schedule space exceeds the configured enumeration budget.
class budget_error : public std::runtime_error
{
public:
    budget_error(std::string what, BigInt required_budget)
        : std::runtime_error{std::move(what)}
        , required{std::move(required_budget)}
    {
    }

    BigInt required;
};

/// Key count as published for this scheme: P^N * (2^n - 1). Counts the
/// register walk once, not per cycle.
BigInt keyspace_nominal(std::uint32_t parallelism, std::uint64_t resets, int degree);

/// Distinct (register, nonzero seed) schedules: (P * (2^n - 1))^N. This is
/// what exhaustive enumeration actually visits, and it exceeds
/// keyspace_nominal whenever N >= 2.
BigInt keyspace_true(std::uint32_t parallelism, std::uint64_t resets, int degree);

/// What the desk-scale oracle works on. Exactly one of known_plaintext /
/// outgoing drives the verification: a known plaintext pins the key, a set
/// of outgoing flows is matched by membership after peeling.
struct AttackScenario
{
    OkgConfig config;
    BitString intercepted;
    std::optional<BitString> known_plaintext;
    std::vector<BitString> outgoing;
    std::uint32_t layers = 1;              // layers this attack removes
    BigInt budget = BigInt{100'000'000};   // max keyspace_true
    double tau = 1e-18;                    // seconds per verification try
};

struct ScheduleEntry
{
    std::uint32_t poly = 0;
    std::uint64_t seed = 0; // big-endian value of the seed bits

    bool operator==(const ScheduleEntry&) const = default;
};

struct AttackMatch
{
    std::uint64_t ordinal = 0; // position in enumeration order
    std::vector<ScheduleEntry> schedule;
    bool degenerate = false;              // some cycle used the zero seed
    std::optional<std::size_t> flow;      // matched outgoing flow (correlation)

    bool operator==(const AttackMatch&) const = default;
};

struct AttackReport
{
    std::vector<AttackMatch> matches;
    BigInt tries = 0;            // schedules visited with all seeds nonzero
    BigInt degenerate_tries = 0; // schedules visited touching a zero seed
    BigInt space_nominal = 0;
    BigInt space_true = 0;
    double elapsed_seconds = 0.0;
    double tau = 1e-18;

    double tau_equivalent_seconds() const;
};

/// Exhaustive schedule search against a known plaintext. Enumerates every
/// (register, seed) assignment — zero seeds included, flagged degenerate —
/// in odometer order (cycle 0 most significant; within a cycle the register
/// index is the major digit, the seed value the minor one). Every candidate
/// is verified against the full container; the walk never skips or prunes.
/// `threads` <= 0 uses the OpenMP default, 1 the serial reference kernel.
/// \pre scenario.known_plaintext is set, scenario.layers == 1
AttackReport brute_force_recover(const AttackScenario& scenario, int threads = 0);

/// Same walk, but a candidate matches when peeling one layer turns the
/// intercepted flow into a member of scenario.outgoing. An empty outgoing
/// set yields no matches but still visits the whole space.
AttackReport correlate_flows(const AttackScenario& scenario, int threads = 0);

enum class AttackMode
{
    known_plaintext,
    correlate,
};

// The two kernels behind the dispatchers above, exposed for comparison
// tests and benchmarks. Their reports are identical for any thread count.
AttackReport enumerate_schedules_serial(const AttackScenario& scenario, AttackMode mode);
AttackReport enumerate_schedules_parallel(const AttackScenario& scenario, AttackMode mode,
                                          int threads);

/// log2 of a positive big integer, exact to double precision.
double big_log2(const BigInt& value);

/// Wall time to walk `keyspace` candidates at tau seconds per try.
Duration attack_time(const BigInt& keyspace, double tau);

void write_attack_report(std::ostream& out, const AttackReport& report,
                         const OkgConfig& config, bool include_timing = true);

} // namespace olenc
