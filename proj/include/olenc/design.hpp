#pragma once

#include "olenc/duration.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace olenc
{

/// Operating point of the analytic calculator. Lengths are in bits, rates
/// in bit/s, times in seconds. The defaults are the reference calibration:
/// a 1.25 Gib container on a 100 Gb/s line, 1e-18 s per brute-force try,
/// and a brute-force target of 1e13 years (the round figure quoted for
/// AES-128; pass 2^128 * tau for the exact equivalent).
struct DesignInput
{
    int degree = 5;                   // n, register length
    std::uint32_t parallelism = 2;    // P, parallel registers
    std::uint64_t container_bits = 1'342'177'280; // L_M = 1.25 * 2^30
    double line_rate = 1e11;          // C, transmission bit rate
    double lfsr_rate = 1e11;          // C_L, register output bit rate
    double tau = 1e-18;               // seconds per brute-force try
    double target_break_seconds = 1e13 * seconds_per_year;
    std::optional<std::uint64_t> resets_override; // fixed-N studies
    std::uint32_t layers = 1;         // K, layers an attacker must strip
    std::uint32_t route_nodes = 3;    // r, key holders on the path
};

struct PrngRates
{
    double interrupted = 0.0; // C1_R: reseed consumes index + seed bits
    double clean = 0.0;       // C2_R: switch consumes the other register's state
    double mean = 0.0;        // C_R: weights 1/P and (P-1)/P
};

struct DesignReport
{
    bool feasible = false;
    std::string infeasible_reason;

    std::uint64_t key_part_bits = 0;   // L_k
    std::uint64_t resets = 0;          // N
    double reset_cycle_seconds = 0.0;  // t_rc
    PrngRates rates;
    bool rates_valid = false;

    Duration break_time;               // full keyspace walk, one layer
    Duration break_time_interrupted;   // same-register reseeds only
    bool interrupted_broken = false;   // P = 1: that subspace is empty
    Duration message_time;             // layers * break_time
    Duration route_time;               // route_nodes * break_time

    bool aes128_flag = false; // break_time reaches 1e13 years
    bool aes256_flag = false; // break_time reaches 1e51 years
};

/// Largest admissible key part length:
///   L_k = floor(L_M * log2(P) / log2(target / (tau * (2^n - 1))))
/// Empty when the point is infeasible (P = 1, or the target is not above
/// the single-walk time tau * (2^n - 1)).
std::optional<std::uint64_t> optimal_key_length(const DesignInput& in);

/// ceil(container / key_part): cycles needed to cover the container.
std::uint64_t resets_for(std::uint64_t container_bits, std::uint64_t key_part_bits);

/// t_rc = L_k / C: switching period of the encryption stage.
double switch_time(std::uint64_t key_part_bits, double line_rate);

/// Consumption rates of the secret-record stream relative to the register
/// output rate. \pre key_part_bits > degree, parallelism >= 1
PrngRates prng_rates(int degree, std::uint32_t parallelism,
                     std::uint64_t key_part_bits, double lfsr_rate);

/// Exhaustive-walk duration P^N * tau * (2^n - 1), in the log domain.
Duration bfa_time(std::uint32_t parallelism, std::uint64_t resets, int degree,
                  double tau);

/// Walk restricted to same-register reseeds: P * (P-1)^(N-1) * tau * (2^n - 1).
/// For P = 1 and N >= 2 the subspace is empty; callers get -inf and should
/// treat the configuration as broken.
Duration bfa_time_interrupted(std::uint32_t parallelism, std::uint64_t resets,
                              int degree, double tau);

/// 2^bits * tau, the exhaustive search time of a `bits`-bit cipher.
Duration aes_reference(unsigned bits, double tau);

/// Evaluates the whole operating point. With resets_override the reset
/// count is fixed and the key part is ceil(L_M / N); otherwise the key part
/// comes from optimal_key_length and the reset count from resets_for.
DesignReport design(const DesignInput& in);

struct SweepRow
{
    int degree = 0;
    std::uint32_t parallelism = 0;
    DesignReport report;
};

/// One report per (n, P), n-major order, infeasible cells included.
std::vector<SweepRow> design_sweep(const std::vector<int>& degrees,
                                   const std::vector<std::uint32_t>& parallelisms,
                                   const DesignInput& base);

/// Delimiter-separated table, '-' for values a row cannot offer.
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

struct Crossover
{
    std::uint32_t parallelism = 0;
    std::optional<int> aes128_degree; // smallest swept n whose flag is set
    std::optional<int> aes256_degree;
};

std::vector<Crossover> find_crossovers(const std::vector<SweepRow>& rows);

void print_design_report(std::ostream& out, const DesignInput& in,
                         const DesignReport& report);

} // namespace olenc
