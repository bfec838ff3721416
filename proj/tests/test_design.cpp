#include "olenc/design.hpp"

#include "olenc/attack.hpp"

#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

using olenc::DesignInput;
using olenc::DesignReport;
using olenc::Duration;

namespace
{

DesignInput reference_point(int degree, std::uint32_t parallelism)
{
    DesignInput in;
    in.degree = degree;
    in.parallelism = parallelism;
    return in;
}

DesignInput grid_point(int degree, std::uint32_t parallelism)
{
    // The switching-time grid is calibrated against 2^128 tries at 1e-18 s.
    DesignInput in = reference_point(degree, parallelism);
    in.target_break_seconds = std::exp2(128.0) * in.tau;
    return in;
}

} // namespace

TEST_CASE("duration arithmetic in the log domain")
{
    CHECK(Duration::from_seconds(1024.0).log2_seconds == doctest::Approx(10.0));
    CHECK(Duration::from_seconds(olenc::seconds_per_year).years() ==
          doctest::Approx(1.0));
    CHECK(Duration{100.0}.scaled(8.0).log2_seconds == doctest::Approx(103.0));
    CHECK(Duration::from_seconds(olenc::seconds_per_year * 1e13).log10_years() ==
          doctest::Approx(13.0));
    CHECK(Duration{}.years() == 0.0);
}

TEST_CASE("key part length and reset count at the reference points")
{
    // Pinned against an independent floating-point evaluation of
    //   Lk = floor(LM * log2(P) / log2(target / (tau * (2^n - 1)))).
    const auto lk5 = olenc::optimal_key_length(reference_point(5, 2));
    REQUIRE(lk5.has_value());
    CHECK(*lk5 == 10'917'684);
    CHECK(olenc::resets_for(1'342'177'280, *lk5) == 123);

    const auto lk40 = olenc::optimal_key_length(reference_point(40, 2));
    REQUIRE(lk40.has_value());
    CHECK(*lk40 == 15'271'056);
    CHECK(olenc::resets_for(1'342'177'280, *lk40) == 88);

    const auto grid5 = olenc::optimal_key_length(grid_point(5, 2));
    REQUIRE(grid5.has_value());
    CHECK(*grid5 == 10'907'948);
    CHECK(olenc::resets_for(1'342'177'280, *grid5) == 124);
}

TEST_CASE("key part length is empty off the feasible region")
{
    CHECK_FALSE(olenc::optimal_key_length(reference_point(5, 1)).has_value());
    DesignInput tiny = reference_point(5, 2);
    tiny.target_break_seconds = 1e-18; // below one register walk
    CHECK_FALSE(olenc::optimal_key_length(tiny).has_value());
}

TEST_CASE("switch time is the key part over the line rate")
{
    CHECK(olenc::switch_time(10'917'684, 1e11) ==
          doctest::Approx(109.17684e-6).epsilon(1e-9));
}

TEST_CASE("record consumption rates at the reference point")
{
    const auto rates = olenc::prng_rates(5, 2, 10'917'684, 1e11);
    // (n + log2 P) * C_L / (2n + Lk) and (n + log2 P) * C_L / (Lk - n).
    CHECK(rates.interrupted == doctest::Approx(54956.66).epsilon(1e-4));
    CHECK(rates.clean == doctest::Approx(54956.74).epsilon(1e-4));
    CHECK(rates.mean == doctest::Approx(54956.70).epsilon(1e-4));
    CHECK(rates.interrupted < rates.clean); // reseed consumes extra bits

    const auto p4 = olenc::prng_rates(5, 4, 21'815'896, 1e11);
    CHECK(p4.mean == doctest::Approx(32086.7).epsilon(1e-4));
    CHECK_THROWS_AS((void)olenc::prng_rates(5, 2, 5, 1e11), std::invalid_argument);
}

TEST_CASE("walk durations cross-check the exact big-integer path")
{
    const Duration t = olenc::bfa_time(3, 100, 5, 1e-18);
    CHECK(t.log10_years() == doctest::Approx(23.7047).epsilon(1e-4));
    // Same quantity through exact big integers and big_log2.
    const double exact =
        olenc::big_log2(olenc::keyspace_nominal(3, 100, 5)) + std::log2(1e-18);
    CHECK(t.log2_seconds == doctest::Approx(exact).epsilon(1e-9));
}

TEST_CASE("interrupted-walk durations collapse with few registers")
{
    // P (P-1)^(N-1) tau (2^n - 1): for P = 2 only 2 * 31 tau remains.
    const Duration p2 = olenc::bfa_time_interrupted(2, 123, 5, 1e-18);
    CHECK(p2.seconds() == doctest::Approx(62e-18).epsilon(1e-9));
    // P = 1 with N >= 2 has no admissible schedule at all.
    const Duration p1 = olenc::bfa_time_interrupted(1, 2, 5, 1e-18);
    CHECK(p1.log2_seconds == -std::numeric_limits<double>::infinity());
    // P = 1, N = 1 is a plain single-register walk.
    CHECK(olenc::bfa_time_interrupted(1, 1, 5, 1e-18).seconds() ==
          doctest::Approx(31e-18).epsilon(1e-9));
    const Duration p4 = olenc::bfa_time_interrupted(4, 62, 5, 1e-18);
    CHECK(p4.log10_years() == doctest::Approx(5.69901).epsilon(1e-4));
}

TEST_CASE("block cipher walk references")
{
    CHECK(olenc::aes_reference(128, 1e-18).years() ==
          doctest::Approx(1.0790e13).epsilon(0.001));
    CHECK(olenc::aes_reference(256, 1e-18).years() ==
          doctest::Approx(3.672e51).epsilon(0.001));
}

TEST_CASE("design report at the default point")
{
    const DesignReport r = olenc::design(reference_point(5, 2));
    REQUIRE(r.feasible);
    CHECK(r.key_part_bits == 10'917'684);
    CHECK(r.resets == 123);
    CHECK(r.reset_cycle_seconds == doctest::Approx(109.177e-6).epsilon(1e-5));
    CHECK(r.rates_valid);
    CHECK(r.break_time.log10_years() == doctest::Approx(13.0192).epsilon(1e-4));
    CHECK(r.aes128_flag);
    CHECK_FALSE(r.aes256_flag);
    // One stripped layer and a three-node route scale the same walk.
    CHECK(r.message_time.log2_seconds ==
          doctest::Approx(r.break_time.log2_seconds));
    CHECK(r.route_time.log2_seconds ==
          doctest::Approx(r.break_time.scaled(3.0).log2_seconds));
}

TEST_CASE("design report under a fixed reset count")
{
    DesignInput in = reference_point(28, 2);
    in.resets_override = 100;
    const DesignReport r = olenc::design(in);
    REQUIRE(r.feasible);
    CHECK(r.key_part_bits == 13'421'773); // ceil(LM / N)
    CHECK(r.resets == 100);
    CHECK(r.break_time.log10_years() == doctest::Approx(13.033).epsilon(1e-3));
    CHECK(r.aes128_flag);

    in.degree = 27;
    const DesignReport below = olenc::design(in);
    CHECK(below.break_time.log10_years() == doctest::Approx(12.732).epsilon(1e-3));
    CHECK_FALSE(below.aes128_flag);
}

TEST_CASE("infeasible points say why")
{
    const DesignReport r = olenc::design(reference_point(5, 1));
    CHECK_FALSE(r.feasible);
    CHECK_FALSE(r.infeasible_reason.empty());
}

TEST_CASE("sweep emits one row per cell in n-major order")
{
    const auto rows = olenc::design_sweep({5, 10}, {2, 3}, DesignInput{});
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].degree == 5);
    CHECK(rows[0].parallelism == 2);
    CHECK(rows[1].parallelism == 3);
    CHECK(rows[2].degree == 10);
    CHECK(rows[3].report.feasible);
}

TEST_CASE("sweep csv carries the documented header and pinned cells")
{
    DesignInput base;
    base.target_break_seconds = std::exp2(128.0) * base.tau;
    const auto rows = olenc::design_sweep({5}, {2}, base);
    std::ostringstream out;
    olenc::write_sweep_csv(out, rows);
    CHECK(out.str() ==
          "n,P,L_k_bits,N,t_rc_us,C1R_bps,C2R_bps,CR_bps,"
          "Tb_log10_years,Tbhat_log10_years,aes128_flag,aes256_flag\n"
          "5,2,10907948,124,109.079,55005.7,55005.8,55005.8,"
          "13.3203,-23.7064,1,0\n");
}

TEST_CASE("sweep csv marks infeasible cells")
{
    const auto rows = olenc::design_sweep({5}, {1}, DesignInput{});
    std::ostringstream out;
    olenc::write_sweep_csv(out, rows);
    const std::string text = out.str();
    CHECK(text.find("5,1,-") != std::string::npos);
}

TEST_CASE("crossover scan finds the smallest flagged degree per parallelism")
{
    DesignInput base;
    base.resets_override = 100;
    const auto rows = olenc::design_sweep({26, 27, 28, 29}, {2}, base);
    const auto crossings = olenc::find_crossovers(rows);
    REQUIRE(crossings.size() == 1);
    CHECK(crossings[0].parallelism == 2);
    REQUIRE(crossings[0].aes128_degree.has_value());
    CHECK(*crossings[0].aes128_degree == 28);
    CHECK_FALSE(crossings[0].aes256_degree.has_value());
}

TEST_CASE("high-security crossovers at a fixed hundred resets")
{
    DesignInput base;
    base.resets_override = 100;
    // Smallest degree whose walk reaches 1e51 years: 55 with four registers,
    // 96 with three. Quoted reference figures are 52 and 98; the analytic
    // model lands close but not on them, so these pins are the computed
    // values, with the deviation called out in the README.
    const auto rows4 =
        olenc::design_sweep({53, 54, 55, 56}, {4}, base);
    const auto cross4 = olenc::find_crossovers(rows4);
    REQUIRE(cross4.size() == 1);
    REQUIRE(cross4[0].aes256_degree.has_value());
    CHECK(*cross4[0].aes256_degree == 55);

    const auto rows3 = olenc::design_sweep({95, 96, 97}, {3}, base);
    const auto cross3 = olenc::find_crossovers(rows3);
    REQUIRE(cross3[0].aes256_degree.has_value());
    CHECK(*cross3[0].aes256_degree == 96);
}

TEST_CASE("report printer shows the headline figures")
{
    std::ostringstream out;
    const DesignInput in = reference_point(5, 2);
    olenc::print_design_report(out, in, olenc::design(in));
    const std::string text = out.str();
    CHECK(text.find("L_k  = 10917684 bits") != std::string::npos);
    CHECK(text.find("N    = 123") != std::string::npos);
    CHECK(text.find("10.9177 Mbit") != std::string::npos);
    CHECK(text.find("10.4119 Mib") != std::string::npos);
}
