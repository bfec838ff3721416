#include "olenc/design.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace olenc
{

namespace
{
    /// log2(2^n - 1) without forming the value; exact to double precision.
    double log2_pow2_minus1(int n)
    {
        return double(n) + std::log1p(-std::exp2(double(-n))) / std::numbers::ln2;
    }

    void append_field(std::string& line, double value)
    {
        char buffer[48];
        std::snprintf(buffer, sizeof buffer, "%.6g", value);
        line += buffer;
    }
} // namespace

std::optional<std::uint64_t> optimal_key_length(const DesignInput& in)
{
    if (in.parallelism < 2)
        return std::nullopt; // log2(P) = 0: no admissible length
    if (in.degree < 2 || in.tau <= 0 || in.target_break_seconds <= 0)
        return std::nullopt;

    const double denom = std::log2(in.target_break_seconds) - std::log2(in.tau) -
                         log2_pow2_minus1(in.degree);
    if (denom <= 0)
        return std::nullopt; // one register walk already beats the target

    const double lk = std::floor(double(in.container_bits) *
                                 std::log2(double(in.parallelism)) / denom);
    if (lk < 1)
        return std::nullopt;
    return std::uint64_t(lk);
}

std::uint64_t resets_for(std::uint64_t container_bits, std::uint64_t key_part_bits)
{
    if (key_part_bits == 0)
        throw std::invalid_argument{"resets_for: key part must be nonempty"};
    return (container_bits + key_part_bits - 1) / key_part_bits;
}

double switch_time(std::uint64_t key_part_bits, double line_rate)
{
    if (line_rate <= 0)
        throw std::invalid_argument{"switch_time: line rate must be positive"};
    return double(key_part_bits) / line_rate;
}

PrngRates prng_rates(int degree, std::uint32_t parallelism,
                     std::uint64_t key_part_bits, double lfsr_rate)
{
    if (key_part_bits <= std::uint64_t(degree))
        throw std::invalid_argument{
            "prng_rates: key part must be longer than the register"};
    if (parallelism == 0)
        throw std::invalid_argument{"prng_rates: parallelism must be >= 1"};

    const double record = double(degree) + std::log2(double(parallelism));
    PrngRates r;
    r.interrupted =
        record * lfsr_rate / (2.0 * double(degree) + double(key_part_bits));
    r.clean = record * lfsr_rate / (double(key_part_bits) - double(degree));
    const double p = double(parallelism);
    r.mean = r.interrupted / p + r.clean * (p - 1.0) / p;
    return r;
}

Duration bfa_time(std::uint32_t parallelism, std::uint64_t resets, int degree,
                  double tau)
{
    return Duration{double(resets) * std::log2(double(parallelism)) +
                    log2_pow2_minus1(degree) + std::log2(tau)};
}

Duration bfa_time_interrupted(std::uint32_t parallelism, std::uint64_t resets,
                              int degree, double tau)
{
    if (parallelism == 1 && resets >= 2)
        return Duration{}; // empty subspace, log2 = -inf
    return Duration{std::log2(double(parallelism)) +
                    double(resets - 1) * std::log2(double(parallelism - 1 + (parallelism == 1))) +
                    log2_pow2_minus1(degree) + std::log2(tau)};
}

Duration aes_reference(unsigned bits, double tau)
{
    return Duration{double(bits) + std::log2(tau)};
}

DesignReport design(const DesignInput& in)
{
    DesignReport report;

    if (in.resets_override)
    {
        report.resets = *in.resets_override;
        if (report.resets == 0)
        {
            report.infeasible_reason = "reset count must be >= 1";
            return report;
        }
        report.key_part_bits =
            (in.container_bits + report.resets - 1) / report.resets;
    }
    else
    {
        const auto lk = optimal_key_length(in);
        if (!lk)
        {
            report.infeasible_reason =
                in.parallelism < 2
                    ? "a single register admits no key length (log2 P = 0)"
                    : "target not reachable above one register walk";
            return report;
        }
        report.key_part_bits = *lk;
        report.resets = resets_for(in.container_bits, report.key_part_bits);
    }

    report.feasible = true;
    report.reset_cycle_seconds = switch_time(report.key_part_bits, in.line_rate);

    if (report.key_part_bits > std::uint64_t(in.degree))
    {
        report.rates =
            prng_rates(in.degree, in.parallelism, report.key_part_bits, in.lfsr_rate);
        report.rates_valid = true;
    }

    report.break_time = bfa_time(in.parallelism, report.resets, in.degree, in.tau);
    report.break_time_interrupted =
        bfa_time_interrupted(in.parallelism, report.resets, in.degree, in.tau);
    report.interrupted_broken = in.parallelism == 1 && report.resets >= 2;
    report.message_time = report.break_time.scaled(double(in.layers));
    report.route_time = report.break_time.scaled(double(in.route_nodes));

    // Crossover flags compare against the round security levels the scheme
    // is benchmarked against (1e13 and 1e51 years); see README.
    report.aes128_flag = report.break_time.log10_years() >= 13.0;
    report.aes256_flag = report.break_time.log10_years() >= 51.0;
    return report;
}

std::vector<SweepRow> design_sweep(const std::vector<int>& degrees,
                                   const std::vector<std::uint32_t>& parallelisms,
                                   const DesignInput& base)
{
    std::vector<SweepRow> rows;
    rows.reserve(degrees.size() * parallelisms.size());
    for (const int n : degrees)
    {
        for (const std::uint32_t p : parallelisms)
        {
            DesignInput in = base;
            in.degree = n;
            in.parallelism = p;
            rows.push_back({n, p, design(in)});
        }
    }
    return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows)
{
    out << "n,P,L_k_bits,N,t_rc_us,C1R_bps,C2R_bps,CR_bps,"
           "Tb_log10_years,Tbhat_log10_years,aes128_flag,aes256_flag\n";
    for (const SweepRow& row : rows)
    {
        const DesignReport& r = row.report;
        std::string line =
            std::to_string(row.degree) + ',' + std::to_string(row.parallelism) + ',';
        if (!r.feasible)
        {
            line += "-,-,-,-,-,-,-,-,0,0";
            out << line << '\n';
            continue;
        }
        line += std::to_string(r.key_part_bits) + ',' + std::to_string(r.resets) + ',';
        append_field(line, r.reset_cycle_seconds * 1e6);
        line += ',';
        if (r.rates_valid)
        {
            append_field(line, r.rates.interrupted);
            line += ',';
            append_field(line, r.rates.clean);
            line += ',';
            append_field(line, r.rates.mean);
        }
        else
        {
            line += "-,-,-";
        }
        line += ',';
        append_field(line, r.break_time.log10_years());
        line += ',';
        if (r.interrupted_broken)
            line += '-';
        else
            append_field(line, r.break_time_interrupted.log10_years());
        line += r.aes128_flag ? ",1" : ",0";
        line += r.aes256_flag ? ",1" : ",0";
        out << line << '\n';
    }
}

std::vector<Crossover> find_crossovers(const std::vector<SweepRow>& rows)
{
    std::vector<Crossover> out;
    for (const SweepRow& row : rows)
    {
        Crossover* entry = nullptr;
        for (Crossover& c : out)
            if (c.parallelism == row.parallelism)
                entry = &c;
        if (!entry)
        {
            out.push_back({row.parallelism, std::nullopt, std::nullopt});
            entry = &out.back();
        }
        if (row.report.aes128_flag &&
            (!entry->aes128_degree || row.degree < *entry->aes128_degree))
            entry->aes128_degree = row.degree;
        if (row.report.aes256_flag &&
            (!entry->aes256_degree || row.degree < *entry->aes256_degree))
            entry->aes256_degree = row.degree;
    }
    return out;
}

void print_design_report(std::ostream& out, const DesignInput& in,
                         const DesignReport& report)
{
    char buffer[64];
    out << "design point: n=" << in.degree << " P=" << in.parallelism
        << " L_M=" << in.container_bits << " bits\n";
    if (!report.feasible)
    {
        out << "  infeasible: " << report.infeasible_reason << '\n';
        return;
    }

    std::snprintf(buffer, sizeof buffer, "%.6g", double(report.key_part_bits) / 1e6);
    out << "  key part     L_k  = " << report.key_part_bits << " bits (" << buffer
        << " Mbit";
    std::snprintf(buffer, sizeof buffer, "%.6g",
                  double(report.key_part_bits) / double(1 << 20));
    out << ", " << buffer << " Mib)\n";
    out << "  resets       N    = " << report.resets << '\n';
    std::snprintf(buffer, sizeof buffer, "%.6g", report.reset_cycle_seconds * 1e6);
    out << "  switch time  t_rc = " << buffer << " us\n";
    if (report.rates_valid)
    {
        std::snprintf(buffer, sizeof buffer, "%.6g", report.rates.interrupted);
        out << "  record rate  C1_R = " << buffer << " b/s (same-register reseed)\n";
        std::snprintf(buffer, sizeof buffer, "%.6g", report.rates.clean);
        out << "  record rate  C2_R = " << buffer << " b/s (register switch)\n";
        std::snprintf(buffer, sizeof buffer, "%.6g", report.rates.mean);
        out << "  record rate  C_R  = " << buffer << " b/s (mean)\n";
    }
    else
    {
        out << "  record rates: not defined (key part not longer than register)\n";
    }

    const auto show_duration = [&](const char* label, const Duration& d)
    {
        std::snprintf(buffer, sizeof buffer, "%.4g", d.years());
        out << "  " << label << " = " << buffer << " years (log10 ";
        std::snprintf(buffer, sizeof buffer, "%.4f", d.log10_years());
        out << buffer << ")\n";
    };
    show_duration("break time   T_b ", report.break_time);
    if (report.interrupted_broken)
        out << "  break time   T_b! : broken (P=1 leaves no same-register subspace)\n";
    else
        show_duration("break time   T_b!", report.break_time_interrupted);
    show_duration("message time T_M ", report.message_time);
    show_duration("route time   T_L ", report.route_time);
    out << "  reaches 1e13-year level (AES-128 scale): "
        << (report.aes128_flag ? "yes" : "no") << '\n';
    out << "  reaches 1e51-year level (AES-256 scale): "
        << (report.aes256_flag ? "yes" : "no") << '\n';
}

} // namespace olenc
