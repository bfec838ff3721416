#include "olenc/attack.hpp"

#include "olenc/lfsr.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <limits>
#include <ostream>
#include <unordered_map>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace olenc
{

namespace
{
    namespace mp = boost::multiprecision;

    struct WordsHash
    {
        std::size_t operator()(const std::vector<std::uint64_t>& w) const noexcept
        {
            std::uint64_t h = 14695981039346656037ull;
            for (const std::uint64_t x : w)
            {
                h ^= x;
                h *= 1099511628211ull;
            }
            return std::size_t(h);
        }
    };

    /// Everything the per-schedule visit needs, fixed up front: the
    /// pre-generated key part of every (register, seed) pair, the target
    /// slices (known-plaintext mode) or the outgoing flow set (correlation
    /// mode), and the mixed-radix place values of the odometer.
    struct SearchContext
    {
        AttackMode mode;
        int degree = 0;
        std::uint64_t seed_mask = 0;
        std::size_t branch = 0;      // P * 2^n
        std::uint64_t cycles = 0;    // N
        std::uint64_t total = 0;     // branch^N, the full walk
        std::size_t length = 0;      // container length
        std::size_t part_len = 0;
        std::size_t last_len = 0;
        std::vector<std::uint64_t> place; // branch^(N-1-c) per cycle c

        std::vector<BitString> parts;      // full part per branch digit
        std::vector<BitString> parts_tail; // truncated to last_len

        std::vector<BitString> slices;     // target slices, cycles entries
        const BitString* intercepted = nullptr;
        std::unordered_map<std::vector<std::uint64_t>, std::size_t, WordsHash> outgoing;
    };

    SearchContext prepare(const AttackScenario& sc, AttackMode mode)
    {
        const OkgConfig& cfg = sc.config;
        const int n = cfg.degree();
        const std::uint64_t N = cfg.resets();
        const std::size_t lk = cfg.part_length();
        const std::size_t L = sc.intercepted.size();

        if (sc.layers != 1)
            throw std::invalid_argument{"attack: the oracle removes exactly one layer"};
        if (L == 0)
            throw std::invalid_argument{"attack: empty intercepted flow"};
        if (L > N * lk || L <= (N - 1) * lk)
            throw std::invalid_argument{
                "attack: container length must satisfy (N-1)*L_k < L <= N*L_k"};
        if (mode == AttackMode::known_plaintext)
        {
            if (!sc.known_plaintext)
                throw std::invalid_argument{"attack: known plaintext required"};
            if (sc.known_plaintext->size() != L)
                throw std::invalid_argument{"attack: plaintext/flow length mismatch"};
        }
        else
        {
            for (const BitString& f : sc.outgoing)
                if (f.size() != L)
                    throw std::invalid_argument{"attack: outgoing flow length mismatch"};
        }

        const BigInt space = keyspace_true(cfg.parallelism(), N, n);
        if (space > sc.budget)
            throw budget_error{"attack: schedule space " + space.str() +
                                   " exceeds budget " + sc.budget.str(),
                               space};
        const BigInt walk =
            mp::pow(BigInt{cfg.parallelism()} << n, unsigned(N));
        if (walk > (BigInt{1} << 62))
            throw budget_error{"attack: zero-seed-inclusive walk " + walk.str() +
                                   " exceeds the kernel's 2^62 limit",
                               walk};

        SearchContext ctx;
        ctx.mode = mode;
        ctx.degree = n;
        ctx.seed_mask = (std::uint64_t{1} << n) - 1;
        ctx.branch = std::size_t(cfg.parallelism()) << n;
        ctx.cycles = N;
        ctx.total = walk.convert_to<std::uint64_t>();
        ctx.length = L;
        ctx.part_len = lk;
        ctx.last_len = L - (N - 1) * lk;

        ctx.place.resize(N, 1);
        for (std::size_t c = N; c-- > 1;)
            ctx.place[c - 1] = ctx.place[c] * ctx.branch;

        // Key pre-generation: the model charges tau per verification, not
        // per key-stream bit, so every (register, seed) part is derived once.
        ctx.parts.reserve(ctx.branch);
        ctx.parts_tail.reserve(ctx.branch);
        for (std::uint32_t p = 0; p < cfg.parallelism(); ++p)
        {
            for (std::uint64_t s = 0; s <= ctx.seed_mask; ++s)
            {
                BitString seed{std::size_t(n)};
                for (int j = 0; j < n; ++j)
                    seed.set_bit(std::size_t(j), (s >> (n - 1 - j)) & 1u);
                BitString part = lfsr_stream(cfg.polys()[p], seed, lk);
                ctx.parts_tail.push_back(part.slice(0, ctx.last_len));
                ctx.parts.push_back(std::move(part));
            }
        }

        if (mode == AttackMode::known_plaintext)
        {
            const BitString target = xor_bits(sc.intercepted, *sc.known_plaintext);
            for (std::uint64_t c = 0; c < N; ++c)
            {
                const std::size_t len = c + 1 < N ? lk : ctx.last_len;
                ctx.slices.push_back(target.slice(std::size_t(c) * lk, len));
            }
        }
        else
        {
            ctx.intercepted = &sc.intercepted;
            for (std::size_t i = 0; i < sc.outgoing.size(); ++i)
            {
                const auto w = sc.outgoing[i].words();
                ctx.outgoing.emplace(
                    std::vector<std::uint64_t>{w.begin(), w.end()}, i);
            }
        }
        return ctx;
    }

    void xor_part_into(std::vector<std::uint64_t>& words, std::size_t pos,
                       const BitString& part)
    {
        const auto pw = part.words();
        const std::size_t base = pos >> 6;
        const std::size_t off = pos & 63;
        for (std::size_t j = 0; j < pw.size(); ++j)
        {
            words[base + j] ^= pw[j] << off;
            if (off != 0 && base + j + 1 < words.size())
                words[base + j + 1] ^= pw[j] >> (64 - off);
        }
    }

    /// Visits one schedule. Counts it, verifies it against the whole
    /// container (conjunction over every cycle — no early exit, no
    /// schedule is ever skipped), and appends a match record if it fits.
    void visit(const SearchContext& ctx, std::uint64_t g,
               std::vector<std::uint64_t>& scratch,
               std::vector<AttackMatch>& matches,
               std::uint64_t& tries, std::uint64_t& degenerate_tries)
    {
        bool degenerate = false;
        bool hit = false;
        std::optional<std::size_t> flow;

        if (ctx.mode == AttackMode::known_plaintext)
        {
            bool equal = true;
            for (std::uint64_t c = 0; c < ctx.cycles; ++c)
            {
                const std::size_t d =
                    std::size_t((g / ctx.place[c]) % ctx.branch);
                degenerate |= (d & ctx.seed_mask) == 0;
                const bool cycle_equal =
                    c + 1 < ctx.cycles ? ctx.parts[d] == ctx.slices[c]
                                       : ctx.parts_tail[d] == ctx.slices[c];
                equal &= cycle_equal;
            }
            hit = equal;
        }
        else
        {
            const auto iw = ctx.intercepted->words();
            scratch.assign(iw.begin(), iw.end());
            for (std::uint64_t c = 0; c < ctx.cycles; ++c)
            {
                const std::size_t d =
                    std::size_t((g / ctx.place[c]) % ctx.branch);
                degenerate |= (d & ctx.seed_mask) == 0;
                xor_part_into(scratch, std::size_t(c) * ctx.part_len,
                              c + 1 < ctx.cycles ? ctx.parts[d] : ctx.parts_tail[d]);
            }
            const auto it = ctx.outgoing.find(scratch);
            if (it != ctx.outgoing.end())
            {
                hit = true;
                flow = it->second;
            }
        }

        if (degenerate)
            ++degenerate_tries;
        else
            ++tries;

        if (hit)
        {
            AttackMatch m;
            m.ordinal = g;
            m.degenerate = degenerate;
            m.flow = flow;
            m.schedule.reserve(ctx.cycles);
            for (std::uint64_t c = 0; c < ctx.cycles; ++c)
            {
                const std::uint64_t d = (g / ctx.place[c]) % ctx.branch;
                m.schedule.push_back({std::uint32_t(d >> ctx.degree),
                                      d & ctx.seed_mask});
            }
            matches.push_back(std::move(m));
        }
    }

    AttackReport finalize(const AttackScenario& sc, const SearchContext& ctx,
                          std::vector<AttackMatch> matches, std::uint64_t tries,
                          std::uint64_t degenerate_tries, double elapsed)
    {
        std::sort(matches.begin(), matches.end(),
                  [](const AttackMatch& a, const AttackMatch& b)
                  { return a.ordinal < b.ordinal; });

        AttackReport report;
        report.matches = std::move(matches);
        report.tries = tries;
        report.degenerate_tries = degenerate_tries;
        report.space_nominal =
            keyspace_nominal(sc.config.parallelism(), ctx.cycles, ctx.degree);
        report.space_true =
            keyspace_true(sc.config.parallelism(), ctx.cycles, ctx.degree);
        report.elapsed_seconds = elapsed;
        report.tau = sc.tau;
        return report;
    }
} // namespace

namespace
{
    unsigned checked_exponent(std::uint64_t resets)
    {
        if (resets > std::numeric_limits<unsigned>::max())
            throw std::invalid_argument{"attack: reset count too large"};
        return unsigned(resets);
    }
} // namespace

BigInt keyspace_nominal(std::uint32_t parallelism, std::uint64_t resets, int degree)
{
    return mp::pow(BigInt{parallelism}, checked_exponent(resets)) *
           ((BigInt{1} << degree) - 1);
}

BigInt keyspace_true(std::uint32_t parallelism, std::uint64_t resets, int degree)
{
    return mp::pow(BigInt{parallelism} * ((BigInt{1} << degree) - 1),
                   checked_exponent(resets));
}

AttackReport enumerate_schedules_serial(const AttackScenario& sc, AttackMode mode)
{
    const SearchContext ctx = prepare(sc, mode);
    const auto start = std::chrono::steady_clock::now();

    std::vector<AttackMatch> matches;
    std::vector<std::uint64_t> scratch;
    std::uint64_t tries = 0;
    std::uint64_t degenerate_tries = 0;
    for (std::uint64_t g = 0; g < ctx.total; ++g)
        visit(ctx, g, scratch, matches, tries, degenerate_tries);

    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    return finalize(sc, ctx, std::move(matches), tries, degenerate_tries, elapsed);
}

AttackReport enumerate_schedules_parallel(const AttackScenario& sc, AttackMode mode,
                                          int threads)
{
#ifndef _OPENMP
    (void)threads;
    return enumerate_schedules_serial(sc, mode);
#else
    const SearchContext ctx = prepare(sc, mode);
    const auto start = std::chrono::steady_clock::now();

    const int team = threads > 0 ? threads : omp_get_max_threads();
    std::vector<std::vector<AttackMatch>> local(static_cast<std::size_t>(team));
    std::uint64_t tries = 0;
    std::uint64_t degenerate_tries = 0;

#pragma omp parallel num_threads(team) reduction(+ : tries, degenerate_tries)
    {
        auto& mine = local[std::size_t(omp_get_thread_num())];
        std::vector<std::uint64_t> scratch;
#pragma omp for schedule(static)
        for (std::int64_t g = 0; g < std::int64_t(ctx.total); ++g)
            visit(ctx, std::uint64_t(g), scratch, mine, tries, degenerate_tries);
    }

    std::vector<AttackMatch> matches;
    for (auto& v : local)
    {
        matches.insert(matches.end(), std::make_move_iterator(v.begin()),
                       std::make_move_iterator(v.end()));
    }

    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    return finalize(sc, ctx, std::move(matches), tries, degenerate_tries, elapsed);
#endif
}

AttackReport brute_force_recover(const AttackScenario& scenario, int threads)
{
    if (!scenario.known_plaintext)
        throw std::invalid_argument{"brute_force_recover: known plaintext required"};
    return threads == 1
               ? enumerate_schedules_serial(scenario, AttackMode::known_plaintext)
               : enumerate_schedules_parallel(scenario, AttackMode::known_plaintext,
                                              threads);
}

AttackReport correlate_flows(const AttackScenario& scenario, int threads)
{
    return threads == 1
               ? enumerate_schedules_serial(scenario, AttackMode::correlate)
               : enumerate_schedules_parallel(scenario, AttackMode::correlate,
                                              threads);
}

double AttackReport::tau_equivalent_seconds() const
{
    return (tries + degenerate_tries).convert_to<double>() * tau;
}

double big_log2(const BigInt& value)
{
    if (value <= 0)
        throw std::domain_error{"big_log2: value must be positive"};
    const unsigned top = mp::msb(value);
    if (top <= 52)
        return std::log2(value.convert_to<double>());
    const unsigned shift = top - 52;
    const std::uint64_t head = (value >> shift).convert_to<std::uint64_t>();
    return std::log2(double(head)) + double(shift);
}

Duration attack_time(const BigInt& keyspace, double tau)
{
    if (keyspace == 0)
        return Duration{};
    return Duration{big_log2(keyspace) + std::log2(tau)};
}

void write_attack_report(std::ostream& out, const AttackReport& report,
                         const OkgConfig& config, bool include_timing)
{
    const int n = config.degree();
    out << "# schedule search report\n";
    out << "# entry format cycle:(register,seed)\n";
    for (const AttackMatch& m : report.matches)
    {
        out << "match";
        for (std::size_t c = 0; c < m.schedule.size(); ++c)
        {
            const ScheduleEntry& e = m.schedule[c];
            BitString seed{std::size_t(n)};
            for (int j = 0; j < n; ++j)
                seed.set_bit(std::size_t(j), (e.seed >> (n - 1 - j)) & 1u);
            out << ' ' << c << ":(" << e.poly << ',' << seed.str() << ')';
        }
        if (m.flow)
            out << " flow=" << *m.flow;
        if (m.degenerate)
            out << " degenerate";
        out << '\n';
    }
    out << "# degenerate_schedules " << report.degenerate_tries.str() << '\n';
    out << "tries,keyspace_nominal,keyspace_true,elapsed_s,tau_equivalent_s\n";

    char buffer[64];
    out << report.tries.str() << ',' << report.space_nominal.str() << ','
        << report.space_true.str() << ',';
    if (include_timing)
    {
        std::snprintf(buffer, sizeof buffer, "%.6g", report.elapsed_seconds);
        out << buffer;
    }
    else
    {
        out << '-';
    }
    std::snprintf(buffer, sizeof buffer, "%.6g", report.tau_equivalent_seconds());
    out << ',' << buffer << '\n';
}

} // namespace olenc
