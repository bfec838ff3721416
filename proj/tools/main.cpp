#include "olenc/attack.hpp"
#include "olenc/circuit.hpp"
#include "olenc/design.hpp"
#include "olenc/gf2.hpp"
#include "olenc/io.hpp"
#include "olenc/lfsr.hpp"
#include "olenc/okg.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

namespace
{

// Exit codes shared with shell harnesses:
//   0 success, 2 unsupported parameter domain, 3 bit-source underrun,
//   4 enumeration budget exceeded, 5 infeasible design point.
constexpr int exit_ok = 0;
constexpr int exit_domain = 2;
constexpr int exit_underrun = 3;
constexpr int exit_budget = 4;
constexpr int exit_infeasible = 5;

std::ofstream open_out(const std::string& path)
{
    std::ofstream out{path};
    if (!out)
        throw std::runtime_error{"cannot write " + path};
    return out;
}

std::vector<int> parse_range(const std::string& text)
{
    // "a:b[:step]" inclusive range, or a comma-separated list.
    std::vector<int> out;
    if (text.find(':') != std::string::npos)
    {
        int a = 0, b = 0, step = 1;
        char c1 = 0, c2 = 0;
        std::istringstream in{text};
        in >> a >> c1 >> b;
        if (in >> c2 >> step)
        {
        }
        if (c1 != ':' || (c2 != 0 && c2 != ':') || step < 1 || b < a)
            throw CLI::ValidationError{"range", "expected a:b[:step], got " + text};
        for (int v = a; v <= b; v += step)
            out.push_back(v);
        return out;
    }
    std::istringstream in{text};
    std::string token;
    while (std::getline(in, token, ','))
        if (!token.empty())
            out.push_back(std::stoi(token));
    if (out.empty())
        throw CLI::ValidationError{"range", "empty list"};
    return out;
}

olenc::OkgConfig config_from_file(const std::string& path,
                                  std::optional<std::uint64_t> resets_override = {})
{
    return olenc::okg_from_kv(olenc::read_kv_file(path), resets_override);
}

olenc::BitString random_bits(std::size_t count, std::uint64_t seed)
{
    std::mt19937_64 rng{seed};
    olenc::BitString out(count);
    for (std::size_t i = 0; i < count; ++i)
        out.set_bit(i, rng() & 1u);
    return out;
}

// ---- subcommand bodies --------------------------------------------------

struct PolysArgs
{
    int degree = 0;
    bool count_only = false;
    std::string out_path;
};

int cmd_polys(const PolysArgs& args)
{
    if (args.count_only)
    {
        std::cout << olenc::max_primitive_count(args.degree) << '\n';
        return exit_ok;
    }
    const auto polys = olenc::enumerate_primitive(args.degree);
    if (!args.out_path.empty())
    {
        auto out = open_out(args.out_path);
        olenc::write_poly_list(out, polys);
    }
    else
    {
        olenc::write_poly_list(std::cout, polys);
    }
    return exit_ok;
}

struct KeygenArgs
{
    std::string config_path;
    std::string ini;
    std::string inject;
    std::uint64_t length = 0; // 0: use the configured reset count
    std::string key_path;
    std::string schedule_path;
    bool hex = false;
};

int cmd_keygen(const KeygenArgs& args)
{
    const olenc::OkgConfig config = config_from_file(args.config_path);

    std::unique_ptr<olenc::BitSource> source;
    if (!args.inject.empty())
        source = std::make_unique<olenc::InjectedSource>(
            olenc::BitString::from_string(args.inject));
    else if (!args.ini.empty())
        source = std::make_unique<olenc::ReferencePrng>(args.ini);
    else
        throw CLI::ValidationError{"keygen", "provide --ini or --inject"};

    const olenc::AnonKey key =
        args.length > 0 ? olenc::generate_key(config, *source, args.length)
                        : olenc::generate_key(config, *source);

    if (key.degenerate())
        std::cerr << "warning: schedule contains an all-zero seed\n";

    if (!args.key_path.empty())
        olenc::write_bits_file(args.key_path, key.bits, args.hex);
    else
        olenc::write_bits(std::cout, key.bits, args.hex);
    if (!args.schedule_path.empty())
    {
        auto out = open_out(args.schedule_path);
        olenc::write_schedule(out, key, config.part_length());
    }
    return exit_ok;
}

struct XorArgs
{
    std::string message_path;
    std::vector<std::string> key_paths;
    std::string out_path;
    bool hex = false;
};

int cmd_xor(const XorArgs& args)
{
    olenc::BitString flow = olenc::read_bits_file(args.message_path);
    for (const std::string& key_path : args.key_paths)
        flow ^= olenc::read_bits_file(key_path);
    if (!args.out_path.empty())
        olenc::write_bits_file(args.out_path, flow, args.hex);
    else
        olenc::write_bits(std::cout, flow, args.hex);
    return exit_ok;
}

struct CircuitArgs
{
    std::string circuit_path;
    std::string message_path;
    std::uint64_t random_length = 0;
    std::uint64_t random_seed = 42;
    std::string trace_path;
};

int cmd_circuit(const CircuitArgs& args)
{
    std::ifstream in{args.circuit_path};
    if (!in)
        throw std::runtime_error{"cannot open " + args.circuit_path};
    const olenc::CircuitFile file = olenc::read_circuit_file(in);
    const olenc::Circuit circuit{file.nodes};

    olenc::BitString message;
    if (!args.message_path.empty())
        message = olenc::read_bits_file(args.message_path);
    else if (args.random_length > 0)
        message = random_bits(args.random_length, args.random_seed);
    else
        throw CLI::ValidationError{"circuit", "provide a message file or --random"};

    // Reset count follows from the container: ceil(L_M / L_k).
    const std::size_t lk =
        file.okg.count("lk") ? std::stoull(file.okg.at("lk")) : message.size();
    const std::uint64_t resets = (message.size() + lk - 1) / lk;
    const olenc::OkgConfig config = olenc::okg_from_kv(file.okg, resets);

    const olenc::FlowTrace trace = olenc::run_circuit(circuit, config, message);

    if (!args.trace_path.empty())
    {
        auto out = open_out(args.trace_path);
        olenc::write_trace(out, trace);
    }
    else
    {
        olenc::write_trace(std::cout, trace);
    }

    const olenc::BitString& delivered = trace.hops.back().outgoing;
    std::cout << "delivered "
              << (delivered.size() > 10'000 ? "hex:" + delivered.hex()
                                            : delivered.str())
              << '\n';
    std::cout << (delivered == message ? "round trip ok\n" : "ROUND TRIP FAILED\n");
    return delivered == message ? exit_ok : 1;
}

struct AttackArgs
{
    std::string scenario_path;
    int threads = 0;
    std::string report_path;
    bool no_timing = false;
};

int cmd_attack(const AttackArgs& args)
{
    const olenc::ScenarioFile file = olenc::read_scenario_file(args.scenario_path);
    const olenc::AttackReport report =
        file.mode == olenc::AttackMode::known_plaintext
            ? olenc::brute_force_recover(file.scenario, args.threads)
            : olenc::correlate_flows(file.scenario, args.threads);

    if (!args.report_path.empty())
    {
        auto out = open_out(args.report_path);
        olenc::write_attack_report(out, report, file.scenario.config, !args.no_timing);
    }
    olenc::write_attack_report(std::cout, report, file.scenario.config,
                               !args.no_timing);
    return exit_ok;
}

struct DesignArgs
{
    olenc::DesignInput input;
    double target_years = 0;  // > 0: override target in years
    unsigned target_aes = 0;  // > 0: override target as 2^bits * tau
};

void apply_target(olenc::DesignInput& input, double years, unsigned aes_bits)
{
    if (years > 0)
        input.target_break_seconds = years * olenc::seconds_per_year;
    if (aes_bits > 0)
        input.target_break_seconds = std::exp2(double(aes_bits)) * input.tau;
}

int cmd_design(DesignArgs& args)
{
    apply_target(args.input, args.target_years, args.target_aes);
    const olenc::DesignReport report = olenc::design(args.input);
    olenc::print_design_report(std::cout, args.input, report);
    return report.feasible ? exit_ok : exit_infeasible;
}

struct SweepArgs
{
    std::string degrees = "5:20:5";
    std::string parallelisms = "2,3,4";
    olenc::DesignInput base;
    double target_years = 0;
    unsigned target_aes = 0;
    bool table1 = false;
    std::uint64_t fixed_resets = 0;
    std::string out_path;
    bool crossovers = false;
};

int cmd_sweep(SweepArgs& args)
{
    if (args.table1)
        args.target_aes = 128; // reference switching-time calibration
    apply_target(args.base, args.target_years, args.target_aes);
    if (args.fixed_resets > 0)
        args.base.resets_override = args.fixed_resets;

    std::vector<std::uint32_t> ps;
    for (const int p : parse_range(args.parallelisms))
        ps.push_back(std::uint32_t(p));
    const auto rows =
        olenc::design_sweep(parse_range(args.degrees), ps, args.base);

    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!args.out_path.empty())
    {
        file = open_out(args.out_path);
        out = &file;
    }
    olenc::write_sweep_csv(*out, rows);

    if (args.crossovers)
    {
        for (const olenc::Crossover& c : olenc::find_crossovers(rows))
        {
            *out << "# crossover P=" << c.parallelism << ": 1e13-year level at ";
            if (c.aes128_degree)
                *out << "n=" << *c.aes128_degree;
            else
                *out << "none in sweep";
            *out << ", 1e51-year level at ";
            if (c.aes256_degree)
                *out << "n=" << *c.aes256_degree;
            else
                *out << "none in sweep";
            *out << '\n';
        }
    }
    return exit_ok;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"LFSR-keyed layered XOR encryption toolkit"};
    app.require_subcommand(1);

    PolysArgs polys_args;
    auto* polys = app.add_subcommand(
        "polys", "List or count the primitive generator polynomials of a degree");
    polys->add_option("degree", polys_args.degree, "register length n")->required();
    polys->add_flag("--count-only", polys_args.count_only,
                    "print phi(2^n-1)/n instead of enumerating (n up to 64)");
    polys->add_option("-o,--out", polys_args.out_path, "write the list to a file");

    KeygenArgs keygen_args;
    auto* keygen =
        app.add_subcommand("keygen", "Derive a key and its schedule from a bit source");
    keygen->add_option("config", keygen_args.config_path, "generator config file")
        ->required();
    keygen->add_option("--ini", keygen_args.ini, "reference stream token");
    keygen->add_option("--inject", keygen_args.inject, "literal source bits");
    keygen->add_option("--length", keygen_args.length,
                       "key length in bits (default: resets * lk)");
    keygen->add_option("--out-key", keygen_args.key_path, "key bits file");
    keygen->add_option("--out-schedule", keygen_args.schedule_path, "schedule file");
    keygen->add_flag("--hex", keygen_args.hex, "write key bits as hex");

    XorArgs encrypt_args;
    auto* encrypt = app.add_subcommand(
        "encrypt", "Apply key layers to a message (first key = innermost layer)");
    encrypt->add_option("message", encrypt_args.message_path)->required();
    encrypt->add_option("-k,--key", encrypt_args.key_paths, "key bits file")
        ->required();
    encrypt->add_option("-o,--out", encrypt_args.out_path);
    encrypt->add_flag("--hex", encrypt_args.hex);

    XorArgs decrypt_args;
    auto* decrypt = app.add_subcommand("decrypt", "Peel key layers off a flow");
    decrypt->add_option("flow", decrypt_args.message_path)->required();
    decrypt->add_option("-k,--key", decrypt_args.key_paths, "key bits file")
        ->required();
    decrypt->add_option("-o,--out", decrypt_args.out_path);
    decrypt->add_flag("--hex", decrypt_args.hex);

    CircuitArgs circuit_args;
    auto* circuit =
        app.add_subcommand("circuit", "Run a message through a node chain");
    circuit->add_option("circuit", circuit_args.circuit_path, "circuit description file")
        ->required();
    circuit->add_option("message", circuit_args.message_path, "message bits file");
    circuit->add_option("--random", circuit_args.random_length,
                        "generate a random message of this many bits");
    circuit->add_option("--seed", circuit_args.random_seed,
                        "seed for --random (default 42)");
    circuit->add_option("-o,--out", circuit_args.trace_path, "trace file");

    AttackArgs attack_args;
    auto* attack = app.add_subcommand("attack", "Exhaustive schedule search");
    attack->add_option("scenario", attack_args.scenario_path, "scenario file")
        ->required();
    attack->add_option("-t,--threads", attack_args.threads,
                       "worker threads (0 = all, 1 = serial reference)");
    attack->add_option("-o,--out", attack_args.report_path, "report file");
    attack->add_flag("--no-timing", attack_args.no_timing,
                     "write '-' for elapsed time (byte-stable reports)");

    DesignArgs design_args;
    auto* design = app.add_subcommand("design", "Evaluate one operating point");
    design->add_option("-n,--degree", design_args.input.degree, "register length")
        ->required();
    design->add_option("-p,--parallelism", design_args.input.parallelism,
                       "parallel registers")
        ->required();
    design->add_option("--lm", design_args.input.container_bits,
                       "container length in bits (default 1.25 * 2^30)");
    design->add_option("--line-rate", design_args.input.line_rate, "C in b/s");
    design->add_option("--lfsr-rate", design_args.input.lfsr_rate, "C_L in b/s");
    design->add_option("--tau", design_args.input.tau, "seconds per try");
    design->add_option("--target-years", design_args.target_years,
                       "break-time target in years (default 1e13)");
    design->add_option("--target-aes", design_args.target_aes,
                       "break-time target 2^bits * tau");
    design->add_option("--fixed-resets", design_args.input.resets_override,
                       "fix N and derive the key part as ceil(L_M/N)");
    design->add_option("--layers", design_args.input.layers, "K, layers to strip");
    design->add_option("--route", design_args.input.route_nodes,
                       "r, key holders on the path");

    SweepArgs sweep_args;
    auto* sweep = app.add_subcommand("sweep", "Tabulate operating points as CSV");
    sweep->add_option("--n", sweep_args.degrees, "degrees, a:b[:step] or list");
    sweep->add_option("--p", sweep_args.parallelisms, "parallelisms, list or range");
    sweep->add_option("--lm", sweep_args.base.container_bits);
    sweep->add_option("--line-rate", sweep_args.base.line_rate);
    sweep->add_option("--lfsr-rate", sweep_args.base.lfsr_rate);
    sweep->add_option("--tau", sweep_args.base.tau);
    sweep->add_option("--target-years", sweep_args.target_years);
    sweep->add_option("--target-aes", sweep_args.target_aes);
    sweep->add_flag("--table1", sweep_args.table1,
                    "reference calibration for the switching-time grid "
                    "(alias for --target-aes 128)");
    sweep->add_option("--fixed-resets", sweep_args.fixed_resets,
                      "fix N for every cell");
    sweep->add_option("-o,--out", sweep_args.out_path, "CSV file");
    sweep->add_flag("--crossovers", sweep_args.crossovers,
                    "append smallest flagged n per P as comment lines");

    try
    {
        app.parse(argc, argv);
        if (*polys)
            return cmd_polys(polys_args);
        if (*keygen)
            return cmd_keygen(keygen_args);
        if (*encrypt)
            return cmd_xor(encrypt_args);
        if (*decrypt)
            return cmd_xor(decrypt_args);
        if (*circuit)
            return cmd_circuit(circuit_args);
        if (*attack)
            return cmd_attack(attack_args);
        if (*design)
            return cmd_design(design_args);
        if (*sweep)
            return cmd_sweep(sweep_args);
        return exit_ok;
    }
    catch (const CLI::ParseError& e)
    {
        return app.exit(e);
    }
    catch (const olenc::underrun_error& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_underrun;
    }
    catch (const olenc::budget_error& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_budget;
    }
    catch (const std::domain_error& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_domain;
    }
    catch (const std::exception& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
