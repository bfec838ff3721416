#pragma once

#include "olenc/attack.hpp"
#include "olenc/bits.hpp"
#include "olenc/okg.hpp"

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>

namespace olenc
{

/// Bit files carry either ASCII '0'/'1' (whitespace allowed) or hex. The
/// first token may be a format tag: "bits" introduces the ASCII form, "hex"
/// followed by the exact bit count introduces the hex form. Untagged
/// content is read as ASCII bits.
BitString read_bits(std::istream& in);
BitString read_bits_file(const std::filesystem::path& path);

/// Writes the tagged form; hex is chosen automatically past 10^4 bits
/// (or on request), with the payload wrapped at 96 columns.
void write_bits(std::ostream& out, const BitString& bits, bool force_hex = false);
void write_bits_file(const std::filesystem::path& path, const BitString& bits,
                     bool force_hex = false);

/// "key value" per line, '#' comments; value is the rest of the line,
/// trimmed. Duplicate keys keep the last value.
std::map<std::string, std::string> read_kv(std::istream& in);
std::map<std::string, std::string> read_kv_file(const std::filesystem::path& path);

/// Builds a generator configuration from kv entries:
///   n <degree>            required with "polys auto"
///   p <count>             how many registers (with "polys auto")
///   polys auto | <list>   comma-separated caret polynomials
///   lk <bits>             key part length
///   resets <count>        reset cycles (optional if resets_override given)
///   strict-seeds 0|1      refuse all-zero seeds (optional)
OkgConfig okg_from_kv(const std::map<std::string, std::string>& kv,
                      std::optional<std::uint64_t> resets_override = std::nullopt);

/// Schedule export: "cycle,index,seed,keypart" per line after a comment
/// header; the key part column repeats the bits that cycle contributed.
void write_schedule(std::ostream& out, const AnonKey& key, std::size_t part_length);

/// Attack scenario file: the okg keys above plus
///   mode plaintext | correlate
///   intercepted <bits | @file>
///   reference <bits | @file>      (plaintext mode)
///   outgoing <file>               (correlate mode; one flow per line)
///   budget <count>                (optional)
///   tau <seconds>                 (optional)
/// Relative @file / outgoing paths resolve against the scenario file.
struct ScenarioFile
{
    AttackScenario scenario;
    AttackMode mode;
};

ScenarioFile read_scenario_file(const std::filesystem::path& path);

} // namespace olenc
