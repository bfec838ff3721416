#include "olenc/io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace olenc
{

namespace
{
    constexpr std::size_t hex_threshold = 10'000;
    constexpr std::size_t wrap_column = 96;

    std::string trim(const std::string& s)
    {
        std::size_t a = 0;
        std::size_t b = s.size();
        while (a < b && std::isspace(static_cast<unsigned char>(s[a])))
            ++a;
        while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1])))
            --b;
        return s.substr(a, b - a);
    }

    std::ifstream open_input(const std::filesystem::path& path)
    {
        std::ifstream in{path};
        if (!in)
            throw std::runtime_error{"cannot open " + path.string()};
        return in;
    }

    void wrap_payload(std::ostream& out, const std::string& payload)
    {
        for (std::size_t pos = 0; pos < payload.size(); pos += wrap_column)
            out << payload.substr(pos, wrap_column) << '\n';
    }

    std::uint64_t parse_u64(const std::string& text, const std::string& what)
    {
        try
        {
            std::size_t used = 0;
            const std::uint64_t v = std::stoull(text, &used);
            if (used != text.size())
                throw std::invalid_argument{text};
            return v;
        }
        catch (const std::exception&)
        {
            throw std::invalid_argument{"invalid " + what + " \"" + text + "\""};
        }
    }

    const std::string& require(const std::map<std::string, std::string>& kv,
                               const std::string& key)
    {
        const auto it = kv.find(key);
        if (it == kv.end())
            throw std::invalid_argument{"missing \"" + key + "\" entry"};
        return it->second;
    }
} // namespace

BitString read_bits(std::istream& in)
{
    std::string content{std::istreambuf_iterator<char>{in},
                        std::istreambuf_iterator<char>{}};
    std::istringstream tokens{content};
    std::string first;
    tokens >> first;

    if (first == "bits")
    {
        std::string rest{std::istreambuf_iterator<char>{tokens},
                         std::istreambuf_iterator<char>{}};
        return BitString::from_string(rest);
    }
    if (first == "hex")
    {
        std::string count_token;
        if (!(tokens >> count_token))
            throw std::invalid_argument{"hex bit file: missing bit count"};
        const std::uint64_t count = parse_u64(count_token, "bit count");
        std::string digits;
        std::string chunk;
        while (tokens >> chunk)
            digits += chunk;
        return BitString::from_hex(digits, count);
    }
    return BitString::from_string(content);
}

BitString read_bits_file(const std::filesystem::path& path)
{
    auto in = open_input(path);
    return read_bits(in);
}

void write_bits(std::ostream& out, const BitString& bits, bool force_hex)
{
    if (force_hex || bits.size() > hex_threshold)
    {
        out << "hex " << bits.size() << '\n';
        wrap_payload(out, bits.hex());
    }
    else
    {
        out << "bits\n";
        wrap_payload(out, bits.str());
    }
}

void write_bits_file(const std::filesystem::path& path, const BitString& bits,
                     bool force_hex)
{
    std::ofstream out{path};
    if (!out)
        throw std::runtime_error{"cannot write " + path.string()};
    write_bits(out, bits, force_hex);
}

std::map<std::string, std::string> read_kv(std::istream& in)
{
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line))
    {
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;

        const std::size_t split = line.find_first_of(" \t");
        if (split == std::string::npos)
            throw std::invalid_argument{"config line without a value: \"" + line + "\""};
        kv[line.substr(0, split)] = trim(line.substr(split + 1));
    }
    return kv;
}

std::map<std::string, std::string> read_kv_file(const std::filesystem::path& path)
{
    auto in = open_input(path);
    return read_kv(in);
}

OkgConfig okg_from_kv(const std::map<std::string, std::string>& kv,
                      std::optional<std::uint64_t> resets_override)
{
    const std::size_t part_length = parse_u64(require(kv, "lk"), "key part length");
    std::uint64_t resets = resets_override.value_or(0);
    if (const auto it = kv.find("resets"); it != kv.end() && !resets_override)
        resets = parse_u64(it->second, "reset count");
    if (resets == 0 && !resets_override)
        throw std::invalid_argument{"missing \"resets\" entry"};

    bool strict = false;
    if (const auto it = kv.find("strict-seeds"); it != kv.end())
        strict = it->second != "0";

    const auto polys_it = kv.find("polys");
    const std::string polys_spec =
        polys_it == kv.end() ? std::string{"auto"} : polys_it->second;

    if (polys_spec == "auto")
    {
        const int degree = int(parse_u64(require(kv, "n"), "degree"));
        const std::uint32_t count =
            std::uint32_t(parse_u64(require(kv, "p"), "parallelism"));
        return OkgConfig::with_auto_polys(degree, count, part_length, resets, strict);
    }

    std::vector<GenPoly> polys;
    std::size_t start = 0;
    while (start <= polys_spec.size())
    {
        const std::size_t comma = polys_spec.find(',', start);
        const std::string token = trim(
            polys_spec.substr(start, comma == std::string::npos ? comma : comma - start));
        if (!token.empty())
            polys.push_back(GenPoly::parse(token));
        if (comma == std::string::npos)
            break;
        start = comma + 1;
    }
    if (const auto it = kv.find("p"); it != kv.end())
    {
        if (parse_u64(it->second, "parallelism") != polys.size())
            throw std::invalid_argument{"\"p\" disagrees with the polynomial list"};
    }
    if (const auto it = kv.find("n"); it != kv.end())
    {
        if (!polys.empty() &&
            parse_u64(it->second, "degree") != std::uint64_t(polys.front().degree()))
            throw std::invalid_argument{"\"n\" disagrees with the polynomial list"};
    }
    return OkgConfig{std::move(polys), part_length, resets, strict};
}

void write_schedule(std::ostream& out, const AnonKey& key, std::size_t part_length)
{
    out << "# cycle,index,seed,keypart\n";
    for (std::size_t c = 0; c < key.schedule.size(); ++c)
    {
        const TrueSecretRecord& record = key.schedule[c];
        const std::size_t begin = c * part_length;
        const std::size_t len = std::min(part_length, key.bits.size() - begin);
        out << c << ',' << record.lfsr_index << ',' << record.seed.str() << ','
            << key.bits.slice(begin, len).str() << '\n';
    }
}

ScenarioFile read_scenario_file(const std::filesystem::path& path)
{
    const auto kv = read_kv_file(path);
    const auto base = path.parent_path();

    const auto load_bits = [&](const std::string& value) -> BitString
    {
        if (!value.empty() && value.front() == '@')
            return read_bits_file(base / value.substr(1));
        return BitString::from_string(value);
    };

    const std::string& mode_text = require(kv, "mode");
    AttackMode mode;
    if (mode_text == "plaintext" || mode_text == "known-plaintext")
        mode = AttackMode::known_plaintext;
    else if (mode_text == "correlate" || mode_text == "correlation")
        mode = AttackMode::correlate;
    else
        throw std::invalid_argument{"unknown attack mode \"" + mode_text + "\""};

    AttackScenario scenario{okg_from_kv(kv), load_bits(require(kv, "intercepted")),
                            {}, {}};

    if (mode == AttackMode::known_plaintext)
    {
        scenario.known_plaintext = load_bits(require(kv, "reference"));
    }
    else
    {
        auto in = open_input(base / require(kv, "outgoing"));
        std::string line;
        while (std::getline(in, line))
        {
            const std::size_t hash = line.find('#');
            if (hash != std::string::npos)
                line.erase(hash);
            line = trim(line);
            if (!line.empty())
                scenario.outgoing.push_back(BitString::from_string(line));
        }
    }

    if (const auto it = kv.find("budget"); it != kv.end())
        scenario.budget = BigInt{it->second};
    if (const auto it = kv.find("tau"); it != kv.end())
        scenario.tau = std::stod(it->second);
    if (const auto it = kv.find("layers"); it != kv.end())
        scenario.layers = std::uint32_t(parse_u64(it->second, "layer count"));

    return {std::move(scenario), mode};
}

} // namespace olenc
