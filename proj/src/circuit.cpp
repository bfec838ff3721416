#include "olenc/circuit.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace olenc
{

namespace
{
    // Flows longer than this are rendered as hex in trace files.
    constexpr std::size_t hex_threshold = 10'000;

    std::string render(const BitString& bits)
    {
        return bits.size() > hex_threshold ? "hex:" + bits.hex() : bits.str();
    }
} // namespace

const char* to_string(NodeRole role)
{
    switch (role)
    {
    case NodeRole::source:
        return "source";
    case NodeRole::anonymizer:
        return "anonymizer";
    case NodeRole::destination:
        return "destination";
    }
    return "?";
}

NodeRole role_from_string(std::string_view text)
{
    if (text == "source")
        return NodeRole::source;
    if (text == "anonymizer" || text == "relay")
        return NodeRole::anonymizer;
    if (text == "destination")
        return NodeRole::destination;
    throw std::invalid_argument{"unknown node role \"" + std::string{text} + "\""};
}

Circuit::Circuit(std::vector<Node> nodes)
    : nodes_{std::move(nodes)}
{
    if (nodes_.size() < 2)
        throw std::invalid_argument{"circuit needs a source and a destination"};
    if (nodes_.front().role != NodeRole::source)
        throw std::invalid_argument{"first circuit node must be the source"};
    if (nodes_.back().role != NodeRole::destination)
        throw std::invalid_argument{"last circuit node must be the destination"};
    for (std::size_t i = 1; i + 1 < nodes_.size(); ++i)
        if (nodes_[i].role != NodeRole::anonymizer)
            throw std::invalid_argument{"interior circuit nodes must be anonymizers"};
}

std::pair<BitString, std::vector<LayerRecord>>
source_encrypt(const BitString& message, const std::vector<BitString>& keys)
{
    if (keys.empty())
        throw std::invalid_argument{"source_encrypt: no keys"};

    std::vector<LayerRecord> layers;
    layers.reserve(keys.size());
    BitString flow = message;
    const std::size_t r = keys.size();
    for (std::size_t j = 0; j < r; ++j)
    {
        flow ^= keys[j]; // throws on length mismatch
        layers.push_back({r - j, flow});
    }
    return {std::move(flow), std::move(layers)};
}

BitString peel_layer(const BitString& flow, const BitString& key)
{
    return xor_bits(flow, key);
}

std::unique_ptr<BitSource> default_source(const Node& node)
{
    constexpr std::string_view inject_prefix = "inject:";
    if (node.ini.starts_with(inject_prefix))
        return std::make_unique<InjectedSource>(
            BitString::from_string(std::string_view{node.ini}.substr(inject_prefix.size())));
    return std::make_unique<ReferencePrng>(node.ini);
}

FlowTrace run_circuit(const Circuit& circuit, const OkgConfig& config,
                      const BitString& message, const SourceFactory& make_source)
{
    const auto& nodes = circuit.nodes();
    const std::size_t r = circuit.layer_count();

    // Source side: derive the keys destination-first, so the key of the
    // first relay ends up outermost.
    std::vector<BitString> keys_inner_first;
    keys_inner_first.reserve(r);
    for (std::size_t i = r; i >= 1; --i)
    {
        auto source = make_source(nodes[i]);
        keys_inner_first.push_back(
            generate_key(config, *source, message.size()).bits);
    }

    FlowTrace trace;
    auto [wrapped, layers] = source_encrypt(message, keys_inner_first);
    trace.source_layers = std::move(layers);
    trace.hops.push_back({nodes[0].id, nodes[0].role, message, wrapped});

    // Node side: every key holder re-derives its own key from a fresh
    // source and removes one layer.
    BitString flow = std::move(wrapped);
    for (std::size_t i = 1; i <= r; ++i)
    {
        auto source = make_source(nodes[i]);
        const BitString key = generate_key(config, *source, flow.size()).bits;
        BitString next = peel_layer(flow, key);
        trace.hops.push_back({nodes[i].id, nodes[i].role, flow, next});
        flow = std::move(next);
    }
    return trace;
}

CircuitFile read_circuit_file(std::istream& in)
{
    CircuitFile file;
    std::string line;
    while (std::getline(in, line))
    {
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);

        std::istringstream tokens{line};
        std::string first;
        if (!(tokens >> first))
            continue;

        if (first == "okg")
        {
            std::string key, value;
            if (!(tokens >> key >> value))
                throw std::invalid_argument{"circuit file: okg line needs key and value"};
            file.okg[key] = value;
            continue;
        }

        std::string id = first;
        if (first == "node" && !(tokens >> id))
            throw std::invalid_argument{"circuit file: node line needs id, role, ini"};
        std::string role, ini;
        if (!(tokens >> role >> ini))
            throw std::invalid_argument{"circuit file: node line needs id, role, ini"};
        file.nodes.push_back({id, role_from_string(role), ini});
    }
    return file;
}

void write_trace(std::ostream& out, const FlowTrace& trace)
{
    out << "# hop,node,role,incoming,outgoing\n";
    for (std::size_t i = 0; i < trace.hops.size(); ++i)
    {
        const HopRecord& hop = trace.hops[i];
        out << i << ',' << hop.node_id << ',' << to_string(hop.role) << ','
            << render(hop.incoming) << ',' << render(hop.outgoing) << '\n';
    }
    for (const LayerRecord& layer : trace.source_layers)
        out << "# source layer " << layer.key_index << ": " << render(layer.value)
            << '\n';
}

} // namespace olenc
