#pragma once

#include "olenc/bits.hpp"
#include "olenc/okg.hpp"

#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace olenc
{

enum class NodeRole
{
    source,
    anonymizer,
    destination,
};

const char* to_string(NodeRole role);
NodeRole role_from_string(std::string_view text);

struct Node
{
    std::string id;
    NodeRole role = NodeRole::anonymizer;
    /// Key-stream initializer. The literal form "inject:<bits>" replaces the
    /// reference stream with the given bits; anything else names a
    /// ReferencePrng token. The source node holds no key; "-" by convention.
    std::string ini;
};

/// A path: one source, zero or more anonymizers, one destination. Every node
/// after the source holds a key, so a circuit of m nodes peels r = m - 1
/// layers.
class Circuit
{
public:
    explicit Circuit(std::vector<Node> nodes);

    const std::vector<Node>& nodes() const noexcept { return nodes_; }
    std::size_t layer_count() const noexcept { return nodes_.size() - 1; }

private:
    std::vector<Node> nodes_;
};

/// What one hop saw: the flow that arrived and the flow it sent on.
struct HopRecord
{
    std::string node_id;
    NodeRole role;
    BitString incoming;
    BitString outgoing;
};

/// Intermediate value at the source after one more layer was applied;
/// key_index counts layers the way the peel order does, so the record with
/// key_index == 1 is the flow that leaves the source.
struct LayerRecord
{
    std::size_t key_index;
    BitString value;
};

struct FlowTrace
{
    std::vector<LayerRecord> source_layers;
    std::vector<HopRecord> hops;
};

/// Applies the keys in the order given (keys[0] first, so keys[0] is the
/// innermost layer, peeled last). Returns the fully wrapped flow plus one
/// record per applied layer.
/// \pre keys nonempty, every key as long as the message
std::pair<BitString, std::vector<LayerRecord>>
source_encrypt(const BitString& message, const std::vector<BitString>& keys);

/// Removes one layer. XOR is an involution, so this is also what the source
/// used to add the layer; the name states the intent at a relay.
BitString peel_layer(const BitString& flow, const BitString& key);

using SourceFactory = std::function<std::unique_ptr<BitSource>(const Node&)>;

/// Builds the bit source a node's ini names (injected bits or reference
/// stream). Each call constructs a fresh source, so source side and node
/// side independently derive identical key streams.
std::unique_ptr<BitSource> default_source(const Node& node);

/// Drives a message through the whole chain. The source derives every
/// downstream node's key from that node's ini and wraps the message
/// destination-first; each later node re-derives its own key and peels one
/// layer. Keys cover exactly message.size() bits (final part truncated).
FlowTrace run_circuit(const Circuit& circuit, const OkgConfig& config,
                      const BitString& message,
                      const SourceFactory& make_source = default_source);

/// Circuit description file:
///   node <id> <source|anonymizer|destination> <ini>
///   okg <key> <value>       (optional generator parameters, see README)
/// in path order; '#' starts a comment. Bare "<id> <role> <ini>" lines are
/// accepted as node lines.
struct CircuitFile
{
    std::vector<Node> nodes;
    std::map<std::string, std::string> okg;
};

CircuitFile read_circuit_file(std::istream& in);

void write_trace(std::ostream& out, const FlowTrace& trace);

} // namespace olenc
