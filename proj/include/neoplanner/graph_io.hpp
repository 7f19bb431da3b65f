#pragma once

#include <string>
#include <string_view>

#include "neoplanner/state_graph.hpp"

namespace neoplanner {

inline constexpr int kGraphFormatVersion = 1;

// Pretty-printed JSON document:
//   {version, config_echo, nodes: [...], edges: [...], root, invalid}
// Doubles are written with round-trip precision.
std::string serialize_graph(const StateGraph& graph);

// Inverse of serialize_graph. The returned graph has its derived values
// refreshed under the echoed config. Throws ParseError on malformed input or
// unknown fields, VersionError on a version mismatch and GraphStructureError
// on dangling references. Never returns a partial graph.
StateGraph deserialize_graph(std::string_view text);

}  // namespace neoplanner
