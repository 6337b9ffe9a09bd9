#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "msp/graph.hpp"
#include "msp/reduction.hpp"

namespace msp {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kInstanceFormat = "msp-instance/1";

/// A graph as stored on disk: optional reduction table and free-form
/// provenance (generator parameters and seed, or source file).
struct InstanceDoc {
  MultiStageGraph graph;
  std::optional<ReductionMap> reduction;
  Json provenance = Json::object();
};

struct LoadedInstance {
  InstanceDoc doc;
  /// Hash recorded in the file, empty when absent.
  std::string recorded_hash;
  /// Non-fatal findings, e.g. a hash that no longer matches the content.
  std::vector<std::string> warnings;
};

/// "fnv1a64:<16 hex digits>" of raw bytes.
std::string fnv1a64_hex(std::string_view bytes);

/// fnv1a64_hex over the stage sizes, edges and labels.
std::string content_hash(const MultiStageGraph& g);

/// Instance text: one JSON document with fixed field order
/// (format, L, stages, edges, labels, reduction?, provenance, hash).
std::string serialize_instance(const InstanceDoc& doc);

/// Inverse of serialize_instance; serialize(deserialize(text)) == text for
/// files it wrote. Throws Error{ParseError | FormatVersionMismatch |
/// MalformedStage | DanglingEdge | DuplicateEdge | BadLabel}. A hash
/// mismatch is reported in warnings (Error{HashMismatch} when strict_hash).
LoadedInstance deserialize_instance(std::string_view text, bool strict_hash = false);

/// Reduction table on its own, as embedded in instance files.
Json reduction_to_json(const MultiStageGraph& g, const ReductionMap& map);
ReductionMap reduction_from_json(const MultiStageGraph& g, const Json& j);

}  // namespace msp
