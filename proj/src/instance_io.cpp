#include "msp/instance_io.hpp"

#include <cinttypes>
#include <cstdio>

#include "msp/error.hpp"

namespace msp {

namespace {

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t h = 0xcbf29ce484222325ULL) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

Json label_json(const EdgeSet& s) {
  Json arr = Json::array();
  s.for_each([&](EdgeId e) { arr.push_back(e.value); });
  return arr;
}

[[noreturn]] void parse_fail(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::ParseError, where + ": " + what);
}

std::uint32_t as_index(const Json& j, const std::string& where) {
  if (!j.is_number_unsigned()) parse_fail(where, "expected a non-negative integer");
  const auto v = j.get<std::uint64_t>();
  if (v > 0xffffffffULL) parse_fail(where, "value out of range");
  return static_cast<std::uint32_t>(v);
}

/// "stage:index" -> vertex, or nullopt when malformed or out of range.
std::optional<VertexId> parse_vertex_key(const std::vector<std::uint32_t>& sizes, const std::vector<std::uint32_t>& offset,
                                         const std::string& key) {
  std::uint32_t stage = 0;
  std::uint32_t index = 0;
  char tail = 0;
  if (std::sscanf(key.c_str(), "%" SCNu32 ":%" SCNu32 "%c", &stage, &index, &tail) != 2) return std::nullopt;
  if (key.find_first_not_of("0123456789:") != std::string::npos) return std::nullopt;
  if (stage >= sizes.size() || index >= sizes[stage]) return std::nullopt;
  return VertexId{offset[stage] + index};
}

std::string vertex_key(const MultiStageGraph& g, VertexId v) { return g.vertex_name(v); }

}  // namespace

std::string fnv1a64_hex(std::string_view bytes) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016" PRIx64, fnv1a(bytes));
  return buf;
}

std::string content_hash(const MultiStageGraph& g) {
  Json canon = Json::object();
  canon["stages"] = Json(std::vector<std::uint32_t>(g.stage_sizes().begin(), g.stage_sizes().end()));
  Json edges = Json::array();
  for (const auto& s : g.edge_specs()) edges.push_back({s.tail_index, s.head_index, s.stage});
  canon["edges"] = std::move(edges);
  Json labels = Json::array();
  for (std::uint32_t i = 1; i < g.vertex_count(); ++i) labels.push_back(label_json(g.label(VertexId{i})));
  canon["labels"] = std::move(labels);
  return fnv1a64_hex(canon.dump());
}

Json reduction_to_json(const MultiStageGraph& g, const ReductionMap& map) {
  Json j = Json::object();
  j["gadgets"] = map.gadgets;
  j["original_clause_count"] = map.original_clause_count;
  j["clause_width"] = map.clause_width;
  j["num_vars"] = map.formula.num_vars;
  j["clauses"] = map.formula.clauses;
  Json roles = Json::object();
  for (std::uint32_t i = 0; i < map.roles.size(); ++i) {
    const auto& r = map.roles[i];
    Json row = Json::object();
    row["kind"] = std::string(to_string(r.kind));
    if (r.kind == VertexKind::literal) {
      row["clause"] = r.clause;
      row["slot"] = r.slot;
      row["literal"] = r.literal;
    } else if (r.kind == VertexKind::auxiliary) {
      row["gadget"] = r.gadget;
      row["slot"] = r.slot;
    }
    roles[vertex_key(g, VertexId{i})] = std::move(row);
  }
  j["roles"] = std::move(roles);
  return j;
}

ReductionMap reduction_from_json(const MultiStageGraph& g, const Json& j) {
  if (!j.is_object()) parse_fail("reduction", "expected an object");
  ReductionMap map;
  try {
    map.gadgets = j.at("gadgets").get<bool>();
    map.original_clause_count = j.at("original_clause_count").get<std::size_t>();
    map.clause_width = j.at("clause_width").get<std::uint32_t>();
    map.formula.num_vars = j.at("num_vars").get<std::uint32_t>();
    map.formula.clauses = j.at("clauses").get<std::vector<std::vector<int>>>();
    const Json& roles = j.at("roles");
    map.roles.resize(g.vertex_count());
    if (roles.size() != g.vertex_count()) parse_fail("reduction.roles", "expected one entry per vertex");
    for (std::uint32_t i = 0; i < g.vertex_count(); ++i) {
      const auto key = vertex_key(g, VertexId{i});
      const Json& row = roles.at(key);
      const auto kind = row.at("kind").get<std::string>();
      VertexRole r;
      if (kind == "source") r.kind = VertexKind::source;
      else if (kind == "sink") r.kind = VertexKind::sink;
      else if (kind == "literal") {
        r.kind = VertexKind::literal;
        r.clause = row.at("clause").get<std::uint32_t>();
        r.slot = row.at("slot").get<std::uint32_t>();
        r.literal = row.at("literal").get<int>();
      } else if (kind == "auxiliary") {
        r.kind = VertexKind::auxiliary;
        r.gadget = row.at("gadget").get<std::uint32_t>();
        r.slot = row.at("slot").get<std::uint32_t>();
      } else {
        parse_fail("reduction.roles[\"" + key + "\"]", "unknown kind '" + kind + "'");
      }
      map.roles[i] = r;
    }
  } catch (const nlohmann::json::exception& ex) {
    parse_fail("reduction", ex.what());
  }
  return map;
}

std::string serialize_instance(const InstanceDoc& doc) {
  const auto& g = doc.graph;
  std::string out = "{\n";
  out += "  \"format\": " + Json(std::string(kInstanceFormat)).dump() + ",\n";
  out += "  \"L\": " + std::to_string(g.last_stage()) + ",\n";
  out += "  \"stages\": " + Json(std::vector<std::uint32_t>(g.stage_sizes().begin(), g.stage_sizes().end())).dump() +
         ",\n";

  const auto specs = g.edge_specs();
  out += "  \"edges\": [";
  for (std::size_t i = 0; i < specs.size(); ++i) {
    out += i == 0 ? "\n" : ",\n";
    out += "    " + Json{specs[i].tail_index, specs[i].head_index, specs[i].stage}.dump();
  }
  out += specs.empty() ? "],\n" : "\n  ],\n";

  out += "  \"labels\": {";
  for (std::uint32_t i = 1; i < g.vertex_count(); ++i) {
    out += i == 1 ? "\n" : ",\n";
    out += "    " + Json(vertex_key(g, VertexId{i})).dump() + ": " + label_json(g.label(VertexId{i})).dump();
  }
  out += "\n  },\n";

  if (doc.reduction) out += "  \"reduction\": " + reduction_to_json(g, *doc.reduction).dump() + ",\n";
  out += "  \"provenance\": " + doc.provenance.dump() + ",\n";
  out += "  \"hash\": " + Json(content_hash(g)).dump() + "\n";
  out += "}\n";
  return out;
}

LoadedInstance deserialize_instance(std::string_view text, bool strict_hash) {
  Json j;
  try {
    j = Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& ex) {
    throw Error(ErrorKind::ParseError, ex.what());
  }
  if (!j.is_object()) parse_fail("document", "expected an object");
  if (!j.contains("format") || !j["format"].is_string() || j["format"].get<std::string>() != kInstanceFormat)
    throw Error(ErrorKind::FormatVersionMismatch,
                "expected format \"" + std::string(kInstanceFormat) + "\", found " +
                    (j.contains("format") ? j["format"].dump() : std::string("none")));

  if (!j.contains("stages") || !j["stages"].is_array()) parse_fail("stages", "missing or not an array");
  std::vector<std::uint32_t> sizes;
  for (std::size_t i = 0; i < j["stages"].size(); ++i)
    sizes.push_back(as_index(j["stages"][i], "stages[" + std::to_string(i) + "]"));
  if (!j.contains("L")) parse_fail("L", "missing");
  const auto L = as_index(j["L"], "L");
  if (sizes.size() != static_cast<std::size_t>(L) + 1)
    throw Error(ErrorKind::MalformedStage,
                "L = " + std::to_string(L) + " but " + std::to_string(sizes.size()) + " stage sizes given");
  std::vector<std::uint32_t> offset(sizes.size(), 0);
  for (std::size_t s = 1; s < sizes.size(); ++s) offset[s] = offset[s - 1] + sizes[s - 1];
  const std::size_t n_vertices = sizes.empty() ? 0 : offset.back() + sizes.back();

  if (!j.contains("edges") || !j["edges"].is_array()) parse_fail("edges", "missing or not an array");
  std::vector<EdgeSpec> edges;
  for (std::size_t i = 0; i < j["edges"].size(); ++i) {
    const auto where = "edges[" + std::to_string(i) + "]";
    const Json& e = j["edges"][i];
    if (!e.is_array() || e.size() != 3) parse_fail(where, "expected [tail_index, head_index, stage]");
    edges.push_back({as_index(e[0], where), as_index(e[1], where), as_index(e[2], where)});
  }

  if (!j.contains("labels") || !j["labels"].is_object()) parse_fail("labels", "missing or not an object");
  LabelMap labels;
  for (const auto& [key, ids] : j["labels"].items()) {
    const auto where = "labels[\"" + key + "\"]";
    const auto v = parse_vertex_key(sizes, offset, key);
    if (!v || v->value >= n_vertices) throw Error(ErrorKind::BadLabel, where + ": no such vertex");
    if (!ids.is_array()) parse_fail(where, "expected an array of edge ids");
    std::vector<EdgeId> list;
    for (std::size_t k = 0; k < ids.size(); ++k) {
      const auto at = where + "[" + std::to_string(k) + "]";
      if (!ids[k].is_number_unsigned() || ids[k].get<std::uint64_t>() >= edges.size())
        throw Error(ErrorKind::BadLabel,
                    at + ": edge id " + ids[k].dump() + " out of range (" + std::to_string(edges.size()) + " edges)");
      list.push_back(EdgeId{ids[k].get<std::uint32_t>()});
    }
    labels[*v] = std::move(list);
  }

  LoadedInstance out{InstanceDoc{MultiStageGraph::build(sizes, edges, labels), std::nullopt, Json::object()}, {}, {}};
  if (j.contains("reduction")) out.doc.reduction = reduction_from_json(out.doc.graph, j["reduction"]);
  if (j.contains("provenance")) out.doc.provenance = j["provenance"];
  if (j.contains("hash")) {
    if (!j["hash"].is_string()) parse_fail("hash", "expected a string");
    out.recorded_hash = j["hash"].get<std::string>();
    const auto actual = content_hash(out.doc.graph);
    if (out.recorded_hash != actual) {
      const auto msg = "recorded hash " + out.recorded_hash + " differs from content hash " + actual;
      if (strict_hash) throw Error(ErrorKind::HashMismatch, msg);
      out.warnings.push_back(msg);
    }
  }
  return out;
}

}  // namespace msp
