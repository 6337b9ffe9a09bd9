#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "msp/cnf.hpp"
#include "msp/edge_set.hpp"
#include "msp/graph.hpp"

namespace msp {

enum class VertexKind { source, sink, literal, auxiliary };
std::string_view to_string(VertexKind k) noexcept;

/// Where a vertex of a reduced graph came from. clause/slot/literal are set
/// for literal vertices, gadget/slot for auxiliary ones.
struct VertexRole {
  VertexKind kind = VertexKind::source;
  std::uint32_t clause = 0;
  std::uint32_t slot = 0;
  int literal = 0;
  std::uint32_t gadget = 0;
  friend bool operator==(const VertexRole&, const VertexRole&) = default;
};

struct ReductionMap {
  bool gadgets = false;
  /// Clause count of the input, before any padding.
  std::size_t original_clause_count = 0;
  /// Literals per clause after normalization; 0 on the plain route.
  std::uint32_t clause_width = 0;
  /// The formula the graph encodes (padded and normalized).
  CnfFormula formula;
  /// Indexed by VertexId.
  std::vector<VertexRole> roles;
  friend bool operator==(const ReductionMap&, const ReductionMap&) = default;
};

struct Reduction {
  MultiStageGraph graph;
  ReductionMap map;
};

/// One stage per clause, adjacent stages fully connected, lambda(D) = E and
/// each literal vertex labelled with E minus the edges touching a vertex of
/// the complementary literal.
///
/// Needs at least 4 clauses. Shorter inputs have their last clause repeated,
/// or throw Error{TooFewClauses} when strict. An empty formula always throws.
Reduction cnf_to_msp(const CnfFormula& f, bool strict = false);

/// 2-MSP form of f. Clauses are padded to a common width k in {2,3} by
/// repeating their last literal, and to at least 2 clauses by repeating the
/// last clause. Clause i sits at stage 2i+1 with an auxiliary stage after it:
/// a 3-vertex pair gadget between clauses (k = 3), a 2-vertex full gadget
/// (k = 2), and one pass-through vertex per literal before D.
///
/// g and map must come from cnf_to_msp(f). Throws Error{UnsupportedClauseWidth}
/// for clauses wider than 3.
Reduction gadgetize_2msp(const MultiStageGraph& g, const ReductionMap& map, const CnfFormula& f);

/// gadgetize_2msp(cnf_to_msp(f)).
Reduction reduce_full(const CnfFormula& f);

struct ReductionSize {
  std::uint32_t last_stage = 0;
  std::size_t vertices = 0;
  std::size_t edges = 0;
  friend bool operator==(const ReductionSize&, const ReductionSize&) = default;
};

/// Size of the 2-MSP form for m clauses (after padding) of width k:
/// k = 3: L = 2m+1, 6m+2 vertices, 12m-3 edges;
/// k = 2: L = 2m+1, 4m+2 vertices, 8m-2 edges.
ReductionSize gadget_size(std::size_t m, std::uint32_t k);

/// Size of the plain form: L = m+1, 2 + sum |C_i| vertices,
/// |C_1| + sum |C_i||C_i+1| + |C_m| edges.
ReductionSize plain_size(const CnfFormula& padded);

struct DecodedAssignment {
  /// Literal picked at each clause stage.
  std::vector<int> chosen;
  /// Index v-1; nullopt when the path leaves the variable untouched.
  std::vector<std::optional<bool>> values;
};

/// Reads the literal vertices along an S -> D path. Throws Error{NotAPath}
/// when p is not such a path or picks complementary literals.
DecodedAssignment decode_assignment(const MultiStageGraph& g, const EdgeSet& p, const ReductionMap& map);

}  // namespace msp
