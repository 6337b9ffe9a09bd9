#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "msp/cnf.hpp"
#include "msp/edge_set.hpp"
#include "msp/graph.hpp"

namespace msp {

enum class Answer { no, yes, unknown };
std::string_view to_string(Answer a) noexcept;

/// Search limits. Exceeding either gives Answer::unknown (or BudgetExceeded
/// for enumeration), never a guessed answer.
struct OracleBudget {
  std::uint64_t max_nodes = 10'000'000;
  std::uint64_t max_millis = 30'000;
};

struct OracleStats {
  std::uint64_t nodes = 0;
  double millis = 0.0;
};

/// Depth-first search over S -> D paths, extending only while the prefix
/// stays inside the label of the vertex just reached and D can still be
/// reached through vertices whose labels hold the prefix.
Answer sigma_path_exists(const MultiStageGraph& g, const OracleBudget& budget = {}, OracleStats* stats = nullptr);

/// Every sigma-path as an edge set, in DFS order (children by ascending
/// EdgeId). Throws Error{BudgetExceeded}.
std::vector<EdgeSet> enumerate_sigma_paths(const MultiStageGraph& g, const OracleBudget& budget = {});

/// Exhaustive assignment enumeration. Throws Error{TooManyVariables} above 24
/// variables.
bool sat_brute_force(const CnfFormula& f);

/// Number of satisfying assignments over all num_vars variables.
std::uint64_t count_models(const CnfFormula& f);

}  // namespace msp
