#pragma once

#include <cstddef>
#include <functional>
#include <optional>

#include "msp/cnf.hpp"
#include "msp/graph.hpp"

namespace msp {

using CnfPredicate = std::function<bool(const CnfFormula&)>;
using MspPredicate = std::function<bool(const MultiStageGraph&)>;

struct MinimizeStats {
  std::size_t accepted = 0;
  std::size_t predicate_calls = 0;
};

/// Greedy shrink of f keeping pred true: drop clauses one at a time, then
/// fix single variables to a constant (renumbering the rest), and repeat
/// until neither step applies. The result is 1-minimal under clause
/// removal. A predicate that throws counts as false.
///
/// Throws Error{PredicateNotHolding} if pred(f) is false and
/// Error{PredicateFlaky} if pred answers differently on identical input.
CnfFormula minimize_cnf(const CnfFormula& f, const CnfPredicate& pred, MinimizeStats* stats = nullptr);

/// Greedy shrink of g keeping pred true: drop single edges, then single
/// label entries, until neither applies. Candidates that fail to build are
/// skipped, and when g is 2-MSP so must every candidate be.
MultiStageGraph minimize_msp(const MultiStageGraph& g, const MspPredicate& pred, MinimizeStats* stats = nullptr);

/// g without edge e; labels lose e and later ids shift down. Throws the
/// structural errors of MultiStageGraph::build.
MultiStageGraph remove_edge(const MultiStageGraph& g, EdgeId e);

/// f with variable v fixed to value: satisfied clauses go, the opposite
/// literal is dropped elsewhere, and variables above v are renumbered.
/// nullopt when a clause would become empty.
std::optional<CnfFormula> fix_variable(const CnfFormula& f, std::uint32_t v, bool value);

}  // namespace msp
