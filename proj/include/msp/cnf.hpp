#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace msp {

/// CNF formula over variables 1..num_vars; a literal's sign is its polarity.
struct CnfFormula {
  std::uint32_t num_vars = 0;
  std::vector<std::vector<int>> clauses;
  friend bool operator==(const CnfFormula&, const CnfFormula&) = default;
};

/// Standard DIMACS cnf. Comment lines ('c') are skipped, a '%' line ends the
/// input, clauses are 0-terminated and may span lines.
///
/// Throws Error{ParseError} with line and column. A clause count that
/// disagrees with the header throws Error{HeaderMismatch}, unless warnings is
/// non-null, in which case the mismatch is appended there instead.
CnfFormula parse_dimacs(std::string_view text, std::vector<std::string>* warnings = nullptr);

/// DIMACS text; each comment becomes a leading "c " line.
std::string to_dimacs(const CnfFormula& f, const std::vector<std::string>& comments = {});

/// Truth value of f under assignment bit (v-1) of bits, for v <= 64.
bool evaluate(const CnfFormula& f, std::uint64_t bits);

/// Widest clause; 0 for an empty formula.
std::size_t max_clause_width(const CnfFormula& f);

}  // namespace msp
