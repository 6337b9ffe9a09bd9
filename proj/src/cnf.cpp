#include "msp/cnf.hpp"

#include <charconv>
#include <cstdlib>
#include <sstream>

#include "msp/error.hpp"

namespace msp {

namespace {

[[noreturn]] void parse_fail(std::size_t line, std::size_t col, const std::string& what) {
  throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + what);
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v'; }

}  // namespace

CnfFormula parse_dimacs(std::string_view text, std::vector<std::string>* warnings) {
  CnfFormula f;
  bool have_header = false;
  long long declared_clauses = 0;
  std::vector<int> current;
  std::size_t current_line = 0;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const auto end = nl == std::string_view::npos ? text.size() : nl;
    const std::string_view line = text.substr(pos, end - pos);
    ++line_no;
    pos = end + 1;

    std::size_t i = 0;
    while (i < line.size() && is_space(line[i])) ++i;
    if (i == line.size()) {
      if (nl == std::string_view::npos) break;
      continue;
    }
    if (line[i] == 'c') continue;
    if (line[i] == '%') break;
    if (line[i] == 'p') {
      if (have_header) parse_fail(line_no, i + 1, "second problem line");
      std::istringstream is{std::string(line.substr(i + 1))};
      std::string fmt;
      long long vars = -1;
      long long cls = -1;
      if (!(is >> fmt >> vars >> cls) || fmt != "cnf" || vars < 0 || cls < 0)
        parse_fail(line_no, i + 1, "expected 'p cnf <vars> <clauses>'");
      std::string extra;
      if (is >> extra) parse_fail(line_no, i + 1, "trailing text after problem line");
      f.num_vars = static_cast<std::uint32_t>(vars);
      declared_clauses = cls;
      have_header = true;
      continue;
    }
    if (!have_header) parse_fail(line_no, i + 1, "clause before problem line");

    while (i < line.size()) {
      while (i < line.size() && is_space(line[i])) ++i;
      if (i == line.size()) break;
      const std::size_t start = i;
      while (i < line.size() && !is_space(line[i])) ++i;
      const std::string_view tok = line.substr(start, i - start);
      long long lit = 0;
      const char* first = tok.data();
      if (!tok.empty() && tok.front() == '+') ++first;
      const auto [ptr, ec] = std::from_chars(first, tok.data() + tok.size(), lit);
      if (ec != std::errc{} || ptr != tok.data() + tok.size())
        parse_fail(line_no, start + 1, "bad literal '" + std::string(tok) + "'");
      if (lit == 0) {
        if (current.empty()) parse_fail(line_no, start + 1, "empty clause");
        f.clauses.push_back(std::move(current));
        current.clear();
        continue;
      }
      if (static_cast<unsigned long long>(std::llabs(lit)) > f.num_vars)
        parse_fail(line_no, start + 1, "literal " + std::string(tok) + " exceeds declared variable count");
      if (current.empty()) current_line = line_no;
      current.push_back(static_cast<int>(lit));
    }
    if (nl == std::string_view::npos) break;
  }

  if (!have_header) parse_fail(line_no, 1, "missing problem line");
  if (!current.empty()) parse_fail(current_line, 1, "clause not terminated by 0");
  if (static_cast<long long>(f.clauses.size()) != declared_clauses) {
    const std::string msg = "header declares " + std::to_string(declared_clauses) + " clauses, found " +
                            std::to_string(f.clauses.size());
    if (!warnings) throw Error(ErrorKind::HeaderMismatch, msg);
    warnings->push_back(msg);
  }
  return f;
}

std::string to_dimacs(const CnfFormula& f, const std::vector<std::string>& comments) {
  std::string out;
  for (const auto& c : comments) out += "c " + c + "\n";
  out += "p cnf " + std::to_string(f.num_vars) + " " + std::to_string(f.clauses.size()) + "\n";
  for (const auto& clause : f.clauses) {
    for (int lit : clause) {
      out += std::to_string(lit);
      out += ' ';
    }
    out += "0\n";
  }
  return out;
}

bool evaluate(const CnfFormula& f, std::uint64_t bits) {
  for (const auto& clause : f.clauses) {
    bool sat = false;
    for (int lit : clause) {
      const bool value = (bits >> (std::abs(lit) - 1)) & 1U;
      if (value == (lit > 0)) {
        sat = true;
        break;
      }
    }
    if (!sat) return false;
  }
  return true;
}

std::size_t max_clause_width(const CnfFormula& f) {
  std::size_t w = 0;
  for (const auto& c : f.clauses) w = std::max(w, c.size());
  return w;
}

}  // namespace msp
