#include "msp/oracle.hpp"

#include <chrono>
#include <cstdlib>
#include <vector>

#include "msp/error.hpp"

namespace msp {

std::string_view to_string(Answer a) noexcept {
  switch (a) {
    case Answer::no: return "no";
    case Answer::yes: return "yes";
    case Answer::unknown: return "unknown";
  }
  return "unknown";
}

namespace {

struct OutOfBudget {};

using Bits = std::vector<std::uint64_t>;

/// Prefix-set DFS. Besides the label of the vertex just reached, a branch is
/// cut when D is no longer reachable through vertices whose labels hold the
/// whole prefix, since every later vertex of a sigma-path must. The visitor
/// returns false to stop the search.
class SigmaSearch {
 public:
  SigmaSearch(const MultiStageGraph& g, const OracleBudget& budget)
      : g_(g),
        budget_(budget),
        prefix_(g.edge_count()),
        words_((g.vertex_count() + 63) / 64),
        holders_(g.edge_count(), Bits(words_, 0)),
        alive_(g.last_stage() + 1, Bits(words_, 0)),
        stamp_(g.vertex_count(), 0),
        start_(std::chrono::steady_clock::now()) {
    for (std::uint32_t v = 1; v < g.vertex_count(); ++v)
      g.label(VertexId{v}).for_each([&](EdgeId e) { holders_[e.value][v / 64] |= std::uint64_t{1} << (v % 64); });
    for (std::uint32_t v = 0; v < g.vertex_count(); ++v) alive_[0][v / 64] |= std::uint64_t{1} << (v % 64);
  }

  template <typename Visit>
  void run(Visit&& visit) {
    descend(g_.source(), visit);
  }

  std::uint64_t nodes() const noexcept { return nodes_; }
  double millis() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  template <typename Visit>
  bool descend(VertexId v, Visit& visit) {
    if (v == g_.sink()) return visit(prefix_);
    const auto s = g_.stage_of(v);
    for (EdgeId e : g_.out_edges(v)) {
      tick();
      const VertexId w = g_.edge(e).head;
      prefix_.insert(e);
      if (prefix_.is_subset_of(g_.label(w))) {
        auto& next = alive_[s + 1];
        for (std::size_t i = 0; i < words_; ++i) next[i] = alive_[s][i] & holders_[e.value][i];
        if (reaches_sink(w, next) && !descend(w, visit)) {
          prefix_.erase(e);
          return false;
        }
      }
      prefix_.erase(e);
    }
    return true;
  }

  bool is_alive(const Bits& alive, VertexId v) const { return (alive[v.value / 64] >> (v.value % 64)) & 1; }

  // Vertex ids are stage-major, so one ascending sweep from w settles reachability.
  bool reaches_sink(VertexId w, const Bits& alive) {
    ++epoch_;
    stamp_[w.value] = epoch_;
    for (std::uint32_t u = w.value; u < g_.vertex_count(); ++u) {
      if (stamp_[u] != epoch_) continue;
      if (VertexId{u} == g_.sink()) return true;
      for (EdgeId e : g_.out_edges(VertexId{u})) {
        const VertexId h = g_.edge(e).head;
        if (is_alive(alive, h)) stamp_[h.value] = epoch_;
      }
    }
    return false;
  }

  void tick() {
    ++nodes_;
    if (nodes_ > budget_.max_nodes) throw OutOfBudget{};
    if ((nodes_ & 0x3ff) == 0 && millis() > static_cast<double>(budget_.max_millis)) throw OutOfBudget{};
  }

  const MultiStageGraph& g_;
  OracleBudget budget_;
  EdgeSet prefix_;
  std::size_t words_;
  std::vector<Bits> holders_;  // per edge: vertices whose label holds it
  std::vector<Bits> alive_;    // per depth: vertices whose label holds the prefix
  std::vector<std::uint32_t> stamp_;
  std::uint32_t epoch_ = 0;
  std::uint64_t nodes_ = 0;
  std::chrono::steady_clock::time_point start_;
};

struct Clause {
  std::uint32_t pos = 0;
  std::uint32_t neg = 0;
};

std::vector<Clause> compile(const CnfFormula& f) {
  if (f.num_vars > 24)
    throw Error(ErrorKind::TooManyVariables, std::to_string(f.num_vars) + " variables, brute force stops at 24");
  std::vector<Clause> out;
  out.reserve(f.clauses.size());
  for (const auto& c : f.clauses) {
    Clause k;
    for (int lit : c) {
      const auto bit = std::uint32_t{1} << (std::abs(lit) - 1);
      (lit > 0 ? k.pos : k.neg) |= bit;
    }
    out.push_back(k);
  }
  return out;
}

bool satisfies(const std::vector<Clause>& cs, std::uint32_t a) {
  for (const auto& c : cs)
    if (((a & c.pos) | (~a & c.neg)) == 0) return false;
  return true;
}

}  // namespace

Answer sigma_path_exists(const MultiStageGraph& g, const OracleBudget& budget, OracleStats* stats) {
  SigmaSearch search(g, budget);
  Answer answer = Answer::no;
  try {
    search.run([&](const EdgeSet&) {
      answer = Answer::yes;
      return false;
    });
  } catch (const OutOfBudget&) {
    answer = Answer::unknown;
  }
  if (stats) *stats = {search.nodes(), search.millis()};
  return answer;
}

std::vector<EdgeSet> enumerate_sigma_paths(const MultiStageGraph& g, const OracleBudget& budget) {
  SigmaSearch search(g, budget);
  std::vector<EdgeSet> out;
  try {
    search.run([&](const EdgeSet& p) {
      out.push_back(p);
      return true;
    });
  } catch (const OutOfBudget&) {
    throw Error(ErrorKind::BudgetExceeded,
                "enumeration stopped after " + std::to_string(search.nodes()) + " nodes");
  }
  return out;
}

bool sat_brute_force(const CnfFormula& f) {
  const auto cs = compile(f);
  const std::uint64_t n = std::uint64_t{1} << f.num_vars;
  for (std::uint64_t a = 0; a < n; ++a)
    if (satisfies(cs, static_cast<std::uint32_t>(a))) return true;
  return false;
}

std::uint64_t count_models(const CnfFormula& f) {
  const auto cs = compile(f);
  const std::uint64_t n = std::uint64_t{1} << f.num_vars;
  std::uint64_t count = 0;
  for (std::uint64_t a = 0; a < n; ++a)
    if (satisfies(cs, static_cast<std::uint32_t>(a))) ++count;
  return count;
}

}  // namespace msp
