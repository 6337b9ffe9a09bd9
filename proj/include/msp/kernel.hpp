#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "msp/edge_set.hpp"
#include "msp/graph.hpp"

namespace msp {

enum class Decision { no, yes };
std::string_view to_string(Decision d) noexcept;

/// R(E): one rho-path edge set per edge, plus the frozen initial R0(E).
/// R(e) only ever shrinks, and always stays inside R0(e).
class RMap {
 public:
  RMap() = default;
  explicit RMap(std::vector<EdgeSet> initial) : current_(initial), initial_(std::move(initial)) {}

  std::size_t size() const noexcept { return current_.size(); }
  const EdgeSet& operator[](EdgeId e) const noexcept { return current_[e.value]; }
  EdgeSet& at(EdgeId e) noexcept { return current_[e.value]; }
  const EdgeSet& initial(EdgeId e) const noexcept { return initial_[e.value]; }

  /// Sum over e of |R0(e)|.
  std::size_t initial_total() const noexcept;
  std::size_t current_total() const noexcept;

  friend bool operator==(const RMap&, const RMap&) = default;

 private:
  std::vector<EdgeSet> current_;
  std::vector<EdgeSet> initial_;
};

enum class TraceKind { rho_init, chi_prune, psi_prune, fixpoint_pass };
std::string_view to_string(TraceKind k) noexcept;

struct TraceEvent {
  TraceKind kind = TraceKind::rho_init;
  std::size_t pass = 0;
  std::optional<EdgeId> subject;
  std::optional<EdgeId> removed;
  std::string_view reason;  // always a static literal
  friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};

/// {"pass":..,"kind":..,"e":..,"e2":..,"reason":..}, one record per line.
std::string to_json_line(const TraceEvent& ev);
std::string format_trace(const std::vector<TraceEvent>& trace);

/// Label pre-processing. Repeats three label rewrites until a full pass
/// leaves every label unchanged; V and E are never touched.
MultiStageGraph preprocess(const MultiStageGraph& g);

/// Initial rho-path edge set of e = <u,v,l>: edges <a,b,k> with e in
/// lambda(a) and lambda(b), restricted to the paths from v to D.
EdgeSet rho(const MultiStageGraph& g, EdgeId e);

/// R0(E) for every edge.
RMap initial_rmap(const MultiStageGraph& g);

/// Compaction of es toward v using the rho-path sets in r.
EdgeSet chi(const MultiStageGraph& g, const RMap& r, VertexId v, const EdgeSet& es);

struct PsiOutcome {
  EdgeSet result;
  std::size_t pruned = 0;
  std::vector<TraceEvent> events;
};

/// Restrains R(e) against the rest of R(E) until stable. R(e) is updated in
/// place inside r and returned. Requires 1 < stage(e) < L.
PsiOutcome psi(const MultiStageGraph& g, RMap& r, EdgeId e);

/// Fixed visiting order of the fixpoint, recorded with every verdict.
inline constexpr std::string_view kSweepOrder = "psi:stage-asc/id-asc;e2:stage-asc/id-asc";

struct SolveOptions {
  /// Reject inputs that are not 2-MSP (InvalidInstance); otherwise run anyway.
  bool strict = true;
  /// Record every prune event.
  bool trace = false;
};

struct SolveStats {
  std::size_t passes = 0;
  std::size_t psi_calls = 0;
  std::size_t psi_prunes = 0;
  std::size_t r0_total = 0;
  std::size_t r_final_total = 0;
  std::size_t kernel_size = 0;
  double millis = 0.0;
};

struct SolveResult {
  Decision decision = Decision::no;
  EdgeSet kernel;
  std::vector<TraceEvent> trace;
  SolveStats stats;
  RMap rmap;
  /// The pre-processed graph the fixpoint ran on.
  std::optional<MultiStageGraph> graph;
  /// Violations of the 2-MSP items found on the input (permissive mode).
  std::vector<Violation> violations;
};

SolveResult zh_solve(const MultiStageGraph& g, const SolveOptions& options = {});

/// The kernel component of zh_solve.
EdgeSet compact_kernel(const MultiStageGraph& g, const SolveOptions& options = {});

}  // namespace msp
