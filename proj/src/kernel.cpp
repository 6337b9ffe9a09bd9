#include "msp/kernel.hpp"

#include <chrono>
#include <sstream>
#include <stdexcept>

#include "bitscan.hpp"
#include "msp/error.hpp"

namespace msp {

using detail::scan_forward;

std::string_view to_string(Decision d) noexcept { return d == Decision::yes ? "yes" : "no"; }

std::string_view to_string(TraceKind k) noexcept {
  switch (k) {
    case TraceKind::rho_init: return "rho-init";
    case TraceKind::chi_prune: return "chi-prune";
    case TraceKind::psi_prune: return "psi-prune";
    case TraceKind::fixpoint_pass: return "fixpoint-pass";
  }
  return "unknown";
}

std::size_t RMap::initial_total() const noexcept {
  std::size_t n = 0;
  for (const auto& s : initial_) n += s.count();
  return n;
}

std::size_t RMap::current_total() const noexcept {
  std::size_t n = 0;
  for (const auto& s : current_) n += s.count();
  return n;
}

std::string to_json_line(const TraceEvent& ev) {
  std::ostringstream os;
  os << "{\"pass\":" << ev.pass << ",\"kind\":\"" << to_string(ev.kind) << "\",\"e\":";
  if (ev.subject) os << ev.subject->value; else os << "null";
  os << ",\"e2\":";
  if (ev.removed) os << ev.removed->value; else os << "null";
  os << ",\"reason\":\"" << ev.reason << "\"}";
  return os.str();
}

std::string format_trace(const std::vector<TraceEvent>& trace) {
  std::string out;
  for (const auto& ev : trace) {
    out += to_json_line(ev);
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Pre-processing

MultiStageGraph preprocess(const MultiStageGraph& g) {
  const auto n = static_cast<std::uint32_t>(g.vertex_count());
  std::vector<EdgeSet> cone(n);
  for (std::uint32_t i = 1; i < n; ++i) cone[i] = source_cone(g, VertexId{i});

  std::vector<EdgeSet> labels(g.labels().begin(), g.labels().end());
  const auto [first_lo, first_hi] = g.stage_edge_range(1);

  // Non-first-stage edges only ever leave labels, and the first-stage part
  // settles after one pass, so this bound is never reached on valid input.
  const std::size_t max_passes = 4 + g.edge_count() * n;
  for (std::size_t pass = 0;; ++pass) {
    if (pass > max_passes) throw std::logic_error("preprocess did not converge");
    const auto before = labels;

    // (i) drop label edges that are not on any S-path to the vertex.
    for (std::uint32_t i = 1; i < n; ++i) labels[i] &= cone[i];

    // (ii) a vertex beyond stage 1 holds every reachable first-stage edge
    // <S,a,1>; when one was missing, the stage-2 edges leaving a go.
    for (std::uint32_t i = 1; i < n; ++i) {
      if (g.stage_of(VertexId{i}) < 2) continue;
      EdgeSet& lab = labels[i];
      for (std::uint32_t id = first_lo; id < first_hi; ++id) {
        const EdgeId e{id};
        if (!cone[i].contains(e) || lab.contains(e)) continue;
        lab.insert(e);
        for (EdgeId x : g.out_edges(g.edge(e).head)) lab.erase(x);
      }
    }

    // (iii) the part below the vertex's own stage must be inherited from a
    // predecessor. Stage-ascending, so predecessors are already updated.
    for (std::uint32_t i = 1; i < n; ++i) {
      const VertexId v{i};
      const auto l = g.stage_of(v);
      if (l < 2) continue;
      EdgeSet inherited = g.empty_set();
      for (EdgeId e : g.in_edges(v)) inherited |= labels[g.edge(e).tail.value];
      const EdgeSet own = slice(g, labels[i], l, l);
      EdgeSet below = slice(g, labels[i], 1, l - 1);
      below &= inherited;
      labels[i] = own | below;
    }

    if (labels == before) break;
  }
  return g.with_labels(std::move(labels));
}

// ---------------------------------------------------------------------------
// rho-path sets

EdgeSet rho(const MultiStageGraph& g, EdgeId e) {
  const Edge& ed = g.edge(e);
  EdgeSet out = g.empty_set();
  const auto lo = g.stage_edge_range(ed.stage + 1).first;
  const auto hi = static_cast<std::uint32_t>(g.edge_count());
  for (std::uint32_t id = lo; id < hi; ++id) {
    const Edge& x = g.edge(EdgeId{id});
    if (g.label(x.tail).contains(e) && g.label(x.head).contains(e)) out.insert(EdgeId{id});
  }
  PathScratch scratch(g);
  scratch.restrict_in_place(out, ed.head, g.sink());
  return out;
}

RMap initial_rmap(const MultiStageGraph& g) {
  std::vector<EdgeSet> sets;
  sets.reserve(g.edge_count());
  for (std::uint32_t id = 0; id < g.edge_count(); ++id) sets.push_back(rho(g, EdgeId{id}));
  return RMap(std::move(sets));
}

// ---------------------------------------------------------------------------
// Compaction and restraining

namespace {

using Sink = std::vector<TraceEvent>;

/// Shared state for one graph: path scratch plus a cache of the psi
/// pre-image sets, keyed by e2 and invalidated by any change to R(E).
class Engine {
 public:
  explicit Engine(const MultiStageGraph& g)
      : g_(g), scratch_(g), a_cache_(g.edge_count()), a_version_(g.edge_count(), kNoVersion) {}

  EdgeSet chi(const RMap& r, VertexId v, EdgeSet es, Sink* sink, std::size_t pass);
  std::size_t psi(RMap& r, EdgeId e, Sink* sink, std::size_t pass);

 private:
  static constexpr std::uint64_t kNoVersion = ~std::uint64_t{0};

  const EdgeSet& preimage(const RMap& r, EdgeId e2);
  bool keeps(const RMap& r, EdgeId e, EdgeId e2);

  const MultiStageGraph& g_;
  PathScratch scratch_;
  std::uint64_t version_ = 0;
  std::vector<EdgeSet> a_cache_;
  std::vector<std::uint64_t> a_version_;
};

EdgeSet Engine::chi(const RMap& r, VertexId v, EdgeSet es, Sink* sink, std::size_t pass) {
  const auto lv = g_.stage_of(v);
  const auto L = g_.last_stage();
  const VertexId S = g_.source();
  const VertexId D = g_.sink();
  const auto edges = g_.edges();
  const auto hi = static_cast<std::uint32_t>(g_.edge_count());

  for (;;) {
    bool changed = false;
    // Membership tests read es live, so a removal is seen by later edges.
    scan_forward(es, nullptr, 0, hi, [&](EdgeId e) {
      const Edge& x = edges[e.value];
      bool drop = false;
      std::string_view why;
      if (x.stage < lv) {
        drop = !scratch_.has_path(r[e], es, x.head, v);
        why = "no-continuation";
      } else if (x.stage == lv && lv != L) {
        drop = !scratch_.has_path(r[e], v, D);
        why = "no-tail";
      }
      if (drop) {
        es.erase(e);
        changed = true;
        if (sink) sink->push_back({TraceKind::chi_prune, pass, std::nullopt, e, why});
      }
      return true;
    });

    EdgeSet kept = es;
    scratch_.restrict_in_place(kept, S, v);
    if (!(kept == es)) {
      changed = true;
      if (sink)
        (es - kept).for_each([&](EdgeId e) {
          sink->push_back({TraceKind::chi_prune, pass, std::nullopt, e, "disconnected"});
        });
      es = std::move(kept);
    }
    if (!changed) return es;
  }
}

// A for e2 = <a,b,k>: compaction toward b of e2 together with every x =
// <.,y,i> whose rho-path set, cut to lambda(b), carries a y -> b path
// through e2.
const EdgeSet& Engine::preimage(const RMap& r, EdgeId e2) {
  if (a_version_[e2.value] == version_) return a_cache_[e2.value];

  const Edge& x2 = g_.edge(e2);
  const EdgeSet& lb = g_.label(x2.head);
  EdgeSet def = g_.empty_set();
  def.insert(e2);
  if (lb.contains(e2)) {
    const auto below = g_.stage_edge_range(x2.stage).first;
    for (std::uint32_t id = 0; id < below; ++id) {
      const EdgeId x{id};
      const EdgeSet& rx = r[x];
      if (!rx.contains(e2)) continue;
      const VertexId y = g_.edge(x).head;
      if (y == x2.tail || scratch_.has_path(rx, lb, y, x2.tail)) def.insert(x);
    }
  }
  a_cache_[e2.value] = chi(r, x2.head, std::move(def), nullptr, 0);
  a_version_[e2.value] = version_;
  return a_cache_[e2.value];
}

// B non-empty: some c = <.,d,j> in A has both e and e2 inside
// restrict(R(c) & A, d, b), and the compaction of those c toward u survives.
// For e = <u,v,l> that means d reaches u and v reaches b; for e2 = <a,b,k>
// that d reaches a. The two memberships are tested separately, as written.
bool Engine::keeps(const RMap& r, EdgeId e, EdgeId e2) {
  const Edge& xe = g_.edge(e);
  const Edge& x2 = g_.edge(e2);
  // Copied: the cache entry may be rebuilt by the nested chi below.
  const EdgeSet a_set = preimage(r, e2);
  if (!a_set.contains(e) || !a_set.contains(e2)) return false;

  EdgeSet def = g_.empty_set();
  const auto edges = g_.edges();
  scan_forward(a_set, nullptr, 0, g_.stage_edge_range(xe.stage).first, [&](EdgeId c) {
    const EdgeSet& rc = r[c];
    if (!rc.contains(e) || !rc.contains(e2)) return true;
    const VertexId d = edges[c.value].head;
    scratch_.mark_forward(rc, &a_set, d, x2.stage - 1);
    if (!scratch_.reached_forward(xe.tail) || !scratch_.reached_forward(x2.tail)) return true;
    scratch_.mark_backward(rc, &a_set, x2.head, xe.stage);
    if (!scratch_.reached_backward(xe.head)) return true;
    def.insert(c);
    return true;
  });
  if (def.empty()) return false;
  return !chi(r, xe.tail, std::move(def), nullptr, 0).empty();
}

std::size_t Engine::psi(RMap& r, EdgeId e, Sink* sink, std::size_t pass) {
  const Edge& xe = g_.edge(e);
  std::size_t pruned = 0;
  for (;;) {
    bool changed = false;
    const EdgeSet snapshot = r[e];
    snapshot.for_each([&](EdgeId e2) {
      if (!r[e].contains(e2)) return;
      if (keeps(r, e, e2)) return;
      r.at(e).erase(e2);
      ++version_;
      ++pruned;
      changed = true;
      if (sink) sink->push_back({TraceKind::psi_prune, pass, e, e2, "B-empty"});
    });

    EdgeSet kept = r[e];
    scratch_.restrict_in_place(kept, xe.head, g_.sink());
    if (!(kept == r[e])) {
      (r[e] - kept).for_each([&](EdgeId e2) {
        ++pruned;
        if (sink) sink->push_back({TraceKind::psi_prune, pass, e, e2, "unreachable"});
      });
      r.at(e) = std::move(kept);
      ++version_;
      changed = true;
    }
    if (!changed) return pruned;
  }
}

}  // namespace

EdgeSet chi(const MultiStageGraph& g, const RMap& r, VertexId v, const EdgeSet& es) {
  Engine engine(g);
  return engine.chi(r, v, es, nullptr, 0);
}

PsiOutcome psi(const MultiStageGraph& g, RMap& r, EdgeId e) {
  const auto st = g.edge(e).stage;
  if (st <= 1 || st >= g.last_stage())
    throw std::invalid_argument("psi needs an edge strictly between stage 1 and the last stage");
  Engine engine(g);
  PsiOutcome out;
  out.pruned = engine.psi(r, e, &out.events, 0);
  out.result = r[e];
  return out;
}

SolveResult zh_solve(const MultiStageGraph& input, const SolveOptions& options) {
  const auto t0 = std::chrono::steady_clock::now();
  SolveResult res;
  res.violations = validate_2msp(input);
  if (options.strict && !res.violations.empty())
    throw Error(ErrorKind::InvalidInstance,
                std::to_string(res.violations.size()) + " 2-MSP violation(s), first " + res.violations.front().rule +
                    ": " + res.violations.front().detail);

  res.graph.emplace(preprocess(input));
  const MultiStageGraph& g = *res.graph;
  Sink* sink = options.trace ? &res.trace : nullptr;

  res.rmap = initial_rmap(g);
  res.stats.r0_total = res.rmap.initial_total();
  if (sink)
    for (std::uint32_t id = 0; id < g.edge_count(); ++id)
      sink->push_back({TraceKind::rho_init, 0, EdgeId{id}, std::nullopt, "init"});

  Engine engine(g);
  const auto L = g.last_stage();
  const auto lo = g.stage_edge_range(std::min<std::uint32_t>(3, L)).first;
  const auto hi = g.stage_edge_range(L).first;
  for (std::size_t pass = 1;; ++pass) {
    std::size_t pruned = 0;
    for (std::uint32_t id = lo; id < hi; ++id) {
      const EdgeId e{id};
      const EdgeSet before = res.rmap[e];
      pruned += engine.psi(res.rmap, e, sink, pass);
      ++res.stats.psi_calls;
      if (!res.rmap[e].is_subset_of(before) || !res.rmap[e].is_subset_of(res.rmap.initial(e)))
        throw std::logic_error("psi grew a rho-path set");
    }
    res.stats.passes = pass;
    res.stats.psi_prunes += pruned;
    if (sink) sink->push_back({TraceKind::fixpoint_pass, pass, std::nullopt, std::nullopt, pruned ? "changed" : "stable"});
    if (pruned == 0) break;
  }

  res.kernel = engine.chi(res.rmap, g.sink(), g.label(g.sink()), sink, res.stats.passes);
  res.decision = res.kernel.empty() ? Decision::no : Decision::yes;
  res.stats.r_final_total = res.rmap.current_total();
  res.stats.kernel_size = res.kernel.count();
  res.stats.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

EdgeSet compact_kernel(const MultiStageGraph& g, const SolveOptions& options) {
  return zh_solve(g, options).kernel;
}

}  // namespace msp
