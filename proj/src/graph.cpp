#include "msp/graph.hpp"

#include <algorithm>
#include <tuple>

#include "bitscan.hpp"
#include "msp/error.hpp"

namespace msp {

using detail::scan_backward;
using detail::scan_forward;

MultiStageGraph MultiStageGraph::build_unlabeled(const std::vector<std::uint32_t>& stage_sizes,
                                                 std::span<const EdgeSpec> edges) {
  if (stage_sizes.size() < 6)
    throw Error(ErrorKind::MalformedStage,
                "need L >= 5 (at least 6 stages), got " + std::to_string(stage_sizes.size()) + " stages");
  if (stage_sizes.front() != 1) throw Error(ErrorKind::MalformedStage, "stage 0 must hold exactly the source");
  if (stage_sizes.back() != 1) throw Error(ErrorKind::MalformedStage, "stage L must hold exactly the sink");
  for (std::size_t l = 0; l < stage_sizes.size(); ++l)
    if (stage_sizes[l] == 0) throw Error(ErrorKind::MalformedStage, "stage " + std::to_string(l) + " is empty");

  MultiStageGraph g;
  g.stage_sizes_ = stage_sizes;
  const auto L = g.last_stage();
  g.stage_offset_.resize(L + 2);
  g.stage_offset_[0] = 0;
  for (std::uint32_t l = 0; l <= L; ++l) g.stage_offset_[l + 1] = g.stage_offset_[l] + stage_sizes[l];
  g.stage_of_.resize(g.stage_offset_[L + 1]);
  for (std::uint32_t l = 0; l <= L; ++l)
    for (std::uint32_t i = 0; i < stage_sizes[l]; ++i) g.stage_of_[g.stage_offset_[l] + i] = l;

  g.edges_.reserve(edges.size());
  for (const auto& s : edges) {
    if (s.stage < 1 || s.stage > L)
      throw Error(ErrorKind::DanglingEdge, "edge stage " + std::to_string(s.stage) + " outside 1..L");
    if (s.tail_index >= stage_sizes[s.stage - 1] || s.head_index >= stage_sizes[s.stage])
      throw Error(ErrorKind::DanglingEdge, "edge [" + std::to_string(s.tail_index) + "," +
                                               std::to_string(s.head_index) + "," + std::to_string(s.stage) +
                                               "] names a vertex outside its stage");
    g.edges_.push_back(Edge{VertexId{g.stage_offset_[s.stage - 1] + s.tail_index},
                            VertexId{g.stage_offset_[s.stage] + s.head_index}, s.stage});
  }
  std::sort(g.edges_.begin(), g.edges_.end(), [](const Edge& a, const Edge& b) {
    return std::tie(a.stage, a.tail, a.head) < std::tie(b.stage, b.tail, b.head);
  });
  for (std::size_t i = 1; i < g.edges_.size(); ++i)
    if (g.edges_[i] == g.edges_[i - 1])
      throw Error(ErrorKind::DuplicateEdge, "edge " + g.edge_name(EdgeId{static_cast<std::uint32_t>(i)}) +
                                                " listed twice");

  g.stage_edge_begin_.assign(L + 2, 0);
  {
    std::uint32_t i = 0;
    for (std::uint32_t l = 0; l <= L + 1; ++l) {
      while (i < g.edges_.size() && g.edges_[i].stage < l) ++i;
      g.stage_edge_begin_[l] = i;
    }
  }

  g.in_.assign(g.vertex_count(), {});
  g.out_.assign(g.vertex_count(), {});
  for (std::uint32_t i = 0; i < g.edges_.size(); ++i) {
    g.out_[g.edges_[i].tail.value].push_back(EdgeId{i});
    g.in_[g.edges_[i].head.value].push_back(EdgeId{i});
  }
  g.labels_.assign(g.vertex_count(), EdgeSet(g.edge_count()));
  return g;
}

MultiStageGraph MultiStageGraph::build(const std::vector<std::uint32_t>& stage_sizes,
                                       std::span<const EdgeSpec> edges, const LabelMap& labels) {
  MultiStageGraph g = build_unlabeled(stage_sizes, edges);
  // Label ids index the caller's edge list, which need not be sorted.
  std::vector<EdgeId> sorted_id(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i)
    sorted_id[i] = *g.find_edge(g.vertex_at(edges[i].stage - 1, edges[i].tail_index),
                                g.vertex_at(edges[i].stage, edges[i].head_index));
  for (const auto& [v, ids] : labels) {
    if (v.value >= g.vertex_count())
      throw Error(ErrorKind::BadLabel, "label for unknown vertex id " + std::to_string(v.value));
    if (v == g.source()) throw Error(ErrorKind::BadLabel, "the source carries no label");
    for (EdgeId e : ids) {
      if (e.value >= g.edge_count())
        throw Error(ErrorKind::BadLabel, "label of " + g.vertex_name(v) + " names edge id " +
                                             std::to_string(e.value) + " but |E| = " +
                                             std::to_string(g.edge_count()));
      g.labels_[v.value].insert(sorted_id[e.value]);
    }
  }
  for (std::uint32_t v = 1; v < g.vertex_count(); ++v)
    if (!labels.contains(VertexId{v}))
      throw Error(ErrorKind::BadLabel, "no label given for " + g.vertex_name(VertexId{v}));
  return g;
}

MultiStageGraph MultiStageGraph::with_labels(std::vector<EdgeSet> labels) const {
  if (labels.size() != vertex_count())
    throw Error(ErrorKind::BadLabel, "expected " + std::to_string(vertex_count()) + " labels");
  for (const auto& l : labels)
    if (l.universe() != edge_count()) throw Error(ErrorKind::BadLabel, "label over a foreign edge universe");
  if (!labels[0].empty()) throw Error(ErrorKind::BadLabel, "the source carries no label");
  MultiStageGraph g = *this;
  g.labels_ = std::move(labels);
  return g;
}

std::string MultiStageGraph::vertex_name(VertexId v) const {
  return std::to_string(stage_of(v)) + ":" + std::to_string(index_in_stage(v));
}

std::string MultiStageGraph::edge_name(EdgeId e) const {
  const Edge& x = edges_[e.value];
  return "<" + vertex_name(x.tail) + "," + vertex_name(x.head) + "," + std::to_string(x.stage) + ">";
}

std::optional<EdgeId> MultiStageGraph::find_edge(VertexId tail, VertexId head) const {
  for (EdgeId e : out_[tail.value])
    if (edges_[e.value].head == head) return e;
  return std::nullopt;
}

std::vector<EdgeSpec> MultiStageGraph::edge_specs() const {
  std::vector<EdgeSpec> out;
  out.reserve(edges_.size());
  for (const Edge& e : edges_) out.push_back(EdgeSpec{index_in_stage(e.tail), index_in_stage(e.head), e.stage});
  return out;
}

// ---------------------------------------------------------------------------

PathScratch::PathScratch(const MultiStageGraph& g)
    : g_(&g), fwd_(g.vertex_count(), 0), bwd_(g.vertex_count(), 0) {}

void PathScratch::next_forward() {
  if (++fwd_stamp_ == 0) {
    std::fill(fwd_.begin(), fwd_.end(), 0);
    fwd_stamp_ = 1;
  }
}

void PathScratch::next_backward() {
  if (++bwd_stamp_ == 0) {
    std::fill(bwd_.begin(), bwd_.end(), 0);
    bwd_stamp_ = 1;
  }
}

void PathScratch::mark_forward(const EdgeSet& a, const EdgeSet* b, VertexId u, std::uint32_t max_stage) {
  next_forward();
  fwd_[u.value] = fwd_stamp_;
  max_stage = std::min(max_stage, g_->last_stage());
  if (g_->stage_of(u) >= max_stage) return;
  const auto lo = g_->stage_edge_range(g_->stage_of(u) + 1).first;
  const auto hi = g_->stage_edge_range(max_stage).second;
  const auto edges = g_->edges();
  scan_forward(a, b, lo, hi, [&](EdgeId e) {
    const Edge& x = edges[e.value];
    if (fwd_[x.tail.value] == fwd_stamp_) fwd_[x.head.value] = fwd_stamp_;
    return true;
  });
}

void PathScratch::mark_backward(const EdgeSet& a, const EdgeSet* b, VertexId v, std::uint32_t min_stage) {
  next_backward();
  bwd_[v.value] = bwd_stamp_;
  const auto sv = g_->stage_of(v);
  if (sv <= min_stage) return;
  const auto lo = g_->stage_edge_range(min_stage + 1).first;
  const auto hi = g_->stage_edge_range(sv).second;
  const auto edges = g_->edges();
  scan_backward(a, b, lo, hi, [&](EdgeId e) {
    const Edge& x = edges[e.value];
    if (bwd_[x.head.value] == bwd_stamp_) bwd_[x.tail.value] = bwd_stamp_;
    return true;
  });
}

bool PathScratch::has_path(const EdgeSet& es, VertexId u, VertexId v) { return has_path(es, es, u, v); }

bool PathScratch::has_path(const EdgeSet& a, const EdgeSet& b, VertexId u, VertexId v) {
  const auto su = g_->stage_of(u);
  const auto sv = g_->stage_of(v);
  if (su >= sv) return false;
  next_forward();
  fwd_[u.value] = fwd_stamp_;
  const auto lo = g_->stage_edge_range(su + 1).first;
  const auto hi = g_->stage_edge_range(sv).second;
  const auto edges = g_->edges();
  bool found = false;
  scan_forward(a, &b, lo, hi, [&](EdgeId e) {
    const Edge& x = edges[e.value];
    if (fwd_[x.tail.value] == fwd_stamp_) {
      if (x.head == v) {
        found = true;
        return false;
      }
      fwd_[x.head.value] = fwd_stamp_;
    }
    return true;
  });
  return found;
}

void PathScratch::restrict_in_place(EdgeSet& es, VertexId u, VertexId v) {
  const auto su = g_->stage_of(u);
  const auto sv = g_->stage_of(v);
  if (su >= sv) {
    es.clear();
    return;
  }
  mark_forward(es, nullptr, u, sv);
  mark_backward(es, nullptr, v, su);
  const auto lo = g_->stage_edge_range(su + 1).first;
  const auto hi = g_->stage_edge_range(sv).second;
  const auto edges = g_->edges();
  EdgeSet kept(es.universe());
  scan_forward(es, nullptr, lo, hi, [&](EdgeId e) {
    const Edge& x = edges[e.value];
    if (reached_forward(x.tail) && reached_backward(x.head)) kept.insert(e);
    return true;
  });
  es = std::move(kept);
}

// ---------------------------------------------------------------------------

EdgeSet restrict_paths(const MultiStageGraph& g, const EdgeSet& es, VertexId u, VertexId v) {
  PathScratch scratch(g);
  EdgeSet out = es;
  scratch.restrict_in_place(out, u, v);
  return out;
}

EdgeSet source_cone(const MultiStageGraph& g, VertexId v) { return restrict_paths(g, g.all_edges(), g.source(), v); }

EdgeSet slice(const MultiStageGraph& g, const EdgeSet& es, std::uint32_t i, std::uint32_t j) {
  EdgeSet out(es.universe());
  if (i > j) return out;
  i = std::max<std::uint32_t>(i, 1);
  j = std::min(j, g.last_stage());
  if (i > j) return out;
  const auto lo = g.stage_edge_range(i).first;
  const auto hi = g.stage_edge_range(j).second;
  es.for_each_in(lo, hi, [&](EdgeId e) { out.insert(e); });
  return out;
}

std::optional<std::vector<EdgeId>> as_path(const MultiStageGraph& g, const EdgeSet& p) {
  auto ids = p.to_vector();
  if (ids.empty()) return std::nullopt;
  for (std::size_t i = 1; i < ids.size(); ++i) {
    const Edge& prev = g.edge(ids[i - 1]);
    const Edge& cur = g.edge(ids[i]);
    if (cur.stage != prev.stage + 1 || cur.tail != prev.head) return std::nullopt;
  }
  return ids;
}

bool is_omega_path(const MultiStageGraph& g, const EdgeSet& p) {
  const auto path = as_path(g, p);
  if (!path) return false;
  for (std::size_t i = 0; i < path->size(); ++i) {
    const EdgeSet& label = g.label(g.edge((*path)[i]).head);
    for (std::size_t j = 0; j <= i; ++j)
      if (!label.contains((*path)[j])) return false;
  }
  return true;
}

bool is_sigma_path(const MultiStageGraph& g, const EdgeSet& p) {
  const auto path = as_path(g, p);
  if (!path) return false;
  if (g.edge(path->front()).tail != g.source() || g.edge(path->back()).head != g.sink()) return false;
  return is_omega_path(g, p);
}

std::int64_t f_metric(const MultiStageGraph& g) {
  std::int64_t f = 0;
  for (std::uint32_t v = 1; v + 1 < g.vertex_count(); ++v)
    f += static_cast<std::int64_t>(g.in_degree(VertexId{v})) - 1;
  return f;
}

}  // namespace msp
