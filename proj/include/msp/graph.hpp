#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "msp/edge_set.hpp"

namespace msp {

/// An edge <tail, head, stage>: tail lives in stage-1, head in stage.
struct Edge {
  VertexId tail;
  VertexId head;
  std::uint32_t stage = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Edge as written in instance files: endpoints are indices within their
/// own stage, not global vertex ids.
struct EdgeSpec {
  std::uint32_t tail_index = 0;
  std::uint32_t head_index = 0;
  std::uint32_t stage = 0;
};

using LabelMap = std::map<VertexId, std::vector<EdgeId>>;

/// Labeled multi-stage graph with stages 0..L, a single source S at stage 0,
/// a single sink D at stage L and a label (edge set) on every vertex except S.
///
/// Immutable once built. Vertex ids are stage-major, edge ids follow
/// (stage, tail, head) order.
class MultiStageGraph {
 public:
  /// Label entries are positions in edges; they are mapped to the sorted ids.
  /// Throws Error{MalformedStage | DanglingEdge | DuplicateEdge | BadLabel}.
  static MultiStageGraph build(const std::vector<std::uint32_t>& stage_sizes, std::span<const EdgeSpec> edges,
                               const LabelMap& labels);

  /// Same structure checks as build(); every label starts empty.
  static MultiStageGraph build_unlabeled(const std::vector<std::uint32_t>& stage_sizes,
                                         std::span<const EdgeSpec> edges);

  /// Copy with labels replaced. labels[v] is lambda(v); the entry for S must be empty.
  MultiStageGraph with_labels(std::vector<EdgeSet> labels) const;

  std::uint32_t last_stage() const noexcept { return static_cast<std::uint32_t>(stage_sizes_.size()) - 1; }
  std::size_t vertex_count() const noexcept { return stage_of_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  VertexId source() const noexcept { return VertexId{0}; }
  VertexId sink() const noexcept { return VertexId{static_cast<std::uint32_t>(vertex_count() - 1)}; }

  std::span<const std::uint32_t> stage_sizes() const noexcept { return stage_sizes_; }
  std::uint32_t stage_of(VertexId v) const noexcept { return stage_of_[v.value]; }
  std::uint32_t index_in_stage(VertexId v) const noexcept { return v.value - stage_offset_[stage_of_[v.value]]; }
  VertexId vertex_at(std::uint32_t stage, std::uint32_t index) const noexcept {
    return VertexId{stage_offset_[stage] + index};
  }
  /// "stage:index", the vertex key used by the instance format.
  std::string vertex_name(VertexId v) const;

  const Edge& edge(EdgeId e) const noexcept { return edges_[e.value]; }
  std::span<const Edge> edges() const noexcept { return edges_; }
  std::span<const EdgeId> in_edges(VertexId v) const noexcept { return in_[v.value]; }
  std::span<const EdgeId> out_edges(VertexId v) const noexcept { return out_[v.value]; }
  std::uint32_t in_degree(VertexId v) const noexcept { return static_cast<std::uint32_t>(in_[v.value].size()); }
  std::uint32_t out_degree(VertexId v) const noexcept { return static_cast<std::uint32_t>(out_[v.value].size()); }
  std::optional<EdgeId> find_edge(VertexId tail, VertexId head) const;
  /// "<tail,head,stage>" using vertex names.
  std::string edge_name(EdgeId e) const;

  /// Half-open id range [first, last) of the edges of one stage.
  std::pair<std::uint32_t, std::uint32_t> stage_edge_range(std::uint32_t stage) const noexcept {
    return {stage_edge_begin_[stage], stage_edge_begin_[stage + 1]};
  }

  const EdgeSet& label(VertexId v) const noexcept { return labels_[v.value]; }
  std::span<const EdgeSet> labels() const noexcept { return labels_; }

  EdgeSet empty_set() const { return EdgeSet(edge_count()); }
  EdgeSet all_edges() const { return EdgeSet::full(edge_count()); }

  /// Per-edge specs in EdgeId order, the inverse of build().
  std::vector<EdgeSpec> edge_specs() const;

  friend bool operator==(const MultiStageGraph& a, const MultiStageGraph& b) {
    return a.stage_sizes_ == b.stage_sizes_ && a.edges_ == b.edges_ && a.labels_ == b.labels_;
  }

 private:
  MultiStageGraph() = default;

  std::vector<std::uint32_t> stage_sizes_;
  std::vector<std::uint32_t> stage_offset_;
  std::vector<std::uint32_t> stage_of_;
  std::vector<Edge> edges_;
  std::vector<std::uint32_t> stage_edge_begin_;
  std::vector<std::vector<EdgeId>> in_;
  std::vector<std::vector<EdgeId>> out_;
  std::vector<EdgeSet> labels_;
};

/// Reusable scratch for connectivity queries over edge subsets. One per
/// thread; queries are O(|edges in the stage window|).
class PathScratch {
 public:
  explicit PathScratch(const MultiStageGraph& g);

  /// Is there a path from u to v (at least one edge) inside es?
  bool has_path(const EdgeSet& es, VertexId u, VertexId v);
  /// Same, over the intersection a & b without materializing it.
  bool has_path(const EdgeSet& a, const EdgeSet& b, VertexId u, VertexId v);
  /// es <- edges of es lying on some u -> v path inside es.
  void restrict_in_place(EdgeSet& es, VertexId u, VertexId v);

  /// Marks every vertex reachable from u inside (a & b), stages up to max_stage.
  /// b may be null. Query with reached_forward().
  void mark_forward(const EdgeSet& a, const EdgeSet* b, VertexId u, std::uint32_t max_stage);
  /// Marks every vertex that reaches v inside (a & b), stages down to min_stage.
  void mark_backward(const EdgeSet& a, const EdgeSet* b, VertexId v, std::uint32_t min_stage);
  bool reached_forward(VertexId v) const noexcept { return fwd_[v.value] == fwd_stamp_; }
  bool reached_backward(VertexId v) const noexcept { return bwd_[v.value] == bwd_stamp_; }

 private:
  void next_forward();
  void next_backward();

  const MultiStageGraph* g_;
  std::vector<std::uint32_t> fwd_;
  std::vector<std::uint32_t> bwd_;
  std::uint32_t fwd_stamp_ = 0;
  std::uint32_t bwd_stamp_ = 0;
};

/// [es]_u^v: the edges of es that lie on at least one u -> v path inside es.
/// Empty when u == v or no such path exists.
EdgeSet restrict_paths(const MultiStageGraph& g, const EdgeSet& es, VertexId u, VertexId v);

/// [E]_S^v.
EdgeSet source_cone(const MultiStageGraph& g, VertexId v);

/// es[i:j]: edges of es whose stage lies in [i, j]; empty when i > j.
EdgeSet slice(const MultiStageGraph& g, const EdgeSet& es, std::uint32_t i, std::uint32_t j);

/// Orders the edges of p into a contiguous path a - ... - b, or nullopt if p
/// is empty or not a single contiguous path.
std::optional<std::vector<EdgeId>> as_path(const MultiStageGraph& g, const EdgeSet& p);

/// Weak simple path: contiguous, and every prefix a - ... - v is inside lambda(v).
bool is_omega_path(const MultiStageGraph& g, const EdgeSet& p);

/// Simple path: a full S -> D path that is also an omega-path.
bool is_sigma_path(const MultiStageGraph& g, const EdgeSet& p);

/// Sum over interior vertices of (in-degree - 1).
std::int64_t f_metric(const MultiStageGraph& g);

struct Violation {
  /// "2msp.<item>" or "property.<n>".
  std::string rule;
  std::string detail;
  std::optional<VertexId> vertex;
  std::optional<EdgeId> edge;
  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Structural items (1)-(6) of the 2-MSP restriction. Empty iff all hold.
std::vector<Violation> validate_2msp(const MultiStageGraph& g);

/// Label properties 1-3 expected after pre-processing. Empty iff all hold.
std::vector<Violation> check_properties(const MultiStageGraph& g);

}  // namespace msp
