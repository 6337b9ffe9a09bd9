#include "msp/reduction.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <stdexcept>

#include "msp/error.hpp"

namespace msp {

std::string_view to_string(VertexKind k) noexcept {
  switch (k) {
    case VertexKind::source: return "source";
    case VertexKind::sink: return "sink";
    case VertexKind::literal: return "literal";
    case VertexKind::auxiliary: return "auxiliary";
  }
  return "unknown";
}

namespace {

/// Stage-by-stage layout of a reduced graph before labelling.
struct Layout {
  std::vector<std::vector<VertexRole>> stages;
  std::vector<EdgeSpec> edges;

  std::uint32_t add_stage(std::vector<VertexRole> roles) {
    stages.push_back(std::move(roles));
    return static_cast<std::uint32_t>(stages.size() - 1);
  }
  void connect(std::uint32_t stage, std::uint32_t tail, std::uint32_t head) { edges.push_back({tail, head, stage}); }
  void connect_all(std::uint32_t stage) {
    for (std::uint32_t t = 0; t < stages[stage - 1].size(); ++t)
      for (std::uint32_t h = 0; h < stages[stage].size(); ++h) connect(stage, t, h);
  }
};

std::vector<VertexRole> clause_stage(const std::vector<int>& clause, std::uint32_t index) {
  std::vector<VertexRole> out;
  for (std::uint32_t s = 0; s < clause.size(); ++s)
    out.push_back({VertexKind::literal, index, s, clause[s], 0});
  return out;
}

std::vector<VertexRole> aux_stage(std::uint32_t gadget, std::uint32_t count) {
  std::vector<VertexRole> out;
  for (std::uint32_t s = 0; s < count; ++s) out.push_back({VertexKind::auxiliary, 0, s, 0, gadget});
  return out;
}

/// Builds the graph and assigns the complementary-literal labels.
Reduction finish(Layout layout, ReductionMap map) {
  std::vector<std::uint32_t> sizes;
  for (const auto& s : layout.stages) {
    sizes.push_back(static_cast<std::uint32_t>(s.size()));
    map.roles.insert(map.roles.end(), s.begin(), s.end());
  }
  auto g = MultiStageGraph::build_unlabeled(sizes, layout.edges);

  std::map<int, EdgeSet> touching;
  for (std::uint32_t id = 0; id < g.edge_count(); ++id) {
    const Edge& x = g.edge(EdgeId{id});
    for (VertexId end : {x.tail, x.head}) {
      const auto& role = map.roles[end.value];
      if (role.kind != VertexKind::literal) continue;
      auto [it, fresh] = touching.try_emplace(role.literal, g.edge_count());
      it->second.insert(EdgeId{id});
    }
  }

  std::vector<EdgeSet> labels(g.vertex_count(), g.empty_set());
  for (std::uint32_t i = 1; i < g.vertex_count(); ++i) {
    const auto& role = map.roles[i];
    labels[i] = g.all_edges();
    if (role.kind == VertexKind::literal) {
      const auto it = touching.find(-role.literal);
      if (it != touching.end()) labels[i] -= it->second;
    }
  }
  return Reduction{g.with_labels(std::move(labels)), std::move(map)};
}

std::vector<std::vector<int>> pad_clauses(std::vector<std::vector<int>> clauses, std::size_t at_least) {
  while (clauses.size() < at_least) clauses.push_back(clauses.back());
  return clauses;
}

}  // namespace

Reduction cnf_to_msp(const CnfFormula& f, bool strict) {
  if (f.clauses.empty()) throw Error(ErrorKind::TooFewClauses, "formula has no clauses");
  if (strict && f.clauses.size() < 4)
    throw Error(ErrorKind::TooFewClauses, std::to_string(f.clauses.size()) + " clauses, the plain route needs 4");
  for (const auto& c : f.clauses)
    if (c.empty()) throw Error(ErrorKind::ParseError, "empty clause");

  ReductionMap map;
  map.original_clause_count = f.clauses.size();
  map.formula = CnfFormula{f.num_vars, pad_clauses(f.clauses, 4)};
  const auto& clauses = map.formula.clauses;

  Layout layout;
  layout.add_stage({VertexRole{VertexKind::source}});
  for (std::uint32_t i = 0; i < clauses.size(); ++i) layout.connect_all(layout.add_stage(clause_stage(clauses[i], i)));
  layout.connect_all(layout.add_stage({VertexRole{VertexKind::sink}}));

  auto out = finish(std::move(layout), std::move(map));
  const auto want = plain_size(out.map.formula);
  if (out.graph.last_stage() != want.last_stage || out.graph.vertex_count() != want.vertices ||
      out.graph.edge_count() != want.edges)
    throw std::logic_error("plain reduction size differs from its closed form");
  return out;
}

Reduction gadgetize_2msp(const MultiStageGraph& g, const ReductionMap& map, const CnfFormula& f) {
  if (map.gadgets || map.original_clause_count != f.clauses.size() || g.vertex_count() != map.roles.size())
    throw std::invalid_argument("gadgetize_2msp expects the plain reduction of the same formula");

  const std::size_t width = max_clause_width(f);
  if (width > 3)
    throw Error(ErrorKind::UnsupportedClauseWidth, "clause of width " + std::to_string(width) + ", at most 3 allowed");
  const auto k = static_cast<std::uint32_t>(std::max<std::size_t>(width, 2));

  ReductionMap out_map;
  out_map.gadgets = true;
  out_map.original_clause_count = f.clauses.size();
  out_map.clause_width = k;
  out_map.formula.num_vars = f.num_vars;
  for (auto c : f.clauses) {
    while (c.size() < k) c.push_back(c.back());
    out_map.formula.clauses.push_back(std::move(c));
  }
  out_map.formula.clauses = pad_clauses(std::move(out_map.formula.clauses), 2);
  const auto& clauses = out_map.formula.clauses;
  const auto m = static_cast<std::uint32_t>(clauses.size());

  Layout layout;
  layout.add_stage({VertexRole{VertexKind::source}});
  layout.connect_all(layout.add_stage(clause_stage(clauses[0], 0)));
  for (std::uint32_t i = 1; i < m; ++i) {
    const auto aux = layout.add_stage(aux_stage(i - 1, k));
    if (k == 3) {
      // Aux vertex s stands for the index pair {0,1}, {0,2}, {1,2}: lower
      // vertex i feeds both pairs containing i, and each pair feeds its two
      // upper vertices.
      static constexpr std::uint32_t pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
      for (std::uint32_t lower = 0; lower < 3; ++lower)
        for (std::uint32_t s = 0; s < 3; ++s)
          if (pairs[s][0] == lower || pairs[s][1] == lower) layout.connect(aux, lower, s);
      const auto upper = layout.add_stage(clause_stage(clauses[i], i));
      for (std::uint32_t s = 0; s < 3; ++s)
        for (std::uint32_t j : pairs[s]) layout.connect(upper, s, j);
    } else {
      layout.connect_all(aux);
      layout.connect_all(layout.add_stage(clause_stage(clauses[i], i)));
    }
  }
  const auto tail_aux = layout.add_stage(aux_stage(m - 1, k));
  for (std::uint32_t s = 0; s < k; ++s) layout.connect(tail_aux, s, s);
  layout.connect_all(layout.add_stage({VertexRole{VertexKind::sink}}));

  auto out = finish(std::move(layout), std::move(out_map));
  const auto want = gadget_size(m, k);
  if (out.graph.last_stage() != want.last_stage || out.graph.vertex_count() != want.vertices ||
      out.graph.edge_count() != want.edges)
    throw std::logic_error("gadget reduction size differs from its closed form");
  return out;
}

Reduction reduce_full(const CnfFormula& f) {
  // The 2-MSP route only needs 2 clauses, so width is checked before the
  // plain route pads anything.
  if (max_clause_width(f) > 3)
    throw Error(ErrorKind::UnsupportedClauseWidth,
                "clause of width " + std::to_string(max_clause_width(f)) + ", at most 3 allowed");
  const auto plain = cnf_to_msp(f, false);
  return gadgetize_2msp(plain.graph, plain.map, f);
}

ReductionSize gadget_size(std::size_t m, std::uint32_t k) {
  const auto L = static_cast<std::uint32_t>(2 * m + 1);
  if (k == 3) return {L, 6 * m + 2, 12 * m - 3};
  return {L, 4 * m + 2, 8 * m - 2};
}

ReductionSize plain_size(const CnfFormula& padded) {
  const auto& cs = padded.clauses;
  ReductionSize s;
  s.last_stage = static_cast<std::uint32_t>(cs.size() + 1);
  s.vertices = 2;
  for (const auto& c : cs) s.vertices += c.size();
  s.edges = cs.front().size() + cs.back().size();
  for (std::size_t i = 0; i + 1 < cs.size(); ++i) s.edges += cs[i].size() * cs[i + 1].size();
  return s;
}

DecodedAssignment decode_assignment(const MultiStageGraph& g, const EdgeSet& p, const ReductionMap& map) {
  const auto path = as_path(g, p);
  if (!path || g.edge(path->front()).tail != g.source() || g.edge(path->back()).head != g.sink())
    throw Error(ErrorKind::NotAPath, "edge set is not an S -> D path");
  if (map.roles.size() != g.vertex_count()) throw std::invalid_argument("reduction map does not match the graph");

  DecodedAssignment out;
  out.values.assign(map.formula.num_vars, std::nullopt);
  for (EdgeId e : *path) {
    const auto& role = map.roles[g.edge(e).head.value];
    if (role.kind != VertexKind::literal) continue;
    out.chosen.push_back(role.literal);
    auto& slot = out.values[static_cast<std::size_t>(std::abs(role.literal)) - 1];
    const bool value = role.literal > 0;
    if (slot && *slot != value)
      throw Error(ErrorKind::NotAPath, "path picks both x" + std::to_string(std::abs(role.literal)) + " and its negation");
    slot = value;
  }
  return out;
}

}  // namespace msp
