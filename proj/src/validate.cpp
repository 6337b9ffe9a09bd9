#include <string>

#include "msp/graph.hpp"

namespace msp {

namespace {

Violation vertex_violation(const MultiStageGraph& g, std::string rule, VertexId v, const std::string& what) {
  return Violation{std::move(rule), g.vertex_name(v) + ": " + what, v, std::nullopt};
}

}  // namespace

std::vector<Violation> validate_2msp(const MultiStageGraph& g) {
  std::vector<Violation> out;
  const auto L = g.last_stage();
  const auto S = g.source();
  const auto D = g.sink();
  const auto n = static_cast<std::uint32_t>(g.vertex_count());

  // (1) every vertex lies on some S - ... - D path.
  for (std::uint32_t i = 0; i < n; ++i) {
    const VertexId v{i};
    if (v != D && g.out_degree(v) == 0) out.push_back(vertex_violation(g, "2msp.1", v, "out-degree 0"));
    if (v != S && g.in_degree(v) == 0) out.push_back(vertex_violation(g, "2msp.1", v, "in-degree 0"));
  }

  // (2) bounded in-degree, and single in-degree right below the sink.
  for (std::uint32_t i = 1; i + 1 < n; ++i) {
    const VertexId v{i};
    const auto d = g.in_degree(v);
    if (d > 2) out.push_back(vertex_violation(g, "2msp.2", v, "in-degree " + std::to_string(d) + " > 2"));
    if (g.stage_of(v) == L - 1 && d != 1)
      out.push_back(vertex_violation(g, "2msp.2", v, "stage L-1 vertex with in-degree " + std::to_string(d)));
  }

  // (3) below a single-in-degree vertex (stages 2..L-1) no multi-in-degree
  // vertex may follow, D excepted. clean[v]: every descendant other than D
  // has in-degree <= 1.
  {
    std::vector<char> clean(n, 1);
    std::vector<VertexId> witness(n, VertexId{0});
    for (std::uint32_t i = n; i-- > 0;) {
      const VertexId v{i};
      for (EdgeId e : g.out_edges(v)) {
        const VertexId c = g.edge(e).head;
        if (c == D) continue;
        if (g.in_degree(c) > 1) {
          if (clean[i]) witness[i] = c;
          clean[i] = 0;
        } else if (!clean[c.value]) {
          if (clean[i]) witness[i] = witness[c.value];
          clean[i] = 0;
        }
      }
    }
    for (std::uint32_t i = 1; i + 1 < n; ++i) {
      const VertexId v{i};
      const auto l = g.stage_of(v);
      if (l > 1 && l < L && g.in_degree(v) <= 1 && !clean[i])
        out.push_back(vertex_violation(g, "2msp.3", v,
                                       "single in-degree, but descendant " + g.vertex_name(witness[i]) +
                                           " has multiple in-edges"));
    }
  }

  // (4) wide stages carry at most two multi-in-degree vertices.
  for (std::uint32_t l = 2; l < L; ++l) {
    if (g.stage_sizes()[l] <= 3) continue;
    std::uint32_t multi = 0;
    for (std::uint32_t k = 0; k < g.stage_sizes()[l]; ++k)
      if (g.in_degree(g.vertex_at(l, k)) >= 2) ++multi;
    if (multi > 2)
      out.push_back(Violation{"2msp.4",
                              "stage " + std::to_string(l) + " has " + std::to_string(multi) +
                                  " multi-in-degree vertices among " + std::to_string(g.stage_sizes()[l]),
                              std::nullopt, std::nullopt});
  }

  // (5) out-degree never exceeds in-degree on stages 1 < l < L-2.
  for (std::uint32_t i = 1; i + 1 < n; ++i) {
    const VertexId v{i};
    const auto l = g.stage_of(v);
    if (l > 1 && l + 2 < L && g.out_degree(v) > g.in_degree(v))
      out.push_back(vertex_violation(g, "2msp.5", v,
                                     "out-degree " + std::to_string(g.out_degree(v)) + " > in-degree " +
                                         std::to_string(g.in_degree(v))));
  }

  // (6) lambda(D) = E and each first-stage vertex admits its own in-edge.
  if (!(g.label(D) == g.all_edges())) {
    const auto missing = g.all_edges() - g.label(D);
    out.push_back(Violation{"2msp.6",
                            "lambda(D) misses " + std::to_string(missing.count()) + " edge(s), first " +
                                g.edge_name(missing.to_vector().front()),
                            D, missing.to_vector().front()});
  }
  for (std::uint32_t k = 0; k < g.stage_sizes()[1]; ++k) {
    const VertexId a = g.vertex_at(1, k);
    const auto e = g.find_edge(S, a);
    if (e && !g.label(a).contains(*e))
      out.push_back(Violation{"2msp.6", g.vertex_name(a) + ": own edge from S not in its label", a, *e});
  }
  return out;
}

std::vector<Violation> check_properties(const MultiStageGraph& g) {
  std::vector<Violation> out;
  const auto n = static_cast<std::uint32_t>(g.vertex_count());
  const auto S = g.source();
  PathScratch scratch(g);

  for (std::uint32_t i = 1; i < n; ++i) {
    const VertexId v{i};
    const auto l = g.stage_of(v);
    const EdgeSet& label = g.label(v);

    // Property 1: lambda(v) within [E]_S^v.
    EdgeSet cone = g.all_edges();
    scratch.restrict_in_place(cone, S, v);
    (label - cone).for_each([&](EdgeId e) {
      out.push_back(Violation{"property.1", g.vertex_name(v) + ": " + g.edge_name(e) + " not on any S-path to it",
                              v, e});
    });

    // Property 2: <a,b,2> in lambda(v) needs <S,a,1> in lambda(v).
    const auto [lo2, hi2] = g.stage_edge_range(2);
    label.for_each_in(lo2, hi2, [&](EdgeId e) {
      const auto first = g.find_edge(S, g.edge(e).tail);
      if (first && !label.contains(*first))
        out.push_back(Violation{"property.2",
                                g.vertex_name(v) + ": holds " + g.edge_name(e) + " without " + g.edge_name(*first),
                                v, e});
    });

    // Property 3: the part of lambda(v) below stage l is inherited from predecessors.
    if (l > 1) {
      EdgeSet inherited = g.empty_set();
      for (EdgeId e : g.in_edges(v)) inherited |= g.label(g.edge(e).tail);
      const EdgeSet below = slice(g, label, 1, l - 1);
      (below - inherited).for_each([&](EdgeId e) {
        out.push_back(Violation{"property.3",
                                g.vertex_name(v) + ": " + g.edge_name(e) + " absent from every predecessor label",
                                v, e});
      });
    }
  }
  return out;
}

}  // namespace msp
