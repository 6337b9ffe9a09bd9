#include <gtest/gtest.h>

#include <map>

#include "brute.hpp"
#include "msp/error.hpp"
#include "msp/generators.hpp"
#include "msp/kernel.hpp"
#include "msp/oracle.hpp"
#include "msp/reduction.hpp"

using namespace msp;
using namespace msp::testing;

namespace {

bool touches(const MultiStageGraph& g, EdgeId e, VertexId v) {
  return g.edge(e).tail == v || g.edge(e).head == v;
}

// Every literal vertex's label excludes every edge touching a vertex of the
// complementary literal.
void expect_complement_exclusion(const Reduction& red) {
  const auto& g = red.graph;
  for (std::uint32_t x = 0; x < g.vertex_count(); ++x) {
    const auto& rx = red.map.roles[x];
    if (rx.kind != VertexKind::literal) continue;
    for (std::uint32_t y = 0; y < g.vertex_count(); ++y) {
      const auto& ry = red.map.roles[y];
      if (ry.kind != VertexKind::literal || ry.literal != -rx.literal) continue;
      for (std::uint32_t e = 0; e < g.edge_count(); ++e)
        if (touches(g, EdgeId{e}, VertexId{y})) EXPECT_FALSE(g.label(VertexId{x}).contains(EdgeId{e}));
    }
  }
}

}  // namespace

TEST(CnfToMsp, ContradictionHasNoSigmaPath) {
  const CnfFormula f{1, {{1}, {-1}}};
  ASSERT_FALSE(sat_brute_force(f));
  const auto red = cnf_to_msp(f);
  EXPECT_EQ(red.graph.last_stage(), 5u);
  EXPECT_EQ(sigma_path_exists(red.graph), Answer::no);
}

TEST(CnfToMsp, SingleClausePaddedIsYes) {
  const CnfFormula f{1, {{1}}};
  const auto red = cnf_to_msp(f);
  EXPECT_EQ(red.map.formula.clauses.size(), 4u);
  EXPECT_EQ(red.map.original_clause_count, 1u);
  EXPECT_EQ(sigma_path_exists(red.graph), Answer::yes);
}

TEST(CnfToMsp, StrictAndEmptyInputsThrow) {
  try {
    cnf_to_msp(CnfFormula{1, {{1}}}, true);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::TooFewClauses);
  }
  EXPECT_THROW(cnf_to_msp(CnfFormula{1, {}}), Error);
}

TEST(CnfToMsp, ComplementEdgesExcluded) {
  expect_complement_exclusion(cnf_to_msp(gen_fn_mu(3)));
  const auto red = cnf_to_msp(gen_fn_mu(2));
  EXPECT_EQ(red.graph.label(red.graph.sink()), red.graph.all_edges());
}

TEST(CnfToMsp, SizeMatchesClosedForm) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto red = cnf_to_msp(gen_random_ksat(5, 3 + seed % 5, 3, seed));
    const auto want = plain_size(red.map.formula);
    EXPECT_EQ(red.graph.last_stage(), want.last_stage);
    EXPECT_EQ(red.graph.vertex_count(), want.vertices);
    EXPECT_EQ(red.graph.edge_count(), want.edges);
  }
}

TEST(Gadgetize, TwoClauseThreeSatIsLastStageFive) {
  const auto red = reduce_full(CnfFormula{4, {{1, 2, 3}, {-2, 3, 4}}});
  const auto& g = red.graph;
  EXPECT_EQ(g.last_stage(), 5u);
  EXPECT_EQ(std::vector<std::uint32_t>(g.stage_sizes().begin(), g.stage_sizes().end()),
            (std::vector<std::uint32_t>{1, 3, 3, 3, 3, 1}));
  EXPECT_TRUE(validate_2msp(g).empty());
  for (std::uint32_t i = 0; i < 3; ++i) {
    EXPECT_EQ(red.map.roles[g.vertex_at(2, i).value].kind, VertexKind::auxiliary);
    EXPECT_EQ(red.map.roles[g.vertex_at(4, i).value].kind, VertexKind::auxiliary);
  }
}

TEST(Gadgetize, AuxInDegrees) {
  const auto red = reduce_full(gen_fn_mu(3));
  const auto& g = red.graph;
  const auto L = g.last_stage();
  for (std::uint32_t v = 0; v < g.vertex_count(); ++v) {
    if (red.map.roles[v].kind != VertexKind::auxiliary) continue;
    const auto want = g.stage_of(VertexId{v}) == L - 1 ? 1u : 2u;
    EXPECT_EQ(g.in_degree(VertexId{v}), want) << g.vertex_name(VertexId{v});
  }
}

TEST(Gadgetize, EveryLowerReachesEveryUpperInTwoSteps) {
  for (const auto& f : {gen_fn_mu(3), gen_fn_mu(2)}) {
    const auto red = reduce_full(f);
    const auto& g = red.graph;
    for (std::uint32_t s = 1; s + 2 < g.last_stage(); s += 2) {
      for (std::uint32_t i = 0; i < g.stage_sizes()[s]; ++i)
        for (std::uint32_t j = 0; j < g.stage_sizes()[s + 2]; ++j) {
          bool found = false;
          for (auto e1 : g.out_edges(g.vertex_at(s, i)))
            found |= g.find_edge(g.edge(e1).head, g.vertex_at(s + 2, j)).has_value();
          EXPECT_TRUE(found) << s << " " << i << " " << j;
        }
    }
  }
}

TEST(Gadgetize, SizesMatchClosedForm) {
  for (std::uint32_t m = 2; m <= 9; ++m) {
    const auto red3 = reduce_full(gen_random_ksat(6, m, 3, m));
    const auto want3 = gadget_size(m, 3);
    EXPECT_EQ(red3.graph.last_stage(), want3.last_stage);
    EXPECT_EQ(red3.graph.vertex_count(), want3.vertices);
    EXPECT_EQ(red3.graph.edge_count(), want3.edges);
    const auto red2 = reduce_full(gen_random_ksat(6, m, 2, m));
    const auto want2 = gadget_size(m, 2);
    EXPECT_EQ(red2.graph.vertex_count(), want2.vertices);
    EXPECT_EQ(red2.graph.edge_count(), want2.edges);
  }
  EXPECT_EQ(gadget_size(8, 3), (ReductionSize{17, 50, 93}));
  EXPECT_EQ(gadget_size(4, 2), (ReductionSize{9, 18, 30}));
}

TEST(Gadgetize, WideClausesRejected) {
  try {
    reduce_full(CnfFormula{4, {{1, 2, 3, 4}, {-1}}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnsupportedClauseWidth);
  }
}

TEST(Gadgetize, ShortClausesArePadded) {
  const auto red = reduce_full(CnfFormula{3, {{1, 2, 3}, {-1}}});
  EXPECT_EQ(red.map.clause_width, 3u);
  EXPECT_EQ(red.map.formula.clauses[1], (std::vector<int>{-1, -1, -1}));
  EXPECT_TRUE(validate_2msp(red.graph).empty());
  EXPECT_EQ(sigma_path_exists(red.graph), Answer::yes);
}

TEST(ReduceFull, F2IsTwoSatWithFourClauses) {
  const auto red = reduce_full(gen_fn_mu(2));
  EXPECT_EQ(red.map.clause_width, 2u);
  EXPECT_EQ(red.graph.last_stage(), 9u);
  EXPECT_EQ(zh_solve(red.graph).decision, Decision::no);
}

TEST(ReduceFull, StructuralChecks) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto red = reduce_full(gen_random_ksat(5, 2 + seed % 6, 2 + seed % 2, seed));
    EXPECT_TRUE(validate_2msp(red.graph).empty()) << seed;
    EXPECT_TRUE(check_properties(preprocess(red.graph)).empty()) << seed;
    expect_complement_exclusion(red);
  }
}

TEST(ReduceFull, SatisfiableRandomThreeSatHasSigmaPath) {
  int checked = 0;
  for (std::uint64_t seed = 0; checked < 5 && seed < 100; ++seed) {
    const auto f = gen_random_ksat(5, 10, 3, seed);
    if (!sat_brute_force(f)) continue;
    ++checked;
    EXPECT_EQ(sigma_path_exists(reduce_full(f).graph), Answer::yes) << seed;
  }
  EXPECT_EQ(checked, 5);
}

TEST(ReduceFull, SoundAtDeskScale) {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    const std::uint32_t n = 3 + seed % 8;
    const std::uint32_t m = 2 + seed % 7;
    const auto f = gen_random_ksat(n, m, 2 + seed % 2, seed);
    const auto red = reduce_full(f);
    EXPECT_EQ(sat_brute_force(f), sigma_path_exists(red.graph) == Answer::yes) << seed;
  }
}

TEST(ReduceFull, PathCountMatchesRouteCount) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto f = gen_random_ksat(4, 2 + seed % 3, 2 + seed % 2, seed);
    const auto red = reduce_full(f);
    EXPECT_EQ(enumerate_sigma_paths(red.graph).size(), expected_reduced_path_count(red.map)) << seed;
  }
}

TEST(Decode, PositiveUnit) {
  const auto red = reduce_full(CnfFormula{1, {{1}, {1}}});
  const auto paths = enumerate_sigma_paths(red.graph);
  ASSERT_FALSE(paths.empty());
  const auto d = decode_assignment(red.graph, paths[0], red.map);
  ASSERT_EQ(d.values.size(), 1u);
  EXPECT_EQ(d.values[0], std::optional<bool>(true));
}

TEST(Decode, PathsGiveSatisfyingComplementFreeAssignments) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto f = gen_random_ksat(5, 4, 3, seed);
    const auto red = reduce_full(f);
    for (const auto& p : enumerate_sigma_paths(red.graph)) {
      const auto d = decode_assignment(red.graph, p, red.map);
      std::map<int, bool> seen;
      for (int lit : d.chosen) EXPECT_FALSE(seen.count(-lit));
      for (int lit : d.chosen) seen[lit] = true;
      // Unassigned variables are filled with false and with true.
      for (bool fill : {false, true}) {
        std::uint64_t bits = 0;
        for (std::size_t i = 0; i < d.values.size(); ++i)
          if (d.values[i].value_or(fill)) bits |= std::uint64_t{1} << i;
        EXPECT_TRUE(evaluate(f, bits)) << seed;
      }
    }
  }
}

TEST(Decode, NotAPath) {
  const auto red = reduce_full(gen_fn_mu(2));
  try {
    decode_assignment(red.graph, EdgeSet::from_ids(red.graph.edge_count(), {EdgeId{0}}), red.map);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotAPath);
  }
}
