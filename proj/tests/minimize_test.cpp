#include <gtest/gtest.h>

#include "brute.hpp"
#include "msp/error.hpp"
#include "msp/generators.hpp"
#include "msp/kernel.hpp"
#include "msp/minimize.hpp"
#include "msp/oracle.hpp"
#include "msp/reduction.hpp"

using namespace msp;
using namespace msp::testing;

namespace {

bool zh_says_no(const CnfFormula& f) { return zh_solve(reduce_full(f).graph).decision == Decision::no; }

}  // namespace

TEST(MinimizeCnf, ZhNoOnF3GivesAOneMinimalCore) {
  const auto f3 = gen_fn_mu(3);
  MinimizeStats st;
  const auto core = minimize_cnf(f3, zh_says_no, &st);
  EXPECT_LE(core.clauses.size(), f3.clauses.size());
  EXPECT_TRUE(zh_says_no(core));
  EXPECT_FALSE(sat_brute_force(core));
  EXPECT_GT(st.predicate_calls, 0u);
  for (std::size_t i = 0; i < core.clauses.size(); ++i) {
    auto smaller = core;
    smaller.clauses.erase(smaller.clauses.begin() + static_cast<std::ptrdiff_t>(i));
    bool holds = false;
    try {
      holds = zh_says_no(smaller);
    } catch (const std::exception&) {
    }
    EXPECT_FALSE(holds) << i;
  }
}

TEST(MinimizeCnf, UnsatPredicateKeepsAnMuCore) {
  const auto f = gen_fn_mu(3);
  const auto core = minimize_cnf(f, [](const CnfFormula& g) { return !sat_brute_force(g); });
  EXPECT_FALSE(sat_brute_force(core));
  for (std::size_t i = 0; i < core.clauses.size(); ++i) {
    auto smaller = core;
    smaller.clauses.erase(smaller.clauses.begin() + static_cast<std::ptrdiff_t>(i));
    EXPECT_TRUE(sat_brute_force(smaller));
  }
}

TEST(MinimizeCnf, PredicateMustHoldAndBeStable) {
  const auto f = gen_fn_mu(2);
  try {
    minimize_cnf(f, [](const CnfFormula&) { return false; });
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::PredicateNotHolding);
  }
  int calls = 0;
  try {
    minimize_cnf(f, [&](const CnfFormula&) { return ++calls % 2 == 1; });
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::PredicateFlaky);
  }
}

TEST(FixVariable, RenumbersAndDrops) {
  const CnfFormula f{3, {{1, 2}, {-1, 3}, {-2, -3}}};
  const auto g = fix_variable(f, 1, true);
  ASSERT_TRUE(g.has_value());
  // x1 = true: first clause goes, -1 drops from the second, x2 -> x1, x3 -> x2.
  EXPECT_EQ(g->num_vars, 2u);
  EXPECT_EQ(g->clauses, (std::vector<std::vector<int>>{{2}, {-1, -2}}));
  EXPECT_FALSE(fix_variable(CnfFormula{1, {{1}}}, 1, false).has_value());
}

TEST(RemoveEdge, ShiftsLaterIds) {
  std::vector<EdgeSpec> edges{{0, 0, 1}, {0, 1, 1}};
  for (std::uint32_t s = 2; s <= 4; ++s) edges.insert(edges.end(), {{0, 0, s}, {1, 1, s}});
  edges.insert(edges.end(), {{0, 0, 5}, {1, 0, 5}});
  const auto g = with_full_labels(MultiStageGraph::build_unlabeled({1, 2, 2, 2, 2, 1}, edges));
  const auto h = remove_edge(g, EdgeId{3});
  EXPECT_EQ(h.edge_count(), g.edge_count() - 1);
  EXPECT_EQ(h.edge(EdgeId{3}), g.edge(EdgeId{4}));
  EXPECT_EQ(h.label(h.sink()).count(), h.edge_count());
}

TEST(MinimizeMsp, AlwaysTrueChainKeepsTheSkeleton) {
  const auto chain = full_label_chain(5);
  const auto small = minimize_msp(chain, [](const MultiStageGraph&) { return true; });
  // No edge can go; only label entries outside what the 2-MSP items force.
  EXPECT_EQ(small.edge_count(), 5u);
  EXPECT_TRUE(validate_2msp(small).empty());
  EXPECT_EQ(small.label(small.sink()), small.all_edges());
  EXPECT_EQ(ids_of(small.label(VertexId{1})), (IdSet{0}));
  for (std::uint32_t v = 2; v < 5; ++v) EXPECT_TRUE(ids_of(small.label(VertexId{v})).empty() ||
                                                    ids_of(small.label(VertexId{v})) == IdSet{0}) << v;
}

TEST(MinimizeMsp, EdgeCountPredicateStopsAtSeven) {
  const auto g = cnf_to_msp(gen_fn_mu(2)).graph;
  ASSERT_GT(g.edge_count(), 7u);
  ASSERT_FALSE(validate_2msp(g).empty());
  const auto small = minimize_msp(g, [](const MultiStageGraph& h) { return h.edge_count() >= 7; });
  EXPECT_EQ(small.edge_count(), 7u);
}

TEST(MinimizeMsp, PredicateHoldsOnResult) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto g = gen_random_msp(6, 3, 0.9, seed);
    if (sigma_path_exists(g) != Answer::yes) continue;
    const auto pred = [](const MultiStageGraph& h) { return sigma_path_exists(h) == Answer::yes; };
    const auto small = minimize_msp(g, pred);
    EXPECT_TRUE(pred(small));
    EXPECT_TRUE(validate_2msp(small).empty());
    EXPECT_LE(small.edge_count(), g.edge_count());
  }
}
