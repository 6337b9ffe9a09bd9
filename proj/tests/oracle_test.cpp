#include <gtest/gtest.h>

#include <set>

#include "brute.hpp"
#include "msp/error.hpp"
#include "msp/generators.hpp"
#include "msp/oracle.hpp"
#include "msp/reduction.hpp"

using namespace msp;
using namespace msp::testing;

TEST(SigmaPathExists, FullLabelChainIsYes) { EXPECT_EQ(sigma_path_exists(full_label_chain(5)), Answer::yes); }

TEST(SigmaPathExists, EmptySinkLabelIsNo) {
  const auto chain = full_label_chain(5);
  std::vector<EdgeSet> labels(chain.labels().begin(), chain.labels().end());
  labels.back() = chain.empty_set();
  EXPECT_EQ(sigma_path_exists(chain.with_labels(labels)), Answer::no);
}

TEST(SigmaPathExists, F3IsNo) {
  OracleStats st;
  EXPECT_EQ(sigma_path_exists(reduce_full(gen_fn_mu(3)).graph, {}, &st), Answer::no);
  EXPECT_GT(st.nodes, 0u);
}

TEST(SigmaPathExists, TinyBudgetGivesUnknown) {
  const auto g = reduce_full(gen_fn_mu(3)).graph;
  EXPECT_EQ(sigma_path_exists(g, OracleBudget{3, 30000}), Answer::unknown);
}

TEST(Enumerate, ChainHasOnePath) {
  const auto g = full_label_chain(6);
  const auto paths = enumerate_sigma_paths(g);
  ASSERT_EQ(paths.size(), 1u);
  EXPECT_EQ(paths[0], g.all_edges());
}

TEST(Enumerate, TwoDisjointChains) {
  std::vector<EdgeSpec> edges{{0, 0, 1}, {0, 1, 1}};
  for (std::uint32_t s = 2; s <= 4; ++s) edges.insert(edges.end(), {{0, 0, s}, {1, 1, s}});
  edges.insert(edges.end(), {{0, 0, 5}, {1, 0, 5}});
  const auto g = with_full_labels(MultiStageGraph::build_unlabeled({1, 2, 2, 2, 2, 1}, edges));
  EXPECT_EQ(enumerate_sigma_paths(g).size(), 2u);
}

TEST(Enumerate, SatisfiableTwoClauseReductionMatchesRouteCount) {
  const CnfFormula f{3, {{1, 2, 3}, {-1, 2, -3}}};
  const auto red = reduce_full(f);
  const auto paths = enumerate_sigma_paths(red.graph);
  EXPECT_EQ(paths.size(), expected_reduced_path_count(red.map));
  // Picks (1,-1) and (3,-3) are excluded. Of the 7 remaining slot pairs only
  // (2,2) uses the same slot, which has two aux routes.
  EXPECT_EQ(paths.size(), 8u);
}

TEST(Enumerate, BudgetExceededThrows) {
  const auto g = reduce_full(gen_fn_mu(3)).graph;
  try {
    enumerate_sigma_paths(g, OracleBudget{5, 30000});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BudgetExceeded);
  }
}

TEST(Enumerate, AgreesWithExistenceAndUnprunedSearch) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto g = gen_random_msp(5 + seed % 3, 3, 0.5 + 0.5 * static_cast<double>(seed % 3) / 2.0, seed,
                                  MspGenOptions{false});
    const auto paths = enumerate_sigma_paths(g);
    EXPECT_EQ(sigma_path_exists(g) == Answer::yes, !paths.empty()) << seed;
    std::set<IdSet> got;
    for (const auto& p : paths) {
      EXPECT_TRUE(is_sigma_path(g, p));
      got.insert(ids_of(p));
    }
    EXPECT_EQ(got, sigma_paths_unpruned(g)) << seed;
  }
}

TEST(SatBruteForce, FnFamilyIsUnsat) {
  EXPECT_FALSE(sat_brute_force(gen_fn_mu(2)));
  EXPECT_FALSE(sat_brute_force(gen_fn_mu(3)));
}

TEST(SatBruteForce, F3MinusAnyClauseIsSat) {
  const auto f = gen_fn_mu(3);
  for (std::size_t i = 0; i < f.clauses.size(); ++i) {
    auto g = f;
    g.clauses.erase(g.clauses.begin() + static_cast<std::ptrdiff_t>(i));
    EXPECT_TRUE(sat_brute_force(g)) << i;
    // Exactly the assignment falsifying the dropped clause survives.
    EXPECT_EQ(count_models(g), 1u);
  }
}

TEST(SatBruteForce, EmptyClauseListIsSat) {
  EXPECT_TRUE(sat_brute_force(CnfFormula{0, {}}));
  EXPECT_TRUE(sat_brute_force(CnfFormula{3, {}}));
  EXPECT_EQ(count_models(CnfFormula{3, {}}), 8u);
}

TEST(SatBruteForce, TooManyVariables) {
  try {
    sat_brute_force(CnfFormula{25, {{1}}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::TooManyVariables);
  }
}
