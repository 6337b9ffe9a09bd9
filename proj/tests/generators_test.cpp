#include <gtest/gtest.h>

#include <set>

#include "msp/error.hpp"
#include "msp/generators.hpp"
#include "msp/kernel.hpp"
#include "msp/oracle.hpp"

using namespace msp;

TEST(Rng, FixedStream) {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next(), b.next());
  // std::mt19937_64 default-seeded 10000th output is fixed by the standard.
  std::mt19937_64 ref;
  ref.discard(9999);
  EXPECT_EQ(ref(), 9981545732273789042ull);
}

TEST(Rng, BelowStaysInRange) {
  Rng r(1);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 1000; ++i) {
    const auto x = r.below(7);
    ASSERT_LT(x, 7u);
    seen.insert(x);
  }
  EXPECT_EQ(seen.size(), 7u);
  for (int i = 0; i < 1000; ++i) {
    const double u = r.unit();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(FnMu, TwoVariables) {
  const auto f = gen_fn_mu(2);
  EXPECT_EQ(f.num_vars, 2u);
  EXPECT_EQ(f.clauses, (std::vector<std::vector<int>>{{1, 2}, {-1, 2}, {1, -2}, {-1, -2}}));
}

TEST(FnMu, AllPatternsOnceAndUnsat) {
  for (std::uint32_t n : {2u, 3u, 4u}) {
    const auto f = gen_fn_mu(n);
    ASSERT_EQ(f.clauses.size(), std::size_t{1} << n);
    std::set<std::vector<int>> uniq(f.clauses.begin(), f.clauses.end());
    EXPECT_EQ(uniq.size(), f.clauses.size());
    for (const auto& c : f.clauses) EXPECT_EQ(c.size(), n);
    EXPECT_FALSE(sat_brute_force(f));
  }
}

TEST(FnMu, MinimalUnderClauseDeletion) {
  for (std::uint32_t n : {2u, 3u}) {
    const auto f = gen_fn_mu(n);
    for (std::size_t i = 0; i < f.clauses.size(); ++i) {
      auto g = f;
      g.clauses.erase(g.clauses.begin() + static_cast<std::ptrdiff_t>(i));
      EXPECT_TRUE(sat_brute_force(g));
    }
  }
}

TEST(RandomKsat, ShapeAndSeedStability) {
  EXPECT_TRUE(gen_random_ksat(3, 0, 3, 1).clauses.empty());
  EXPECT_TRUE(sat_brute_force(gen_random_ksat(3, 0, 3, 1)));
  const auto a = gen_random_ksat(8, 20, 3, 99);
  EXPECT_EQ(a, gen_random_ksat(8, 20, 3, 99));
  EXPECT_NE(a, gen_random_ksat(8, 20, 3, 100));
  for (const auto& c : a.clauses) {
    ASSERT_EQ(c.size(), 3u);
    EXPECT_LT(std::abs(c[0]), std::abs(c[1]));
    EXPECT_LT(std::abs(c[1]), std::abs(c[2]));
    EXPECT_LE(std::abs(c[2]), 8);
  }
}

TEST(RandomKsat, PhaseTransitionIsMixed) {
  int sat = 0;
  const int trials = 200;
  for (int s = 0; s < trials; ++s) sat += sat_brute_force(gen_random_ksat(6, 26, 3, static_cast<std::uint64_t>(s)));
  EXPECT_GT(sat, 0);
  EXPECT_LT(sat, trials);
}

TEST(Pigeonhole, Unsat) {
  const auto p1 = gen_pigeonhole(1);
  EXPECT_EQ(p1.num_vars, 2u);
  EXPECT_FALSE(sat_brute_force(p1));
  EXPECT_FALSE(sat_brute_force(gen_pigeonhole(2)));
  const auto p3 = gen_pigeonhole(3);
  EXPECT_EQ(p3.num_vars, 12u);
  EXPECT_EQ(p3.clauses.size(), 4u + 3u * 6u);
  EXPECT_FALSE(sat_brute_force(p3));
}

TEST(SplitClauses, PreservesSatisfiability) {
  const auto php = split_clauses(gen_pigeonhole(4));
  EXPECT_LE(max_clause_width(php), 3u);
  // One fresh variable per 4-literal pigeon clause.
  EXPECT_EQ(php.num_vars, 20u + 5u);
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto f = gen_random_ksat(7, 4 + seed % 4, 5, seed);
    const auto g = split_clauses(f);
    EXPECT_LE(max_clause_width(g), 3u);
    EXPECT_EQ(sat_brute_force(f), sat_brute_force(g)) << seed;
  }
}

TEST(RandomMsp, AlwaysTwoMspAndPreprocessed) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto g = gen_random_msp(5 + seed % 5, 1 + seed % 4, static_cast<double>(seed % 11) / 10.0, seed);
    EXPECT_TRUE(validate_2msp(g).empty()) << seed;
    EXPECT_TRUE(check_properties(preprocess(g)).empty()) << seed;
    EXPECT_LE(*std::max_element(g.stage_sizes().begin(), g.stage_sizes().end()), std::max(1u, 1 + static_cast<std::uint32_t>(seed % 4)));
  }
}

TEST(RandomMsp, FullDensityIsYes) {
  for (std::uint64_t seed = 0; seed < 30; ++seed)
    EXPECT_EQ(sigma_path_exists(gen_random_msp(6, 3, 1.0, seed)), Answer::yes) << seed;
}

TEST(RandomMsp, ZeroDensityIsMostlyNo) {
  int no = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) no += sigma_path_exists(gen_random_msp(7, 3, 0.0, seed)) == Answer::no;
  EXPECT_GT(no, 25);
}

TEST(RandomMsp, SeedStable) {
  EXPECT_EQ(gen_random_msp(8, 4, 0.7, 5), gen_random_msp(8, 4, 0.7, 5));
  EXPECT_EQ(gen_random_msp(8, 4, 0.7, 5, MspGenOptions{false}), gen_random_msp(8, 4, 0.7, 5, MspGenOptions{false}));
}

TEST(RandomMsp, BadParameters) {
  EXPECT_THROW(gen_random_msp(4, 3, 0.5, 1), std::exception);
  EXPECT_THROW(gen_random_msp(6, 3, 1.5, 1), std::exception);
}
