#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "msp/cnf.hpp"
#include "msp/graph.hpp"

namespace msp {

/// Seeded generator with platform-independent draws: std::mt19937_64 output
/// is fixed by the standard, and every derived draw below uses only integer
/// rejection sampling or a 53-bit mantissa.
class Rng {
 public:
  static constexpr std::string_view kAlgorithm = "mt19937_64/rejection-v1";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, n); n > 0.
  std::uint64_t below(std::uint64_t n);
  /// Uniform in [lo, hi].
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }
  /// Uniform in [0, 1).
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  bool bernoulli(double p) { return unit() < p; }
  bool coin() { return (next() >> 63) != 0; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

/// For every subset T of {1..n}, ordered by size then lexicographically, the
/// clause with x_i negated exactly for i in T (literals in variable order).
/// 2^n clauses, minimal unsatisfiable.
CnfFormula gen_fn_mu(std::uint32_t n);

/// m clauses of k distinct variables (sorted) with uniform polarities.
/// Requires n >= k >= 1.
CnfFormula gen_random_ksat(std::uint32_t n, std::uint32_t m, std::uint32_t k, std::uint64_t seed);

/// holes + 1 pigeons; variable p*holes + h + 1 puts pigeon p in hole h.
/// One at-least-one clause per pigeon, then the pairwise exclusions per hole.
CnfFormula gen_pigeonhole(std::uint32_t holes);

/// Rewrites clauses wider than 3 into satisfiability-equivalent 3-literal
/// chains over fresh variables.
CnfFormula split_clauses(const CnfFormula& f);

struct MspGenOptions {
  /// Sample labels from [E]_S^v, pre-process them, then put lambda(D) = E
  /// back. When false, labels are sampled from all of E and left as drawn
  /// (only the first-stage and sink label items are enforced).
  bool repair = true;
  std::uint32_t max_attempts = 200;
};

/// Random 2-MSP instance with stages 0..stage_count, at most width vertices
/// per stage and label density in [0, 1]. Throws Error{GenerationFailed}.
MultiStageGraph gen_random_msp(std::uint32_t stage_count, std::uint32_t width, double density, std::uint64_t seed,
                               const MspGenOptions& options = {});

}  // namespace msp
