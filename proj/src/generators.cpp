#include "msp/generators.hpp"

#include <algorithm>
#include <stdexcept>

#include "msp/error.hpp"
#include "msp/kernel.hpp"

namespace msp {

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("Rng::below(0)");
  // Reject the top partial block so every residue is equally likely.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n + 1) % n;
  for (;;) {
    const std::uint64_t x = next();
    if (x <= limit) return x % n;
  }
}

CnfFormula gen_fn_mu(std::uint32_t n) {
  if (n == 0 || n > 20) throw std::invalid_argument("gen_fn_mu needs 1 <= n <= 20");
  std::vector<std::vector<std::uint32_t>> subsets;
  for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
    std::vector<std::uint32_t> t;
    for (std::uint32_t i = 0; i < n; ++i)
      if (mask & (1U << i)) t.push_back(i + 1);
    subsets.push_back(std::move(t));
  }
  std::sort(subsets.begin(), subsets.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  CnfFormula f{n, {}};
  for (const auto& t : subsets) {
    std::vector<int> clause;
    for (std::uint32_t i = 1; i <= n; ++i) {
      const bool negated = std::find(t.begin(), t.end(), i) != t.end();
      clause.push_back(negated ? -static_cast<int>(i) : static_cast<int>(i));
    }
    f.clauses.push_back(std::move(clause));
  }
  return f;
}

CnfFormula gen_random_ksat(std::uint32_t n, std::uint32_t m, std::uint32_t k, std::uint64_t seed) {
  if (k == 0 || n < k) throw std::invalid_argument("gen_random_ksat needs n >= k >= 1");
  Rng rng(seed);
  CnfFormula f{n, {}};
  std::vector<int> vars(n);
  for (std::uint32_t i = 0; i < n; ++i) vars[i] = static_cast<int>(i + 1);
  for (std::uint32_t c = 0; c < m; ++c) {
    // Partial Fisher-Yates: the first k slots become a uniform k-subset.
    for (std::uint32_t i = 0; i < k; ++i) std::swap(vars[i], vars[i + rng.below(n - i)]);
    std::vector<int> clause(vars.begin(), vars.begin() + k);
    std::sort(clause.begin(), clause.end());
    for (int& lit : clause)
      if (rng.coin()) lit = -lit;
    f.clauses.push_back(std::move(clause));
  }
  return f;
}

CnfFormula gen_pigeonhole(std::uint32_t holes) {
  if (holes == 0) throw std::invalid_argument("gen_pigeonhole needs holes >= 1");
  const std::uint32_t pigeons = holes + 1;
  const auto var = [&](std::uint32_t p, std::uint32_t h) { return static_cast<int>(p * holes + h + 1); };
  CnfFormula f{pigeons * holes, {}};
  for (std::uint32_t p = 0; p < pigeons; ++p) {
    std::vector<int> clause;
    for (std::uint32_t h = 0; h < holes; ++h) clause.push_back(var(p, h));
    f.clauses.push_back(std::move(clause));
  }
  for (std::uint32_t h = 0; h < holes; ++h)
    for (std::uint32_t p = 0; p < pigeons; ++p)
      for (std::uint32_t q = p + 1; q < pigeons; ++q) f.clauses.push_back({-var(p, h), -var(q, h)});
  return f;
}

CnfFormula split_clauses(const CnfFormula& f) {
  CnfFormula out{f.num_vars, {}};
  for (const auto& c : f.clauses) {
    if (c.size() <= 3) {
      out.clauses.push_back(c);
      continue;
    }
    // (l1 l2 y1) (-y1 l3 y2) ... (-y_t l_{w-1} l_w)
    int link = static_cast<int>(++out.num_vars);
    out.clauses.push_back({c[0], c[1], link});
    for (std::size_t i = 2; i + 2 < c.size(); ++i) {
      const int next = static_cast<int>(++out.num_vars);
      out.clauses.push_back({-link, c[i], next});
      link = next;
    }
    out.clauses.push_back({-link, c[c.size() - 2], c[c.size() - 1]});
  }
  return out;
}

namespace {

struct Shape {
  std::vector<std::uint32_t> sizes;
  std::vector<EdgeSpec> edges;
};

struct Slot {
  std::uint32_t in = 0;
  bool locked = false;
};

/// One attempt at a 2-MSP structure. Vertices at stage >= 2 with a single
/// in-edge are locked: everything below them keeps a single in-edge, and on
/// the middle stages out-degree never exceeds in-degree.
std::optional<Shape> try_shape(std::uint32_t L, std::uint32_t width, Rng& rng) {
  Shape shape;
  shape.sizes.push_back(1);
  const auto first = static_cast<std::uint32_t>(rng.between(1, width));
  shape.sizes.push_back(first);
  std::vector<Slot> prev(first, Slot{1, false});
  for (std::uint32_t h = 0; h < first; ++h) shape.edges.push_back({0, h, 1});

  for (std::uint32_t l = 2; l < L; ++l) {
    const std::uint32_t pl = l - 1;
    const bool capped = pl >= 2 && pl + 2 < L;
    std::optional<std::vector<Slot>> next;
    std::vector<EdgeSpec> stage_edges;
    for (int attempt = 0; attempt < 50 && !next; ++attempt) {
      // Out-stubs of the previous stage, at least one per vertex.
      std::vector<std::uint32_t> locked_stubs;
      std::vector<std::uint32_t> open_stubs;
      for (std::uint32_t u = 0; u < prev.size(); ++u) {
        const std::uint32_t cap = capped ? prev[u].in : 2;
        const std::uint32_t out = cap >= 2 && rng.coin() ? 2 : 1;
        for (std::uint32_t i = 0; i < out; ++i) (prev[u].locked ? locked_stubs : open_stubs).push_back(u);
      }
      rng.shuffle(open_stubs);

      std::vector<std::vector<std::uint32_t>> groups;
      for (auto u : locked_stubs) groups.push_back({u});
      std::size_t pairs = 0;
      std::vector<bool> used(open_stubs.size(), false);
      for (std::size_t i = 0; i < open_stubs.size(); ++i) {
        if (used[i]) continue;
        used[i] = true;
        std::vector<std::uint32_t> group{open_stubs[i]};
        if (l + 1 < L && rng.coin()) {
          for (std::size_t j = i + 1; j < open_stubs.size(); ++j) {
            if (used[j] || open_stubs[j] == open_stubs[i]) continue;
            used[j] = true;
            group.push_back(open_stubs[j]);
            ++pairs;
            break;
          }
        }
        groups.push_back(std::move(group));
      }
      if (groups.size() > width || (groups.size() > 3 && pairs > 2)) continue;

      rng.shuffle(groups);
      std::vector<Slot> slots;
      for (std::uint32_t h = 0; h < groups.size(); ++h) {
        const auto in = static_cast<std::uint32_t>(groups[h].size());
        slots.push_back(Slot{in, in == 1});
        for (auto u : groups[h]) stage_edges.push_back({u, h, l});
      }
      next = std::move(slots);
    }
    if (!next) return std::nullopt;
    shape.sizes.push_back(static_cast<std::uint32_t>(next->size()));
    shape.edges.insert(shape.edges.end(), stage_edges.begin(), stage_edges.end());
    prev = std::move(*next);
  }
  shape.sizes.push_back(1);
  for (std::uint32_t u = 0; u < prev.size(); ++u) shape.edges.push_back({u, 0, L});
  return shape;
}

}  // namespace

MultiStageGraph gen_random_msp(std::uint32_t stage_count, std::uint32_t width, double density, std::uint64_t seed,
                               const MspGenOptions& options) {
  if (stage_count < 5 || width == 0 || !(density >= 0.0 && density <= 1.0))
    throw std::invalid_argument("gen_random_msp needs stage_count >= 5, width >= 1, density in [0,1]");
  Rng rng(seed);
  const std::uint32_t L = stage_count;

  for (std::uint32_t attempt = 0; attempt < options.max_attempts; ++attempt) {
    const auto shape = try_shape(L, width, rng);
    if (!shape) continue;
    const auto bare = MultiStageGraph::build_unlabeled(shape->sizes, shape->edges);
    if (!validate_2msp(bare.with_labels([&] {
           std::vector<EdgeSet> full(bare.vertex_count(), bare.all_edges());
           full[0] = bare.empty_set();
           return full;
         }()))
             .empty())
      continue;

    const auto n = static_cast<std::uint32_t>(bare.vertex_count());
    const VertexId S = bare.source();
    const VertexId D = bare.sink();
    std::vector<EdgeSet> labels(n, bare.empty_set());
    for (std::uint32_t i = 1; i + 1 < n; ++i) {
      const VertexId v{i};
      const EdgeSet pool = options.repair ? source_cone(bare, v) : bare.all_edges();
      pool.for_each([&](EdgeId e) {
        if (rng.bernoulli(density)) labels[i].insert(e);
      });
      if (bare.stage_of(v) == 1) labels[i].insert(*bare.find_edge(S, v));
    }
    labels[D.value] = bare.all_edges();
    auto g = bare.with_labels(std::move(labels));
    if (!options.repair) return g;

    const auto pre = preprocess(g);
    std::vector<EdgeSet> repaired(pre.labels().begin(), pre.labels().end());
    repaired[D.value] = pre.all_edges();
    return pre.with_labels(std::move(repaired));
  }
  throw Error(ErrorKind::GenerationFailed, "no 2-MSP structure after " + std::to_string(options.max_attempts) +
                                               " attempts (L=" + std::to_string(L) +
                                               ", width=" + std::to_string(width) + ")");
}

}  // namespace msp
