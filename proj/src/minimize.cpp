#include "msp/minimize.hpp"

#include <cstdlib>

#include "msp/error.hpp"

namespace msp {

namespace {

template <typename T, typename Pred>
class Checker {
 public:
  Checker(const Pred& pred, MinimizeStats& stats) : pred_(pred), stats_(stats) {}

  bool operator()(const T& x) {
    ++stats_.predicate_calls;
    try {
      return pred_(x);
    } catch (const std::exception&) {
      return false;
    }
  }

  /// Two evaluations must agree; the common answer is returned.
  bool stable(const T& x, const char* what) {
    const bool a = (*this)(x);
    const bool b = (*this)(x);
    if (a != b) throw Error(ErrorKind::PredicateFlaky, std::string("inconsistent answers on ") + what);
    return a;
  }

 private:
  const Pred& pred_;
  MinimizeStats& stats_;
};

}  // namespace

std::optional<CnfFormula> fix_variable(const CnfFormula& f, std::uint32_t v, bool value) {
  CnfFormula out{f.num_vars - 1, {}};
  const auto renumber = [v](int lit) {
    const auto var = static_cast<std::uint32_t>(std::abs(lit));
    const int shifted = static_cast<int>(var > v ? var - 1 : var);
    return lit < 0 ? -shifted : shifted;
  };
  for (const auto& c : f.clauses) {
    std::vector<int> kept;
    bool satisfied = false;
    for (int lit : c) {
      if (static_cast<std::uint32_t>(std::abs(lit)) != v) {
        kept.push_back(renumber(lit));
      } else if ((lit > 0) == value) {
        satisfied = true;
        break;
      }
    }
    if (satisfied) continue;
    if (kept.empty()) return std::nullopt;
    out.clauses.push_back(std::move(kept));
  }
  return out;
}

CnfFormula minimize_cnf(const CnfFormula& f, const CnfPredicate& pred, MinimizeStats* stats) {
  MinimizeStats local;
  MinimizeStats& st = stats ? *stats : local;
  Checker<CnfFormula, CnfPredicate> check(pred, st);
  if (!check.stable(f, "the input formula")) throw Error(ErrorKind::PredicateNotHolding, "predicate is false on the input");

  CnfFormula cur = f;
  const auto accept = [&](CnfFormula next) {
    if (!check(next)) throw Error(ErrorKind::PredicateFlaky, "accepted candidate failed its re-check");
    cur = std::move(next);
    ++st.accepted;
  };

  for (bool progress = true; progress;) {
    progress = false;
    for (std::size_t i = 0; i < cur.clauses.size();) {
      CnfFormula next = cur;
      next.clauses.erase(next.clauses.begin() + static_cast<std::ptrdiff_t>(i));
      if (check(next)) {
        accept(std::move(next));
        progress = true;
      } else {
        ++i;
      }
    }
    for (std::uint32_t v = 1; v <= cur.num_vars && !progress; ++v) {
      for (bool value : {false, true}) {
        auto next = fix_variable(cur, v, value);
        if (next && check(*next)) {
          accept(std::move(*next));
          progress = true;
          break;
        }
      }
    }
  }
  return cur;
}

MultiStageGraph remove_edge(const MultiStageGraph& g, EdgeId e) {
  std::vector<EdgeSpec> specs = g.edge_specs();
  specs.erase(specs.begin() + e.value);
  const auto shift = [&](EdgeId x) { return EdgeId{x.value > e.value ? x.value - 1 : x.value}; };
  LabelMap labels;
  for (std::uint32_t i = 1; i < g.vertex_count(); ++i) {
    auto& list = labels[VertexId{i}];
    g.label(VertexId{i}).for_each([&](EdgeId x) {
      if (x != e) list.push_back(shift(x));
    });
  }
  const std::vector<std::uint32_t> sizes(g.stage_sizes().begin(), g.stage_sizes().end());
  return MultiStageGraph::build(sizes, specs, labels);
}

MultiStageGraph minimize_msp(const MultiStageGraph& g, const MspPredicate& pred, MinimizeStats* stats) {
  MinimizeStats local;
  MinimizeStats& st = stats ? *stats : local;
  Checker<MultiStageGraph, MspPredicate> check(pred, st);
  if (!check.stable(g, "the input graph")) throw Error(ErrorKind::PredicateNotHolding, "predicate is false on the input");

  const bool keep_2msp = validate_2msp(g).empty();
  const auto admissible = [&](const MultiStageGraph& x) { return !keep_2msp || validate_2msp(x).empty(); };

  MultiStageGraph cur = g;
  const auto accept = [&](MultiStageGraph next) {
    if (!check(next)) throw Error(ErrorKind::PredicateFlaky, "accepted candidate failed its re-check");
    cur = std::move(next);
    ++st.accepted;
  };

  for (bool progress = true; progress;) {
    progress = false;
    for (std::uint32_t id = 0; id < cur.edge_count();) {
      std::optional<MultiStageGraph> next;
      try {
        next.emplace(remove_edge(cur, EdgeId{id}));
      } catch (const Error&) {
      }
      if (next && admissible(*next) && check(*next)) {
        accept(std::move(*next));
        progress = true;
      } else {
        ++id;
      }
    }
    for (std::uint32_t i = 1; i < cur.vertex_count(); ++i) {
      for (const EdgeId e : cur.label(VertexId{i}).to_vector()) {
        std::vector<EdgeSet> labels(cur.labels().begin(), cur.labels().end());
        labels[i].erase(e);
        auto next = cur.with_labels(std::move(labels));
        if (admissible(next) && check(next)) {
          accept(std::move(next));
          progress = true;
        }
      }
    }
  }
  return cur;
}

}  // namespace msp
