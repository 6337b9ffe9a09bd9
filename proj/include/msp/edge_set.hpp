#pragma once

#include <bit>
#include <cassert>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace msp {

/// Dense index of an edge inside one graph. Ids are assigned in
/// (stage, tail, head) lexicographic order, so ascending id is also
/// ascending stage.
struct EdgeId {
  std::uint32_t value = 0;
  friend constexpr auto operator<=>(EdgeId, EdgeId) = default;
};

/// Dense index of a vertex inside one graph, stage-major (S is 0, D is last).
struct VertexId {
  std::uint32_t value = 0;
  friend constexpr auto operator<=>(VertexId, VertexId) = default;
};

/// Membership bitmap over a fixed edge universe [0, universe()).
///
/// Binary set operations require both operands to share the same universe;
/// this is asserted, not checked at runtime.
class EdgeSet {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  EdgeSet() = default;
  explicit EdgeSet(std::size_t universe)
      : universe_(universe), words_((universe + kWordBits - 1) / kWordBits, 0) {}

  static EdgeSet full(std::size_t universe) {
    EdgeSet s(universe);
    for (auto& w : s.words_) w = ~Word{0};
    s.trim();
    return s;
  }

  std::size_t universe() const noexcept { return universe_; }
  std::size_t word_count() const noexcept { return words_.size(); }
  const Word* data() const noexcept { return words_.data(); }
  Word* data() noexcept { return words_.data(); }

  bool contains(EdgeId e) const noexcept {
    assert(e.value < universe_);
    return (words_[e.value / kWordBits] >> (e.value % kWordBits)) & 1U;
  }
  void insert(EdgeId e) noexcept {
    assert(e.value < universe_);
    words_[e.value / kWordBits] |= Word{1} << (e.value % kWordBits);
  }
  void erase(EdgeId e) noexcept {
    assert(e.value < universe_);
    words_[e.value / kWordBits] &= ~(Word{1} << (e.value % kWordBits));
  }
  void clear() noexcept {
    for (auto& w : words_) w = 0;
  }

  std::size_t count() const noexcept {
    std::size_t n = 0;
    for (Word w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }
  bool empty() const noexcept {
    for (Word w : words_)
      if (w != 0) return false;
    return true;
  }

  EdgeSet& operator|=(const EdgeSet& o) noexcept {
    assert(universe_ == o.universe_);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  EdgeSet& operator&=(const EdgeSet& o) noexcept {
    assert(universe_ == o.universe_);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  /// Set difference.
  EdgeSet& operator-=(const EdgeSet& o) noexcept {
    assert(universe_ == o.universe_);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }
  friend EdgeSet operator|(EdgeSet a, const EdgeSet& b) { return a |= b; }
  friend EdgeSet operator&(EdgeSet a, const EdgeSet& b) { return a &= b; }
  friend EdgeSet operator-(EdgeSet a, const EdgeSet& b) { return a -= b; }

  bool is_subset_of(const EdgeSet& o) const noexcept {
    assert(universe_ == o.universe_);
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }
  bool intersects(const EdgeSet& o) const noexcept {
    assert(universe_ == o.universe_);
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & o.words_[i]) return true;
    return false;
  }

  friend bool operator==(const EdgeSet& a, const EdgeSet& b) noexcept {
    return a.universe_ == b.universe_ && a.words_ == b.words_;
  }

  /// Calls f(EdgeId) for every member with id in [lo, hi), ascending.
  template <typename F>
  void for_each_in(std::uint32_t lo, std::uint32_t hi, F&& f) const {
    if (lo >= hi) return;
    std::size_t wi = lo / kWordBits;
    const std::size_t wend = (hi + kWordBits - 1) / kWordBits;
    Word w = words_[wi] & (~Word{0} << (lo % kWordBits));
    for (;;) {
      while (w != 0) {
        const auto bit = static_cast<std::uint32_t>(std::countr_zero(w));
        const auto id = static_cast<std::uint32_t>(wi * kWordBits) + bit;
        if (id >= hi) return;
        f(EdgeId{id});
        w &= w - 1;
      }
      if (++wi >= wend) return;
      w = words_[wi];
    }
  }

  template <typename F>
  void for_each(F&& f) const {
    for_each_in(0, static_cast<std::uint32_t>(universe_), std::forward<F>(f));
  }

  std::vector<EdgeId> to_vector() const {
    std::vector<EdgeId> out;
    out.reserve(count());
    for_each([&](EdgeId e) { out.push_back(e); });
    return out;
  }

  static EdgeSet from_ids(std::size_t universe, const std::vector<EdgeId>& ids) {
    EdgeSet s(universe);
    for (EdgeId e : ids) s.insert(e);
    return s;
  }

 private:
  void trim() noexcept {
    const std::size_t rem = universe_ % kWordBits;
    if (rem != 0 && !words_.empty()) words_.back() &= (Word{1} << rem) - 1;
  }

  std::size_t universe_ = 0;
  std::vector<Word> words_;
};

}  // namespace msp

template <>
struct std::hash<msp::EdgeId> {
  std::size_t operator()(msp::EdgeId e) const noexcept { return std::hash<std::uint32_t>{}(e.value); }
};
template <>
struct std::hash<msp::VertexId> {
  std::size_t operator()(msp::VertexId v) const noexcept { return std::hash<std::uint32_t>{}(v.value); }
};
