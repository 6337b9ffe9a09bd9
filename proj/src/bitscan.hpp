#pragma once

// Word-level iteration over (a & b) restricted to an id window. Shared by
// the connectivity code and the kernel's inner loops.

#include <bit>
#include <cstdint>

#include "msp/edge_set.hpp"

namespace msp::detail {

using Word = EdgeSet::Word;
inline constexpr std::size_t kBits = EdgeSet::kWordBits;

inline Word window_mask(std::size_t wi, std::uint32_t lo, std::uint32_t hi) {
  Word m = ~Word{0};
  if (wi == lo / kBits) m &= ~Word{0} << (lo % kBits);
  if (wi == (hi - 1) / kBits) {
    const std::size_t r = hi - wi * kBits;
    if (r < kBits) m &= (Word{1} << r) - 1;
  }
  return m;
}

/// Visits ids of (a & b) in [lo, hi) ascending; stops as soon as f returns false.
/// b may be null.
template <typename F>
void scan_forward(const EdgeSet& a, const EdgeSet* b, std::uint32_t lo, std::uint32_t hi, F&& f) {
  if (lo >= hi) return;
  const Word* aw = a.data();
  const Word* bw = b ? b->data() : nullptr;
  for (std::size_t wi = lo / kBits, wend = (hi - 1) / kBits; wi <= wend; ++wi) {
    Word w = aw[wi] & window_mask(wi, lo, hi);
    if (bw) w &= bw[wi];
    while (w != 0) {
      const auto bit = static_cast<std::uint32_t>(std::countr_zero(w));
      if (!f(EdgeId{static_cast<std::uint32_t>(wi * kBits) + bit})) return;
      w &= w - 1;
    }
  }
}

/// Visits ids of (a & b) in [lo, hi) descending; f returns false to stop.
template <typename F>
void scan_backward(const EdgeSet& a, const EdgeSet* b, std::uint32_t lo, std::uint32_t hi, F&& f) {
  if (lo >= hi) return;
  const Word* aw = a.data();
  const Word* bw = b ? b->data() : nullptr;
  const std::size_t wlo = lo / kBits;
  for (std::size_t wi = (hi - 1) / kBits + 1; wi-- > wlo;) {
    Word w = aw[wi] & window_mask(wi, lo, hi);
    if (bw) w &= bw[wi];
    while (w != 0) {
      const auto bit = static_cast<std::uint32_t>(kBits - 1 - static_cast<std::size_t>(std::countl_zero(w)));
      if (!f(EdgeId{static_cast<std::uint32_t>(wi * kBits) + bit})) return;
      w &= ~(Word{1} << bit);
    }
  }
}

}  // namespace msp::detail
