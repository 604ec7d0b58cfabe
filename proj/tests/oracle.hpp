#pragma once

// Naive reference simulator used only by tests. It shares no code with
// core_list: every step scans a plain vector and rebuilds the next list
// from scratch. FREQUENCY_COUNT is modelled as a sort on
// (count desc, time the element reached its count asc, initial index asc),
// which is what the insert-behind-equal-counts rule converges to.

#include <algorithm>
#include <cstdint>
#include <vector>

namespace oracle {

enum class Algo { Mtf, Transpose, Fc };

struct Step {
  std::size_t position;  // 1-indexed
  std::vector<std::int64_t> after;
};

struct Result {
  std::vector<Step> steps;
  std::uint64_t full_total = 0;
  std::uint64_t partial_total = 0;
};

inline Result simulate(const std::vector<std::int64_t>& list, const std::vector<std::int64_t>& seq, Algo algo) {
  Result r;
  std::vector<std::int64_t> cur = list;
  const std::size_t l = list.size();
  std::vector<std::uint64_t> count(l, 0), reached(l, 0);
  auto initial_index = [&](std::int64_t e) {
    for (std::size_t i = 0; i < l; ++i)
      if (list[i] == e) return i;
    return l;
  };

  for (std::size_t t = 0; t < seq.size(); ++t) {
    std::size_t idx = 0;
    while (cur[idx] != seq[t]) ++idx;
    const std::size_t pos = idx + 1;
    r.full_total += pos;
    r.partial_total += pos - 1;

    std::vector<std::int64_t> next;
    switch (algo) {
      case Algo::Mtf:
        next.push_back(cur[idx]);
        for (std::size_t i = 0; i < l; ++i)
          if (i != idx) next.push_back(cur[i]);
        break;
      case Algo::Transpose:
        next = cur;
        if (idx > 0) {
          next[idx - 1] = cur[idx];
          next[idx] = cur[idx - 1];
        }
        break;
      case Algo::Fc: {
        const auto k = initial_index(seq[t]);
        ++count[k];
        reached[k] = t + 1;
        next = list;
        std::sort(next.begin(), next.end(), [&](std::int64_t a, std::int64_t b) {
          const auto ia = initial_index(a), ib = initial_index(b);
          if (count[ia] != count[ib]) return count[ia] > count[ib];
          if (reached[ia] != reached[ib]) return reached[ia] < reached[ib];
          return ia < ib;
        });
        break;
      }
    }
    cur = next;
    r.steps.push_back({pos, cur});
  }
  return r;
}

/// MTF/FULL total only.
inline std::uint64_t mtf_cost(const std::vector<std::int64_t>& list, const std::vector<std::int64_t>& seq) {
  return simulate(list, seq, Algo::Mtf).full_total;
}

inline std::vector<std::int64_t> iota_list(std::size_t l) {
  std::vector<std::int64_t> v(l);
  for (std::size_t i = 0; i < l; ++i) v[i] = static_cast<std::int64_t>(i + 1);
  return v;
}

}  // namespace oracle
