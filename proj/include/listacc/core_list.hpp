#pragma once

// Self-organizing linear list: MTF, TRANSPOSE and FREQUENCY COUNT under the
// full and partial cost models. Positions are 1-indexed in every public
// signature; storage is 0-indexed internally.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "listacc/error.hpp"

namespace listacc {

struct ElementId {
  std::int64_t value = 0;

  friend constexpr auto operator<=>(const ElementId&, const ElementId&) = default;
};

inline std::ostream& operator<<(std::ostream& os, ElementId e) { return os << e.value; }

}  // namespace listacc

template <>
struct std::hash<listacc::ElementId> {
  std::size_t operator()(listacc::ElementId e) const noexcept { return std::hash<std::int64_t>{}(e.value); }
};

namespace listacc {

/// 1-indexed list position.
using Position = std::size_t;
using Cost = std::uint64_t;
/// Access counters used by FREQUENCY_COUNT.
using FrequencyTable = std::map<ElementId, std::uint64_t>;

inline std::vector<ElementId> make_ids(std::initializer_list<std::int64_t> values) {
  std::vector<ElementId> out;
  out.reserve(values.size());
  for (auto v : values) out.push_back(ElementId{v});
  return out;
}

/// Ordered sequence of pairwise distinct elements, length >= 1.
class ListState {
 public:
  explicit ListState(std::vector<ElementId> elements) : elements_(std::move(elements)) {
    if (elements_.empty()) throw Error(ErrorCode::EmptyList, "list must contain at least one element");
    std::unordered_set<ElementId> seen;
    seen.reserve(elements_.size());
    for (auto e : elements_) {
      if (!seen.insert(e).second)
        throw Error(ErrorCode::DuplicateElement, "element " + std::to_string(e.value) + " appears twice");
    }
  }

  ListState(std::initializer_list<std::int64_t> values) : ListState(make_ids(values)) {}

  /// The list 1, 2, ..., size.
  static ListState iota(std::size_t size) {
    std::vector<ElementId> v(size);
    for (std::size_t i = 0; i < size; ++i) v[i] = ElementId{static_cast<std::int64_t>(i + 1)};
    return ListState(std::move(v));
  }

  std::size_t size() const noexcept { return elements_.size(); }
  std::span<const ElementId> elements() const noexcept { return elements_; }
  ElementId at(Position pos) const {
    if (pos < 1 || pos > elements_.size())
      throw Error(ErrorCode::PositionOutOfRange, "position " + std::to_string(pos) + " outside [1, " +
                                                     std::to_string(elements_.size()) + "]");
    return elements_[pos - 1];
  }
  bool contains(ElementId e) const { return std::find(elements_.begin(), elements_.end(), e) != elements_.end(); }

  friend bool operator==(const ListState&, const ListState&) = default;

 private:
  friend struct ListAccess;
  struct Unchecked {};
  ListState(std::vector<ElementId> elements, Unchecked) : elements_(std::move(elements)) {}

  std::vector<ElementId> elements_;
};

/// Requests to serve, length >= 1. Membership in a list is checked when served.
class RequestSequence {
 public:
  explicit RequestSequence(std::vector<ElementId> requests) : requests_(std::move(requests)) {
    if (requests_.empty()) throw Error(ErrorCode::EmptySequence, "request sequence must be non-empty");
  }
  RequestSequence(std::initializer_list<std::int64_t> values) : RequestSequence(make_ids(values)) {}

  std::size_t size() const noexcept { return requests_.size(); }
  std::span<const ElementId> requests() const noexcept { return requests_; }
  ElementId operator[](std::size_t i) const { return requests_[i]; }

  friend bool operator==(const RequestSequence&, const RequestSequence&) = default;

 private:
  std::vector<ElementId> requests_;
};

enum class CostModel { Full, Partial };
enum class Algorithm { MoveToFront, Transpose, FrequencyCount };

constexpr std::string_view to_string(CostModel m) { return m == CostModel::Full ? "full" : "partial"; }

constexpr std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::MoveToFront: return "mtf";
    case Algorithm::Transpose: return "transpose";
    case Algorithm::FrequencyCount: return "fc";
  }
  return "?";
}

inline Algorithm parse_algorithm(std::string_view s) {
  if (s == "mtf") return Algorithm::MoveToFront;
  if (s == "transpose") return Algorithm::Transpose;
  if (s == "fc") return Algorithm::FrequencyCount;
  throw Error(ErrorCode::InvalidInput, "unknown algorithm '" + std::string(s) + "'");
}

inline CostModel parse_cost_model(std::string_view s) {
  if (s == "full") return CostModel::Full;
  if (s == "partial") return CostModel::Partial;
  throw Error(ErrorCode::InvalidInput, "unknown cost model '" + std::string(s) + "'");
}

/// Cost of finding the element at `pos`.
constexpr Cost access_cost(Position pos, CostModel model) noexcept {
  return model == CostModel::Full ? pos : pos - 1;
}

struct AccessStep {
  ElementId request;
  Position position_found = 0;
  Cost access_cost = 0;
  Cost paid_exchange_cost = 0;
  ListState list_after;
};

struct AccessTrace {
  ListState initial_list;
  std::vector<AccessStep> steps;
  Cost total_cost = 0;

  const ListState& final_list() const { return steps.empty() ? initial_list : steps.back().list_after; }
};

inline Position find_position(const ListState& list, ElementId e) {
  auto elems = list.elements();
  auto it = std::find(elems.begin(), elems.end(), e);
  if (it == elems.end())
    throw Error(ErrorCode::ElementNotInList, "element " + std::to_string(e.value) + " is not in the list");
  return static_cast<Position>(it - elems.begin()) + 1;
}

namespace detail {

inline std::uint64_t count_of(const FrequencyTable& counters, ElementId e) {
  auto it = counters.find(e);
  return it == counters.end() ? 0 : it->second;
}

/// Reorganizes `elems` in place after an access at 0-indexed `index`. Every
/// algorithm only moves the accessed element forward, so no paid exchanges
/// are ever incurred.
inline void reorganize(std::vector<ElementId>& elems, std::size_t index, Algorithm algo,
                       const FrequencyTable* counters) {
  switch (algo) {
    case Algorithm::MoveToFront:
      std::rotate(elems.begin(), elems.begin() + static_cast<std::ptrdiff_t>(index),
                  elems.begin() + static_cast<std::ptrdiff_t>(index) + 1);
      break;
    case Algorithm::Transpose:
      if (index > 0) std::swap(elems[index - 1], elems[index]);
      break;
    case Algorithm::FrequencyCount: {
      // Stop behind the first predecessor whose count is >= ours, so the
      // accessed element never overtakes an equal-count element.
      const auto mine = count_of(*counters, elems[index]);
      std::size_t target = index;
      while (target > 0 && count_of(*counters, elems[target - 1]) < mine) --target;
      std::rotate(elems.begin() + static_cast<std::ptrdiff_t>(target),
                  elems.begin() + static_cast<std::ptrdiff_t>(index),
                  elems.begin() + static_cast<std::ptrdiff_t>(index) + 1);
      break;
    }
  }
}

}  // namespace detail

struct ListAccess {
  static ListState unchecked(std::vector<ElementId> v) { return ListState(std::move(v), ListState::Unchecked{}); }
  static const std::vector<ElementId>& raw(const ListState& l) { return l.elements_; }
};

/// Applies one reorganization step. For FREQUENCY_COUNT, `counters` must
/// already include the access being reorganized for.
inline ListState apply_algorithm(const ListState& list, Position position, Algorithm algo,
                                 const FrequencyTable* counters = nullptr) {
  if (position < 1 || position > list.size())
    throw Error(ErrorCode::PositionOutOfRange, "position " + std::to_string(position) + " outside [1, " +
                                                   std::to_string(list.size()) + "]");
  if (algo == Algorithm::FrequencyCount && counters == nullptr)
    throw Error(ErrorCode::MissingCounters, "frequency count requires a counter table");
  auto elems = ListAccess::raw(list);
  detail::reorganize(elems, position - 1, algo, counters);
  return ListAccess::unchecked(std::move(elems));
}

/// Serves `seq` on `list`, recording every step. Counters for
/// FREQUENCY_COUNT start at zero.
inline AccessTrace serve(const ListState& list, const RequestSequence& seq, Algorithm algo, CostModel model) {
  AccessTrace trace{list, {}, 0};
  trace.steps.reserve(seq.size());
  std::vector<ElementId> current = ListAccess::raw(list);
  FrequencyTable counters;
  if (algo == Algorithm::FrequencyCount)
    for (auto e : current) counters.emplace(e, 0);

  for (std::size_t i = 0; i < seq.size(); ++i) {
    const ElementId request = seq[i];
    auto it = std::find(current.begin(), current.end(), request);
    if (it == current.end())
      throw Error(ErrorCode::ElementNotInList,
                  "request #" + std::to_string(i) + " (element " + std::to_string(request.value) +
                      ") is not in the list",
                  i);
    const auto index = static_cast<std::size_t>(it - current.begin());
    if (algo == Algorithm::FrequencyCount) ++counters[request];
    detail::reorganize(current, index, algo, &counters);

    AccessStep step{request, index + 1, access_cost(index + 1, model), 0, ListAccess::unchecked(current)};
    trace.total_cost += step.access_cost + step.paid_exchange_cost;
    trace.steps.push_back(std::move(step));
  }
  return trace;
}

/// Total cost only; avoids materializing per-step lists.
inline Cost serve_cost(const ListState& list, const RequestSequence& seq, Algorithm algo, CostModel model) {
  std::vector<ElementId> current = ListAccess::raw(list);
  FrequencyTable counters;
  Cost total = 0;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    auto it = std::find(current.begin(), current.end(), seq[i]);
    if (it == current.end())
      throw Error(ErrorCode::ElementNotInList,
                  "request #" + std::to_string(i) + " (element " + std::to_string(seq[i].value) +
                      ") is not in the list",
                  i);
    const auto index = static_cast<std::size_t>(it - current.begin());
    if (algo == Algorithm::FrequencyCount) ++counters[seq[i]];
    detail::reorganize(current, index, algo, &counters);
    total += access_cost(index + 1, model);
  }
  return total;
}

}  // namespace listacc
