#pragma once

// Closed-form MTF costs under the full cost model for the special request
// classes, and a verifier that replays each instance through serve().
//
//   list order, n = l          n(n+1)/2              exact
//   reversed order, n = l      n^2                   exact
//   other permutations         (n(n+1)/2, n^2)       strict bounds
//   position p repeated n      n + p - 1             exact
//   TYPE_IV envelope           [n, n + l - 1]        inclusive range
//   base of cost C, each request repeated k times    C + n(k-1)
//   base of cost C, request i repeated k_i times     C + sum(k_i - 1)
//
// The block formulas hold only for contiguous blocks: after the first
// request of a block MTF has the element at the front, so every further
// copy costs exactly 1 and leaves the list unchanged.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "listacc/core_list.hpp"
#include "listacc/error.hpp"

namespace listacc {

enum class PredictionSource { Theorem1, Theorem2, Theorem3, Theorem4, Theorem5, Corollary1, Corollary2 };

enum class PredictionKind {
  Exact,
  /// lower < simulated < upper
  StrictBounds,
  /// lower <= simulated <= upper
  InclusiveRange,
};

constexpr std::string_view to_string(PredictionSource s) {
  switch (s) {
    case PredictionSource::Theorem1: return "THEOREM_1";
    case PredictionSource::Theorem2: return "THEOREM_2";
    case PredictionSource::Theorem3: return "THEOREM_3";
    case PredictionSource::Theorem4: return "THEOREM_4";
    case PredictionSource::Theorem5: return "THEOREM_5";
    case PredictionSource::Corollary1: return "COROLLARY_1";
    case PredictionSource::Corollary2: return "COROLLARY_2";
  }
  return "?";
}

inline PredictionSource parse_prediction_source(std::string_view s) {
  for (auto src : {PredictionSource::Theorem1, PredictionSource::Theorem2, PredictionSource::Theorem3,
                   PredictionSource::Theorem4, PredictionSource::Theorem5, PredictionSource::Corollary1,
                   PredictionSource::Corollary2}) {
    if (to_string(src) == s) return src;
  }
  throw Error(ErrorCode::InvalidInput, "unknown theorem '" + std::string(s) + "'");
}

struct CostPrediction {
  PredictionSource source;
  PredictionKind kind;
  /// Exact cost; equals lower == upper for Exact predictions.
  std::int64_t lower = 0;
  std::int64_t upper = 0;
  /// Set when the value was shifted to the partial cost model. The closed
  /// forms are stated for the full model only.
  bool partial_extension = false;

  bool exact() const noexcept { return kind == PredictionKind::Exact; }
  std::int64_t value() const noexcept { return lower; }

  static CostPrediction make_exact(PredictionSource src, std::int64_t v) { return {src, PredictionKind::Exact, v, v}; }
};

namespace detail {

inline void require_positive(std::int64_t v, const char* name) {
  if (v < 1) throw Error(ErrorCode::NonPositiveSize, std::string(name) + " must be >= 1, got " + std::to_string(v));
}

inline std::int64_t triangular(std::int64_t n) { return n * (n + 1) / 2; }

}  // namespace detail

/// Requests in list order on a list of the same size.
inline CostPrediction predict_type1_best(std::int64_t n) {
  detail::require_positive(n, "n");
  return CostPrediction::make_exact(PredictionSource::Theorem1, detail::triangular(n));
}

/// Requests in reversed list order; every access costs n.
inline CostPrediction predict_type2_worst(std::int64_t n) {
  detail::require_positive(n, "n");
  return CostPrediction::make_exact(PredictionSource::Theorem2, n * n);
}

inline CostPrediction bounds_type3(std::int64_t n) {
  if (n < 3)
    throw Error(ErrorCode::NoType3Exists, "every permutation of " + std::to_string(n) +
                                               " elements is the list order or its reversal");
  return {PredictionSource::Corollary1, PredictionKind::StrictBounds, detail::triangular(n), n * n};
}

/// The element at list position p requested n times.
inline CostPrediction predict_type4(std::int64_t n, std::int64_t p, std::optional<std::int64_t> list_size = std::nullopt) {
  detail::require_positive(n, "n");
  if (p < 1 || (list_size && p > *list_size))
    throw Error(ErrorCode::PositionOutOfRange, "p = " + std::to_string(p) + " is not a list position");
  return CostPrediction::make_exact(PredictionSource::Theorem3, n + p - 1);
}

/// Best (p = 1) and worst (p = l) TYPE_IV costs. Reduces to [n, 2n - 1] when n = l.
inline CostPrediction bounds_type4(std::int64_t n, std::int64_t l) {
  detail::require_positive(n, "n");
  detail::require_positive(l, "l");
  return {PredictionSource::Corollary2, PredictionKind::InclusiveRange, n, n + l - 1};
}

namespace detail {

inline void check_base_cost(std::int64_t base_cost, std::int64_t n) {
  require_positive(n, "n");
  if (base_cost < triangular(n) || base_cost > n * n)
    throw Error(ErrorCode::ImpossibleBaseCost, "C = " + std::to_string(base_cost) + " is outside [" +
                                                   std::to_string(triangular(n)) + ", " + std::to_string(n * n) +
                                                   "] for a base of " + std::to_string(n) + " distinct requests");
}

}  // namespace detail

/// Each of the n base requests repeated k times in place.
inline CostPrediction predict_uniform_blocks(std::int64_t base_cost, std::int64_t n, std::int64_t k) {
  detail::check_base_cost(base_cost, n);
  detail::require_positive(k, "k");
  return CostPrediction::make_exact(PredictionSource::Theorem4, base_cost + n * (k - 1));
}

/// Base request i repeated repeats[i] times in place.
inline CostPrediction predict_varying_blocks(std::int64_t base_cost, std::span<const std::int64_t> repeats) {
  const auto n = static_cast<std::int64_t>(repeats.size());
  detail::check_base_cost(base_cost, n);
  std::int64_t extra = 0;
  for (auto k : repeats) {
    detail::require_positive(k, "k_i");
    extra += k - 1;
  }
  return CostPrediction::make_exact(PredictionSource::Theorem5, base_cost + extra);
}

/// Shifts a full-model prediction for n requests to the partial model
/// (every access is one cheaper). Flagged as an extension.
inline CostPrediction to_partial(CostPrediction p, std::int64_t n_requests) {
  p.lower -= n_requests;
  p.upper -= n_requests;
  p.partial_extension = true;
  return p;
}

/// A base of distinct requests covering the list, with per-request repeat counts.
class BlockRepetitionSpec {
 public:
  BlockRepetitionSpec(const ListState& list, RequestSequence base, std::vector<std::int64_t> repeats)
      : base_(std::move(base)), repeats_(std::move(repeats)) {
    if (repeats_.size() != base_.size())
      throw Error(ErrorCode::InvalidInput, "need one repeat count per base request");
    for (auto k : repeats_) detail::require_positive(k, "k_i");
    if (base_.size() != list.size())
      throw Error(ErrorCode::InvalidInput, "base must have one request per list element");
    std::unordered_set<ElementId> seen;
    for (auto e : base_.requests()) {
      if (!list.contains(e))
        throw Error(ErrorCode::ElementNotInList, "base element " + std::to_string(e.value) + " is not in the list");
      if (!seen.insert(e).second)
        throw Error(ErrorCode::DuplicateElement, "base element " + std::to_string(e.value) + " appears twice");
    }
  }

  const RequestSequence& base() const noexcept { return base_; }
  std::span<const std::int64_t> repeats() const noexcept { return repeats_; }

 private:
  RequestSequence base_;
  std::vector<std::int64_t> repeats_;
};

inline RequestSequence expand_blocks(const BlockRepetitionSpec& spec) {
  std::vector<ElementId> out;
  out.reserve(static_cast<std::size_t>(std::accumulate(spec.repeats().begin(), spec.repeats().end(), std::int64_t{0})));
  for (std::size_t i = 0; i < spec.base().size(); ++i)
    out.insert(out.end(), static_cast<std::size_t>(spec.repeats()[i]), spec.base()[i]);
  return RequestSequence(std::move(out));
}

/// Inverse of expand_blocks: splits `seq` into maximal runs. Fails with
/// NotBlockExpansion unless the run heads are distinct and cover the list,
/// which rules out interleavings such as 2,1,2,1,3,3.
inline BlockRepetitionSpec decompose_blocks(const ListState& list, const RequestSequence& seq) {
  std::vector<ElementId> heads;
  std::vector<std::int64_t> repeats;
  for (auto e : seq.requests()) {
    if (!heads.empty() && heads.back() == e) {
      ++repeats.back();
    } else {
      heads.push_back(e);
      repeats.push_back(1);
    }
  }
  try {
    return BlockRepetitionSpec(list, RequestSequence(std::move(heads)), std::move(repeats));
  } catch (const Error& e) {
    throw Error(ErrorCode::NotBlockExpansion, std::string("sequence is not a contiguous block expansion: ") + e.what());
  }
}

/// Predicts a block-expanded sequence from its decomposition; the base cost
/// comes from simulation. Uses the uniform formula when all repeats agree.
inline CostPrediction predict_blocks(const ListState& list, const RequestSequence& seq) {
  auto spec = decompose_blocks(list, seq);
  const auto base_cost = static_cast<std::int64_t>(serve_cost(list, spec.base(), Algorithm::MoveToFront, CostModel::Full));
  auto reps = spec.repeats();
  if (std::all_of(reps.begin(), reps.end(), [&](std::int64_t k) { return k == reps.front(); }))
    return predict_uniform_blocks(base_cost, static_cast<std::int64_t>(reps.size()), reps.front());
  return predict_varying_blocks(base_cost, reps);
}

enum class VerificationStatus { Match, Inside, Violation };

constexpr std::string_view to_string(VerificationStatus s) {
  switch (s) {
    case VerificationStatus::Match: return "MATCH";
    case VerificationStatus::Inside: return "INSIDE";
    case VerificationStatus::Violation: return "VIOLATION";
  }
  return "?";
}

struct VerificationReport {
  CostPrediction prediction;
  std::int64_t simulated = 0;
  VerificationStatus status = VerificationStatus::Violation;

  bool ok() const noexcept { return status != VerificationStatus::Violation; }
};

/// Replays `seq` with MTF (partial model if the prediction was shifted) and
/// compares. A mismatch is reported, not thrown.
inline VerificationReport verify(const CostPrediction& prediction, const ListState& list, const RequestSequence& seq) {
  const auto model = prediction.partial_extension ? CostModel::Partial : CostModel::Full;
  const auto simulated = static_cast<std::int64_t>(serve_cost(list, seq, Algorithm::MoveToFront, model));
  bool ok = false;
  switch (prediction.kind) {
    case PredictionKind::Exact: ok = simulated == prediction.value(); break;
    case PredictionKind::StrictBounds: ok = prediction.lower < simulated && simulated < prediction.upper; break;
    case PredictionKind::InclusiveRange: ok = prediction.lower <= simulated && simulated <= prediction.upper; break;
  }
  VerificationStatus status = VerificationStatus::Violation;
  if (ok) status = prediction.exact() ? VerificationStatus::Match : VerificationStatus::Inside;
  return {prediction, simulated, status};
}

}  // namespace listacc
