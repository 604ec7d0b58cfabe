// Acceptance suite: one PASS/FAIL line per criterion, exact integer checks,
// wall-clock limits as stated. Exit status is the number of failures.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "listacc/harness.hpp"
#include "listacc/listacc.hpp"
#include "oracle.hpp"
#include "taxonomy_oracle.hpp"

using namespace listacc;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void check(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

std::vector<ElementId> ids(const std::vector<std::int64_t>& v) {
  std::vector<ElementId> out;
  for (auto x : v) out.push_back(ElementId{x});
  return out;
}

std::vector<std::int64_t> iota(std::size_t l) { return oracle::iota_list(l); }

std::vector<std::int64_t> reversed(std::size_t l) {
  auto v = iota(l);
  std::reverse(v.begin(), v.end());
  return v;
}

std::int64_t mtf_full(const ListState& list, const std::vector<std::int64_t>& seq) {
  return static_cast<std::int64_t>(serve_cost(list, RequestSequence(ids(seq)), Algorithm::MoveToFront, CostModel::Full));
}

Outcome abcd_walkthrough() {
  Outcome o;
  const ListState list{1, 2, 3, 4};  // A B C D
  const RequestSequence seq{3, 1, 1, 4, 2};
  const auto trace = serve(list, seq, Algorithm::MoveToFront, CostModel::Full);
  const Cost expect[] = {3, 2, 1, 4, 4};
  for (std::size_t i = 0; i < 5; ++i)
    o.check(trace.steps[i].access_cost == expect[i], "step " + std::to_string(i + 1) + " cost");
  o.check(trace.total_cost == 14, "total " + std::to_string(trace.total_cost) + " != 14");
  return o;
}

Outcome permutation_table() {
  Outcome o;
  const ListState list{1, 2, 3};
  const std::vector<std::pair<std::vector<std::int64_t>, std::int64_t>> table = {
      {{1, 2, 3}, 6}, {{1, 3, 2}, 7}, {{2, 1, 3}, 7}, {{2, 3, 1}, 8}, {{3, 1, 2}, 8}, {{3, 2, 1}, 9}};
  for (const auto& [seq, cost] : table) o.check(mtf_full(list, seq) == cost, "permutation cost mismatch");
  return o;
}

Outcome theorem_one() {
  Outcome o;
  for (std::size_t l = 1; l <= 12; ++l) {
    const auto pred = predict_type1_best(static_cast<std::int64_t>(l));
    o.check(pred.value() == static_cast<std::int64_t>(l * (l + 1) / 2), "formula at l=" + std::to_string(l));
    o.check(mtf_full(ListState::iota(l), iota(l)) == pred.value(), "simulation at l=" + std::to_string(l));
  }
  return o;
}

// Exhaustive permutation costs for l in [1, 8], shared by criteria 4 and 5.
struct PermutationSweep {
  std::map<std::size_t, std::vector<std::pair<std::vector<std::int64_t>, std::int64_t>>> costs;
};

const PermutationSweep& permutation_sweep() {
  static const PermutationSweep sweep = [] {
    PermutationSweep s;
    for (std::size_t l = 1; l <= 8; ++l) {
      const auto list = ListState::iota(l);
      auto perm = iota(l);
      do s.costs[l].emplace_back(perm, mtf_full(list, perm));
      while (std::next_permutation(perm.begin(), perm.end()));
    }
    return s;
  }();
  return sweep;
}

Outcome theorem_two() {
  Outcome o;
  for (std::size_t l = 1; l <= 12; ++l) {
    const auto pred = predict_type2_worst(static_cast<std::int64_t>(l));
    o.check(pred.value() == static_cast<std::int64_t>(l * l), "formula at l=" + std::to_string(l));
    o.check(mtf_full(ListState::iota(l), reversed(l)) == pred.value(), "simulation at l=" + std::to_string(l));
  }
  for (const auto& [l, rows] : permutation_sweep().costs) {
    std::int64_t lo = INT64_MAX, hi = INT64_MIN;
    for (const auto& [perm, c] : rows) {
      lo = std::min(lo, c);
      hi = std::max(hi, c);
    }
    o.check(rows.size() == static_cast<std::size_t>(std::tgamma(static_cast<double>(l) + 1) + 0.5), "permutation count");
    o.check(hi == mtf_full(ListState::iota(l), reversed(l)), "reversal not maximal at l=" + std::to_string(l));
    o.check(lo == mtf_full(ListState::iota(l), iota(l)), "identity not minimal at l=" + std::to_string(l));
  }
  return o;
}

Outcome corollary_one() {
  Outcome o;
  std::size_t checked = 0;
  for (const auto& [l, rows] : permutation_sweep().costs) {
    if (l < 3) continue;
    const auto b = bounds_type3(static_cast<std::int64_t>(l));
    const auto list = ListState::iota(l);
    for (const auto& [perm, c] : rows) {
      if (perm == iota(l) || perm == reversed(l)) continue;
      o.check(classify(list, RequestSequence(ids(perm))).type == TypeTag::III, "not TYPE_III");
      o.check(b.lower < c && c < b.upper, "cost " + std::to_string(c) + " outside bounds at l=" + std::to_string(l));
      ++checked;
    }
  }
  // sum over l = 3..8 of (l! - 2)
  o.check(checked == 4 + 22 + 118 + 718 + 5038 + 40318, "TYPE_III count " + std::to_string(checked));
  return o;
}

Outcome theorem_three() {
  Outcome o;
  for (std::int64_t l = 1; l <= 8; ++l) {
    const auto list = ListState::iota(static_cast<std::size_t>(l));
    for (std::int64_t n = 1; n <= 16; ++n) {
      std::int64_t lo = INT64_MAX, hi = INT64_MIN;
      for (std::int64_t p = 1; p <= l; ++p) {
        const auto c = mtf_full(list, std::vector<std::int64_t>(static_cast<std::size_t>(n), p));
        o.check(c == predict_type4(n, p, l).value() && c == n + p - 1, "TYPE_IV cost mismatch");
        lo = std::min(lo, c);
        hi = std::max(hi, c);
      }
      const auto env = bounds_type4(n, l);
      o.check(lo == n && env.lower == lo, "best case");
      o.check(hi == n + l - 1 && env.upper == hi, "worst case");
      if (n == l) o.check(hi == 2 * n - 1, "worst case 2n-1 at n=l");
    }
  }
  return o;
}

Outcome theorem_four() {
  Outcome o;
  const ListState list{1, 2, 3};
  const auto expanded = expand_blocks(BlockRepetitionSpec(list, RequestSequence{2, 1, 3}, {2, 2, 2}));
  o.check(expanded == (RequestSequence{2, 2, 1, 1, 3, 3}), "expansion of 213 with k=2");
  o.check(mtf_full(list, {2, 1, 3}) == 7, "base cost");
  const auto pred = predict_uniform_blocks(7, 3, 2);
  o.check(pred.value() == 10 && verify(pred, list, expanded).status == VerificationStatus::Match, "paper instance");

  std::mt19937_64 gen(4);
  std::uniform_int_distribution<std::size_t> lsize(1, 8);
  std::uniform_int_distribution<std::int64_t> rep(1, 5);
  for (int t = 0; t < 1000; ++t) {
    const auto l = lsize(gen);
    auto base = iota(l);
    std::shuffle(base.begin(), base.end(), gen);
    const auto k = rep(gen);
    const auto state = ListState::iota(l);
    const auto c = static_cast<std::int64_t>(oracle::mtf_cost(iota(l), base));
    const auto seq = expand_blocks(BlockRepetitionSpec(state, RequestSequence(ids(base)), std::vector<std::int64_t>(l, k)));
    o.check(verify(predict_uniform_blocks(c, static_cast<std::int64_t>(l), k), state, seq).status ==
                VerificationStatus::Match,
            "trial " + std::to_string(t));
  }
  return o;
}

Outcome theorem_five() {
  Outcome o;
  const ListState list{1, 2, 3};
  const auto expanded = expand_blocks(BlockRepetitionSpec(list, RequestSequence{2, 1, 3}, {2, 3, 4}));
  o.check(expanded == (RequestSequence{2, 2, 1, 1, 1, 3, 3, 3, 3}), "corrected expansion");
  const std::int64_t reps[] = {2, 3, 4};
  const auto pred = predict_varying_blocks(7, reps);
  o.check(pred.value() == 13 && verify(pred, list, expanded).status == VerificationStatus::Match, "paper instance");

  std::mt19937_64 gen(5);
  std::uniform_int_distribution<std::size_t> lsize(1, 8);
  std::uniform_int_distribution<std::int64_t> rep(1, 5);
  for (int t = 0; t < 1000; ++t) {
    const auto l = lsize(gen);
    auto base = iota(l);
    std::shuffle(base.begin(), base.end(), gen);
    std::vector<std::int64_t> ks(l);
    for (auto& k : ks) k = rep(gen);
    const auto state = ListState::iota(l);
    const auto c = static_cast<std::int64_t>(oracle::mtf_cost(iota(l), base));
    const auto seq = expand_blocks(BlockRepetitionSpec(state, RequestSequence(ids(base)), ks));
    const auto expect = c + std::accumulate(ks.begin(), ks.end(), std::int64_t{0}) - static_cast<std::int64_t>(l);
    const auto p = predict_varying_blocks(c, ks);
    o.check(p.value() == expect && verify(p, state, seq).status == VerificationStatus::Match,
            "trial " + std::to_string(t));
  }
  return o;
}

Outcome taxonomy_partition() {
  Outcome o;
  std::size_t sequences = 0, round_trips = 0;
  for (std::size_t l = 1; l <= 4; ++l) {
    const auto list = ListState::iota(l);
    const auto list_values = iota(l);
    for (std::size_t n = l; n <= 8; ++n) {
      std::map<std::string, SequenceClass> labels;
      std::vector<std::size_t> digits(n, 0);
      for (;;) {
        std::vector<std::int64_t> seq;
        for (auto d : digits) seq.push_back(list_values[d]);
        const auto leaves = taxonomy_oracle::matching_leaves(list_values, seq);
        const auto got = classify(list, RequestSequence(ids(seq)));
        o.check(leaves.size() == 1, "leaf predicates not exclusive");
        o.check(!leaves.empty() && leaves.front() == to_string(got), "classify disagrees with leaf predicates");
        labels.emplace(to_string(got), got);
        ++sequences;
        std::size_t i = n;
        while (i > 0 && ++digits[i - 1] == l) digits[--i] = 0;
        if (i == 0) break;
      }
      for (const auto& [name, spec] : labels) {
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
          const auto seq = generate(list, spec, seed, n);
          o.check(classify(list, seq) == spec, "round trip failed for " + name);
          ++round_trips;
        }
      }
    }
  }
  o.check(sequences > 0 && round_trips > 0, "nothing enumerated");
  return o;
}

Outcome cost_model_relation() {
  Outcome o;
  std::mt19937_64 gen(10);
  std::uniform_int_distribution<std::size_t> lsize(1, 8), nsize(1, 20);
  for (int t = 0; t < 1000; ++t) {
    const auto l = lsize(gen), n = nsize(gen);
    std::uniform_int_distribution<std::int64_t> pick(1, static_cast<std::int64_t>(l));
    std::vector<std::int64_t> seq(n);
    for (auto& x : seq) x = pick(gen);
    const auto list = ListState::iota(l);
    const RequestSequence rs(ids(seq));
    for (auto algo : {Algorithm::MoveToFront, Algorithm::Transpose, Algorithm::FrequencyCount}) {
      const auto full = serve(list, rs, algo, CostModel::Full).total_cost;
      const auto partial = serve(list, rs, algo, CostModel::Partial).total_cost;
      o.check(partial == full - n, "instance " + std::to_string(t));
    }
  }
  return o;
}

Outcome verify_determinism() {
  Outcome o;
  harness::ExperimentConfig cfg;
  cfg.seed = 20250101;
  cfg.trials = 500;
  std::ostringstream a, b;
  o.check(harness::cmd_verify(cfg, a) == 0, "first run reported a violation");
  o.check(harness::cmd_verify(cfg, b) == 0, "second run reported a violation");
  o.check(!a.str().empty() && a.str() == b.str(), "outputs differ");
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double limit_ms;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {"1  A B C D MTF walk-through (3,2,1,4,4; total 14)", 1.0, abcd_walkthrough},
      {"2  permutations of 1,2,3 cost 6,7,7,8,8,9", 1.0, permutation_table},
      {"3  list order costs l(l+1)/2, l in [1,12]", 10.0, theorem_one},
      {"4  reversal costs l^2, l in [1,12]; extremes over all permutations, l <= 8", 30000.0, theorem_two},
      {"5  TYPE_III strictly inside (l(l+1)/2, l^2), l in [3,8]", 30000.0, corollary_one},
      {"6  TYPE_IV costs n+p-1; envelope [n, n+l-1]", 1000.0, theorem_three},
      {"7  uniform blocks C + n(k-1): 221133 -> 10, 1000 trials", 5000.0, theorem_four},
      {"8  varying blocks C + sum(k_i-1): 221113333 -> 13, 1000 trials", 5000.0, theorem_five},
      {"9  taxonomy partition l in [1,4], n in [l,8]; generate round trips", 30000.0, taxonomy_partition},
      {"10 partial total = full total - n, 1000 instances", 1000.0, cost_model_relation},
      {"11 verify output byte-identical for identical seeds", 60000.0, verify_determinism},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = Clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome.ok = false;
      outcome.detail = std::string("exception: ") + e.what();
    }
    const double ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    if (outcome.ok && ms >= c.limit_ms) {
      outcome.ok = false;
      outcome.detail = "exceeded time limit";
    }
    std::printf("[%s] %-78s %10.3f ms (limit %.0f ms)%s%s\n", outcome.ok ? "PASS" : "FAIL", c.name, ms, c.limit_ms,
                outcome.detail.empty() ? "" : "  ", outcome.detail.c_str());
    failures += outcome.ok ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(std::size(criteria)) - failures, std::size(criteria));
  return failures;
}
