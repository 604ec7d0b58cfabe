#pragma once

// Request-sequence taxonomy. Every (list, sequence) pair with n >= l gets
// exactly one leaf label:
//
//   GROUP1 (n == l)
//     A  every list element requested   TYPE_I list order, TYPE_II reversed,
//                                        TYPE_III any other permutation
//     B  some element missing           TYPE_IV one element repeated,
//                                        TYPE_V two or more distinct elements
//   GROUP2 (n > l)
//     C_a_i   l | n, all present, equal frequencies
//             TYPE_VI list order m times, TYPE_VII reversed m times, else untyped
//     C_a_ii  l | n, all present, unequal frequencies
//     C_b     l | n, some element missing
//     D       l does not divide n
//
// Canonical strings look like "GROUP1/A/TYPE_III", "GROUP1/B/TYPE_IV[p=2]",
// "GROUP2/C_a_i/TYPE_VI[m=2]" and "GROUP2/D".

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "listacc/core_list.hpp"
#include "listacc/error.hpp"
#include "listacc/rng.hpp"

namespace listacc {

enum class Group { Group1, Group2 };
enum class ClassLabel { A, B, CaI, CaII, Cb, D };
enum class TypeTag { I, II, III, IV, V, VI, VII };

struct SequenceClass {
  Group group = Group::Group1;
  ClassLabel klass = ClassLabel::A;
  std::optional<TypeTag> type;
  /// TYPE_IV only: list position of the repeated element.
  std::optional<std::size_t> repeated_position;
  /// TYPE_VI / TYPE_VII only: number of concatenated copies.
  std::optional<std::size_t> multiplier;

  friend bool operator==(const SequenceClass&, const SequenceClass&) = default;
};

/// Upper bound on the size of a class that enumerate_class will materialize.
inline constexpr std::uint64_t kMaxEnumeration = 1'000'000;
/// Attempt cap for rejection sampling in generate().
inline constexpr int kMaxSamplingAttempts = 10'000;

constexpr std::string_view to_string(Group g) { return g == Group::Group1 ? "GROUP1" : "GROUP2"; }

constexpr std::string_view to_string(ClassLabel c) {
  switch (c) {
    case ClassLabel::A: return "A";
    case ClassLabel::B: return "B";
    case ClassLabel::CaI: return "C_a_i";
    case ClassLabel::CaII: return "C_a_ii";
    case ClassLabel::Cb: return "C_b";
    case ClassLabel::D: return "D";
  }
  return "?";
}

constexpr std::string_view to_string(TypeTag t) {
  switch (t) {
    case TypeTag::I: return "TYPE_I";
    case TypeTag::II: return "TYPE_II";
    case TypeTag::III: return "TYPE_III";
    case TypeTag::IV: return "TYPE_IV";
    case TypeTag::V: return "TYPE_V";
    case TypeTag::VI: return "TYPE_VI";
    case TypeTag::VII: return "TYPE_VII";
  }
  return "?";
}

inline std::string to_string(const SequenceClass& c) {
  std::string out;
  out.append(to_string(c.group)).append("/").append(to_string(c.klass));
  if (c.type) {
    out.append("/").append(to_string(*c.type));
    if (c.repeated_position) out.append("[p=").append(std::to_string(*c.repeated_position)).append("]");
    if (c.multiplier) out.append("[m=").append(std::to_string(*c.multiplier)).append("]");
  }
  return out;
}

namespace detail {

constexpr Group group_of(ClassLabel c) {
  return (c == ClassLabel::A || c == ClassLabel::B) ? Group::Group1 : Group::Group2;
}

constexpr ClassLabel class_of(TypeTag t) {
  switch (t) {
    case TypeTag::I:
    case TypeTag::II:
    case TypeTag::III: return ClassLabel::A;
    case TypeTag::IV:
    case TypeTag::V: return ClassLabel::B;
    case TypeTag::VI:
    case TypeTag::VII: return ClassLabel::CaI;
  }
  return ClassLabel::A;
}

[[noreturn]] inline void inconsistent(const std::string& what) { throw Error(ErrorCode::InconsistentSpec, what); }

}  // namespace detail

/// Checks the structural invariants of a label (group/class/type agreement,
/// parameter placement). Parameters p and m are optional here; classify()
/// always fills them in.
inline void validate(const SequenceClass& c) {
  if (detail::group_of(c.klass) != c.group)
    detail::inconsistent("class " + std::string(to_string(c.klass)) + " does not belong to " +
                         std::string(to_string(c.group)));
  if (c.type && detail::class_of(*c.type) != c.klass)
    detail::inconsistent(std::string(to_string(*c.type)) + " does not belong to class " +
                         std::string(to_string(c.klass)));
  if (c.repeated_position && c.type != TypeTag::IV) detail::inconsistent("p is only meaningful for TYPE_IV");
  if (c.repeated_position && *c.repeated_position < 1) detail::inconsistent("p must be >= 1");
  if (c.multiplier && c.type != TypeTag::VI && c.type != TypeTag::VII)
    detail::inconsistent("m is only meaningful for TYPE_VI and TYPE_VII");
  if (c.multiplier && *c.multiplier < 2) detail::inconsistent("m must be >= 2");
}

inline SequenceClass parse_sequence_class(std::string_view text) {
  auto fail = [&](const char* why) -> SequenceClass {
    throw Error(ErrorCode::InvalidClassString, "'" + std::string(text) + "': " + why);
  };
  SequenceClass out;
  std::string_view rest = text;
  auto take = [&rest]() {
    auto slash = rest.find('/');
    auto part = rest.substr(0, slash);
    rest = slash == std::string_view::npos ? std::string_view{} : rest.substr(slash + 1);
    return part;
  };

  auto group = take();
  if (group == "GROUP1") out.group = Group::Group1;
  else if (group == "GROUP2") out.group = Group::Group2;
  else return fail("expected GROUP1 or GROUP2");

  auto klass = take();
  static constexpr ClassLabel kClasses[] = {ClassLabel::A,    ClassLabel::B,  ClassLabel::CaI,
                                            ClassLabel::CaII, ClassLabel::Cb, ClassLabel::D};
  auto kit = std::find_if(std::begin(kClasses), std::end(kClasses), [&](ClassLabel c) { return to_string(c) == klass; });
  if (kit == std::end(kClasses)) return fail("unknown class");
  out.klass = *kit;

  if (!rest.empty()) {
    auto type_part = take();
    if (!rest.empty()) return fail("trailing components");
    std::string_view param;
    if (auto br = type_part.find('['); br != std::string_view::npos) {
      if (type_part.back() != ']') return fail("unterminated parameter");
      param = type_part.substr(br + 1, type_part.size() - br - 2);
      type_part = type_part.substr(0, br);
    }
    static constexpr TypeTag kTypes[] = {TypeTag::I, TypeTag::II, TypeTag::III, TypeTag::IV,
                                         TypeTag::V, TypeTag::VI, TypeTag::VII};
    auto tit = std::find_if(std::begin(kTypes), std::end(kTypes), [&](TypeTag t) { return to_string(t) == type_part; });
    if (tit == std::end(kTypes)) return fail("unknown type");
    out.type = *tit;
    if (!param.empty()) {
      if (param.size() < 3 || param[1] != '=') return fail("parameter must be p=N or m=N");
      std::size_t value = 0;
      auto digits = param.substr(2);
      auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
      if (ec != std::errc{} || ptr != digits.data() + digits.size()) return fail("parameter value is not an integer");
      if (param[0] == 'p') out.repeated_position = value;
      else if (param[0] == 'm') out.multiplier = value;
      else return fail("parameter must be p=N or m=N");
    }
  }
  try {
    validate(out);
  } catch (const Error& e) {
    throw Error(ErrorCode::InvalidClassString, "'" + std::string(text) + "': " + e.what());
  }
  return out;
}

namespace detail {

/// 0-indexed list positions of each request; throws on foreign elements.
inline std::vector<std::size_t> positions_of(const ListState& list, const RequestSequence& seq) {
  std::unordered_map<ElementId, std::size_t> index;
  auto elems = list.elements();
  for (std::size_t i = 0; i < elems.size(); ++i) index.emplace(elems[i], i);
  std::vector<std::size_t> out;
  out.reserve(seq.size());
  for (std::size_t i = 0; i < seq.size(); ++i) {
    auto it = index.find(seq[i]);
    if (it == index.end())
      throw Error(ErrorCode::ElementNotInList,
                  "request #" + std::to_string(i) + " (element " + std::to_string(seq[i].value) +
                      ") is not in the list",
                  i);
    out.push_back(it->second);
  }
  return out;
}

/// True if pos[i] == i mod l (reversed: l-1 - i mod l) for every i.
inline bool repeats_order(const std::vector<std::size_t>& pos, std::size_t l, bool reversed) {
  for (std::size_t i = 0; i < pos.size(); ++i) {
    const std::size_t expect = reversed ? l - 1 - (i % l) : i % l;
    if (pos[i] != expect) return false;
  }
  return true;
}

inline SequenceClass classify_positions(const std::vector<std::size_t>& pos, std::size_t l) {
  const std::size_t n = pos.size();
  if (n < l)
    throw Error(ErrorCode::SequenceShorterThanList,
                "n = " + std::to_string(n) + " is shorter than the list (l = " + std::to_string(l) + ")");
  std::vector<std::size_t> freq(l, 0);
  for (auto p : pos) ++freq[p];
  const bool covers = std::none_of(freq.begin(), freq.end(), [](std::size_t f) { return f == 0; });

  SequenceClass out;
  if (n == l) {
    out.group = Group::Group1;
    if (covers) {
      out.klass = ClassLabel::A;
      if (repeats_order(pos, l, false)) out.type = TypeTag::I;
      else if (repeats_order(pos, l, true)) out.type = TypeTag::II;
      else out.type = TypeTag::III;
    } else {
      out.klass = ClassLabel::B;
      const auto distinct = static_cast<std::size_t>(std::count_if(freq.begin(), freq.end(), [](std::size_t f) { return f > 0; }));
      if (distinct == 1) {
        out.type = TypeTag::IV;
        out.repeated_position = pos.front() + 1;
      } else {
        out.type = TypeTag::V;
      }
    }
    return out;
  }

  out.group = Group::Group2;
  if (n % l != 0) {
    out.klass = ClassLabel::D;
    return out;
  }
  if (!covers) {
    out.klass = ClassLabel::Cb;
    return out;
  }
  const bool equal = std::all_of(freq.begin(), freq.end(), [&](std::size_t f) { return f == freq.front(); });
  if (!equal) {
    out.klass = ClassLabel::CaII;
    return out;
  }
  out.klass = ClassLabel::CaI;
  if (repeats_order(pos, l, false)) out.type = TypeTag::VI;
  else if (repeats_order(pos, l, true)) out.type = TypeTag::VII;
  if (out.type) out.multiplier = n / l;
  return out;
}

}  // namespace detail

/// Most specific taxonomy label for `seq` served on `list`. For l = 1 the
/// list order and its reversal coincide; the list-order types (TYPE_I,
/// TYPE_VI) win.
inline SequenceClass classify(const ListState& list, const RequestSequence& seq) {
  return detail::classify_positions(detail::positions_of(list, seq), list.size());
}

namespace detail {

/// Resolves the sequence length a spec implies and rejects specs that no
/// sequence over a list of size l can realize. TYPE_IV accepts any n >= 1:
/// its sequences stay well-defined (and priced by the TYPE_IV predictor)
/// off the n == l diagonal, but only round-trip through classify() there.
inline std::size_t checked_length(std::size_t l, const SequenceClass& spec, std::optional<std::size_t> n_opt) {
  validate(spec);
  const auto l_str = std::to_string(l);
  auto need = [&](bool ok, const std::string& why) {
    if (!ok) inconsistent(std::string(to_string(spec.klass)) + (spec.type ? "/" + std::string(to_string(*spec.type)) : "") +
                          " with l = " + l_str + ": " + why);
  };

  if (spec.type == TypeTag::IV) {
    const std::size_t n = n_opt.value_or(l);
    need(n >= 1, "n must be >= 1");
    if (spec.repeated_position) need(*spec.repeated_position <= l, "p must lie in [1, l]");
    if (n == l) need(l >= 2, "a single-element list is always Class A");
    return n;
  }

  if (spec.group == Group::Group1) {
    const std::size_t n = n_opt.value_or(l);
    need(n == l, "GROUP1 requires n = l, got n = " + std::to_string(n));
    need(spec.type.has_value(), "a type tag is required for classes A and B");
    switch (*spec.type) {
      case TypeTag::II: need(l >= 2, "reversal equals list order when l = 1"); break;
      case TypeTag::III: need(l >= 3, "every permutation is TYPE_I or TYPE_II when l < 3"); break;
      case TypeTag::V: need(l >= 3, "two distinct elements with a repeat need l >= 3"); break;
      default: break;
    }
    return n;
  }

  std::optional<std::size_t> n = n_opt;
  if (spec.multiplier) {
    const std::size_t implied = *spec.multiplier * l;
    need(!n || *n == implied, "m = " + std::to_string(*spec.multiplier) + " implies n = " + std::to_string(implied));
    n = implied;
  }
  need(n.has_value(), "sequence length n is required");
  need(*n > l, "GROUP2 requires n > l, got n = " + std::to_string(*n));
  need(l >= 2 || spec.type == TypeTag::VI, "every sequence over a single-element list is TYPE_VI");
  if (spec.klass == ClassLabel::D) need(*n % l != 0, "class D requires l not dividing n");
  else need(*n % l == 0, "class C requires n to be a multiple of l");
  return *n;
}

inline RequestSequence from_positions(const ListState& list, const std::vector<std::size_t>& pos) {
  std::vector<ElementId> out;
  out.reserve(pos.size());
  auto elems = list.elements();
  for (auto p : pos) out.push_back(elems[p]);
  return RequestSequence(std::move(out));
}

inline std::vector<std::size_t> cyclic(std::size_t l, std::size_t n, bool reversed) {
  std::vector<std::size_t> pos(n);
  for (std::size_t i = 0; i < n; ++i) pos[i] = reversed ? l - 1 - (i % l) : i % l;
  return pos;
}

/// Label equality where unset p/m/type on the spec act as wildcards only
/// for TYPE_IV's position (enumeration over all p).
inline bool matches(const SequenceClass& got, const SequenceClass& spec) {
  if (got.group != spec.group || got.klass != spec.klass || got.type != spec.type) return false;
  if (spec.repeated_position && got.repeated_position != spec.repeated_position) return false;
  if (spec.multiplier && got.multiplier != spec.multiplier) return false;
  return true;
}

template <typename Accept>
std::vector<std::size_t> sample(Accept accept, auto draw) {
  for (int attempt = 0; attempt < kMaxSamplingAttempts; ++attempt) {
    auto pos = draw();
    if (accept(pos)) return pos;
  }
  inconsistent("no sequence found within " + std::to_string(kMaxSamplingAttempts) + " sampling attempts");
}

inline std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > UINT64_MAX / a) return UINT64_MAX;
  return a * b;
}

inline std::uint64_t saturating_pow(std::uint64_t base, std::size_t exp) {
  std::uint64_t out = 1;
  for (std::size_t i = 0; i < exp; ++i) out = saturating_mul(out, base);
  return out;
}

inline std::uint64_t saturating_factorial(std::size_t k) {
  std::uint64_t out = 1;
  for (std::size_t i = 2; i <= k; ++i) out = saturating_mul(out, i);
  return out;
}

/// n! / (m!)^l, saturating.
inline std::uint64_t multiset_permutations(std::size_t l, std::size_t m) {
  // Build incrementally as a product of binomials C(j*m, m) to limit overflow.
  std::uint64_t out = 1;
  for (std::size_t j = 1; j <= l; ++j) {
    std::uint64_t binom = 1;
    const std::size_t top = j * m;
    for (std::size_t i = 1; i <= m; ++i) {
      binom = saturating_mul(binom, top - m + i);
      if (binom == UINT64_MAX) return UINT64_MAX;
      binom /= i;
    }
    out = saturating_mul(out, binom);
  }
  return out;
}

}  // namespace detail

/// Deterministic sequence in class `spec` over `list`. `n` may be omitted
/// when the class fixes it (GROUP1, TYPE_VI/VII with m). Underdetermined
/// classes draw from SplitMix64(seed).
inline RequestSequence generate(const ListState& list, const SequenceClass& spec, std::uint64_t seed,
                                std::optional<std::size_t> n_opt = std::nullopt) {
  const std::size_t l = list.size();
  const std::size_t n = detail::checked_length(l, spec, n_opt);
  SplitMix64 rng(seed);

  auto is = [&](ClassLabel klass, std::optional<TypeTag> type) {
    return [=](const std::vector<std::size_t>& pos) {
      auto got = detail::classify_positions(pos, l);
      return got.klass == klass && got.type == type;
    };
  };
  auto uniform = [&](std::size_t count, std::size_t alphabet) {
    std::vector<std::size_t> pos(count);
    for (auto& p : pos) p = static_cast<std::size_t>(rng.below(alphabet));
    return pos;
  };
  auto shuffled = [&](std::vector<std::size_t> pos) {
    rng.shuffle(std::span<std::size_t>(pos));
    return pos;
  };

  std::vector<std::size_t> pos;
  if (spec.type) {
    switch (*spec.type) {
      case TypeTag::I: pos = detail::cyclic(l, n, false); break;
      case TypeTag::II: pos = detail::cyclic(l, n, true); break;
      case TypeTag::VI: pos = detail::cyclic(l, n, false); break;
      case TypeTag::VII: pos = detail::cyclic(l, n, true); break;
      case TypeTag::IV: {
        const std::size_t p = spec.repeated_position ? *spec.repeated_position : 1 + rng.below(l);
        pos.assign(n, p - 1);
        break;
      }
      case TypeTag::III:
        pos = detail::sample(is(ClassLabel::A, TypeTag::III), [&] { return shuffled(detail::cyclic(l, l, false)); });
        break;
      case TypeTag::V:
        pos = detail::sample(is(ClassLabel::B, TypeTag::V), [&] { return uniform(l, l); });
        break;
    }
  } else {
    switch (spec.klass) {
      case ClassLabel::CaI:
        pos = detail::sample(is(ClassLabel::CaI, std::nullopt), [&] { return shuffled(detail::cyclic(l, n, false)); });
        break;
      case ClassLabel::CaII:
        // One copy of each element guarantees coverage; the rest are free.
        pos = detail::sample(is(ClassLabel::CaII, std::nullopt), [&] {
          auto p = detail::cyclic(l, l, false);
          auto extra = uniform(n - l, l);
          p.insert(p.end(), extra.begin(), extra.end());
          return shuffled(std::move(p));
        });
        break;
      case ClassLabel::Cb: {
        const auto missing = static_cast<std::size_t>(rng.below(l));
        pos = uniform(n, l - 1);
        for (auto& p : pos)
          if (p >= missing) ++p;
        break;
      }
      case ClassLabel::D: pos = uniform(n, l); break;
      default: detail::inconsistent("a type tag is required for classes A and B");
    }
  }
  return detail::from_positions(list, pos);
}

/// Every sequence of length n over `list` in class `spec`, in lexicographic
/// order of list positions. An unset p on TYPE_IV enumerates all positions.
inline std::vector<RequestSequence> enumerate_class(const ListState& list, const SequenceClass& spec, std::size_t n) {
  const std::size_t l = list.size();
  detail::checked_length(l, spec, n);

  std::uint64_t bound = 0;
  enum class Source { Cyclic, Repeat, Permutations, Multiset, Everything } source = Source::Everything;
  switch (spec.type.value_or(TypeTag::I)) {
    case TypeTag::I:
    case TypeTag::II:
    case TypeTag::VI:
    case TypeTag::VII:
      if (spec.type) {
        bound = 1;
        source = Source::Cyclic;
      }
      break;
    case TypeTag::IV:
      bound = spec.repeated_position ? 1 : l;
      source = Source::Repeat;
      break;
    case TypeTag::III:
      bound = detail::saturating_factorial(l);
      source = Source::Permutations;
      break;
    case TypeTag::V: break;
  }
  if (!spec.type && spec.klass == ClassLabel::CaI) {
    bound = detail::multiset_permutations(l, n / l);
    source = Source::Multiset;
  }
  if (bound == 0) bound = detail::saturating_pow(l, n);
  if (bound > kMaxEnumeration)
    throw Error(ErrorCode::ClassTooLarge,
                to_string(spec) + " at l = " + std::to_string(l) + ", n = " + std::to_string(n) + " has up to " +
                    (bound == UINT64_MAX ? std::string("2^64") : std::to_string(bound)) + " members",
                static_cast<std::size_t>(bound));

  std::vector<RequestSequence> out;
  auto keep = [&](const std::vector<std::size_t>& pos) {
    if (detail::matches(detail::classify_positions(pos, l), spec)) out.push_back(detail::from_positions(list, pos));
  };

  switch (source) {
    case Source::Cyclic: keep(detail::cyclic(l, n, spec.type == TypeTag::II || spec.type == TypeTag::VII)); break;
    case Source::Repeat:
      // Off the n == l diagonal these do not classify as TYPE_IV; they are
      // the TYPE_IV family by construction.
      for (std::size_t p = 1; p <= l; ++p) {
        if (spec.repeated_position && *spec.repeated_position != p) continue;
        out.push_back(detail::from_positions(list, std::vector<std::size_t>(n, p - 1)));
      }
      break;
    case Source::Permutations:
    case Source::Multiset: {
      auto pos = detail::cyclic(l, n, false);
      std::sort(pos.begin(), pos.end());
      do keep(pos);
      while (std::next_permutation(pos.begin(), pos.end()));
      break;
    }
    case Source::Everything: {
      std::vector<std::size_t> pos(n, 0);
      for (;;) {
        keep(pos);
        std::size_t i = n;
        while (i > 0 && ++pos[i - 1] == l) pos[--i] = 0;
        if (i == 0) break;
      }
      break;
    }
  }
  return out;
}

}  // namespace listacc
