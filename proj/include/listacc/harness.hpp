#pragma once

// Experiment harness behind the listacc CLI. Each command takes an
// ExperimentConfig, writes its table to an ostream and returns a process
// exit status. Output depends only on the config, so identical configs
// produce byte-identical files.

#include <charconv>
#include <cstdint>
#include <fstream>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "listacc/core_list.hpp"
#include "listacc/error.hpp"
#include "listacc/predictors.hpp"
#include "listacc/rng.hpp"
#include "listacc/taxonomy.hpp"

namespace listacc::harness {

enum class OutputFormat { Csv, Json };

struct ExperimentConfig {
  std::optional<std::size_t> list_size;
  std::optional<std::string> list_file;
  /// Inline sequence, space or comma separated.
  std::optional<std::string> seq;
  std::optional<std::string> seq_file;
  /// Taxonomy class strings; bench accepts several, other commands one.
  std::vector<std::string> classes;
  std::vector<Algorithm> algorithms{Algorithm::MoveToFront};
  CostModel cost_model = CostModel::Full;
  std::optional<std::uint64_t> seed;
  OutputFormat format = OutputFormat::Csv;
  /// Sequence length for classes that do not fix it.
  std::optional<std::size_t> length;
  std::size_t count = 1;
  std::size_t trials = 100;
  std::vector<PredictionSource> theorems;
  std::size_t min_l = 1;
  std::size_t max_l = 6;
  std::int64_t max_repeat = 5;
};

// ---------------------------------------------------------------- parsing

inline std::vector<std::int64_t> parse_ints(std::string_view text) {
  std::vector<std::int64_t> out;
  std::size_t i = 0;
  auto is_sep = [](char c) { return c == ' ' || c == '\t' || c == ',' || c == '\r' || c == '\n'; };
  while (i < text.size()) {
    if (is_sep(text[i])) {
      ++i;
      continue;
    }
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + text.size(), v);
    const auto consumed = static_cast<std::size_t>(ptr - (text.data() + i));
    if (ec != std::errc{} || consumed == 0 || (i + consumed < text.size() && !is_sep(text[i + consumed])))
      throw Error(ErrorCode::InvalidInput, "malformed integer in '" + std::string(text) + "'");
    if (v < 1) throw Error(ErrorCode::InvalidInput, "element ids must be positive, got " + std::to_string(v));
    out.push_back(v);
    i += consumed;
  }
  return out;
}

inline std::vector<ElementId> to_ids(const std::vector<std::int64_t>& values) {
  std::vector<ElementId> out;
  out.reserve(values.size());
  for (auto v : values) out.push_back(ElementId{v});
  return out;
}

/// Sequence file: `#` comment lines, then one whitespace-separated sequence per line.
inline std::vector<RequestSequence> read_sequences(std::istream& in) {
  std::vector<RequestSequence> out;
  std::string line;
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    out.emplace_back(to_ids(parse_ints(line)));
  }
  return out;
}

inline std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "'");
  return in;
}

inline ListState resolve_list(const ExperimentConfig& cfg) {
  if (cfg.list_file) {
    auto in = open_input(*cfg.list_file);
    auto lists = read_sequences(in);
    if (lists.size() != 1) throw Error(ErrorCode::InvalidInput, "list file must hold exactly one list");
    ListState list(std::vector<ElementId>(lists.front().requests().begin(), lists.front().requests().end()));
    if (cfg.list_size && *cfg.list_size != list.size())
      throw Error(ErrorCode::InvalidInput, "--list-size disagrees with the list file");
    return list;
  }
  if (!cfg.list_size || *cfg.list_size == 0) throw Error(ErrorCode::InvalidInput, "--list-size or --list-file is required");
  return ListState::iota(*cfg.list_size);
}

/// True when generate() consumes randomness for this class.
inline bool is_stochastic(const SequenceClass& c) {
  if (!c.type) return true;
  if (*c.type == TypeTag::IV) return !c.repeated_position;
  return *c.type == TypeTag::III || *c.type == TypeTag::V;
}

inline SequenceClass single_class(const ExperimentConfig& cfg) {
  if (cfg.classes.size() != 1) throw Error(ErrorCode::InvalidInput, "exactly one --class is required");
  return parse_sequence_class(cfg.classes.front());
}

inline std::uint64_t require_seed(const ExperimentConfig& cfg, std::string_view why) {
  if (!cfg.seed) throw Error(ErrorCode::InvalidInput, "--seed is required for " + std::string(why));
  return *cfg.seed;
}

/// `count` sequences of class `spec`; sequence i is generated from the i-th
/// output of SplitMix64(seed).
inline std::vector<RequestSequence> generate_many(const ListState& list, const SequenceClass& spec,
                                                  std::optional<std::uint64_t> seed, std::optional<std::size_t> n,
                                                  std::size_t count) {
  SplitMix64 seeds(seed.value_or(0));
  std::vector<RequestSequence> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(generate(list, spec, seeds.next(), n));
  return out;
}

/// Exactly one of --seq, --seq-file, --class.
inline std::vector<RequestSequence> resolve_sequences(const ExperimentConfig& cfg, const ListState& list) {
  const int sources = int(cfg.seq.has_value()) + int(cfg.seq_file.has_value()) + int(!cfg.classes.empty());
  if (sources != 1) throw Error(ErrorCode::InvalidInput, "specify exactly one of --seq, --seq-file, --class");
  if (cfg.seq) return {RequestSequence(to_ids(parse_ints(*cfg.seq)))};
  if (cfg.seq_file) {
    auto in = open_input(*cfg.seq_file);
    auto seqs = read_sequences(in);
    if (seqs.empty()) throw Error(ErrorCode::InvalidInput, "sequence file holds no sequences");
    return seqs;
  }
  auto spec = single_class(cfg);
  if (is_stochastic(spec)) require_seed(cfg, "class " + to_string(spec));
  return generate_many(list, spec, cfg.seed, cfg.length, cfg.count);
}

// ---------------------------------------------------------------- output

inline std::string join(std::span<const ElementId> ids, char sep = ' ') {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out.push_back(sep);
    out += std::to_string(ids[i].value);
  }
  return out;
}

inline nlohmann::ordered_json to_json(std::span<const ElementId> ids) {
  auto arr = nlohmann::ordered_json::array();
  for (auto e : ids) arr.push_back(e.value);
  return arr;
}

/// Shortest round-trip decimal form.
inline std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

// ---------------------------------------------------------------- generate

inline int cmd_generate(const ExperimentConfig& cfg, std::ostream& out) {
  const auto list = resolve_list(cfg);
  const auto spec = single_class(cfg);
  if (is_stochastic(spec)) require_seed(cfg, "class " + to_string(spec));
  const auto seqs = generate_many(list, spec, cfg.seed, cfg.length, cfg.count);
  const std::string seed_text = cfg.seed ? std::to_string(*cfg.seed) : "none";

  if (cfg.format == OutputFormat::Json) {
    nlohmann::ordered_json doc;
    doc["class"] = to_string(spec);
    doc["seed"] = cfg.seed ? nlohmann::ordered_json(*cfg.seed) : nlohmann::ordered_json(nullptr);
    doc["list"] = to_json(list.elements());
    doc["sequences"] = nlohmann::ordered_json::array();
    for (const auto& s : seqs) doc["sequences"].push_back(to_json(s.requests()));
    out << doc.dump(2) << '\n';
    return 0;
  }
  out << "# class: " << to_string(spec) << '\n';
  out << "# seed: " << seed_text << '\n';
  out << "# list: " << join(list.elements()) << '\n';
  for (const auto& s : seqs) out << join(s.requests()) << '\n';
  return 0;
}

// ---------------------------------------------------------------- classify

inline int cmd_classify(const ExperimentConfig& cfg, std::ostream& out) {
  const auto list = resolve_list(cfg);
  const auto seqs = resolve_sequences(cfg, list);
  if (cfg.format == OutputFormat::Json) {
    auto doc = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < seqs.size(); ++i) {
      nlohmann::ordered_json row;
      row["index"] = i;
      row["l"] = list.size();
      row["n"] = seqs[i].size();
      row["sequence"] = to_json(seqs[i].requests());
      row["class"] = to_string(classify(list, seqs[i]));
      doc.push_back(std::move(row));
    }
    out << doc.dump(2) << '\n';
    return 0;
  }
  out << "index,l,n,sequence,class\n";
  for (std::size_t i = 0; i < seqs.size(); ++i)
    out << i << ',' << list.size() << ',' << seqs[i].size() << ',' << join(seqs[i].requests()) << ','
        << to_string(classify(list, seqs[i])) << '\n';
  return 0;
}

// ---------------------------------------------------------------- simulate

inline int cmd_simulate(const ExperimentConfig& cfg, std::ostream& out) {
  const auto list = resolve_list(cfg);
  const auto seqs = resolve_sequences(cfg, list);
  const auto model = std::string(to_string(cfg.cost_model));

  auto doc = nlohmann::ordered_json::array();
  if (cfg.format == OutputFormat::Csv)
    out << "seq,algorithm,cost_model,step,element,position,access_cost,paid_cost,list_after\n";
  for (std::size_t s = 0; s < seqs.size(); ++s) {
    for (auto algo : cfg.algorithms) {
      const auto trace = serve(list, seqs[s], algo, cfg.cost_model);
      const auto name = std::string(to_string(algo));
      Cost access_total = 0, paid_total = 0;
      for (const auto& st : trace.steps) {
        access_total += st.access_cost;
        paid_total += st.paid_exchange_cost;
      }
      if (cfg.format == OutputFormat::Csv) {
        for (std::size_t i = 0; i < trace.steps.size(); ++i) {
          const auto& st = trace.steps[i];
          out << s << ',' << name << ',' << model << ',' << i + 1 << ',' << st.request.value << ','
              << st.position_found << ',' << st.access_cost << ',' << st.paid_exchange_cost << ','
              << join(st.list_after.elements()) << '\n';
        }
        out << s << ',' << name << ',' << model << ",total,,," << access_total << ',' << paid_total << ','
            << join(trace.final_list().elements()) << '\n';
        continue;
      }
      nlohmann::ordered_json row;
      row["seq"] = s;
      row["algorithm"] = name;
      row["cost_model"] = model;
      row["initial_list"] = to_json(list.elements());
      row["sequence"] = to_json(seqs[s].requests());
      row["steps"] = nlohmann::ordered_json::array();
      for (std::size_t i = 0; i < trace.steps.size(); ++i) {
        const auto& st = trace.steps[i];
        row["steps"].push_back({{"step", i + 1},
                                {"element", st.request.value},
                                {"position", st.position_found},
                                {"access_cost", st.access_cost},
                                {"paid_cost", st.paid_exchange_cost},
                                {"list_after", to_json(st.list_after.elements())}});
      }
      row["total_cost"] = trace.total_cost;
      row["final_list"] = to_json(trace.final_list().elements());
      doc.push_back(std::move(row));
    }
  }
  if (cfg.format == OutputFormat::Json) out << doc.dump(2) << '\n';
  return 0;
}

// ---------------------------------------------------------------- verify

struct VerificationRow {
  std::size_t l = 0;
  std::size_t n = 0;
  std::string params;
  VerificationReport report;
};

inline constexpr PredictionSource kAllSources[] = {
    PredictionSource::Theorem1,   PredictionSource::Theorem2, PredictionSource::Corollary1, PredictionSource::Theorem3,
    PredictionSource::Corollary2, PredictionSource::Theorem4, PredictionSource::Theorem5,
};

namespace detail {

inline std::string dash_join(std::span<const ElementId> ids) { return join(ids, '-'); }

inline std::string dash_join(std::span<const std::int64_t> values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out.push_back('-');
    out += std::to_string(values[i]);
  }
  return out;
}

inline RequestSequence reversed(const ListState& list) {
  std::vector<ElementId> v(list.elements().rbegin(), list.elements().rend());
  return RequestSequence(std::move(v));
}

inline RequestSequence in_order(const ListState& list) {
  return RequestSequence(std::vector<ElementId>(list.elements().begin(), list.elements().end()));
}

/// Independent stream per theorem, so selecting a subset of theorems does
/// not change the rows of the others.
inline SplitMix64 stream_for(std::uint64_t seed, PredictionSource src) {
  SplitMix64 mix(seed ^ (0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(src) + 1)));
  return SplitMix64(mix.next());
}

}  // namespace detail

/// Sweeps the selected predictors over list sizes [min_l, max_l] (or the
/// single --list-size) and returns one row per checked instance, in a fixed
/// order.
inline std::vector<VerificationRow> verification_sweep(const ExperimentConfig& cfg) {
  std::size_t lo = cfg.min_l, hi = cfg.max_l;
  if (cfg.list_size) lo = hi = *cfg.list_size;
  if (lo < 1 || hi < lo) throw Error(ErrorCode::InvalidInput, "invalid list-size range");

  std::vector<PredictionSource> selected;
  for (auto src : kAllSources) {
    if (cfg.theorems.empty() || std::find(cfg.theorems.begin(), cfg.theorems.end(), src) != cfg.theorems.end())
      selected.push_back(src);
  }

  std::vector<VerificationRow> rows;
  auto add = [&](std::size_t l, const ListState& list, const RequestSequence& seq, std::string params,
                 const CostPrediction& pred) {
    rows.push_back({l, seq.size(), std::move(params), verify(pred, list, seq)});
  };

  for (auto src : selected) {
    switch (src) {
      case PredictionSource::Theorem1:
        for (std::size_t l = lo; l <= hi; ++l) {
          auto list = ListState::iota(l);
          add(l, list, detail::in_order(list), "", predict_type1_best(static_cast<std::int64_t>(l)));
        }
        break;
      case PredictionSource::Theorem2:
        for (std::size_t l = lo; l <= hi; ++l) {
          auto list = ListState::iota(l);
          add(l, list, detail::reversed(list), "", predict_type2_worst(static_cast<std::int64_t>(l)));
        }
        break;
      case PredictionSource::Corollary1: {
        const SequenceClass type3{Group::Group1, ClassLabel::A, TypeTag::III, std::nullopt, std::nullopt};
        auto rng = detail::stream_for(cfg.seed.value_or(0), src);
        for (std::size_t l = std::max<std::size_t>(lo, 3); l <= hi; ++l) {
          auto list = ListState::iota(l);
          const auto pred = bounds_type3(static_cast<std::int64_t>(l));
          std::vector<RequestSequence> seqs;
          if (listacc::detail::saturating_factorial(l) <= kMaxEnumeration) {
            seqs = enumerate_class(list, type3, l);
          } else {
            require_seed(cfg, "sampled TYPE_III sweeps");
            for (std::size_t t = 0; t < cfg.trials; ++t) seqs.push_back(generate(list, type3, rng.next()));
          }
          for (const auto& s : seqs) add(l, list, s, "seq=" + detail::dash_join(s.requests()), pred);
        }
        break;
      }
      case PredictionSource::Theorem3:
      case PredictionSource::Corollary2:
        for (std::size_t l = lo; l <= hi; ++l) {
          auto list = ListState::iota(l);
          const std::size_t max_n = cfg.length.value_or(2 * l);
          for (std::size_t p = 1; p <= l; ++p) {
            for (std::size_t n = 1; n <= max_n; ++n) {
              RequestSequence seq(std::vector<ElementId>(n, list.at(p)));
              const auto pred = src == PredictionSource::Theorem3
                                    ? predict_type4(static_cast<std::int64_t>(n), static_cast<std::int64_t>(p),
                                                    static_cast<std::int64_t>(l))
                                    : bounds_type4(static_cast<std::int64_t>(n), static_cast<std::int64_t>(l));
              add(l, list, seq, "p=" + std::to_string(p), pred);
            }
          }
        }
        break;
      case PredictionSource::Theorem4:
      case PredictionSource::Theorem5: {
        auto rng = detail::stream_for(require_seed(cfg, "block-repetition sweeps"), src);
        for (std::size_t t = 0; t < cfg.trials; ++t) {
          const auto l = static_cast<std::size_t>(rng.between(lo, hi));
          auto list = ListState::iota(l);
          std::vector<ElementId> base(list.elements().begin(), list.elements().end());
          rng.shuffle(std::span<ElementId>(base));
          std::vector<std::int64_t> repeats(l);
          if (src == PredictionSource::Theorem4) {
            std::fill(repeats.begin(), repeats.end(), static_cast<std::int64_t>(rng.between(1, cfg.max_repeat)));
          } else {
            for (auto& k : repeats) k = static_cast<std::int64_t>(rng.between(1, cfg.max_repeat));
          }
          BlockRepetitionSpec spec(list, RequestSequence(base), repeats);
          const auto base_cost =
              static_cast<std::int64_t>(serve_cost(list, spec.base(), Algorithm::MoveToFront, CostModel::Full));
          const auto pred = src == PredictionSource::Theorem4
                                ? predict_uniform_blocks(base_cost, static_cast<std::int64_t>(l), repeats.front())
                                : predict_varying_blocks(base_cost, repeats);
          std::string params = "base=" + detail::dash_join(spec.base().requests()) + ";C=" +
                               std::to_string(base_cost) + ";k=" +
                               (src == PredictionSource::Theorem4 ? std::to_string(repeats.front())
                                                                  : detail::dash_join(std::span<const std::int64_t>(repeats)));
          add(l, list, expand_blocks(spec), std::move(params), pred);
        }
        break;
      }
    }
  }
  return rows;
}

/// Writes the verification table; returns 1 iff any row is a VIOLATION.
inline int write_verification(const std::vector<VerificationRow>& rows, OutputFormat format, std::ostream& out) {
  bool violation = false;
  if (format == OutputFormat::Json) {
    auto doc = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
      const auto& p = r.report.prediction;
      nlohmann::ordered_json row;
      row["theorem"] = to_string(p.source);
      row["l"] = r.l;
      row["n"] = r.n;
      row["params"] = r.params;
      row["predicted"] = p.exact() ? nlohmann::ordered_json(p.value()) : nlohmann::ordered_json(nullptr);
      row["lower"] = p.exact() ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(p.lower);
      row["upper"] = p.exact() ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(p.upper);
      row["simulated"] = r.report.simulated;
      row["status"] = to_string(r.report.status);
      doc.push_back(std::move(row));
      violation |= !r.report.ok();
    }
    out << doc.dump(2) << '\n';
  } else {
    out << "theorem,l,n,params,predicted,lower,upper,simulated,status\n";
    for (const auto& r : rows) {
      const auto& p = r.report.prediction;
      out << to_string(p.source) << ',' << r.l << ',' << r.n << ',' << r.params << ',';
      if (p.exact()) out << p.value() << ",,,";
      else out << ',' << p.lower << ',' << p.upper << ',';
      out << r.report.simulated << ',' << to_string(r.report.status) << '\n';
      violation |= !r.report.ok();
    }
  }
  return violation ? 1 : 0;
}

inline int cmd_verify(const ExperimentConfig& cfg, std::ostream& out) {
  return write_verification(verification_sweep(cfg), cfg.format, out);
}

// ---------------------------------------------------------------- bench

struct BenchRow {
  std::string klass;
  Algorithm algorithm;
  std::size_t trials = 0;
  double mean = 0;
  Cost min = 0;
  Cost max = 0;
};

/// Cost statistics per (class, algorithm). Every algorithm sees the same
/// sampled sequences for a class.
inline std::vector<BenchRow> bench_table(const ExperimentConfig& cfg) {
  if (cfg.classes.empty()) throw Error(ErrorCode::InvalidInput, "bench needs at least one --class");
  if (cfg.trials == 0) throw Error(ErrorCode::InvalidInput, "--trials must be >= 1");
  const auto list = resolve_list(cfg);
  std::vector<BenchRow> rows;
  for (const auto& text : cfg.classes) {
    const auto spec = parse_sequence_class(text);
    if (is_stochastic(spec)) require_seed(cfg, "class " + to_string(spec));
    const auto seqs = generate_many(list, spec, cfg.seed, cfg.length, cfg.trials);
    for (auto algo : cfg.algorithms) {
      BenchRow row{to_string(spec), algo, seqs.size(), 0.0, std::numeric_limits<Cost>::max(), 0};
      Cost sum = 0;
      for (const auto& s : seqs) {
        const auto c = serve_cost(list, s, algo, cfg.cost_model);
        sum += c;
        row.min = std::min(row.min, c);
        row.max = std::max(row.max, c);
      }
      row.mean = static_cast<double>(sum) / static_cast<double>(seqs.size());
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

inline int cmd_bench(const ExperimentConfig& cfg, std::ostream& out) {
  const auto rows = bench_table(cfg);
  const std::string seed_text = cfg.seed ? std::to_string(*cfg.seed) : "";
  if (cfg.format == OutputFormat::Json) {
    auto doc = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
      nlohmann::ordered_json row;
      row["class"] = r.klass;
      row["algorithm"] = to_string(r.algorithm);
      row["cost_model"] = to_string(cfg.cost_model);
      row["trials"] = r.trials;
      row["mean"] = r.mean;
      row["min"] = r.min;
      row["max"] = r.max;
      row["seed"] = cfg.seed ? nlohmann::ordered_json(*cfg.seed) : nlohmann::ordered_json(nullptr);
      doc.push_back(std::move(row));
    }
    out << doc.dump(2) << '\n';
    return 0;
  }
  out << "class,algorithm,cost_model,trials,mean,min,max,seed\n";
  for (const auto& r : rows)
    out << r.klass << ',' << to_string(r.algorithm) << ',' << to_string(cfg.cost_model) << ',' << r.trials << ','
        << format_double(r.mean) << ',' << r.min << ',' << r.max << ',' << seed_text << '\n';
  return 0;
}

}  // namespace listacc::harness
