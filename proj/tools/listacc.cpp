// listacc: generate, classify and simulate request sequences for
// self-organizing lists, and check the closed-form MTF cost predictors.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "listacc/harness.hpp"

namespace {

using listacc::harness::ExperimentConfig;

struct RawOptions {
  std::size_t list_size = 0;
  std::string list_file, seq, seq_file, algo = "mtf", cost_model = "full", format = "csv", out;
  std::vector<std::string> classes, theorems;
  std::uint64_t seed = 0;
  std::size_t length = 0, count = 1, trials = 100, min_l = 1, max_l = 6;
  std::int64_t max_repeat = 5;
};

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto comma = text.find(',', start);
    auto part = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (!part.empty()) out.push_back(part);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Self-organizing list experiments: taxonomy, simulation, MTF cost predictors"};
  app.set_config("--config", "", "TOML config file; command-line flags override its values");
  app.require_subcommand(1);

  RawOptions raw;
  auto* o_list_size = app.add_option("--list-size", raw.list_size, "List size l (list is 1..l)");
  auto* o_list_file = app.add_option("--list-file", raw.list_file, "File holding the initial list");
  auto* o_seq = app.add_option("--seq", raw.seq, "Inline request sequence, e.g. \"3 1 2\"");
  auto* o_seq_file = app.add_option("--seq-file", raw.seq_file, "Sequence file (one sequence per line)");
  app.add_option("--class", raw.classes, "Taxonomy class, e.g. GROUP1/B/TYPE_IV[p=2]");
  app.add_option("--algo", raw.algo, "Algorithms: mtf, transpose, fc, comma separated, or all");
  app.add_option("--cost-model", raw.cost_model, "full or partial")->check(CLI::IsMember({"full", "partial"}));
  auto* o_seed = app.add_option("--seed", raw.seed, "64-bit seed for SplitMix64");
  app.add_option("--format", raw.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", raw.out, "Output path (default stdout)");
  auto* o_length = app.add_option("--n", raw.length, "Sequence length when the class does not fix it");
  app.add_option("--count", raw.count, "Number of sequences to generate");
  app.add_option("--trials", raw.trials, "Random trials per sweep or bench class");
  app.add_option("--theorem", raw.theorems,
                 "Predictors to verify: THEOREM_1..THEOREM_5, COROLLARY_1, COROLLARY_2 (default all)");
  app.add_option("--min-l", raw.min_l, "Smallest list size in verify sweeps");
  app.add_option("--max-l", raw.max_l, "Largest list size in verify sweeps");
  app.add_option("--max-repeat", raw.max_repeat, "Largest block repeat count in verify sweeps");

  auto* generate = app.add_subcommand("generate", "Generate sequences of a taxonomy class")->fallthrough();
  auto* classify = app.add_subcommand("classify", "Classify sequences")->fallthrough();
  auto* simulate = app.add_subcommand("simulate", "Per-step access trace")->fallthrough();
  auto* verify = app.add_subcommand("verify", "Check cost predictors against simulation")->fallthrough();
  auto* bench = app.add_subcommand("bench", "Cost statistics per class and algorithm")->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    ExperimentConfig cfg;
    if (*o_list_size) cfg.list_size = raw.list_size;
    if (*o_list_file) cfg.list_file = raw.list_file;
    if (*o_seq) cfg.seq = raw.seq;
    if (*o_seq_file) cfg.seq_file = raw.seq_file;
    if (*o_seed) cfg.seed = raw.seed;
    if (*o_length) cfg.length = raw.length;
    cfg.classes = raw.classes;
    cfg.algorithms.clear();
    for (const auto& a : split_commas(raw.algo)) {
      if (a == "all") {
        cfg.algorithms = {listacc::Algorithm::MoveToFront, listacc::Algorithm::Transpose,
                          listacc::Algorithm::FrequencyCount};
        break;
      }
      cfg.algorithms.push_back(listacc::parse_algorithm(a));
    }
    cfg.cost_model = listacc::parse_cost_model(raw.cost_model);
    cfg.format = raw.format == "json" ? listacc::harness::OutputFormat::Json : listacc::harness::OutputFormat::Csv;
    cfg.count = raw.count;
    cfg.trials = raw.trials;
    for (const auto& t : raw.theorems)
      for (const auto& name : split_commas(t)) cfg.theorems.push_back(listacc::parse_prediction_source(name));
    cfg.min_l = raw.min_l;
    cfg.max_l = raw.max_l;
    cfg.max_repeat = raw.max_repeat;

    std::ofstream file;
    if (!raw.out.empty()) {
      file.open(raw.out, std::ios::binary);
      if (!file) throw listacc::Error(listacc::ErrorCode::Io, "cannot open '" + raw.out + "' for writing");
    }
    std::ostream& out = raw.out.empty() ? std::cout : file;

    int status = 0;
    if (*generate) status = listacc::harness::cmd_generate(cfg, out);
    else if (*classify) status = listacc::harness::cmd_classify(cfg, out);
    else if (*simulate) status = listacc::harness::cmd_simulate(cfg, out);
    else if (*verify) status = listacc::harness::cmd_verify(cfg, out);
    else if (*bench) status = listacc::harness::cmd_bench(cfg, out);
    out.flush();
    if (!out) throw listacc::Error(listacc::ErrorCode::Io, "write failed");
    return status;
  } catch (const listacc::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
