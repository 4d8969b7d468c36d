#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "cli/manifest.hpp"
#include "zipfkit/cli.hpp"
#include "zipfkit/corpus.hpp"
#include "zipfkit/error.hpp"
#include "zipfkit/fit.hpp"
#include "zipfkit/format.hpp"
#include "zipfkit/kernels/kernels.hpp"
#include "zipfkit/ranking.hpp"
#include "zipfkit/specfun.hpp"
#include "zipfkit/synth.hpp"

#ifndef ZIPFKIT_VERSION
#define ZIPFKIT_VERSION "0.0.0"
#endif

namespace zipfkit::cli {
namespace fs = std::filesystem;

namespace {

constexpr const char* kStdio = "-";

struct Io {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
  std::vector<std::string> command_line;
};

// Whole input as bytes, from a file or stdin.
std::string read_all(const std::string& path, std::istream& in) {
  if (path == kStdio) {
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  std::ifstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open '" + path + "'");
  std::string bytes((std::istreambuf_iterator<char>(file)), std::istreambuf_iterator<char>());
  if (file.bad()) throw IoError("read failure on '" + path + "'");
  return bytes;
}

void write_output(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == kStdio) {
    out << content;
    out.flush();
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot write '" + path + "'");
  file << content;
  if (!file) throw IoError("write failure on '" + path + "'");
}

bool is_file(const std::string& path) { return !path.empty() && path != kStdio; }

// Writes the manifest beside the first file output, or to an explicit path.
void emit_manifest(const std::string& explicit_path, const RunManifest& m) {
  if (!explicit_path.empty()) {
    write_manifest(explicit_path, m);
    return;
  }
  if (!m.outputs.empty()) write_manifest(manifest_path_for(m.outputs.front()), m);
}

InputDigest digest_of(const std::string& path, const std::string& bytes) {
  return {path, sha256_hex(bytes)};
}

FrequencyTable load_counts_bytes(const std::string& bytes) {
  std::istringstream in(bytes);
  return load_counts(in);
}

// ---- count -----------------------------------------------------------------

struct CountArgs {
  std::string mode = "char";
  bool drop_punct = false;
  bool drop_space = false;
  bool lowercase = false;
  std::size_t chunk_bytes = std::size_t{1} << 20;
  std::vector<std::string> inputs;
  std::string out;
  std::string manifest;
};

int cmd_count(const CountArgs& args, Io& io) {
  TokenizerConfig config;
  config.mode = args.mode == "word" ? TokenMode::word : TokenMode::character;
  config.drop_whitespace = args.drop_space || config.mode == TokenMode::word;
  config.drop_punctuation = args.drop_punct;
  config.lowercase = args.lowercase;

  std::vector<std::string> inputs = args.inputs;
  if (inputs.empty()) inputs.push_back(kStdio);

  RunManifest manifest;
  manifest.command_line = io.command_line;
  CountAccumulator acc;
  for (const auto& path : inputs) {
    try {
      FrequencyTable part;
      if (path == kStdio) {
        const std::string bytes = read_all(path, io.in);
        manifest.inputs.push_back(digest_of(path, bytes));
        std::istringstream stream(bytes);
        part = count_stream(stream, config, args.chunk_bytes);
      } else {
        manifest.inputs.push_back({path, sha256_file(path)});
        std::ifstream stream(path, std::ios::binary);
        if (!stream) throw IoError("cannot open '" + path + "'");
        part = count_stream(stream, config, args.chunk_bytes);
      }
      for (const auto& [token, n] : part.entries()) acc.add(token, n);
    } catch (const Error& e) {
      io.err << "error: " << path << ": " << e.what() << '\n';
      return exit_code_for(e);
    }
  }

  std::ostringstream tsv;
  write_counts(tsv, acc.finish());
  write_output(args.out, tsv.str(), io.out);
  if (is_file(args.out)) manifest.outputs.push_back(args.out);
  manifest.extra = {{"mode", args.mode},
                    {"drop_punct", args.drop_punct},
                    {"drop_space", config.drop_whitespace},
                    {"lowercase", args.lowercase}};
  emit_manifest(args.manifest, manifest);
  return kSuccess;
}

// ---- rank ------------------------------------------------------------------

struct RankArgs {
  std::string counts = kStdio;
  std::string out;
  std::string plot;
  std::string manifest;
};

int cmd_rank(const RankArgs& args, Io& io) {
  const std::string bytes = read_all(args.counts, io.in);
  const RankedTable table = rank(load_counts_bytes(bytes));

  std::ostringstream csv;
  write_rank_csv(csv, table);
  write_output(args.out, csv.str(), io.out);

  std::string plot_path = args.plot;
  if (plot_path.empty() && is_file(args.out)) {
    plot_path = fs::path(args.out).replace_extension(".plot.txt").string();
  }
  RunManifest manifest;
  manifest.command_line = io.command_line;
  manifest.inputs.push_back(digest_of(args.counts, bytes));
  if (is_file(args.out)) manifest.outputs.push_back(args.out);
  if (!plot_path.empty()) {
    std::ostringstream plot;
    write_plot_data(plot, table);
    write_output(plot_path, plot.str(), io.out);
    if (is_file(plot_path)) manifest.outputs.push_back(plot_path);
  }
  emit_manifest(args.manifest, manifest);
  return kSuccess;
}

// ---- fit -------------------------------------------------------------------

struct FitArgs {
  std::string counts = kStdio;
  std::string method = "mle";
  std::string model = "zm";
  double min_freq = 0.0;
  double a_max = FitDefaults::a_max;
  double alpha_max = FitDefaults::alpha_max;
  double tol = FitDefaults::tol;
  bool json = false;
  std::string out;
  std::string manifest;
};

std::string fit_text(const FitReport& report) {
  const ZipfMandelbrotModel m = as_zipf_mandelbrot(report.model);
  std::ostringstream s;
  s << "method       " << method_name(report.method) << '\n'
    << "model        " << model_type_name(report.model) << '\n'
    << "alpha        " << format_number(m.alpha) << '\n'
    << "a            " << format_number(m.a) << '\n'
    << "c            " << format_number(m.c) << '\n'
    << "objective    " << format_number(report.objective) << '\n'
    << "r_squared    " << (report.r_squared ? format_number(*report.r_squared) : "-") << '\n'
    << "ks_distance  " << format_number(report.ks_distance) << '\n'
    << "ranks_used   " << report.ranks_used << '\n'
    << "boundary     " << (report.boundary_flag ? "yes" : "no") << '\n';
  return s.str();
}

int cmd_fit(const FitArgs& args, Io& io) {
  if (args.method == "mle" && args.min_freq != 0.0) {
    throw ArgumentError("--min-freq applies to the ls method only");
  }
  const std::string bytes = read_all(args.counts, io.in);
  const RankedTable table = rank(load_counts_bytes(bytes));

  FitReport report = [&] {
    const bool zm = args.model == "zm";
    if (args.method == "ls") {
      return zm ? fit_zm_profiled_ls(table, args.a_max, args.tol, args.min_freq)
                : fit_zipf_ls(table, args.min_freq);
    }
    return zm ? fit_zm_mle(table, args.a_max, args.alpha_max, args.tol)
              : fit_zipf_mle(table, args.alpha_max, args.tol);
  }();

  const std::string digest = sha256_hex(bytes);
  std::string content;
  if (args.json) {
    nlohmann::json doc = to_json(report);
    doc["input_sha256"] = digest;
    doc["tool"] = "zipfkit";
    doc["version"] = version();
    doc["kernels"] = std::string(kernels::isa_name(kernels::active().isa));
    content = doc.dump(2) + "\n";
  } else {
    content = fit_text(report);
  }
  write_output(args.out, content, io.out);

  RunManifest manifest;
  manifest.command_line = io.command_line;
  manifest.inputs.push_back({args.counts, digest});
  if (is_file(args.out)) manifest.outputs.push_back(args.out);
  emit_manifest(args.manifest, manifest);
  return kSuccess;
}

// ---- synth -----------------------------------------------------------------

struct SynthArgs {
  SynthSpec spec;
  unsigned shards = 1;
  std::string out;
  std::string manifest;
};

int cmd_synth(const SynthArgs& args, Io& io) {
  const FrequencyTable table = sample_corpus_sharded(args.spec, args.shards);
  std::ostringstream tsv;
  write_counts(tsv, table);
  write_output(args.out, tsv.str(), io.out);

  RunManifest manifest;
  manifest.command_line = io.command_line;
  manifest.seed = args.spec.seed;
  if (is_file(args.out)) manifest.outputs.push_back(args.out);
  manifest.extra = {{"generator", std::string(kGeneratorId)},
                    {"shards", args.shards},
                    {"alpha", args.spec.alpha},
                    {"a", args.spec.a},
                    {"vocab", args.spec.vocabulary},
                    {"tokens", args.spec.tokens}};
  emit_manifest(args.manifest, manifest);
  return kSuccess;
}

// ---- report ----------------------------------------------------------------

struct ReportArgs {
  std::string counts = kStdio;
  std::vector<double> head = {0.01, 0.05, 0.1, 0.2, 0.5};
  std::string out;
  std::string manifest;
};

int cmd_report(const ReportArgs& args, Io& io) {
  const std::string bytes = read_all(args.counts, io.in);
  const RankedTable table = rank(load_counts_bytes(bytes));
  const HeadTailReport report = head_tail_report(table, args.head);

  nlohmann::json doc = to_json(report);
  const std::string digest = sha256_hex(bytes);
  doc["input_sha256"] = digest;
  doc["tool"] = "zipfkit";
  doc["version"] = version();
  write_output(args.out, doc.dump(2) + "\n", io.out);

  RunManifest manifest;
  manifest.command_line = io.command_line;
  manifest.inputs.push_back({args.counts, digest});
  if (is_file(args.out)) manifest.outputs.push_back(args.out);
  emit_manifest(args.manifest, manifest);
  return kSuccess;
}

// ---- zeta ------------------------------------------------------------------

struct ZetaArgs {
  double alpha = 2.0;
  double shift = 0.0;
  double tol = 1e-10;
};

int cmd_zeta(const ZetaArgs& args, Io& io) {
  const SeriesValue v = hurwitz_zeta(args.alpha, args.shift, args.tol);
  io.out << "value " << format_number(v.value) << '\n'
         << "error_bound " << format_number(v.error_bound) << '\n'
         << "terms " << v.terms << '\n';
  return kSuccess;
}

}  // namespace

std::string version() { return ZIPFKIT_VERSION; }

int exit_code_for(const std::exception& e) noexcept {
  if (dynamic_cast<const ArgumentError*>(&e) != nullptr) return kUsageError;
  if (dynamic_cast<const DegenerateDataError*>(&e) != nullptr ||
      dynamic_cast<const DivergenceError*>(&e) != nullptr) {
    return kNumericError;
  }
  if (dynamic_cast<const ParseError*>(&e) != nullptr ||
      dynamic_cast<const DecodeError*>(&e) != nullptr ||
      dynamic_cast<const ValidationError*>(&e) != nullptr ||
      dynamic_cast<const IoError*>(&e) != nullptr ||
      dynamic_cast<const InsufficientDataError*>(&e) != nullptr) {
    return kDataError;
  }
  if (dynamic_cast<const Error*>(&e) != nullptr) return kNumericError;
  return 1;
}

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"zipfkit: rank-frequency analysis and Zipf / Zipf-Mandelbrot fitting"};
  app.name(args.empty() ? "zipfkit" : fs::path(args.front()).filename().string());
  app.require_subcommand(1);
  app.set_version_flag("--version", version());

  Io io{in, out, err, args};

  CountArgs count_args;
  auto* count_cmd = app.add_subcommand("count", "Count character or word frequencies (TSV out)");
  count_cmd->add_option("--mode", count_args.mode, "Tokenisation unit")
      ->check(CLI::IsMember({"char", "word"}));
  count_cmd->add_flag("--drop-punct", count_args.drop_punct, "Drop Unicode P* and S* characters");
  count_cmd->add_flag("--drop-space", count_args.drop_space, "Drop whitespace (always on in word mode)");
  count_cmd->add_flag("--lowercase", count_args.lowercase, "Lowercase before counting");
  count_cmd->add_option("--chunk-bytes", count_args.chunk_bytes, "Streaming chunk size")
      ->check(CLI::PositiveNumber);
  count_cmd->add_option("--out,-o", count_args.out, "Output TSV (default stdout)");
  count_cmd->add_option("--manifest", count_args.manifest, "Manifest path");
  count_cmd->add_option("inputs", count_args.inputs, "UTF-8 text files ('-' for stdin)");

  RankArgs rank_args;
  auto* rank_cmd = app.add_subcommand("rank", "Rank-frequency CSV and log-log plot data");
  rank_cmd->add_option("counts", rank_args.counts, "Counts TSV ('-' for stdin)");
  rank_cmd->add_option("--out,-o", rank_args.out, "Output CSV (default stdout)");
  rank_cmd->add_option("--plot", rank_args.plot, "Two-column 'rank frequency' file");
  rank_cmd->add_option("--manifest", rank_args.manifest, "Manifest path");

  FitArgs fit_args;
  auto* fit_cmd = app.add_subcommand("fit", "Fit a Zipf or Zipf-Mandelbrot model");
  fit_cmd->add_option("counts", fit_args.counts, "Counts TSV ('-' for stdin)");
  fit_cmd->add_option("--method", fit_args.method, "Estimator")
      ->check(CLI::IsMember({"mle", "ls"}));
  fit_cmd->add_option("--model", fit_args.model, "Model family")
      ->check(CLI::IsMember({"zipf", "zm"}));
  fit_cmd->add_option("--min-freq", fit_args.min_freq, "LS: keep ranks with frequency > F")
      ->check(CLI::NonNegativeNumber);
  fit_cmd->add_option("--a-max", fit_args.a_max, "Upper bound for the shift a")
      ->check(CLI::NonNegativeNumber);
  fit_cmd->add_option("--alpha-max", fit_args.alpha_max, "Upper bound for alpha (mle)")
      ->check(CLI::PositiveNumber);
  fit_cmd->add_option("--tol", fit_args.tol, "Parameter tolerance")->check(CLI::PositiveNumber);
  fit_cmd->add_flag("--json", fit_args.json, "Emit the JSON report");
  fit_cmd->add_option("--out,-o", fit_args.out, "Output file (default stdout)");
  fit_cmd->add_option("--manifest", fit_args.manifest, "Manifest path");

  SynthArgs synth_args;
  auto* synth_cmd = app.add_subcommand("synth", "Sample a Zipf-Mandelbrot corpus (TSV counts)");
  synth_cmd->add_option("--alpha", synth_args.spec.alpha, "Exponent")->required()
      ->check(CLI::PositiveNumber);
  synth_cmd->add_option("--a", synth_args.spec.a, "Rank shift")->check(CLI::NonNegativeNumber);
  synth_cmd->add_option("--vocab", synth_args.spec.vocabulary, "Vocabulary size V")->required()
      ->check(CLI::PositiveNumber);
  synth_cmd->add_option("--tokens", synth_args.spec.tokens, "Number of draws N")->required()
      ->check(CLI::NonNegativeNumber);
  synth_cmd->add_option("--seed", synth_args.spec.seed, "PRNG seed");
  synth_cmd->add_option("--shards", synth_args.shards, "Parallel shards")
      ->check(CLI::PositiveNumber);
  synth_cmd->add_option("--out,-o", synth_args.out, "Output TSV (default stdout)");
  synth_cmd->add_option("--manifest", synth_args.manifest, "Manifest path");

  ReportArgs report_args;
  auto* report_cmd = app.add_subcommand("report", "Head coverage and hapax summary (JSON)");
  report_cmd->add_option("counts", report_args.counts, "Counts TSV ('-' for stdin)");
  report_cmd->add_option("--head", report_args.head, "Type fractions in (0,1]")->delimiter(',');
  report_cmd->add_option("--out,-o", report_args.out, "Output JSON (default stdout)");
  report_cmd->add_option("--manifest", report_args.manifest, "Manifest path");

  ZetaArgs zeta_args;
  auto* zeta_cmd = app.add_subcommand("zeta", "Hurwitz zeta sum_{r>=1} (a+r)^-alpha with error bound");
  zeta_cmd->add_option("--alpha", zeta_args.alpha, "Exponent (> 1)")->required();
  zeta_cmd->add_option("--shift", zeta_args.shift, "Shift a >= 0");
  zeta_cmd->add_option("--tol", zeta_args.tol, "Absolute tolerance");

  // CLI11 consumes a vector in reverse order, without the program name.
  std::vector<std::string> reversed(args.begin() + (args.empty() ? 0 : 1), args.end());
  std::reverse(reversed.begin(), reversed.end());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  try {
    if (*count_cmd) return cmd_count(count_args, io);
    if (*rank_cmd) return cmd_rank(rank_args, io);
    if (*fit_cmd) return cmd_fit(fit_args, io);
    if (*synth_cmd) return cmd_synth(synth_args, io);
    if (*report_cmd) return cmd_report(report_args, io);
    if (*zeta_cmd) return cmd_zeta(zeta_args, io);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
  return kUsageError;
}

}  // namespace zipfkit::cli
