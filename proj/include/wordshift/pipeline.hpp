#pragma once

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "wordshift/corpus.hpp"
#include "wordshift/measures.hpp"
#include "wordshift/render.hpp"
#include "wordshift/report.hpp"
#include "wordshift/shift.hpp"

namespace wordshift {

struct InputSpec {
  enum class Type { text, counts };
  Type type = Type::text;
  std::filesystem::path path;

  // "text:PATH", "counts:PATH", or a bare PATH (text).
  static InputSpec parse(const std::string& spec);
  std::string to_string() const;
};

// Everything needed to reproduce one comparison. Field names mirror the CLI flags.
struct RunConfig {
  InputSpec input1;
  InputSpec input2;
  std::string label1;  // empty: file stem
  std::string label2;

  TokenizerOptions tokenizer;

  std::string measure = "relative_frequency";
  double alpha = 1.0;
  double log_base = 2.0;
  double pi1 = 0.5;
  double pi2 = 0.5;
  bool pi_proportional = false;
  std::string lexicon;
  std::string lexicon2;
  double lexicon_center = 5.0;
  std::optional<StopLens> stop_lens;
  std::string missing_scores = "borrow";
  std::string ref = "default";
  std::vector<std::string> exclude;

  RenderOptions render;

  std::string out_json;
  std::string out_tsv;
  std::string out_svg;

  void validate() const;
};

Json config_to_json(const RunConfig& config);

// Hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);

std::pair<TokenDistribution, TokenDistribution> load_inputs(const RunConfig& config);

MeasureSpec build_measure_spec(const RunConfig& config);

struct ComputeOutput {
  ShiftResult result;
  Json document;
};

// Load, exclude, measure, decompose. The document carries provenance in meta.
ComputeOutput run_compute(const RunConfig& config);

struct ExcludeReport {
  ComputeOutput baseline;  // without exclusions
  ComputeOutput excluded;  // with config.exclude applied
  std::vector<std::string> absent_words;  // listed but in neither corpus

  double percent_change() const;
};

ExcludeReport run_exclude(const RunConfig& config);

// Writes whichever of out_json / out_tsv / out_svg are set.
void write_outputs(const RunConfig& config, const ComputeOutput& output);

std::string plot_svg(const ShiftResult& result, const RenderOptions& options);

}  // namespace wordshift
