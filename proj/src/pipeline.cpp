#include "wordshift/pipeline.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include <openssl/evp.h>

#include "wordshift/errors.hpp"

namespace wordshift {

namespace {

MissingScorePolicy parse_policy(const std::string& s) {
  if (s == "borrow") return MissingScorePolicy::borrow;
  if (s == "drop") return MissingScorePolicy::drop;
  throw InvalidArgument("missing-score policy must be 'borrow' or 'drop', got '" + s + "'");
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write " + path);
  out << content;
  if (!out) throw InvalidArgument("failed writing " + path);
}

TokenDistribution load_input(const InputSpec& in, const std::string& label, const TokenizerOptions& tok) {
  const std::string name = label.empty() ? in.path.stem().string() : label;
  return in.type == InputSpec::Type::counts ? load_counts(in.path, name) : load_text(in.path, tok, name);
}

}  // namespace

InputSpec InputSpec::parse(const std::string& spec) {
  InputSpec in;
  if (spec.starts_with("text:")) {
    in.type = Type::text;
    in.path = spec.substr(5);
  } else if (spec.starts_with("counts:")) {
    in.type = Type::counts;
    in.path = spec.substr(7);
  } else {
    in.path = spec;
  }
  if (in.path.empty()) throw InvalidArgument("empty input path in '" + spec + "'");
  return in;
}

std::string InputSpec::to_string() const {
  return (type == Type::counts ? "counts:" : "text:") + path.string();
}

void RunConfig::validate() const {
  if (input1.path.empty() || input2.path.empty()) throw InvalidArgument("exactly two inputs are required");
  if (tokenizer.ngram_size < 1) throw InvalidArgument("ngram size must be at least 1");
  const auto kind = parse_measure_kind(measure);
  parse_policy(missing_scores);
  ReferenceRule::parse(ref);
  if (kind == MeasureKind::dictionary && lexicon.empty())
    throw InvalidArgument("the dictionary measure needs --lexicon");
  if (kind != MeasureKind::dictionary && (!lexicon.empty() || !lexicon2.empty() || stop_lens))
    throw InvalidArgument("lexicon options only apply to the dictionary measure");
  if (!pi_proportional) MixtureWeights{pi1, pi2}.validate();
  if (stop_lens) stop_lens->validate();
  render.validate();
}

Json config_to_json(const RunConfig& c) {
  Json j;
  j["input1"] = c.input1.to_string();
  j["input2"] = c.input2.to_string();
  j["label1"] = c.label1;
  j["label2"] = c.label2;
  j["lowercase"] = c.tokenizer.lowercase;
  j["strip_punctuation"] = c.tokenizer.strip_punctuation;
  j["ngram"] = c.tokenizer.ngram_size;
  j["measure"] = c.measure;
  j["alpha"] = c.alpha;
  j["log_base"] = c.log_base;
  if (c.pi_proportional) {
    j["pi"] = "proportional";
  } else {
    j["pi1"] = c.pi1;
    j["pi2"] = c.pi2;
  }
  j["lexicon"] = c.lexicon;
  j["lexicon2"] = c.lexicon2;
  j["lexicon_center"] = c.lexicon_center;
  j["stop_lens"] = c.stop_lens ? Json::array({c.stop_lens->low, c.stop_lens->high}) : Json(nullptr);
  j["missing_scores"] = c.missing_scores;
  j["ref"] = c.ref;
  j["exclude"] = c.exclude;
  return j;
}

std::string sha256_file(const std::filesystem::path& path) {
  const std::string bytes = read_file(path);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error("sha256 failed for " + path.string());
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

std::pair<TokenDistribution, TokenDistribution> load_inputs(const RunConfig& config) {
  return {load_input(config.input1, config.label1, config.tokenizer),
          load_input(config.input2, config.label2, config.tokenizer)};
}

MeasureSpec build_measure_spec(const RunConfig& config) {
  MeasureSpec spec;
  spec.kind = parse_measure_kind(config.measure);
  spec.alpha = config.alpha;
  spec.log_base = config.log_base;
  spec.weights = {config.pi1, config.pi2};
  spec.proportional_weights = config.pi_proportional;
  spec.missing_scores = parse_policy(config.missing_scores);
  spec.reference = ReferenceRule::parse(config.ref);
  spec.stop_lens = config.stop_lens;
  if (!config.lexicon.empty()) spec.lexicon1 = load_lexicon(config.lexicon, config.lexicon_center);
  if (!config.lexicon2.empty()) spec.lexicon2 = load_lexicon(config.lexicon2, config.lexicon_center);
  return spec;
}

ComputeOutput run_compute(const RunConfig& config) {
  config.validate();
  const auto spec = build_measure_spec(config);
  auto [d1, d2] = load_inputs(config);
  if (!config.exclude.empty()) {
    const std::set<std::string> drop(config.exclude.begin(), config.exclude.end());
    d1 = d1.without(drop);
    d2 = d2.without(drop);
  }

  ComputeOutput out;
  out.result = compute_shift(compute_components(spec, d1, d2));

  Json meta;
  meta["config"] = config_to_json(config);
  Json inputs = Json::array();
  for (const auto* in : {&config.input1, &config.input2})
    inputs.push_back({{"input", in->to_string()}, {"sha256", sha256_file(in->path)}});
  meta["inputs"] = std::move(inputs);
  Json lexicons = Json::array();
  for (const auto& path : {config.lexicon, config.lexicon2})
    if (!path.empty()) lexicons.push_back({{"path", path}, {"sha256", sha256_file(path)}});
  meta["lexicons"] = std::move(lexicons);
  out.document = shift_result_to_json(out.result, meta);
  return out;
}

double ExcludeReport::percent_change() const {
  const double before = baseline.result.delta_phi, after = excluded.result.delta_phi;
  if (before == 0.0) return after == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return 100.0 * (after - before) / std::abs(before);
}

ExcludeReport run_exclude(const RunConfig& config) {
  RunConfig base = config;
  base.exclude.clear();
  ExcludeReport report{run_compute(base), run_compute(config), {}};

  auto [d1, d2] = load_inputs(config);
  for (const auto& w : config.exclude)
    if (!d1.contains(w) && !d2.contains(w)) report.absent_words.push_back(w);
  return report;
}

std::string plot_svg(const ShiftResult& result, const RenderOptions& options) {
  return render_shift_graph(result, options).svg;
}

void write_outputs(const RunConfig& config, const ComputeOutput& output) {
  if (!config.out_json.empty()) write_text_file(config.out_json, output.document.dump(2) + "\n");
  if (!config.out_tsv.empty()) {
    std::ofstream out(config.out_tsv, std::ios::binary);
    if (!out) throw InvalidArgument("cannot write " + config.out_tsv);
    write_tsv(out, output.result);
  }
  if (!config.out_svg.empty()) write_text_file(config.out_svg, plot_svg(output.result, config.render));
}

}  // namespace wordshift
