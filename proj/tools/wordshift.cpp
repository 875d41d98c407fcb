// wordshift: compare two corpora and draw word shift graphs.
//
//   wordshift compute text:a.txt text:b.txt --measure jsd --out-json shift.json
//   wordshift plot --from-json shift.json --out-svg shift.svg
//   wordshift exclude text:a.txt text:b.txt --measure dictionary --lexicon labmt.tsv --exclude cried,cry
//
// Exit codes: 0 success, 2 usage/config/parse errors, 3 undefined measures.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "wordshift/errors.hpp"
#include "wordshift/pipeline.hpp"

using namespace wordshift;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;

struct CliState {
  RunConfig config;
  std::vector<std::string> inputs;
  std::string input1, input2;
  std::string pi_mode;
  std::vector<double> stop_lens;
  std::string cumulative_mode = "abs";
  std::string from_json;
  bool no_class_totals = false;
  bool no_cumulative = false;
  bool no_corpus_sizes = false;
  bool keep_case = false;
  bool keep_punctuation = false;
};

void add_shared_options(CLI::App& app, CliState& s) {
  auto& c = s.config;
  app.add_option("inputs", s.inputs, "Two corpora as text:PATH or counts:PATH")->expected(0, 2);
  app.add_option("--input1", s.input1, "First corpus (text:PATH or counts:PATH)");
  app.add_option("--input2", s.input2, "Second corpus (text:PATH or counts:PATH)");
  app.add_option("--label1", c.label1, "Display label of the first corpus");
  app.add_option("--label2", c.label2, "Display label of the second corpus");
  app.add_flag("--keep-case", s.keep_case, "Do not lowercase tokens");
  app.add_flag("--keep-punctuation", s.keep_punctuation, "Do not strip edge punctuation");
  app.add_option("--ngram", c.tokenizer.ngram_size, "Token n-gram size")->check(CLI::PositiveNumber);

  app.add_option("--measure", c.measure,
                 "relative_frequency | shannon_entropy | tsallis_entropy | kld | jsd | dictionary");
  app.add_option("--alpha", c.alpha, "Order of the generalized entropy / JSD");
  app.add_option("--log-base", c.log_base, "Logarithm base");
  app.add_option("--pi1", c.pi1, "JSD mixture weight of the first corpus");
  app.add_option("--pi2", c.pi2, "JSD mixture weight of the second corpus");
  app.add_option("--pi", s.pi_mode, "Set to 'proportional' to weight by token counts");
  app.add_option("--lexicon", c.lexicon, "word<TAB>score lexicon");
  app.add_option("--lexicon2", c.lexicon2, "Lexicon for the second corpus (defaults to --lexicon)");
  app.add_option("--lexicon-center", c.lexicon_center, "Center of the lexicon's scale");
  app.add_option("--stop-lens", s.stop_lens, "Drop lexicon words scoring in [LOW, HIGH]")->expected(2);
  app.add_option("--missing-scores", c.missing_scores, "borrow | drop");
  app.add_option("--ref", c.ref, "Reference score: VALUE | entropy1 | center | zero");
  app.add_option("--exclude", c.exclude, "Words removed from both corpora")->delimiter(',');

  app.add_option("--top-n", c.render.top_n, "Number of word rows drawn")->check(CLI::PositiveNumber);
  app.add_option("--cumulative", s.cumulative_mode, "Cumulative inset: abs | signed");
  app.add_option("--width", c.render.width, "Graph width in pixels");
  app.add_option("--title", c.render.title, "Graph title");
  app.add_option("--fade-opacity", c.render.fade_opacity, "Opacity of offsetting components");
  app.add_flag("--no-class-totals", s.no_class_totals, "Hide the summary bars");
  app.add_flag("--no-cumulative", s.no_cumulative, "Hide the cumulative inset");
  app.add_flag("--no-corpus-sizes", s.no_corpus_sizes, "Hide the corpus size inset");

  app.add_option("--out-json", c.out_json, "Write the shift as JSON");
  app.add_option("--out-tsv", c.out_tsv, "Write the contribution table as TSV");
  app.add_option("--out-svg", c.out_svg, "Write the word shift graph as SVG");
}

void finalize(CliState& s, bool need_inputs) {
  auto& c = s.config;
  if (!s.inputs.empty()) {
    if (s.inputs.size() != 2 || !s.input1.empty() || !s.input2.empty())
      throw InvalidArgument("give exactly two inputs, either positionally or via --input1/--input2");
    s.input1 = s.inputs[0];
    s.input2 = s.inputs[1];
  }
  if (need_inputs) {
    if (s.input1.empty() || s.input2.empty()) throw InvalidArgument("exactly two inputs are required");
    c.input1 = InputSpec::parse(s.input1);
    c.input2 = InputSpec::parse(s.input2);
  }
  c.tokenizer.lowercase = !s.keep_case;
  c.tokenizer.strip_punctuation = !s.keep_punctuation;
  if (!s.pi_mode.empty()) {
    if (s.pi_mode != "proportional") throw InvalidArgument("--pi accepts only 'proportional'");
    c.pi_proportional = true;
  }
  if (!s.stop_lens.empty()) c.stop_lens = StopLens{s.stop_lens.at(0), s.stop_lens.at(1)};
  c.render.cumulative_mode = parse_cumulative_mode(s.cumulative_mode);
  c.render.show_class_totals = !s.no_class_totals;
  c.render.show_cumulative = !s.no_cumulative;
  c.render.show_corpus_sizes = !s.no_corpus_sizes;
}

void emit(const RunConfig& config, const ComputeOutput& out) {
  write_outputs(config, out);
  if (config.out_json.empty() && config.out_tsv.empty() && config.out_svg.empty())
    std::cout << out.document.dump(2) << "\n";
}

ShiftResult read_result(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open " + path);
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(path + ": malformed JSON: " + e.what());
  }
  return shift_result_from_json(doc);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Word shift graphs for pairwise corpus comparison"};
  app.set_config("--config", "", "Flat key=value file; keys mirror the long flags");
  app.require_subcommand(1);
  app.fallthrough();

  CliState state;
  add_shared_options(app, state);

  auto* compute = app.add_subcommand("compute", "Compute a word shift and write JSON/TSV (and optionally SVG)");
  auto* plot = app.add_subcommand("plot", "Draw a word shift graph from a saved JSON shift or from inputs");
  plot->add_option("--from-json", state.from_json, "Shift document written by 'compute'");
  auto* exclude = app.add_subcommand("exclude", "Recompute with --exclude words removed and report the change");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitUsage;
  }

  try {
    if (compute->parsed()) {
      finalize(state, true);
      emit(state.config, run_compute(state.config));
    } else if (plot->parsed()) {
      finalize(state, state.from_json.empty());
      if (state.config.out_svg.empty()) throw InvalidArgument("plot needs --out-svg");
      state.config.render.validate();
      if (!state.from_json.empty()) {
        const auto svg = plot_svg(read_result(state.from_json), state.config.render);
        std::ofstream out(state.config.out_svg, std::ios::binary);
        if (!out) throw InvalidArgument("cannot write " + state.config.out_svg);
        out << svg;
      } else {
        write_outputs(state.config, run_compute(state.config));
      }
    } else if (exclude->parsed()) {
      finalize(state, true);
      const auto report = run_exclude(state.config);
      for (const auto& w : report.absent_words)
        std::cerr << "warning: '" << w << "' appears in neither corpus\n";
      write_outputs(state.config, report.excluded);
      std::ostringstream line;
      line.precision(6);
      line << "delta_before\t" << report.baseline.result.delta_phi << "\n"
           << "delta_after\t" << report.excluded.result.delta_phi << "\n"
           << "percent_change\t" << report.percent_change() << "\n";
      std::cout << line.str();
    }
  } catch (const DomainError& e) {
    std::cerr << "wordshift: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "wordshift: " << e.what() << "\n";
    return kExitUsage;
  }
  return 0;
}
