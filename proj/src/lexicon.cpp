#include "wordshift/lexicon.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>

#include "wordshift/errors.hpp"

namespace wordshift {

namespace {

std::pair<double, double> observed_bounds(const std::map<std::string, double>& scores) {
  if (scores.empty()) return {0.0, 0.0};
  double lo = scores.begin()->second, hi = lo;
  for (const auto& [w, s] : scores) {
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  return {lo, hi};
}

}  // namespace

ScoreLexicon::ScoreLexicon(std::string name, std::map<std::string, double> scores, double center)
    : name_(std::move(name)), scores_(std::move(scores)), center_(center) {
  for (const auto& [w, s] : scores_)
    if (!std::isfinite(s)) throw InvalidArgument("score for '" + w + "' is not finite");
  std::tie(scale_min_, scale_max_) = observed_bounds(scores_);
}

ScoreLexicon::ScoreLexicon(std::string name, std::map<std::string, double> scores, double center,
                           double scale_min, double scale_max)
    : ScoreLexicon(std::move(name), std::move(scores), center) {
  if (!(scale_min <= scale_max)) throw InvalidArgument("lexicon scale bounds are inverted");
  for (const auto& [w, s] : scores_)
    if (s < scale_min || s > scale_max)
      throw InvalidArgument("score for '" + w + "' lies outside the declared scale");
  scale_min_ = scale_min;
  scale_max_ = scale_max;
}

std::optional<double> ScoreLexicon::find(const std::string& word) const {
  const auto it = scores_.find(word);
  if (it == scores_.end()) return std::nullopt;
  return it->second;
}

void StopLens::validate() const {
  if (!std::isfinite(low) || !std::isfinite(high) || low > high)
    throw InvalidArgument("stop lens needs finite bounds with low <= high");
}

ScoreLexicon parse_lexicon(std::istream& in, std::string name, double center, const std::string& source) {
  std::map<std::string, double> scores;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos)
      throw ParseError(source, lineno, "expected word<TAB>score");
    std::string word = line.substr(0, tab);
    const std::string field = line.substr(tab + 1);
    if (word.empty()) throw ParseError(source, lineno, "empty word");
    double score = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), score);
    if (ec != std::errc() || ptr != field.data() + field.size())
      throw ParseError(source, lineno, "score '" + field + "' is not a number");
    if (!std::isfinite(score)) throw ParseError(source, lineno, "score for '" + word + "' is not finite");
    if (!scores.emplace(word, score).second)
      throw ParseError(source, lineno, "duplicate word '" + word + "'");
  }
  return ScoreLexicon(std::move(name), std::move(scores), center);
}

ScoreLexicon load_lexicon(const std::filesystem::path& path, double center) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open lexicon " + path.string());
  return parse_lexicon(in, path.stem().string(), center, path.string());
}

ScoreLexicon apply_stop_lens(const ScoreLexicon& lexicon, const StopLens& lens) {
  lens.validate();
  std::map<std::string, double> kept;
  for (const auto& [w, s] : lexicon.scores())
    if (s < lens.low || s > lens.high) kept.emplace_hint(kept.end(), w, s);
  return ScoreLexicon(lexicon.name(), std::move(kept), lexicon.center(), lexicon.scale_min(), lexicon.scale_max());
}

ResolvedScores resolve_scores(const Vocabulary& vocab, const ScoreLexicon& lex1, const ScoreLexicon& lex2,
                              MissingScorePolicy policy) {
  ResolvedScores out;
  for (const auto& word : vocab) {
    const auto s1 = lex1.find(word);
    const auto s2 = lex2.find(word);
    if (s1 && s2) {
      out.push_back({word, *s1, *s2, false, false});
    } else if (policy == MissingScorePolicy::drop) {
      continue;
    } else if (s1) {
      out.push_back({word, *s1, *s1, false, true});
    } else if (s2) {
      out.push_back({word, *s2, *s2, true, false});
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.word < b.word; });
  return out;
}

}  // namespace wordshift
