#pragma once

#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wordshift/corpus.hpp"

namespace wordshift {

// Word -> score dictionary (labMT, SocialSent, ...).
class ScoreLexicon {
public:
  // Bounds default to the observed min/max of the scores.
  ScoreLexicon(std::string name, std::map<std::string, double> scores, double center);
  ScoreLexicon(std::string name, std::map<std::string, double> scores, double center, double scale_min,
               double scale_max);

  const std::string& name() const noexcept { return name_; }
  const std::map<std::string, double>& scores() const noexcept { return scores_; }
  double center() const noexcept { return center_; }
  double scale_min() const noexcept { return scale_min_; }
  double scale_max() const noexcept { return scale_max_; }
  std::size_t size() const noexcept { return scores_.size(); }
  bool empty() const noexcept { return scores_.empty(); }

  std::optional<double> find(const std::string& word) const;
  bool contains(const std::string& word) const { return scores_.contains(word); }

private:
  std::string name_;
  std::map<std::string, double> scores_;
  double center_;
  double scale_min_;
  double scale_max_;
};

// Closed score window [low, high]; words scoring inside it are dropped.
struct StopLens {
  double low = 4.0;
  double high = 6.0;

  void validate() const;
};

ScoreLexicon parse_lexicon(std::istream& in, std::string name, double center, const std::string& source = "<stream>");
ScoreLexicon load_lexicon(const std::filesystem::path& path, double center);

ScoreLexicon apply_stop_lens(const ScoreLexicon& lexicon, const StopLens& lens);

enum class MissingScorePolicy {
  borrow,  // copy the defined score across and flag it
  drop,    // keep only words scored by both lexicons
};

struct ResolvedScore {
  std::string word;
  double phi1 = 0.0;
  double phi2 = 0.0;
  bool borrowed1 = false;
  bool borrowed2 = false;
};

// Sorted by word.
using ResolvedScores = std::vector<ResolvedScore>;

ResolvedScores resolve_scores(const Vocabulary& vocab, const ScoreLexicon& lex1, const ScoreLexicon& lex2,
                              MissingScorePolicy policy = MissingScorePolicy::borrow);

}  // namespace wordshift
