#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wordshift/measures.hpp"

namespace wordshift {

// Magnitudes at or below this count as zero when assigning contribution classes.
inline constexpr double kSignTolerance = 1e-12;

enum class Sign : int { negative = -1, zero = 0, positive = 1 };

Sign sign_of(double x, double tolerance = kSignTolerance);

// Qualitative type of a word contribution:
//   score: average score relative to the reference (+ / -)
//   freq:  change in relative frequency (up / down)
//   diff:  change in score between the corpora (up-triangle / down-triangle)
struct ContributionClass {
  Sign score = Sign::zero;
  Sign freq = Sign::zero;
  Sign diff = Sign::zero;

  friend bool operator==(const ContributionClass&, const ContributionClass&) = default;

  // Three glyphs, e.g. "+↑△", "-↓0", "+↑0".
  std::string to_string() const;
  static ContributionClass parse(const std::string& text);
};

struct WordContribution {
  std::string word;
  double delta = 0.0;            // freq_component + score_component
  double freq_component = 0.0;   // (p2 - p1) * ((phi1 + phi2)/2 - ref)
  double score_component = 0.0;  // (p1 + p2)/2 * (phi2 - phi1)
  double freq_diff = 0.0;        // p2 - p1
  double score_offset = 0.0;     // (phi1 + phi2)/2 - ref
  double score_diff = 0.0;       // phi2 - phi1
  ContributionClass cls;
  bool borrowed = false;
};

// Per-word contributions in input (word) order, each already classified.
std::vector<WordContribution> decompose(const ShiftComponents& components);

ContributionClass classify(const WordContribution& contribution);

// Descending |delta|, ties by word.
std::vector<WordContribution> rank(std::vector<WordContribution> contributions);

// True when some word carries a score difference (two score sets).
bool is_generalized(const std::vector<WordContribution>& contributions);

// Keys of the summary bars in display order: "+↑", "-↓", "-↑", "+↓" and,
// for generalized shifts, "△" and "▽".
std::vector<std::string> class_sum_keys(bool generalized);

using ClassSums = std::vector<std::pair<std::string, double>>;

// Basic shifts: delta summed per (score, freq) class. Generalized shifts:
// frequency components per (score, freq) class plus score components split
// into increases and decreases. The grand total is delta.
ClassSums summarize(const std::vector<WordContribution>& contributions);
ClassSums summarize(const std::vector<WordContribution>& contributions, bool generalized);

enum class CumulativeMode { abs, signed_ };

std::string to_string(CumulativeMode mode);
CumulativeMode parse_cumulative_mode(const std::string& text);

// Partial sums over ranked contributions. abs: sum |delta| / total sum |delta|.
// signed: sum delta / |delta_phi|; throws InvalidArgument when delta_phi is 0.
std::vector<double> cumulative(const std::vector<WordContribution>& ranked, CumulativeMode mode);

struct ShiftResult {
  std::string measure;
  std::string label1;
  std::string label2;
  double reference = 0.0;
  double phi1_total = 0.0;
  double phi2_total = 0.0;
  double delta_phi = 0.0;
  bool generalized = false;
  std::vector<WordContribution> contributions;  // ranked
  ClassSums class_sums;
  std::vector<double> cumulative_abs;                   // empty when every contribution is 0
  std::optional<std::vector<double>> cumulative_signed;  // absent when delta_phi is 0
  std::uint64_t tokens1 = 0;
  std::uint64_t tokens2 = 0;
};

ShiftResult compute_shift(const ShiftComponents& components);

}  // namespace wordshift
