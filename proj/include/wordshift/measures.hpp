#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wordshift/corpus.hpp"
#include "wordshift/lexicon.hpp"

namespace wordshift {

// One word of a measure written as a difference of weighted averages:
// the word contributes p2*phi2 - p1*phi1.
struct WordComponents {
  std::string word;
  double p1 = 0.0;
  double p2 = 0.0;
  double phi1 = 0.0;
  double phi2 = 0.0;
  bool borrowed1 = false;
  bool borrowed2 = false;

  double weighted_difference() const { return p2 * phi2 - p1 * phi1; }
};

// Canonical shift form shared by every measure.
struct ShiftComponents {
  std::string measure;
  std::vector<WordComponents> words;  // sorted by word
  double reference = 0.0;
  double log_base = 2.0;
  std::optional<double> alpha;
  std::optional<MixtureWeights> weights;
  std::string label1;
  std::string label2;
  std::uint64_t tokens1 = 0;
  std::uint64_t tokens2 = 0;

  // Sum of p1*phi1 (resp. p2*phi2).
  double phi1_total() const;
  double phi2_total() const;
  double delta() const { return phi2_total() - phi1_total(); }

  // Throws DomainError if any weighted score or the reference is not finite.
  void validate() const;
};

enum class MeasureKind { relative_frequency, shannon_entropy, tsallis_entropy, kld, jsd, dictionary };

std::string to_string(MeasureKind kind);
MeasureKind parse_measure_kind(const std::string& name);

// How the reference score is chosen. `measure_default` uses 0 for frequency
// and divergence measures, Phi(1) for the entropies, the lexicon center for
// dictionaries.
struct ReferenceRule {
  enum class Kind { measure_default, value, entropy1, center, zero };
  Kind kind = Kind::measure_default;
  double value = 0.0;

  static ReferenceRule parse(const std::string& text);
  std::string to_string() const;
};

struct MeasureSpec {
  MeasureKind kind = MeasureKind::relative_frequency;
  double alpha = 1.0;
  double log_base = 2.0;
  MixtureWeights weights;
  bool proportional_weights = false;
  std::optional<ScoreLexicon> lexicon1;
  std::optional<ScoreLexicon> lexicon2;  // defaults to lexicon1
  std::optional<StopLens> stop_lens;
  MissingScorePolicy missing_scores = MissingScorePolicy::borrow;
  ReferenceRule reference;
};

// log_base(x); exact for bases 2, e and 10.
double log_in_base(double x, double base);

double shannon_entropy(const TokenDistribution& d, double log_base = 2.0);

ShiftComponents relative_frequency_components(const TokenDistribution& d1, const TokenDistribution& d2);

ShiftComponents shannon_entropy_components(const TokenDistribution& d1, const TokenDistribution& d2,
                                           double log_base = 2.0);

// Natural units: phi = -p^(alpha-1)/(alpha-1). Throws InvalidArgument for alpha == 1.
ShiftComponents tsallis_entropy_components(const TokenDistribution& d1, const TokenDistribution& d2, double alpha);

// D(P2 || P1) with d1 as the reference text. Throws DomainError naming the
// words that d2 uses but d1 does not.
ShiftComponents kld_components(const TokenDistribution& reference, const TokenDistribution& comparison,
                               double log_base = 2.0);

// alpha == 1 is the standard JSD in log_base units; other alphas use the
// generalized-entropy form in natural units.
ShiftComponents jsd_components(const TokenDistribution& d1, const TokenDistribution& d2, MixtureWeights weights = {},
                               double alpha = 1.0, double log_base = 2.0);

// Frequencies are renormalized over the resolved sub-vocabulary.
ShiftComponents dictionary_components(const TokenDistribution& d1, const TokenDistribution& d2,
                                      const ResolvedScores& resolved, double reference);

// Dispatches on spec.kind and applies spec.reference.
ShiftComponents compute_components(const MeasureSpec& spec, const TokenDistribution& d1,
                                   const TokenDistribution& d2);

}  // namespace wordshift
