#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace wordshift {

struct TokenizerOptions {
  bool lowercase = true;
  bool strip_punctuation = true;
  int ngram_size = 1;
};

// Whitespace split, then optional lowercasing and edge-punctuation stripping,
// then n-gram windowing. Intra-word apostrophes and hyphens survive.
std::vector<std::string> tokenize(std::string_view text, const TokenizerOptions& options = {});

using TokenCounts = std::map<std::string, std::uint64_t>;

// Word frequency distribution of a single corpus. Never empty; every stored
// count is positive.
class TokenDistribution {
public:
  TokenDistribution(std::string label, TokenCounts counts);

  const std::string& label() const noexcept { return label_; }
  const TokenCounts& counts() const noexcept { return counts_; }
  std::uint64_t total_tokens() const noexcept { return total_; }
  std::size_t size() const noexcept { return counts_.size(); }

  std::uint64_t count(const std::string& token) const;
  bool contains(const std::string& token) const { return counts_.contains(token); }

  // count/total for stored tokens, 0 otherwise.
  double probability(const std::string& token) const;

  // Copy with the listed tokens removed. Throws DomainError when nothing is left.
  TokenDistribution without(const std::set<std::string>& tokens) const;

  // Copy restricted to tokens accepted by `keep`.
  template <typename Pred>
  TokenDistribution restricted_to(Pred keep) const {
    TokenCounts kept;
    for (const auto& [token, n] : counts_)
      if (keep(token)) kept.emplace(token, n);
    return TokenDistribution(label_, std::move(kept));
  }

private:
  std::string label_;
  TokenCounts counts_;
  std::uint64_t total_ = 0;
};

// Lexicographically ordered set of word types.
using Vocabulary = std::vector<std::string>;

TokenDistribution build_distribution(std::span<const std::string> tokens, std::string label);

// `token<TAB>count` rows; `#` lines and blank lines are skipped, duplicates summed.
TokenDistribution parse_counts(std::istream& in, std::string label, const std::string& source = "<stream>");
TokenDistribution load_counts(const std::filesystem::path& path);
TokenDistribution load_counts(const std::filesystem::path& path, std::string label);

TokenDistribution load_text(const std::filesystem::path& path, const TokenizerOptions& options);
TokenDistribution load_text(const std::filesystem::path& path, const TokenizerOptions& options, std::string label);

Vocabulary union_vocabulary(const TokenDistribution& d1, const TokenDistribution& d2);

struct MixtureWeights {
  double pi1 = 0.5;
  double pi2 = 0.5;

  // Throws InvalidArgument unless both are >= 0 and sum to 1 within 1e-12.
  void validate() const;

  // Shares proportional to the token counts of each corpus.
  static MixtureWeights proportional(const TokenDistribution& d1, const TokenDistribution& d2);
};

// pi1*p1 + pi2*p2 over the union vocabulary.
std::map<std::string, double> mixture(const TokenDistribution& d1, const TokenDistribution& d2,
                                      MixtureWeights weights);

std::string read_file(const std::filesystem::path& path);

}  // namespace wordshift
