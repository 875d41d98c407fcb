#include "wordshift/corpus.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "wordshift/errors.hpp"
#include "utf8.hpp"

namespace wordshift {

namespace {

std::string normalize_token(std::string_view raw, const TokenizerOptions& options) {
  std::u32string cps;
  for (std::size_t i = 0; i < raw.size();) {
    const auto d = utf8::decode(raw, i);
    cps.push_back(options.lowercase ? utf8::to_lower(d.cp) : d.cp);
    i += d.len;
  }
  std::size_t begin = 0, end = cps.size();
  if (options.strip_punctuation) {
    while (begin < end && utf8::is_punct(cps[begin])) ++begin;
    while (end > begin && utf8::is_punct(cps[end - 1])) --end;
  }
  std::string out;
  out.reserve(end - begin);
  for (std::size_t i = begin; i < end; ++i) utf8::append(out, cps[i]);
  return out;
}

std::string trim_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

std::string stem_of(const std::filesystem::path& path) { return path.stem().string(); }

}  // namespace

std::vector<std::string> tokenize(std::string_view text, const TokenizerOptions& options) {
  if (options.ngram_size < 1) throw InvalidArgument("ngram size must be at least 1");

  std::vector<std::string> unigrams;
  std::size_t start = std::string_view::npos;
  auto flush = [&](std::size_t stop) {
    if (start == std::string_view::npos) return;
    auto token = normalize_token(text.substr(start, stop - start), options);
    if (!token.empty()) unigrams.push_back(std::move(token));
    start = std::string_view::npos;
  };
  for (std::size_t i = 0; i < text.size();) {
    const auto d = utf8::decode(text, i);
    if (utf8::is_space(d.cp)) {
      flush(i);
    } else if (start == std::string_view::npos) {
      start = i;
    }
    i += d.len;
  }
  flush(text.size());

  const auto n = static_cast<std::size_t>(options.ngram_size);
  if (n == 1) return unigrams;
  std::vector<std::string> grams;
  if (unigrams.size() < n) return grams;
  grams.reserve(unigrams.size() - n + 1);
  for (std::size_t i = 0; i + n <= unigrams.size(); ++i) {
    std::string g = unigrams[i];
    for (std::size_t k = 1; k < n; ++k) {
      g += ' ';
      g += unigrams[i + k];
    }
    grams.push_back(std::move(g));
  }
  return grams;
}

TokenDistribution::TokenDistribution(std::string label, TokenCounts counts)
    : label_(std::move(label)), counts_(std::move(counts)) {
  for (const auto& [token, n] : counts_) {
    if (n == 0) throw InvalidArgument("token '" + token + "' has zero count");
    total_ += n;
  }
  if (total_ == 0) throw DomainError("empty corpus '" + label_ + "': a distribution needs at least one token");
}

std::uint64_t TokenDistribution::count(const std::string& token) const {
  const auto it = counts_.find(token);
  return it == counts_.end() ? 0 : it->second;
}

double TokenDistribution::probability(const std::string& token) const {
  return static_cast<double>(count(token)) / static_cast<double>(total_);
}

TokenDistribution TokenDistribution::without(const std::set<std::string>& tokens) const {
  return restricted_to([&](const std::string& t) { return !tokens.contains(t); });
}

TokenDistribution build_distribution(std::span<const std::string> tokens, std::string label) {
  TokenCounts counts;
  for (const auto& t : tokens) ++counts[t];
  return TokenDistribution(std::move(label), std::move(counts));
}

TokenDistribution parse_counts(std::istream& in, std::string label, const std::string& source) {
  TokenCounts counts;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim_cr(std::move(line));
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.rfind('\t');
    if (tab == std::string::npos) throw ParseError(source, lineno, "expected token<TAB>count");
    const std::string token = line.substr(0, tab);
    const std::string_view field = std::string_view(line).substr(tab + 1);
    if (token.empty()) throw ParseError(source, lineno, "empty token");
    long long value = 0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size())
      throw ParseError(source, lineno, "count '" + std::string(field) + "' is not an integer");
    if (value <= 0) throw ParseError(source, lineno, "count must be positive, got " + std::string(field));
    counts[token] += static_cast<std::uint64_t>(value);
  }
  return TokenDistribution(std::move(label), std::move(counts));
}

TokenDistribution load_counts(const std::filesystem::path& path) { return load_counts(path, stem_of(path)); }

TokenDistribution load_counts(const std::filesystem::path& path, std::string label) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open count table " + path.string());
  return parse_counts(in, std::move(label), path.string());
}

TokenDistribution load_text(const std::filesystem::path& path, const TokenizerOptions& options) {
  return load_text(path, options, stem_of(path));
}

TokenDistribution load_text(const std::filesystem::path& path, const TokenizerOptions& options, std::string label) {
  const auto tokens = tokenize(read_file(path), options);
  return build_distribution(tokens, std::move(label));
}

Vocabulary union_vocabulary(const TokenDistribution& d1, const TokenDistribution& d2) {
  Vocabulary vocab;
  vocab.reserve(d1.size() + d2.size());
  auto a = d1.counts().begin(), b = d2.counts().begin();
  const auto ae = d1.counts().end(), be = d2.counts().end();
  while (a != ae || b != be) {
    if (b == be || (a != ae && a->first < b->first)) {
      vocab.push_back((a++)->first);
    } else if (a == ae || b->first < a->first) {
      vocab.push_back((b++)->first);
    } else {
      vocab.push_back(a->first);
      ++a;
      ++b;
    }
  }
  return vocab;
}

void MixtureWeights::validate() const {
  if (!(pi1 >= 0.0) || !(pi2 >= 0.0))
    throw InvalidArgument("mixture weights must be non-negative");
  if (std::abs(pi1 + pi2 - 1.0) > 1e-12) {
    std::ostringstream msg;
    msg << "mixture weights must sum to 1 (got " << pi1 << " + " << pi2 << ")";
    throw InvalidArgument(msg.str());
  }
}

MixtureWeights MixtureWeights::proportional(const TokenDistribution& d1, const TokenDistribution& d2) {
  const double n1 = static_cast<double>(d1.total_tokens());
  const double n2 = static_cast<double>(d2.total_tokens());
  const double pi1 = n1 / (n1 + n2);
  return {pi1, 1.0 - pi1};
}

std::map<std::string, double> mixture(const TokenDistribution& d1, const TokenDistribution& d2,
                                      MixtureWeights weights) {
  weights.validate();
  std::map<std::string, double> m;
  for (const auto& word : union_vocabulary(d1, d2))
    m.emplace_hint(m.end(), word, weights.pi1 * d1.probability(word) + weights.pi2 * d2.probability(word));
  return m;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace wordshift
