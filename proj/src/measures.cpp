#include "wordshift/measures.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "wordshift/errors.hpp"

namespace wordshift {

namespace {

ShiftComponents skeleton(std::string measure, const TokenDistribution& d1, const TokenDistribution& d2) {
  ShiftComponents c;
  c.measure = std::move(measure);
  c.label1 = d1.label();
  c.label2 = d2.label();
  c.tokens1 = d1.total_tokens();
  c.tokens2 = d2.total_tokens();
  return c;
}

void check_log_base(double base) {
  if (!std::isfinite(base) || base <= 0.0 || base == 1.0)
    throw InvalidArgument("log base must be positive and different from 1");
}

void check_alpha(double alpha) {
  if (!std::isfinite(alpha) || alpha < 0.0) throw InvalidArgument("alpha must be finite and non-negative");
}

double parse_double(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw InvalidArgument("invalid " + what + " '" + text + "'");
  }
  if (used != text.size() || !std::isfinite(v)) throw InvalidArgument("invalid " + what + " '" + text + "'");
  return v;
}

}  // namespace

double ShiftComponents::phi1_total() const {
  double s = 0.0;
  for (const auto& w : words) s += w.p1 * w.phi1;
  return s;
}

double ShiftComponents::phi2_total() const {
  double s = 0.0;
  for (const auto& w : words) s += w.p2 * w.phi2;
  return s;
}

void ShiftComponents::validate() const {
  if (!std::isfinite(reference)) throw DomainError(measure + ": reference score is not finite");
  for (const auto& w : words) {
    if (!std::isfinite(w.p1 * w.phi1) || !std::isfinite(w.p2 * w.phi2) || !std::isfinite(w.phi1) ||
        !std::isfinite(w.phi2))
      throw DomainError(measure + ": non-finite weighted score for '" + w.word + "'");
  }
}

std::string to_string(MeasureKind kind) {
  switch (kind) {
    case MeasureKind::relative_frequency: return "relative_frequency";
    case MeasureKind::shannon_entropy: return "shannon_entropy";
    case MeasureKind::tsallis_entropy: return "tsallis_entropy";
    case MeasureKind::kld: return "kld";
    case MeasureKind::jsd: return "jsd";
    case MeasureKind::dictionary: return "dictionary";
  }
  return "unknown";
}

MeasureKind parse_measure_kind(const std::string& name) {
  for (auto k : {MeasureKind::relative_frequency, MeasureKind::shannon_entropy, MeasureKind::tsallis_entropy,
                 MeasureKind::kld, MeasureKind::jsd, MeasureKind::dictionary})
    if (to_string(k) == name) return k;
  if (name == "frequency") return MeasureKind::relative_frequency;
  if (name == "entropy" || name == "shannon") return MeasureKind::shannon_entropy;
  if (name == "tsallis") return MeasureKind::tsallis_entropy;
  if (name == "sentiment") return MeasureKind::dictionary;
  throw InvalidArgument("unknown measure '" + name + "'");
}

ReferenceRule ReferenceRule::parse(const std::string& text) {
  if (text.empty() || text == "default") return {};
  if (text == "entropy1") return {Kind::entropy1, 0.0};
  if (text == "center") return {Kind::center, 0.0};
  if (text == "zero") return {Kind::zero, 0.0};
  return {Kind::value, parse_double(text, "reference value")};
}

std::string ReferenceRule::to_string() const {
  switch (kind) {
    case Kind::measure_default: return "default";
    case Kind::entropy1: return "entropy1";
    case Kind::center: return "center";
    case Kind::zero: return "zero";
    case Kind::value: {
      std::ostringstream ss;
      ss.precision(17);
      ss << value;
      return ss.str();
    }
  }
  return "default";
}

double log_in_base(double x, double base) {
  if (base == 2.0) return std::log2(x);
  if (base == 10.0) return std::log10(x);
  if (base == std::numbers::e) return std::log(x);
  return std::log(x) / std::log(base);
}

double shannon_entropy(const TokenDistribution& d, double log_base) {
  check_log_base(log_base);
  double h = 0.0;
  for (const auto& [w, n] : d.counts()) {
    const double p = d.probability(w);
    h -= p * log_in_base(p, log_base);
  }
  return h;
}

ShiftComponents relative_frequency_components(const TokenDistribution& d1, const TokenDistribution& d2) {
  auto c = skeleton("relative_frequency", d1, d2);
  for (const auto& word : union_vocabulary(d1, d2))
    c.words.push_back({word, d1.probability(word), d2.probability(word), 1.0, 1.0});
  c.reference = 0.0;
  return c;
}

ShiftComponents shannon_entropy_components(const TokenDistribution& d1, const TokenDistribution& d2,
                                           double log_base) {
  check_log_base(log_base);
  auto c = skeleton("shannon_entropy", d1, d2);
  c.log_base = log_base;
  auto surprisal = [&](double p) { return p > 0.0 ? -log_in_base(p, log_base) : 0.0; };
  for (const auto& word : union_vocabulary(d1, d2)) {
    const double p1 = d1.probability(word), p2 = d2.probability(word);
    c.words.push_back({word, p1, p2, surprisal(p1), surprisal(p2)});
  }
  c.reference = c.phi1_total();
  return c;
}

ShiftComponents tsallis_entropy_components(const TokenDistribution& d1, const TokenDistribution& d2, double alpha) {
  check_alpha(alpha);
  if (alpha == 1.0) throw InvalidArgument("tsallis entropy with alpha = 1 is the Shannon entropy");
  auto c = skeleton("tsallis_entropy", d1, d2);
  c.alpha = alpha;
  c.log_base = std::numbers::e;
  auto score = [&](double p) { return p > 0.0 ? -std::pow(p, alpha - 1.0) / (alpha - 1.0) : 0.0; };
  for (const auto& word : union_vocabulary(d1, d2)) {
    const double p1 = d1.probability(word), p2 = d2.probability(word);
    c.words.push_back({word, p1, p2, score(p1), score(p2)});
  }
  c.reference = c.phi1_total();
  return c;
}

ShiftComponents kld_components(const TokenDistribution& reference, const TokenDistribution& comparison,
                               double log_base) {
  check_log_base(log_base);
  std::vector<std::string> unsupported;
  for (const auto& [w, n] : comparison.counts())
    if (!reference.contains(w)) unsupported.push_back(w);
  if (!unsupported.empty()) {
    std::ostringstream msg;
    msg << "KLD is undefined: " << unsupported.size() << " word(s) of '" << comparison.label()
        << "' are absent from reference '" << reference.label() << "': ";
    constexpr std::size_t shown = 10;
    for (std::size_t i = 0; i < unsupported.size() && i < shown; ++i) msg << (i ? ", " : "") << unsupported[i];
    if (unsupported.size() > shown) msg << ", ...";
    throw DomainError(msg.str());
  }

  auto c = skeleton("kld", reference, comparison);
  c.log_base = log_base;
  for (const auto& [word, n] : reference.counts()) {
    const double p1 = reference.probability(word), p2 = comparison.probability(word);
    WordComponents w{word, p2, p2, 0.0, 0.0};
    if (p2 > 0.0) {
      w.phi2 = -log_in_base(p1, log_base);
      w.phi1 = -log_in_base(p2, log_base);
    }
    c.words.push_back(std::move(w));
  }
  c.reference = 0.0;
  return c;
}

ShiftComponents jsd_components(const TokenDistribution& d1, const TokenDistribution& d2, MixtureWeights weights,
                               double alpha, double log_base) {
  weights.validate();
  check_alpha(alpha);
  check_log_base(log_base);
  const auto m = mixture(d1, d2, weights);

  if (alpha < 1.0) {
    for (const auto& [word, mt] : m)
      if (!d1.contains(word) || !d2.contains(word))
        throw DomainError("generalized JSD with alpha < 1 diverges for word '" + word +
                          "' that appears in only one corpus");
  }

  auto c = skeleton("jsd", d1, d2);
  c.weights = weights;
  c.alpha = alpha;
  c.log_base = alpha == 1.0 ? log_base : std::numbers::e;
  for (const auto& [word, mt] : m) {
    const double p1 = d1.probability(word), p2 = d2.probability(word);
    WordComponents w{word, p1, p2, 0.0, 0.0};
    if (alpha == 1.0) {
      if (p2 > 0.0) w.phi2 = weights.pi2 * log_in_base(p2 / mt, log_base);
      if (p1 > 0.0) w.phi1 = -weights.pi1 * log_in_base(p1 / mt, log_base);
    } else {
      const double k = alpha - 1.0;
      auto power = [&](double p) { return p > 0.0 ? std::pow(p, k) : 0.0; };
      const double mk = std::pow(mt, k);
      w.phi2 = weights.pi2 * (power(p2) - mk) / k;
      w.phi1 = weights.pi1 * (mk - power(p1)) / k;
    }
    c.words.push_back(std::move(w));
  }
  c.reference = 0.0;
  return c;
}

ShiftComponents dictionary_components(const TokenDistribution& d1, const TokenDistribution& d2,
                                      const ResolvedScores& resolved, double reference) {
  if (!std::isfinite(reference)) throw InvalidArgument("reference score must be finite");
  std::uint64_t n1 = 0, n2 = 0;
  for (const auto& r : resolved) {
    n1 += d1.count(r.word);
    n2 += d2.count(r.word);
  }
  if (n1 == 0 || n2 == 0)
    throw DomainError("no scored words in '" + (n1 == 0 ? d1.label() : d2.label()) +
                      "': the lexicon does not cover this corpus");

  auto c = skeleton("dictionary", d1, d2);
  for (const auto& r : resolved) {
    const double p1 = static_cast<double>(d1.count(r.word)) / static_cast<double>(n1);
    const double p2 = static_cast<double>(d2.count(r.word)) / static_cast<double>(n2);
    if (p1 == 0.0 && p2 == 0.0) continue;
    c.words.push_back({r.word, p1, p2, r.phi1, r.phi2, r.borrowed1, r.borrowed2});
  }
  c.reference = reference;
  return c;
}

ShiftComponents compute_components(const MeasureSpec& spec, const TokenDistribution& d1,
                                   const TokenDistribution& d2) {
  using Rule = ReferenceRule::Kind;
  if (spec.reference.kind == Rule::center && spec.kind != MeasureKind::dictionary)
    throw InvalidArgument("reference 'center' needs a dictionary measure");

  const MixtureWeights weights =
      spec.proportional_weights ? MixtureWeights::proportional(d1, d2) : spec.weights;

  ShiftComponents c;
  switch (spec.kind) {
    case MeasureKind::relative_frequency:
      c = relative_frequency_components(d1, d2);
      break;
    case MeasureKind::shannon_entropy:
      c = shannon_entropy_components(d1, d2, spec.log_base);
      break;
    case MeasureKind::tsallis_entropy:
      c = spec.alpha == 1.0 ? shannon_entropy_components(d1, d2, spec.log_base)
                            : tsallis_entropy_components(d1, d2, spec.alpha);
      break;
    case MeasureKind::kld:
      c = kld_components(d1, d2, spec.log_base);
      break;
    case MeasureKind::jsd:
      c = jsd_components(d1, d2, weights, spec.alpha, spec.log_base);
      break;
    case MeasureKind::dictionary: {
      if (!spec.lexicon1) throw InvalidArgument("dictionary measure needs a lexicon");
      ScoreLexicon lex1 = *spec.lexicon1;
      ScoreLexicon lex2 = spec.lexicon2 ? *spec.lexicon2 : lex1;
      if (spec.stop_lens) {
        lex1 = apply_stop_lens(lex1, *spec.stop_lens);
        lex2 = apply_stop_lens(lex2, *spec.stop_lens);
      }
      const auto resolved = resolve_scores(union_vocabulary(d1, d2), lex1, lex2, spec.missing_scores);
      c = dictionary_components(d1, d2, resolved, spec.lexicon1->center());
      break;
    }
  }

  switch (spec.reference.kind) {
    case Rule::measure_default:
    case Rule::center:
      break;
    case Rule::value:
      c.reference = spec.reference.value;
      break;
    case Rule::entropy1:
      c.reference = c.phi1_total();
      break;
    case Rule::zero:
      c.reference = 0.0;
      break;
  }
  c.validate();
  return c;
}

}  // namespace wordshift
