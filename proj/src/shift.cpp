#include "wordshift/shift.hpp"

#include <algorithm>
#include <cmath>

#include "wordshift/errors.hpp"

namespace wordshift {

namespace {

constexpr const char* kUp = "↑";
constexpr const char* kDown = "↓";
constexpr const char* kTriUp = "△";
constexpr const char* kTriDown = "▽";

// Summary groups use the tolerant sign when it is decided and fall back to the
// raw sign otherwise, so sub-tolerance components still land in some group
// and the groups add up to delta.
Sign group_sign(Sign tolerant, double raw) {
  if (tolerant != Sign::zero) return tolerant;
  return raw < 0.0 ? Sign::negative : Sign::positive;
}

std::string freq_group_key(Sign score, Sign freq) {
  std::string key = score == Sign::negative ? "-" : "+";
  key += freq == Sign::negative ? kDown : kUp;
  return key;
}

}  // namespace

Sign sign_of(double x, double tolerance) {
  if (x > tolerance) return Sign::positive;
  if (x < -tolerance) return Sign::negative;
  return Sign::zero;
}

std::string ContributionClass::to_string() const {
  std::string s;
  s += score == Sign::positive ? "+" : score == Sign::negative ? "-" : "0";
  s += freq == Sign::positive ? kUp : freq == Sign::negative ? kDown : "0";
  s += diff == Sign::positive ? kTriUp : diff == Sign::negative ? kTriDown : "0";
  return s;
}

ContributionClass ContributionClass::parse(const std::string& text) {
  ContributionClass c;
  std::string_view rest = text;
  auto take = [&](std::string_view pos, std::string_view neg, Sign& out) {
    if (rest.starts_with(pos)) {
      out = Sign::positive;
      rest.remove_prefix(pos.size());
    } else if (rest.starts_with(neg)) {
      out = Sign::negative;
      rest.remove_prefix(neg.size());
    } else if (rest.starts_with("0")) {
      out = Sign::zero;
      rest.remove_prefix(1);
    } else {
      throw InvalidArgument("malformed contribution class '" + text + "'");
    }
  };
  take("+", "-", c.score);
  take(kUp, kDown, c.freq);
  take(kTriUp, kTriDown, c.diff);
  if (!rest.empty()) throw InvalidArgument("malformed contribution class '" + text + "'");
  return c;
}

ContributionClass classify(const WordContribution& w) {
  return {sign_of(w.score_offset), sign_of(w.freq_diff), sign_of(w.score_diff)};
}

std::vector<WordContribution> decompose(const ShiftComponents& components) {
  const double ref = components.reference;
  std::vector<WordContribution> out;
  out.reserve(components.words.size());
  for (const auto& w : components.words) {
    WordContribution c;
    c.word = w.word;
    c.freq_diff = w.p2 - w.p1;
    c.score_offset = 0.5 * (w.phi1 + w.phi2) - ref;
    c.score_diff = w.phi2 - w.phi1;
    c.freq_component = c.freq_diff * c.score_offset;
    c.score_component = 0.5 * (w.p1 + w.p2) * c.score_diff;
    c.delta = c.freq_component + c.score_component;
    c.borrowed = w.borrowed1 || w.borrowed2;
    c.cls = classify(c);
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<WordContribution> rank(std::vector<WordContribution> contributions) {
  std::sort(contributions.begin(), contributions.end(), [](const auto& a, const auto& b) {
    const double ma = std::abs(a.delta), mb = std::abs(b.delta);
    if (ma != mb) return ma > mb;
    return a.word < b.word;
  });
  return contributions;
}

bool is_generalized(const std::vector<WordContribution>& contributions) {
  return std::any_of(contributions.begin(), contributions.end(),
                     [](const auto& c) { return c.cls.diff != Sign::zero; });
}

std::vector<std::string> class_sum_keys(bool generalized) {
  std::vector<std::string> keys{freq_group_key(Sign::positive, Sign::positive),
                                freq_group_key(Sign::negative, Sign::negative),
                                freq_group_key(Sign::negative, Sign::positive),
                                freq_group_key(Sign::positive, Sign::negative)};
  if (generalized) {
    keys.emplace_back(kTriUp);
    keys.emplace_back(kTriDown);
  }
  return keys;
}

ClassSums summarize(const std::vector<WordContribution>& contributions) {
  return summarize(contributions, is_generalized(contributions));
}

ClassSums summarize(const std::vector<WordContribution>& contributions, bool generalized) {
  ClassSums sums;
  for (const auto& key : class_sum_keys(generalized)) sums.emplace_back(key, 0.0);
  auto add = [&](const std::string& key, double v) {
    for (auto& [k, total] : sums)
      if (k == key) total += v;
  };
  for (const auto& c : contributions) {
    const auto key = freq_group_key(group_sign(c.cls.score, c.score_offset), group_sign(c.cls.freq, c.freq_diff));
    if (!generalized) {
      add(key, c.delta);
      continue;
    }
    add(key, c.freq_component);
    add(group_sign(c.cls.diff, c.score_diff) == Sign::negative ? kTriDown : kTriUp, c.score_component);
  }
  return sums;
}

std::string to_string(CumulativeMode mode) { return mode == CumulativeMode::abs ? "abs" : "signed"; }

CumulativeMode parse_cumulative_mode(const std::string& text) {
  if (text == "abs") return CumulativeMode::abs;
  if (text == "signed") return CumulativeMode::signed_;
  throw InvalidArgument("cumulative mode must be 'abs' or 'signed', got '" + text + "'");
}

std::vector<double> cumulative(const std::vector<WordContribution>& ranked, CumulativeMode mode) {
  double norm = 0.0;
  if (mode == CumulativeMode::abs) {
    for (const auto& c : ranked) norm += std::abs(c.delta);
    if (norm == 0.0) throw InvalidArgument("cumulative contributions are undefined: every contribution is zero");
  } else {
    for (const auto& c : ranked) norm += c.delta;
    norm = std::abs(norm);
    if (norm <= kSignTolerance)
      throw InvalidArgument("signed cumulative contributions are undefined when the total difference is 0; "
                            "use abs mode");
  }
  std::vector<double> series;
  series.reserve(ranked.size());
  double running = 0.0;
  for (const auto& c : ranked) {
    running += mode == CumulativeMode::abs ? std::abs(c.delta) : c.delta;
    series.push_back(running / norm);
  }
  return series;
}

ShiftResult compute_shift(const ShiftComponents& components) {
  components.validate();
  ShiftResult r;
  r.measure = components.measure;
  r.label1 = components.label1;
  r.label2 = components.label2;
  r.reference = components.reference;
  r.phi1_total = components.phi1_total();
  r.phi2_total = components.phi2_total();
  r.delta_phi = r.phi2_total - r.phi1_total;
  r.tokens1 = components.tokens1;
  r.tokens2 = components.tokens2;
  r.contributions = rank(decompose(components));
  r.generalized = is_generalized(r.contributions);
  r.class_sums = summarize(r.contributions, r.generalized);

  double abs_total = 0.0, signed_total = 0.0;
  for (const auto& c : r.contributions) {
    abs_total += std::abs(c.delta);
    signed_total += c.delta;
  }
  if (abs_total > 0.0) r.cumulative_abs = cumulative(r.contributions, CumulativeMode::abs);
  if (std::abs(signed_total) > kSignTolerance) r.cumulative_signed = cumulative(r.contributions, CumulativeMode::signed_);
  return r;
}

}  // namespace wordshift
