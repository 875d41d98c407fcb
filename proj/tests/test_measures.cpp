#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "helpers.hpp"
#include "oracles.hpp"
#include "wordshift/errors.hpp"
#include "wordshift/measures.hpp"

using namespace wordshift;
using testing::dist;
using testing::half_half;
using testing::quarter;

namespace {

double contribution(const ShiftComponents& c, const std::string& word) {
  for (const auto& w : c.words)
    if (w.word == word) return w.weighted_difference();
  FAIL("word not found: " << word);
  return 0.0;
}

void check_finite(const ShiftComponents& c) {
  CHECK(std::isfinite(c.reference));
  for (const auto& w : c.words) {
    CHECK(std::isfinite(w.p1));
    CHECK(std::isfinite(w.p2));
    CHECK(std::isfinite(w.phi1));
    CHECK(std::isfinite(w.phi2));
  }
}

}  // namespace

// Expected values below were computed by the brute-force oracles in
// oracles.hpp and frozen; each case also re-derives them from the oracle.
TEST_CASE("two-word fixture: oracle values") {
  const auto p1 = oracle::probabilities(half_half());
  const auto p2 = oracle::probabilities(quarter());
  CHECK(oracle::entropy(p2, 2) - oracle::entropy(p1, 2) == doctest::Approx(-0.18872187554086717).epsilon(1e-12));
  CHECK(oracle::kld(p1, p2, 2) == doctest::Approx(0.18872187554086717).epsilon(1e-12));
  CHECK(oracle::jsd(p1, p2, 0.5, 0.5, 2) == doctest::Approx(0.048794940695398636).epsilon(1e-12));
  CHECK(oracle::tsallis(p2, 2.0) - oracle::tsallis(p1, 2.0) == doctest::Approx(-0.125).epsilon(1e-12));
  CHECK(oracle::dictionary(p1, p2, {{"a", 7}, {"b", 3}}, {{"a", 7}, {"b", 3}}) == doctest::Approx(-1.0));
}

TEST_CASE("relative frequency components") {
  const auto c = relative_frequency_components(half_half(), quarter());
  CHECK(contribution(c, "a") == doctest::Approx(-0.25).epsilon(1e-9));
  CHECK(contribution(c, "b") == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(std::abs(c.delta()) < 1e-15);
  CHECK(c.reference == 0.0);
  for (const auto& w : c.words) CHECK((w.phi1 == 1.0 && w.phi2 == 1.0));

  const auto same = relative_frequency_components(half_half(), half_half());
  for (const auto& w : same.words) CHECK(w.weighted_difference() == 0.0);

  const auto disjoint = relative_frequency_components(dist("1", {{"a", 1}}), dist("2", {{"b", 1}}));
  CHECK(contribution(disjoint, "a") == -1.0);
  CHECK(contribution(disjoint, "b") == 1.0);
}

TEST_CASE("shannon entropy components") {
  const auto c = shannon_entropy_components(half_half(), quarter(), 2.0);
  CHECK(contribution(c, "a") == doctest::Approx(0.0));
  CHECK(std::abs(contribution(c, "a")) < 1e-9);
  CHECK(contribution(c, "b") == doctest::Approx(-0.18872187554086717).epsilon(1e-9));
  CHECK(c.delta() == doctest::Approx(-0.18872187554086717).epsilon(1e-9));
  CHECK(c.reference == doctest::Approx(1.0));  // H(P1)

  CHECK(shannon_entropy(dist("x", {{"a", 1}})) == 0.0);
  TokenCounts uniform;
  for (int i = 0; i < 16; ++i) uniform["w" + std::to_string(i)] = 3;
  CHECK(shannon_entropy(dist("u", uniform), 2.0) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(shannon_entropy(dist("u", uniform), 10.0) == doctest::Approx(std::log10(16.0)).epsilon(1e-12));

  // Absent words get a zero surprisal, not infinity.
  const auto disjoint = shannon_entropy_components(dist("1", {{"a", 1}}), dist("2", {{"b", 2}, {"c", 2}}));
  check_finite(disjoint);
  CHECK(disjoint.delta() == doctest::Approx(1.0));
}

TEST_CASE("tsallis entropy components") {
  const auto c = tsallis_entropy_components(half_half(), quarter(), 2.0);
  CHECK(contribution(c, "a") == doctest::Approx(0.1875).epsilon(1e-9));
  CHECK(contribution(c, "b") == doctest::Approx(-0.3125).epsilon(1e-9));
  CHECK(c.delta() == doctest::Approx(-0.125).epsilon(1e-9));

  for (double alpha : {0.5, 2.0, 3.0}) {
    const auto same = tsallis_entropy_components(half_half(), half_half(), alpha);
    for (const auto& w : same.words) CHECK(w.weighted_difference() == 0.0);
  }
  CHECK_THROWS_AS(tsallis_entropy_components(half_half(), quarter(), 1.0), InvalidArgument);
  CHECK_THROWS_AS(tsallis_entropy_components(half_half(), quarter(), -1.0), InvalidArgument);

  const auto absent = tsallis_entropy_components(dist("1", {{"a", 1}}), dist("2", {{"b", 1}}), 0.5);
  check_finite(absent);
}

TEST_CASE("tsallis approaches shannon (natural log) as alpha -> 1") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const auto d1 = oracle::random_distribution(rng, 80, 0.7, "1");
    const auto d2 = oracle::random_distribution(rng, 80, 0.7, "2");
    const double shannon = shannon_entropy_components(d1, d2, std::numbers::e).delta();
    for (double alpha : {1.0 - 1e-6, 1.0 + 1e-6})
      CHECK(std::abs(tsallis_entropy_components(d1, d2, alpha).delta() - shannon) <= 1e-4);
  }
}

TEST_CASE("kld components") {
  const auto c = kld_components(half_half(), quarter(), 2.0);
  CHECK(c.delta() == doctest::Approx(0.18872187554086717).epsilon(1e-9));
  for (const auto& w : c.words) CHECK(w.p1 == w.p2);

  const auto same = kld_components(quarter(), quarter(), 2.0);
  CHECK(same.delta() == 0.0);
  for (const auto& w : same.words) CHECK(w.weighted_difference() == 0.0);

  // Reference-only words contribute nothing.
  const auto sub = kld_components(dist("r", {{"a", 1}, {"b", 1}, {"c", 2}}), dist("c", {{"a", 1}}), 2.0);
  CHECK(contribution(sub, "b") == 0.0);
  CHECK(sub.delta() == doctest::Approx(2.0));
}

TEST_CASE("kld names the unsupported words") {
  try {
    kld_components(dist("ref", {{"a", 1}}), dist("cmp", {{"a", 1}, {"b", 1}}), 2.0);
    FAIL("expected a domain error");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("b") != std::string::npos);
    CHECK(std::string(e.what()).find("cmp") != std::string::npos);
  }
}

TEST_CASE("jsd components") {
  const auto disjoint = jsd_components(dist("1", {{"a", 1}}), dist("2", {{"b", 1}}), {0.5, 0.5}, 1.0, 2.0);
  CHECK(disjoint.delta() == 1.0);

  const auto same = jsd_components(quarter(), quarter(), {0.5, 0.5}, 1.0, 2.0);
  CHECK(same.delta() == 0.0);
  for (const auto& w : same.words) CHECK(w.weighted_difference() == 0.0);

  const auto c = jsd_components(half_half(), quarter(), {0.5, 0.5}, 1.0, 2.0);
  CHECK(c.delta() == doctest::Approx(0.048794940695398636).epsilon(1e-9));
  CHECK(c.reference == 0.0);

  CHECK_THROWS_AS(jsd_components(half_half(), quarter(), {0.5, 0.6}), InvalidArgument);
}

TEST_CASE("generalized jsd") {
  const auto p1 = oracle::probabilities(half_half());
  const auto p2 = oracle::probabilities(quarter());
  for (double alpha : {0.5, 2.0, 3.5}) {
    const auto c = jsd_components(half_half(), quarter(), {0.3, 0.7}, alpha, 2.0);
    CHECK(c.delta() == doctest::Approx(oracle::jsd_alpha(p1, p2, 0.3, 0.7, alpha)).epsilon(1e-12));
  }
  // alpha > 1 copes with one-sided words, alpha < 1 refuses them.
  const auto one_sided = jsd_components(dist("1", {{"a", 1}}), dist("2", {{"a", 1}, {"b", 1}}), {0.5, 0.5}, 2.0);
  check_finite(one_sided);
  CHECK(one_sided.delta() ==
        doctest::Approx(oracle::jsd_alpha({{"a", 1.0}}, {{"a", 0.5}, {"b", 0.5}}, 0.5, 0.5, 2.0)).epsilon(1e-12));
  CHECK_THROWS_AS(jsd_components(dist("1", {{"a", 1}}), dist("2", {{"a", 1}, {"b", 1}}), {0.5, 0.5}, 0.5),
                  DomainError);
}

TEST_CASE("jsd symmetry and bounds") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const auto d1 = oracle::random_distribution(rng, 50, 0.5, "1");
    const auto d2 = oracle::random_distribution(rng, 50, 0.5, "2");
    const double forward = jsd_components(d1, d2).delta();
    const double backward = jsd_components(d2, d1).delta();
    CHECK(std::abs(forward - backward) <= 1e-12);
    CHECK(forward >= 0.0);
    CHECK(forward <= 1.0 + 1e-12);
  }
}

TEST_CASE("dictionary components") {
  const ScoreLexicon lex("l", {{"a", 7.0}, {"b", 3.0}}, 5.0);
  const auto resolved = resolve_scores({"a", "b"}, lex, lex);
  const auto c = dictionary_components(half_half(), quarter(), resolved, 5.0);
  CHECK(contribution(c, "a") == doctest::Approx(-1.75).epsilon(1e-9));
  CHECK(c.delta() == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(c.reference == 5.0);

  // Unscored words are dropped and frequencies renormalized over the rest.
  const auto d1 = dist("1", {{"a", 2}, {"b", 2}, {"the", 96}});
  const auto d2 = dist("2", {{"a", 1}, {"b", 3}, {"the", 10}});
  const auto sub = dictionary_components(d1, d2, resolve_scores(union_vocabulary(d1, d2), lex, lex), 5.0);
  CHECK(sub.words.size() == 2);
  CHECK(sub.delta() == doctest::Approx(-1.0).epsilon(1e-12));

  const auto none = resolve_scores({"x"}, lex, lex);
  CHECK_THROWS_AS(dictionary_components(dist("1", {{"x", 1}}), dist("2", {{"x", 1}}), none, 5.0), DomainError);
  const auto one_side = resolve_scores({"a", "x"}, lex, lex);
  CHECK_THROWS_AS(dictionary_components(dist("1", {{"x", 1}}), dist("2", {{"a", 1}}), one_side, 5.0), DomainError);
}

TEST_CASE("compute_components dispatch and reference rules") {
  MeasureSpec spec;
  spec.kind = MeasureKind::tsallis_entropy;
  spec.alpha = 1.0;
  CHECK(compute_components(spec, half_half(), quarter()).measure == "shannon_entropy");

  spec.kind = MeasureKind::shannon_entropy;
  spec.reference = ReferenceRule::parse("-3");
  CHECK(compute_components(spec, half_half(), quarter()).reference == -3.0);
  spec.reference = ReferenceRule::parse("zero");
  CHECK(compute_components(spec, half_half(), quarter()).reference == 0.0);
  spec.reference = ReferenceRule::parse("center");
  CHECK_THROWS_AS(compute_components(spec, half_half(), quarter()), InvalidArgument);

  spec = {};
  spec.kind = MeasureKind::jsd;
  spec.proportional_weights = true;
  const auto c = compute_components(spec, dist("1", {{"a", 3}}), dist("2", {{"b", 1}}));
  REQUIRE(c.weights);
  CHECK(c.weights->pi1 == 0.75);

  spec = {};
  spec.kind = MeasureKind::dictionary;
  CHECK_THROWS_AS(compute_components(spec, half_half(), quarter()), InvalidArgument);
  spec.lexicon1 = ScoreLexicon("l", {{"a", 7.0}, {"b", 3.0}, {"c", 5.5}}, 5.0);
  spec.stop_lens = StopLens{4.0, 6.0};
  const auto dict = compute_components(spec, half_half(), quarter());
  CHECK(dict.reference == 5.0);
  CHECK(dict.delta() == doctest::Approx(-1.0));

  CHECK_THROWS_AS(ReferenceRule::parse("bogus"), InvalidArgument);
  CHECK_THROWS_AS(parse_measure_kind("tf-idf"), InvalidArgument);
}

TEST_CASE("decomposition matches the direct measure on random pairs") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const auto d1 = oracle::random_distribution(rng, 120, 0.6, "1");
    auto d2 = oracle::random_distribution(rng, 120, 0.6, "2");
    const auto p1 = oracle::probabilities(d1);
    const auto p2 = oracle::probabilities(d2);
    const double pi1 = unit(rng);

    CHECK(std::abs(shannon_entropy_components(d1, d2, 2.0).delta() -
                   (oracle::entropy(p2, 2.0) - oracle::entropy(p1, 2.0))) <= 1e-10);
    CHECK(std::abs(tsallis_entropy_components(d1, d2, 2.5).delta() -
                   (oracle::tsallis(p2, 2.5) - oracle::tsallis(p1, 2.5))) <= 1e-10);
    CHECK(std::abs(jsd_components(d1, d2, {pi1, 1.0 - pi1}, 1.0, 2.0).delta() -
                   oracle::jsd(p1, p2, pi1, 1.0 - pi1, 2.0)) <= 1e-10);

    const auto sub = d2.restricted_to([&](const std::string& w) { return d1.contains(w); });
    CHECK(std::abs(kld_components(d1, sub, 2.0).delta() - oracle::kld(p1, oracle::probabilities(sub), 2.0)) <=
          1e-10);
  }
}

TEST_CASE("kld is non-negative on random valid pairs") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 200; ++trial) {
    const auto d1 = oracle::random_distribution(rng, 60, 0.9, "1");
    const auto d2 = oracle::random_distribution(rng, 60, 0.9, "2")
                        .restricted_to([&](const std::string& w) { return d1.contains(w); });
    CHECK(kld_components(d1, d2).delta() >= 0.0);
  }
}
