#include <doctest.h>

#include <fstream>
#include <regex>
#include <sstream>

#include "helpers.hpp"
#include "wordshift/errors.hpp"
#include "wordshift/measures.hpp"
#include "wordshift/render.hpp"

using namespace wordshift;

namespace {

std::size_t count(const std::string& haystack, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = haystack.find(needle); pos != std::string::npos; pos = haystack.find(needle, pos + needle.size()))
    ++n;
  return n;
}

// The <g class="word-row" ...> element for one word, up to its closing tag.
std::string row_of(const std::string& svg, const std::string& word) {
  const auto start = svg.find("<g class=\"word-row\" data-word=\"" + word + "\"");
  REQUIRE(start != std::string::npos);
  const auto end = svg.find("</g>", start);
  return svg.substr(start, end - start);
}

ShiftResult basic_result() {
  ShiftComponents c;
  c.measure = "dictionary";
  c.label1 = "before";
  c.label2 = "after";
  c.reference = 5.0;
  c.words = {{"laughter", 0.2, 0.4, 8.5, 8.5},
             {"terror", 0.1, 0.3, 1.5, 1.5},
             {"love", 0.3, 0.1, 8.4, 8.4},
             {"war", 0.4, 0.2, 1.8, 1.8}};
  return compute_shift(c);
}

ShiftResult counteracting_result() {
  ShiftComponents c;
  c.measure = "dictionary";
  c.label1 = "1960s";
  c.label2 = "2000s";
  c.reference = 0.0;
  c.words = {{"better", 0.2, 0.4, 0.9, 0.1}, {"nation", 0.5, 0.3, 0.4, -0.1}, {"the", 0.3, 0.3, 0.0, 0.0}};
  return compute_shift(c);
}

ShiftResult many_words(int n) {
  ShiftComponents c;
  c.measure = "relative_frequency";
  c.label1 = "a";
  c.label2 = "b";
  double z1 = 0.0, z2 = 0.0;
  for (int i = 1; i <= n; ++i) z1 += i, z2 += n + 1 - i;
  for (int i = 1; i <= n; ++i)
    c.words.push_back({"w" + std::to_string(i), i / z1, (n + 1 - i) / z2, 1.0 + i % 3, 1.0 + i % 3});
  c.reference = 0.0;
  return compute_shift(c);
}

}  // namespace

TEST_CASE("basic shift draws four legend classes") {
  const auto doc = render_shift_graph(basic_result());
  CHECK(count(doc.svg, "class=\"legend-entry\"") == 4);
  CHECK(doc.legend["classes"].size() == 4);
  CHECK_FALSE(doc.legend["generalized"].get<bool>());
  CHECK(count(doc.svg, "faded") == 0);
}

TEST_CASE("generalized shift draws six legend entries") {
  const auto doc = render_shift_graph(counteracting_result());
  CHECK(count(doc.svg, "class=\"legend-entry\"") == 6);
  CHECK(doc.legend["generalized"].get<bool>());
}

TEST_CASE("counteracting components get a faded underlay and a solid remainder") {
  const auto r = counteracting_result();
  const auto svg = render_shift_graph(r).svg;
  const auto better = row_of(svg, "better");
  CHECK(count(better, "class=\"freq faded\"") == 1);
  CHECK(count(better, "class=\"score faded\"") == 1);
  CHECK(count(better, "fill-opacity=\"0.35\"") == 2);
  CHECK(count(better, "class=\"remainder\"") == 1);

  // nation: both components push the same way; no fading.
  const auto nation = row_of(svg, "nation");
  CHECK(count(nation, "faded") == 0);
  CHECK(count(nation, "class=\"freq\"") == 1);
  CHECK(count(nation, "class=\"score\"") == 1);
}

TEST_CASE("single word spans the full bar scale") {
  ShiftComponents c;
  c.measure = "relative_frequency";
  c.reference = 0.0;
  c.words = {{"only", 0.5, 1.0, 1.0, 1.0}};
  const auto doc = render_shift_graph(compute_shift(c));
  // width 720: center 360, half-width 280, widest bar 0.9 of it.
  const auto row = row_of(doc.svg, "only");
  CHECK(row.find("<rect x=\"360.00\" y=") != std::string::npos);
  CHECK(row.find("width=\"252.00\"") != std::string::npos);
  CHECK(row.find("text-anchor=\"end\"") != std::string::npos);
  CHECK(doc.legend["scale_px_per_unit"].get<double>() == doctest::Approx(504.0));
}

TEST_CASE("top_n limits the number of rows") {
  const auto r = many_words(60);
  RenderOptions opt;
  opt.top_n = 40;
  const auto doc = render_shift_graph(r, opt);
  CHECK(count(doc.svg, "class=\"word-row\"") == 40);
  CHECK(doc.legend["rows"].get<int>() == 40);

  opt.top_n = 100;
  CHECK(count(render_shift_graph(r, opt).svg, "class=\"word-row\"") == 60);
}

TEST_CASE("rendering is deterministic and well formed") {
  const auto r = counteracting_result();
  const auto a = render_shift_graph(r).svg;
  CHECK(a == render_shift_graph(r).svg);
  CHECK(a.rfind("<?xml", 0) == 0);
  CHECK(a.find("</svg>") != std::string::npos);
  CHECK(count(a, "<g") == count(a, "</g>"));
  CHECK(count(a, "<text") == count(a, "</text>"));
  CHECK(a.find("<metadata id=\"wordshift-legend\"><![CDATA[") != std::string::npos);
}

TEST_CASE("borrowed words are starred") {
  ShiftComponents c;
  c.measure = "dictionary";
  c.reference = 0.0;
  c.words = {{"iraqi", 0.2, 0.5, -0.5, -0.5, true, false}, {"the", 0.8, 0.5, 0.1, 0.1}};
  const auto svg = render_shift_graph(compute_shift(c)).svg;
  CHECK(row_of(svg, "iraqi").find(">iraqi*</text>") != std::string::npos);
}

TEST_CASE("markup characters in words are escaped") {
  ShiftComponents c;
  c.reference = 0.0;
  c.words = {{"<b>&", 0.2, 0.6, 1.0, 1.0}, {"x", 0.8, 0.4, 1.0, 1.0}};
  const auto svg = render_shift_graph(compute_shift(c)).svg;
  CHECK(svg.find("&lt;b&gt;&amp;") != std::string::npos);
  CHECK(svg.find("<b>&") == std::string::npos);
}

TEST_CASE("missing signed cumulative series is shown as undefined") {
  ShiftComponents c;
  c.measure = "dictionary";
  c.reference = 5.0;
  c.words = {{"a", 0.5, 0.25, 6.0, 8.0}, {"b", 0.5, 0.75, 4.0, 4.0}};
  RenderOptions opt;
  opt.cumulative_mode = CumulativeMode::signed_;
  const auto svg = render_shift_graph(compute_shift(c), opt).svg;
  CHECK(svg.find("undefined") != std::string::npos);
}

TEST_CASE("render errors") {
  ShiftResult empty;
  CHECK_THROWS_AS(render_shift_graph(empty), InvalidArgument);

  RenderOptions bad;
  bad.top_n = 0;
  CHECK_THROWS_AS(render_shift_graph(basic_result(), bad), InvalidArgument);
  bad = {};
  bad.palette.positive = bad.palette.negative;
  CHECK_THROWS_AS(render_shift_graph(basic_result(), bad), InvalidArgument);
  bad = {};
  bad.palette.score_up = "orange";
  CHECK_THROWS_AS(render_shift_graph(basic_result(), bad), InvalidArgument);
}

TEST_CASE("truncate_middle") {
  CHECK(truncate_middle("short", 24) == "short");
  CHECK(truncate_middle("abcdefghij", 5) == "ab…ij");
  CHECK(truncate_middle("abcdefghij", 6) == "ab…hij");
  CHECK(truncate_middle("ééééééé", 3) == "é…é");
}

TEST_CASE("lighten_color") {
  CHECK(lighten_color("#000000", 0.5) == "#808080");
  CHECK(lighten_color("#2C7BB6", 0.0) == "#2C7BB6");
  CHECK(lighten_color("#2C7BB6", 1.0) == "#FFFFFF");
}

TEST_CASE("golden SVG") {
  const std::string path = std::string(WORDSHIFT_TEST_DATA) + "/golden_small.svg";
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), "missing " << path);
  std::ostringstream expected;
  expected << in.rdbuf();
  CHECK(render_shift_graph(counteracting_result()).svg == expected.str());
}
