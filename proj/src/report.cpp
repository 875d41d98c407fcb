#include "wordshift/report.hpp"

#include <charconv>

#include "wordshift/errors.hpp"

namespace wordshift {

namespace {

std::string shortest(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

template <typename T>
T field(const Json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) throw InvalidArgument(std::string("missing JSON field '") + key + "'");
  try {
    return obj.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("bad JSON field '") + key + "': " + e.what());
  }
}

}  // namespace

Json shift_result_to_json(const ShiftResult& r, const Json& meta) {
  Json doc;
  Json m = Json::object();
  m["tool"] = "wordshift";
  m["format_version"] = 1;
  m["measure"] = r.measure;
  m["reference"] = r.reference;
  m["generalized"] = r.generalized;
  for (const auto& [k, v] : meta.items()) m[k] = v;
  doc["meta"] = std::move(m);

  doc["totals"] = {{"phi1", r.phi1_total}, {"phi2", r.phi2_total}, {"delta", r.delta_phi}};

  Json sums = Json::object();
  for (const auto& [key, v] : r.class_sums) sums[key] = v;
  doc["class_sums"] = std::move(sums);

  Json rows = Json::array();
  std::size_t rank = 0;
  for (const auto& c : r.contributions) {
    rows.push_back({{"rank", ++rank},
                    {"word", c.word},
                    {"delta", c.delta},
                    {"freq_component", c.freq_component},
                    {"score_component", c.score_component},
                    {"freq_diff", c.freq_diff},
                    {"score_offset", c.score_offset},
                    {"score_diff", c.score_diff},
                    {"class", c.cls.to_string()},
                    {"borrowed", c.borrowed}});
  }
  doc["contributions"] = std::move(rows);

  Json cum = Json::object();
  cum["abs"] = r.cumulative_abs;
  cum["signed"] = r.cumulative_signed ? Json(*r.cumulative_signed) : Json(nullptr);
  doc["cumulative"] = std::move(cum);

  doc["corpus_sizes"] = {{"corpus1", {{"label", r.label1}, {"tokens", r.tokens1}}},
                         {"corpus2", {{"label", r.label2}, {"tokens", r.tokens2}}}};
  return doc;
}

ShiftResult shift_result_from_json(const Json& doc) {
  if (!doc.is_object()) throw InvalidArgument("shift document must be a JSON object");
  ShiftResult r;
  const Json& meta = doc.contains("meta") ? doc.at("meta") : Json::object();
  r.measure = meta.value("measure", std::string{});
  r.reference = meta.value("reference", 0.0);
  r.generalized = meta.value("generalized", false);

  const auto totals = field<Json>(doc, "totals");
  r.phi1_total = field<double>(totals, "phi1");
  r.phi2_total = field<double>(totals, "phi2");
  r.delta_phi = field<double>(totals, "delta");

  const auto sums = field<Json>(doc, "class_sums");
  if (!sums.is_object()) throw InvalidArgument("class_sums must be an object");
  for (const auto& [key, v] : sums.items()) {
    if (!v.is_number()) throw InvalidArgument("class sum '" + key + "' is not a number");
    r.class_sums.emplace_back(key, v.get<double>());
  }

  const auto rows = field<Json>(doc, "contributions");
  if (!rows.is_array()) throw InvalidArgument("contributions must be an array");
  for (const auto& row : rows) {
    WordContribution c;
    c.word = field<std::string>(row, "word");
    c.delta = field<double>(row, "delta");
    c.freq_component = field<double>(row, "freq_component");
    c.score_component = field<double>(row, "score_component");
    c.freq_diff = field<double>(row, "freq_diff");
    c.score_offset = field<double>(row, "score_offset");
    c.score_diff = field<double>(row, "score_diff");
    c.cls = ContributionClass::parse(field<std::string>(row, "class"));
    c.borrowed = field<bool>(row, "borrowed");
    r.contributions.push_back(std::move(c));
  }

  const auto cum = field<Json>(doc, "cumulative");
  r.cumulative_abs = field<std::vector<double>>(cum, "abs");
  if (cum.contains("signed") && !cum.at("signed").is_null())
    r.cumulative_signed = field<std::vector<double>>(cum, "signed");

  const auto sizes = field<Json>(doc, "corpus_sizes");
  const auto c1 = field<Json>(sizes, "corpus1");
  const auto c2 = field<Json>(sizes, "corpus2");
  r.label1 = field<std::string>(c1, "label");
  r.label2 = field<std::string>(c2, "label");
  r.tokens1 = field<std::uint64_t>(c1, "tokens");
  r.tokens2 = field<std::uint64_t>(c2, "tokens");
  return r;
}

void write_tsv(std::ostream& out, const ShiftResult& r) {
  out << "word\tdelta\tfreq_comp\tscore_comp\tclass\tborrowed\n";
  for (const auto& c : r.contributions) {
    out << c.word << '\t' << shortest(c.delta) << '\t' << shortest(c.freq_component) << '\t'
        << shortest(c.score_component) << '\t' << c.cls.to_string() << '\t' << (c.borrowed ? "true" : "false")
        << '\n';
  }
}

}  // namespace wordshift
