#include "wordshift/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "wordshift/errors.hpp"
#include "utf8.hpp"

namespace wordshift {

namespace {

constexpr double kMargin = 20.0;
constexpr double kBarFill = 0.9;  // widest row spans this fraction of the half-width
constexpr double kInsetHeight = 130.0;
constexpr const char* kFont = "font-family=\"DejaVu Sans, Arial, sans-serif\"";

std::string num(double v, int precision = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, v);
  std::string s = buf;
  if (s.find_first_not_of("-0.") == std::string::npos && s.front() == '-') s.erase(0, 1);
  return s;
}

std::string short_num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  std::string s = buf;
  if (s == "-0") s = "0";
  return s;
}

std::string escape(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

bool is_hex_color(const std::string& s) {
  return s.size() == 7 && s[0] == '#' &&
         std::all_of(s.begin() + 1, s.end(), [](char c) { return std::isxdigit(static_cast<unsigned char>(c)); });
}

struct Rect {
  double x0, x1, y, h;
  std::string fill;
  double opacity = 1.0;
  std::string role;
};

class SvgWriter {
public:
  void rect(const Rect& r) {
    const double x = std::min(r.x0, r.x1), w = std::abs(r.x1 - r.x0);
    out_ << "<rect x=\"" << num(x) << "\" y=\"" << num(r.y) << "\" width=\"" << num(w) << "\" height=\"" << num(r.h)
         << "\" fill=\"" << r.fill << "\"";
    if (r.opacity < 1.0) out_ << " fill-opacity=\"" << num(r.opacity) << "\"";
    if (!r.role.empty()) out_ << " class=\"" << r.role << "\"";
    out_ << "/>\n";
  }

  void line(double x1, double y1, double x2, double y2, const std::string& stroke, double width = 1.0,
            const std::string& extra = {}) {
    out_ << "<line x1=\"" << num(x1) << "\" y1=\"" << num(y1) << "\" x2=\"" << num(x2) << "\" y2=\"" << num(y2)
         << "\" stroke=\"" << stroke << "\" stroke-width=\"" << num(width) << "\"" << extra << "/>\n";
  }

  void text(double x, double y, const std::string& content, const char* anchor, double size,
            const std::string& extra = {}) {
    out_ << "<text x=\"" << num(x) << "\" y=\"" << num(y) << "\" text-anchor=\"" << anchor << "\" font-size=\""
         << num(size, 1) << "\"" << extra << ">" << escape(content) << "</text>\n";
  }

  void raw(const std::string& s) { out_ << s; }
  std::string str() const { return out_.str(); }

private:
  std::ostringstream out_;
};

bool renderable(const WordContribution& c) {
  return std::abs(c.delta) > kSignTolerance || std::abs(c.freq_component) > kSignTolerance ||
         std::abs(c.score_component) > kSignTolerance;
}

// Horizontal extent of a row in data units, including faded underlays.
double row_extent(const WordContribution& c) {
  return std::max({std::abs(c.delta), std::abs(c.freq_component), std::abs(c.score_component)});
}

Sign display_sign(Sign tolerant, double raw) {
  if (tolerant != Sign::zero) return tolerant;
  return raw < 0.0 ? Sign::negative : Sign::positive;
}

struct Colors {
  const RenderOptions& opt;

  std::string freq(Sign score, Sign freq) const {
    const std::string& base = score == Sign::negative ? opt.palette.negative : opt.palette.positive;
    return freq == Sign::negative ? lighten_color(base, opt.lighten) : base;
  }
  std::string diff(Sign d) const { return d == Sign::negative ? opt.palette.score_down : opt.palette.score_up; }

  std::string for_key(const std::string& key) const {
    if (key == "△") return opt.palette.score_up;
    if (key == "▽") return opt.palette.score_down;
    const Sign score = key.starts_with("-") ? Sign::negative : Sign::positive;
    const Sign f = key.ends_with("↓") ? Sign::negative : Sign::positive;
    return freq(score, f);
  }
};

std::string legend_description(const std::string& key) {
  if (key == "+↑") return "relatively positive, used more";
  if (key == "+↓") return "relatively positive, used less";
  if (key == "-↑") return "relatively negative, used more";
  if (key == "-↓") return "relatively negative, used less";
  if (key == "△") return "score increased";
  if (key == "▽") return "score decreased";
  return key;
}

std::string cdata(const std::string& s) {
  std::string out;
  std::size_t pos = 0;
  while (true) {
    const auto hit = s.find("]]>", pos);
    if (hit == std::string::npos) break;
    out += s.substr(pos, hit - pos) + "]]]]><![CDATA[>";
    pos = hit + 3;
  }
  return "<![CDATA[" + out + s.substr(pos) + "]]>";
}

}  // namespace

void Palette::validate() const {
  const std::set<std::string> distinct{positive, negative, score_up, score_down};
  for (const auto& c : {positive, negative, score_up, score_down})
    if (!is_hex_color(c)) throw InvalidArgument("palette color '" + c + "' is not #RRGGBB");
  if (distinct.size() != 4) throw InvalidArgument("palette colors must be distinct per role");
}

void RenderOptions::validate() const {
  if (top_n < 1) throw InvalidArgument("top_n must be at least 1");
  if (width < 200) throw InvalidArgument("width must be at least 200 pixels");
  if (row_height < 4) throw InvalidArgument("row height must be at least 4 pixels");
  if (!(fade_opacity > 0.0 && fade_opacity < 1.0)) throw InvalidArgument("fade opacity must lie in (0, 1)");
  if (!(lighten >= 0.0 && lighten < 1.0)) throw InvalidArgument("lighten fraction must lie in [0, 1)");
  if (max_label_length < 5) throw InvalidArgument("label length limit must be at least 5");
  palette.validate();
}

std::string lighten_color(const std::string& hex, double fraction) {
  if (!is_hex_color(hex)) throw InvalidArgument("color '" + hex + "' is not #RRGGBB");
  char out[8];
  out[0] = '#';
  for (int i = 0; i < 3; ++i) {
    const int v = std::stoi(hex.substr(1 + 2 * i, 2), nullptr, 16);
    const int mixed = static_cast<int>(std::lround(v + (255 - v) * fraction));
    std::snprintf(out + 1 + 2 * i, 3, "%02X", std::clamp(mixed, 0, 255));
  }
  return std::string(out, 7);
}

std::string truncate_middle(const std::string& label, std::size_t max_length) {
  const std::size_t n = utf8::length(label);
  if (n <= max_length) return label;
  const std::size_t head = (max_length - 1) / 2;
  const std::size_t tail = max_length - 1 - head;
  std::string out;
  std::size_t idx = 0;
  for (std::size_t i = 0; i < label.size(); ++idx) {
    const auto d = utf8::decode(label, i);
    if (idx < head || idx >= n - tail) out += label.substr(i, d.len);
    if (idx == head) out += "…";
    i += d.len;
  }
  return out;
}

GraphDocument render_shift_graph(const ShiftResult& result, const RenderOptions& opt) {
  opt.validate();
  if (result.contributions.empty()) throw InvalidArgument("cannot plot a shift without word contributions");

  std::vector<const WordContribution*> rows;
  for (const auto& c : result.contributions) {
    if (rows.size() >= static_cast<std::size_t>(opt.top_n)) break;
    if (renderable(c)) rows.push_back(&c);
  }
  const bool generalized = result.generalized;
  const auto keys = class_sum_keys(generalized);
  const Colors colors{opt};

  const double width = opt.width;
  const double center = width / 2.0;
  const double half = center - kMargin - 60.0;  // room for Σ labels
  const double rh = opt.row_height;
  const double bar_h = rh * 0.8;

  double max_extent = 0.0;
  for (const auto* c : rows) max_extent = std::max(max_extent, row_extent(*c));
  const double scale = max_extent > 0.0 ? kBarFill * half / max_extent : 0.0;

  // Vertical layout.
  double y = kMargin;
  const double title_y = y + 16.0;
  y += 46.0;
  const double sums_top = y;
  const std::size_t sum_rows = opt.show_class_totals ? result.class_sums.size() + 1 : 0;
  if (opt.show_class_totals) y += static_cast<double>(sum_rows) * rh + 14.0;
  const double main_top = y + 14.0;
  y = main_top + static_cast<double>(rows.size()) * rh + 10.0;
  const double legend_top = y;
  y += 24.0;
  const bool insets = opt.show_cumulative || opt.show_corpus_sizes;
  const double inset_top = y + 10.0;
  if (insets) y = inset_top + kInsetHeight + 20.0;
  const double height = y + kMargin;

  SvgWriter svg;
  svg.raw("<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n");
  svg.raw("<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + num(width, 0) + "\" height=\"" +
          num(height, 0) + "\" viewBox=\"0 0 " + num(width, 0) + " " + num(height, 0) + "\" " + kFont + ">\n");

  Json legend = Json::object();
  legend["palette"] = {{"+", opt.palette.positive},
                       {"-", opt.palette.negative},
                       {"△", opt.palette.score_up},
                       {"▽", opt.palette.score_down}};
  legend["shades"] = {{"+↑", colors.freq(Sign::positive, Sign::positive)},
                      {"+↓", colors.freq(Sign::positive, Sign::negative)},
                      {"-↑", colors.freq(Sign::negative, Sign::positive)},
                      {"-↓", colors.freq(Sign::negative, Sign::negative)}};
  legend["classes"] = keys;
  legend["generalized"] = generalized;
  legend["rows"] = rows.size();
  legend["top_n"] = opt.top_n;
  legend["scale_px_per_unit"] = scale;
  legend["fade_opacity"] = opt.fade_opacity;
  legend["cumulative_mode"] = to_string(opt.cumulative_mode);
  svg.raw("<metadata id=\"wordshift-legend\">" + cdata(legend.dump()) + "</metadata>\n");
  svg.raw("<rect x=\"0\" y=\"0\" width=\"" + num(width, 0) + "\" height=\"" + num(height, 0) +
          "\" fill=\"#FFFFFF\"/>\n");

  // Title.
  const std::string title =
      opt.title.empty() ? result.label1 + ": Φ = " + short_num(result.phi1_total) + "   " + result.label2 +
                              ": Φ = " + short_num(result.phi2_total)
                        : opt.title;
  svg.text(center, title_y, title, "middle", 15.0, " font-weight=\"bold\" class=\"title\"");
  svg.text(center, title_y + 20.0, "δΦ = " + short_num(result.delta_phi) + "   (Φref = " +
                                       short_num(result.reference) + ")",
           "middle", 12.0, " class=\"subtitle\"");

  // Summary bars.
  if (opt.show_class_totals) {
    svg.raw("<g class=\"class-totals\">\n");
    double max_sum = std::abs(result.delta_phi);
    for (const auto& [k, v] : result.class_sums) max_sum = std::max(max_sum, std::abs(v));
    const double sum_scale = max_sum > 0.0 ? kBarFill * half / max_sum : 0.0;
    double ry = sums_top;
    auto sum_row = [&](const std::string& key, double v, const std::string& fill) {
      const double x1 = center + v * sum_scale;
      svg.rect({center, x1, ry + (rh - bar_h) / 2.0, bar_h, fill, 1.0, "class-total"});
      const bool right = v >= 0.0;
      svg.text(right ? center - 4.0 : center + 4.0, ry + rh * 0.75, key, right ? "end" : "start", rh * 0.7);
      svg.text(right ? x1 + 3.0 : x1 - 3.0, ry + rh * 0.75, short_num(v), right ? "start" : "end", rh * 0.55,
               " fill=\"#555555\"");
      ry += rh;
    };
    sum_row("Σ", result.delta_phi, "#A0A0A0");
    for (const auto& [k, v] : result.class_sums) sum_row(k, v, colors.for_key(k));
    svg.line(center, sums_top, center, ry, "#000000", 0.8);
    svg.raw("</g>\n");
  }

  // Word rows.
  svg.raw("<g class=\"word-rows\">\n");
  svg.line(center, main_top - 4.0, center, main_top + static_cast<double>(rows.size()) * rh + 4.0, "#000000", 0.8);
  double ry = main_top;
  for (const auto* c : rows) {
    const double f = c->freq_component, s = c->score_component, d = c->delta;
    const Sign fs = sign_of(f), ss = sign_of(s);
    const std::string fcolor =
        colors.freq(display_sign(c->cls.score, c->score_offset), display_sign(c->cls.freq, c->freq_diff));
    const std::string scolor = colors.diff(display_sign(c->cls.diff, c->score_diff));
    const double by = ry + (rh - bar_h) / 2.0;
    const bool counteracting = fs != Sign::zero && ss != Sign::zero && fs != ss;

    svg.raw("<g class=\"word-row\" data-word=\"" + escape(c->word) + "\" data-class=\"" + c->cls.to_string() +
            "\">\n");
    if (!counteracting) {
      if (fs != Sign::zero) svg.rect({center, center + f * scale, by, bar_h, fcolor, 1.0, "freq"});
      if (ss != Sign::zero) svg.rect({center + f * scale, center + (f + s) * scale, by, bar_h, scolor, 1.0, "score"});
    } else {
      svg.rect({center, center + f * scale, by, bar_h, fcolor, opt.fade_opacity, "freq faded"});
      svg.rect({center, center + s * scale, by, bar_h, scolor, opt.fade_opacity, "score faded"});
      if (sign_of(d) == Sign::zero) {
        svg.line(center, by, center, by + bar_h, "#000000", 1.5, " class=\"remainder\"");
      } else {
        const std::string& rcolor = std::abs(f) >= std::abs(s) ? fcolor : scolor;
        svg.rect({center, center + d * scale, by, bar_h, rcolor, 1.0, "remainder"});
      }
    }
    const bool right = d >= 0.0;
    std::string label = truncate_middle(c->word, opt.max_label_length);
    if (c->borrowed) label += "*";
    svg.text(right ? center - 4.0 : center + 4.0, ry + rh * 0.75, label, right ? "end" : "start", rh * 0.7,
             " class=\"word-label\"");
    svg.raw("</g>\n");
    ry += rh;
  }
  svg.raw("</g>\n");

  // Legend.
  svg.raw("<g class=\"legend\">\n");
  const double slot = (width - 2.0 * kMargin) / static_cast<double>(keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i) {
    const double lx = kMargin + slot * static_cast<double>(i);
    svg.raw("<g class=\"legend-entry\" data-class=\"" + keys[i] + "\">\n");
    svg.rect({lx, lx + 12.0, legend_top, 12.0, colors.for_key(keys[i]), 1.0, {}});
    svg.text(lx + 16.0, legend_top + 10.0, keys[i] + " " + legend_description(keys[i]), "start", 8.5);
    svg.raw("</g>\n");
  }
  svg.raw("</g>\n");

  // Insets.
  const double inset_w = (width - 3.0 * kMargin) / 2.0;
  if (opt.show_cumulative) {
    const double x0 = kMargin, y0 = inset_top;
    svg.raw("<g class=\"cumulative-inset\" data-mode=\"" + to_string(opt.cumulative_mode) + "\">\n");
    svg.raw("<rect x=\"" + num(x0) + "\" y=\"" + num(y0) + "\" width=\"" + num(inset_w) + "\" height=\"" +
            num(kInsetHeight) + "\" fill=\"none\" stroke=\"#888888\" stroke-width=\"0.8\"/>\n");
    const std::vector<double>* series = opt.cumulative_mode == CumulativeMode::abs
                                            ? (result.cumulative_abs.empty() ? nullptr : &result.cumulative_abs)
                                            : (result.cumulative_signed ? &*result.cumulative_signed : nullptr);
    const std::string axis_label = opt.cumulative_mode == CumulativeMode::abs ? "Σ|δΦτ| (cumulative share)"
                                                                               : "ΣδΦτ / |δΦ| (cumulative)";
    svg.text(x0 + inset_w / 2.0, y0 - 3.0, axis_label, "middle", 9.0);
    if (!series || series->empty()) {
      svg.text(x0 + inset_w / 2.0, y0 + kInsetHeight / 2.0, "undefined (no net difference)", "middle", 9.0);
    } else {
      double lo = 0.0, hi = 1.0;
      for (double v : *series) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      const double pad = 6.0;
      const double pw = inset_w - 2.0 * pad, ph = kInsetHeight - 2.0 * pad;
      const auto n = series->size();
      auto px = [&](double v) { return x0 + pad + (v - lo) / (hi - lo) * pw; };
      auto py = [&](std::size_t rank) {
        return y0 + pad + (n > 1 ? static_cast<double>(rank - 1) / static_cast<double>(n - 1) : 0.0) * ph;
      };
      svg.line(px(0.0), y0 + pad, px(0.0), y0 + pad + ph, "#BBBBBB", 0.6);
      svg.line(px(1.0), y0 + pad, px(1.0), y0 + pad + ph, "#BBBBBB", 0.6, " stroke-dasharray=\"2,2\"");
      std::string points;
      for (std::size_t i = 0; i < n; ++i) {
        if (i) points += ' ';
        points += num(px((*series)[i])) + "," + num(py(i + 1));
      }
      svg.raw("<polyline points=\"" + points + "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1.2\"/>\n");
      const std::size_t marker = std::min<std::size_t>(static_cast<std::size_t>(opt.top_n), n);
      svg.line(x0 + pad, py(marker), x0 + pad + pw, py(marker), "#D7191C", 0.8, " class=\"top-n-marker\"");
      svg.text(x0 + inset_w - pad, py(marker) - 3.0,
               "top " + std::to_string(marker) + ": " + num(100.0 * (*series)[marker - 1], 1) + "%", "end", 8.5);
    }
    svg.raw("</g>\n");
  }
  if (opt.show_corpus_sizes) {
    const double x0 = opt.show_cumulative ? 2.0 * kMargin + inset_w : kMargin, y0 = inset_top;
    svg.raw("<g class=\"corpus-size-inset\">\n");
    svg.raw("<rect x=\"" + num(x0) + "\" y=\"" + num(y0) + "\" width=\"" + num(inset_w) + "\" height=\"" +
            num(kInsetHeight) + "\" fill=\"none\" stroke=\"#888888\" stroke-width=\"0.8\"/>\n");
    svg.text(x0 + inset_w / 2.0, y0 - 3.0, "relative corpus size (tokens)", "middle", 9.0);
    const double n1 = static_cast<double>(result.tokens1), n2 = static_cast<double>(result.tokens2);
    const double biggest = std::max({n1, n2, 1.0});
    const double bw = inset_w - 20.0;
    const double t1 = n1 + n2 > 0.0 ? 100.0 * n1 / (n1 + n2) : 0.0;
    const double t2 = n1 + n2 > 0.0 ? 100.0 * n2 / (n1 + n2) : 0.0;
    svg.rect({x0 + 10.0, x0 + 10.0 + bw * n1 / biggest, y0 + 30.0, 22.0, "#999999", 1.0, "corpus1"});
    svg.rect({x0 + 10.0, x0 + 10.0 + bw * n2 / biggest, y0 + 80.0, 22.0, "#666666", 1.0, "corpus2"});
    svg.text(x0 + 10.0, y0 + 25.0,
             result.label1 + " (" + std::to_string(result.tokens1) + " tokens, " + num(t1, 1) + "%)", "start", 9.0);
    svg.text(x0 + 10.0, y0 + 75.0,
             result.label2 + " (" + std::to_string(result.tokens2) + " tokens, " + num(t2, 1) + "%)", "start", 9.0);
    svg.raw("</g>\n");
  }

  svg.raw("</svg>\n");
  return {svg.str(), std::move(legend)};
}

}  // namespace wordshift
