#pragma once

#include <string>

#include "wordshift/report.hpp"
#include "wordshift/shift.hpp"

namespace wordshift {

// Colors for the four contribution roles. Decreases in frequency use a
// lighter tint of the same hue.
struct Palette {
  std::string positive = "#F2B705";    // relatively positive (+), yellow
  std::string negative = "#2C7BB6";    // relatively negative (-), blue
  std::string score_up = "#E66101";    // score increase (△), orange
  std::string score_down = "#8073AC";  // score decrease (▽), purple

  // Throws InvalidArgument unless the four colors are distinct #RRGGBB values.
  void validate() const;
};

struct RenderOptions {
  int top_n = 50;
  int width = 720;
  int row_height = 16;
  Palette palette;
  double fade_opacity = 0.35;
  double lighten = 0.5;  // mix fraction with white for decreasing-frequency bars
  bool show_class_totals = true;
  bool show_cumulative = true;
  CumulativeMode cumulative_mode = CumulativeMode::abs;
  bool show_corpus_sizes = true;
  std::string title;  // empty: derived from the labels and totals
  std::size_t max_label_length = 24;

  void validate() const;
};

struct GraphDocument {
  std::string svg;
  Json legend;  // also embedded in the SVG <metadata> element
};

// Horizontal word shift graph of the top_n ranked contributions. Throws
// InvalidArgument when the result carries no contributions.
GraphDocument render_shift_graph(const ShiftResult& result, const RenderOptions& options = {});

// Keeps the head and tail of labels longer than max_length code points.
std::string truncate_middle(const std::string& label, std::size_t max_length);

// Mix a #RRGGBB color with white; fraction 0 keeps the color, 1 gives white.
std::string lighten_color(const std::string& hex, double fraction);

}  // namespace wordshift
