#include "moralnet/svg.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace moralnet::svg {
namespace {

constexpr double kWidth = 640;
constexpr double kHeight = 420;
constexpr double kLeft = 60;
constexpr double kRight = 20;
constexpr double kTop = 40;
constexpr double kBottom = 60;

const char* const kPalette[] = {"#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948"};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string header(const std::string& title) {
  return fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\" "
      "font-family=\"sans-serif\" font-size=\"11\">\n"
      "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      "<text x=\"{2}\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">{3}</text>\n",
      kWidth, kHeight, kWidth / 2, escape(title));
}

}  // namespace

std::string bar_chart(const std::string& title, const std::vector<std::string>& categories,
                      const std::vector<BarSeries>& series, const std::string& y_label) {
  double top = 0.0;
  for (const auto& s : series)
    for (double v : s.values) top = std::max(top, v);
  if (top <= 0.0) top = 1.0;

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const double group_w = categories.empty() ? plot_w : plot_w / static_cast<double>(categories.size());
  const double bar_w = group_w * 0.8 / static_cast<double>(std::max<std::size_t>(series.size(), 1));

  std::string out = header(title);
  out += fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2:.2f}\" stroke=\"black\"/>\n", kLeft, kTop,
                     kTop + plot_h);
  out += fmt::format("<line x1=\"{0}\" y1=\"{1:.2f}\" x2=\"{2:.2f}\" y2=\"{1:.2f}\" stroke=\"black\"/>\n", kLeft,
                     kTop + plot_h, kLeft + plot_w);
  out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\">{:.3g}</text>\n", 4.0, kTop + 4, top);
  out += fmt::format(
      "<text transform=\"translate(14,{:.2f}) rotate(-90)\" text-anchor=\"middle\">{}</text>\n",
      kTop + plot_h / 2, escape(y_label));

  for (std::size_t c = 0; c < categories.size(); ++c) {
    const double gx = kLeft + group_w * static_cast<double>(c) + group_w * 0.1;
    for (std::size_t s = 0; s < series.size(); ++s) {
      const double v = c < series[s].values.size() ? series[s].values[c] : 0.0;
      const double h = std::max(0.0, v) / top * plot_h;
      out += fmt::format("<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" fill=\"{}\"/>\n",
                         gx + bar_w * static_cast<double>(s), kTop + plot_h - h, bar_w, h, kPalette[s % 6]);
    }
    out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">{}</text>\n",
                       kLeft + group_w * (static_cast<double>(c) + 0.5), kTop + plot_h + 16,
                       escape(categories[c]));
  }
  for (std::size_t s = 0; s < series.size(); ++s) {
    const double ly = kHeight - 18;
    const double lx = kLeft + 110.0 * static_cast<double>(s);
    out += fmt::format("<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"10\" height=\"10\" fill=\"{}\"/>\n", lx, ly - 9,
                       kPalette[s % 6]);
    out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\">{}</text>\n", lx + 14, ly, escape(series[s].name));
  }
  out += "</svg>\n";
  return out;
}

std::string scatter(const std::string& title, const std::string& x_label, const std::string& y_label,
                    const std::vector<std::pair<double, double>>& points, const std::vector<Arrow>& arrows) {
  double extent = 0.0;
  for (const auto& [x, y] : points) extent = std::max({extent, std::fabs(x), std::fabs(y)});
  double arrow_extent = 0.0;
  for (const auto& a : arrows) arrow_extent = std::max({arrow_extent, std::fabs(a.x), std::fabs(a.y)});
  if (extent <= 0.0) extent = arrow_extent > 0.0 ? arrow_extent : 1.0;
  const double arrow_scale = arrow_extent > 0.0 ? 0.9 * extent / arrow_extent : 1.0;

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const double cx = kLeft + plot_w / 2;
  const double cy = kTop + plot_h / 2;
  const double scale = std::min(plot_w, plot_h) / 2 / (extent * 1.05);

  std::string out = header(title);
  out += fmt::format("<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"#bbb\"/>\n", kLeft, cy,
                     kLeft + plot_w, cy);
  out += fmt::format("<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"#bbb\"/>\n", cx, kTop,
                     cx, kTop + plot_h);
  out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">{}</text>\n", cx, kHeight - 20,
                     escape(x_label));
  out += fmt::format(
      "<text transform=\"translate(14,{:.2f}) rotate(-90)\" text-anchor=\"middle\">{}</text>\n", cy,
      escape(y_label));
  for (const auto& [x, y] : points)
    out += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"2\" fill=\"{}\" fill-opacity=\"0.5\"/>\n",
                       cx + x * scale, cy - y * scale, kPalette[0]);
  for (const auto& a : arrows) {
    const double ax = cx + a.x * arrow_scale * scale;
    const double ay = cy - a.y * arrow_scale * scale;
    out += fmt::format("<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"{}\" "
                       "stroke-width=\"1.5\"/>\n",
                       cx, cy, ax, ay, kPalette[2]);
    out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" fill=\"{}\">{}</text>\n", ax + 3, ay - 3, kPalette[2],
                       escape(a.name));
  }
  out += "</svg>\n";
  return out;
}

}  // namespace moralnet::svg
