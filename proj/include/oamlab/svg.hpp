#pragma once

#include "oamlab/error.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

// Small SVG plotting kit: framed panels with ticks, lines, markers, bars, heatmaps, legends.

namespace oam::svg
{

inline std::string escape(const std::string& s)
{
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

struct Axis
{
  double lo = 0.0;
  double hi = 1.0;
  std::string label;
  bool log = false;
};

inline std::vector<double> ticks(const Axis& a)
{
  std::vector<double> t;
  if (a.log) {
    for (int e = static_cast<int>(std::floor(std::log10(a.lo))); e <= std::ceil(std::log10(a.hi)); ++e) {
      const double v = std::pow(10.0, e);
      if (v >= a.lo * (1 - 1e-9) && v <= a.hi * (1 + 1e-9)) t.push_back(v);
    }
    return t;
  }
  const double span = a.hi - a.lo;
  const double raw = span / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 2.5, 5.0, 10.0})
    if (m * mag >= raw) {
      step = m * mag;
      break;
    }
  for (double v = std::ceil(a.lo / step - 1e-9) * step; v <= a.hi + 1e-9 * span; v += step)
    t.push_back(std::abs(v) < 1e-12 * span ? 0.0 : v);
  return t;
}

inline std::string tick_label(double v, bool log)
{
  if (log) return fmt::format("{:g}", v);
  return fmt::format("{:.4g}", v);
}

/// 0..1 -> dark blue .. yellow.
inline std::string colormap(double t)
{
  static constexpr std::array<std::array<double, 3>, 5> stops{{
    {68, 1, 84}, {59, 82, 139}, {33, 145, 140}, {94, 201, 98}, {253, 231, 37}}};
  t = std::clamp(t, 0.0, 1.0) * (stops.size() - 1);
  const std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(t), stops.size() - 2);
  const double f = t - i;
  std::array<int, 3> c{};
  for (int k = 0; k < 3; ++k) c[k] = static_cast<int>(std::lround(stops[i][k] + f * (stops[i + 1][k] - stops[i][k])));
  return fmt::format("#{:02x}{:02x}{:02x}", c[0], c[1], c[2]);
}

inline const char* palette(std::size_t i)
{
  static constexpr const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2"};
  return colors[i % std::size(colors)];
}

class Plot
{
public:
  Plot(double x, double y, double width, double height, Axis xa, Axis ya, std::string title = {})
    : x_(x), y_(y), w_(width), h_(height), xa_(std::move(xa)), ya_(std::move(ya)), title_(std::move(title))
  {
    if ((xa_.log && !(xa_.lo > 0)) || (ya_.log && !(ya_.lo > 0)) || !(xa_.hi > xa_.lo) || !(ya_.hi > ya_.lo))
      throw Error(ErrorCode::invalid_argument, "bad plot axis range");
    clip_id_ = fmt::format("clip{}_{}", static_cast<int>(x), static_cast<int>(y));
  }

  double px(double v) const { return x_ + w_ * frac(xa_, v); }
  double py(double v) const { return y_ + h_ * (1.0 - frac(ya_, v)); }

  void line(const std::vector<double>& xs, const std::vector<double>& ys, const std::string& color,
            double width = 1.5, const std::string& dash = {})
  {
    std::string pts;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (!std::isfinite(xs[i]) || !std::isfinite(ys[i])) continue;
      pts += fmt::format("{:.2f},{:.2f} ", px(xs[i]), py(ys[i]));
    }
    body_ += fmt::format(R"(<polyline fill="none" stroke="{}" stroke-width="{}"{} points="{}"/>)", color, width,
                         dash.empty() ? "" : fmt::format(R"( stroke-dasharray="{}")", dash), pts);
    body_ += '\n';
  }

  void markers(const std::vector<double>& xs, const std::vector<double>& ys, const std::string& color,
               bool square = false, double r = 3.0)
  {
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (square)
        body_ += fmt::format(R"(<rect x="{:.2f}" y="{:.2f}" width="{:.2f}" height="{:.2f}" fill="none" stroke="{}"/>)",
                             px(xs[i]) - r, py(ys[i]) - r, 2 * r, 2 * r, color);
      else
        body_ += fmt::format(R"(<circle cx="{:.2f}" cy="{:.2f}" r="{}" fill="none" stroke="{}"/>)", px(xs[i]),
                             py(ys[i]), r, color);
      body_ += '\n';
    }
  }

  void bars(const std::vector<double>& xs, const std::vector<double>& ys, double width, const std::string& color,
            double opacity = 0.7)
  {
    const double base = py(std::max(ya_.lo, 0.0));
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double l = px(xs[i] - width / 2), r = px(xs[i] + width / 2), top = py(ys[i]);
      body_ += fmt::format(R"(<rect x="{:.2f}" y="{:.2f}" width="{:.2f}" height="{:.2f}" fill="{}" fill-opacity="{}"/>)",
                           l, std::min(top, base), r - l, std::abs(base - top), color, opacity);
      body_ += '\n';
    }
  }

  /// Row-major values (row 0 at the top of the plot) scaled to [0, max].
  void heatmap(const std::vector<double>& values, int rows, int cols)
  {
    double vmax = 0.0;
    for (double v : values) vmax = std::max(vmax, v);
    const double cw = w_ / cols, ch = h_ / rows;
    body_ += "<g shape-rendering=\"crispEdges\">\n";
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c)
        body_ += fmt::format(R"(<rect x="{:.2f}" y="{:.2f}" width="{:.2f}" height="{:.2f}" fill="{}"/>)",
                             x_ + c * cw, y_ + r * ch, cw + 0.05, ch + 0.05,
                             colormap(vmax > 0 ? values[std::size_t(r) * cols + c] / vmax : 0.0)) +
                 "\n";
    body_ += "</g>\n";
  }

  void text(double x, double y, const std::string& s, int size = 11)
  {
    body_ += fmt::format(R"(<text x="{:.2f}" y="{:.2f}" font-size="{}">{}</text>)", px(x), py(y), size, escape(s));
    body_ += '\n';
  }

  /// entries: (label, color, style) with style "line", "dash", "circle", "square", "bar".
  /// Placed in the top right corner, or bottom right when `bottom` is set.
  void legend(const std::vector<std::array<std::string, 3>>& entries, bool bottom = false)
  {
    std::size_t longest = 0;
    for (const auto& e : entries) longest = std::max(longest, e[0].size());
    double yy = bottom ? y_ + h_ - 14.0 * entries.size() + 4 : y_ + 14;
    const double xx = x_ + w_ - 34 - 5.8 * longest;
    for (const auto& [label, color, style] : entries) {
      if (style == "circle")
        legend_ += fmt::format(R"(<circle cx="{:.2f}" cy="{:.2f}" r="3" fill="none" stroke="{}"/>)", xx + 10, yy - 4, color);
      else if (style == "square")
        legend_ += fmt::format(R"(<rect x="{:.2f}" y="{:.2f}" width="6" height="6" fill="none" stroke="{}"/>)", xx + 7, yy - 7, color);
      else if (style == "bar")
        legend_ += fmt::format(R"(<rect x="{:.2f}" y="{:.2f}" width="14" height="8" fill="{}" fill-opacity="0.7"/>)", xx + 3, yy - 8, color);
      else
        legend_ += fmt::format(R"(<line x1="{:.2f}" y1="{:.2f}" x2="{:.2f}" y2="{:.2f}" stroke="{}" stroke-width="1.5"{}/>)",
                               xx, yy - 4, xx + 20, yy - 4, color, style == "dash" ? R"( stroke-dasharray="5,3")" : "");
      legend_ += fmt::format(R"(<text x="{:.2f}" y="{:.2f}" font-size="10">{}</text>)", xx + 26, yy, escape(label));
      legend_ += '\n';
      yy += 14;
    }
  }

  std::string render() const
  {
    std::string s;
    s += fmt::format(R"(<clipPath id="{}"><rect x="{:.2f}" y="{:.2f}" width="{:.2f}" height="{:.2f}"/></clipPath>)",
                     clip_id_, x_, y_, w_, h_);
    s += '\n';
    s += fmt::format(R"svg(<g clip-path="url(#{})">)svg", clip_id_) + "\n" + body_ + "</g>\n";
    s += fmt::format(R"(<rect x="{:.2f}" y="{:.2f}" width="{:.2f}" height="{:.2f}" fill="none" stroke="black"/>)", x_, y_,
                     w_, h_);
    s += '\n';
    for (double t : ticks(xa_)) {
      const double x = px(t);
      s += fmt::format(R"(<line x1="{:.2f}" y1="{:.2f}" x2="{:.2f}" y2="{:.2f}" stroke="black"/>)", x, y_ + h_, x,
                       y_ + h_ + 4);
      s += fmt::format(R"(<text x="{:.2f}" y="{:.2f}" font-size="10" text-anchor="middle">{}</text>)", x, y_ + h_ + 15,
                       tick_label(t, xa_.log));
      s += '\n';
    }
    for (double t : ticks(ya_)) {
      const double y = py(t);
      s += fmt::format(R"(<line x1="{:.2f}" y1="{:.2f}" x2="{:.2f}" y2="{:.2f}" stroke="black"/>)", x_ - 4, y, x_, y);
      s += fmt::format(R"(<text x="{:.2f}" y="{:.2f}" font-size="10" text-anchor="end">{}</text>)", x_ - 6, y + 3,
                       tick_label(t, ya_.log));
      s += '\n';
    }
    s += fmt::format(R"(<text x="{:.2f}" y="{:.2f}" font-size="12" text-anchor="middle">{}</text>)", x_ + w_ / 2,
                     y_ + h_ + 32, escape(xa_.label));
    s += fmt::format(R"svg(<text x="{:.2f}" y="{:.2f}" font-size="12" text-anchor="middle" transform="rotate(-90 {:.2f} {:.2f})">{}</text>)svg",
                     x_ - 42, y_ + h_ / 2, x_ - 42, y_ + h_ / 2, escape(ya_.label));
    if (!title_.empty())
      s += fmt::format(R"(<text x="{:.2f}" y="{:.2f}" font-size="13" text-anchor="middle">{}</text>)", x_ + w_ / 2,
                       y_ - 8, escape(title_));
    s += '\n' + legend_;
    return s;
  }

private:
  static double frac(const Axis& a, double v)
  {
    if (a.log) return (std::log10(v) - std::log10(a.lo)) / (std::log10(a.hi) - std::log10(a.lo));
    return (v - a.lo) / (a.hi - a.lo);
  }

  double x_, y_, w_, h_;
  Axis xa_, ya_;
  std::string title_;
  std::string clip_id_;
  std::string body_;
  std::string legend_;
};

class Document
{
public:
  Document(double width, double height) : width_(width), height_(height) {}

  void add(const Plot& p) { parts_ += p.render(); }

  std::string str() const
  {
    return fmt::format(R"(<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}" font-family="sans-serif">)",
                       width_, height_, width_, height_) +
           "\n" + fmt::format(R"(<rect width="{}" height="{}" fill="white"/>)", width_, height_) + "\n" + parts_ +
           "</svg>\n";
  }

private:
  double width_, height_;
  std::string parts_;
};

} // namespace oam::svg
