#include "pscheb/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>

namespace pscheb::svg {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  if (v != 0 && (std::abs(v) >= 1e4 || std::abs(v) < 1e-2))
    std::snprintf(buf, sizeof buf, "%.1e", v);
  else
    std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// Dark blue -> yellow ramp.
std::string ramp(double t) {
  t = std::clamp(t, 0.0, 1.0);
  const int r = static_cast<int>(std::lround(68 + t * (253 - 68)));
  const int g = static_cast<int>(std::lround(1 + t * (231 - 1)));
  const int b = static_cast<int>(std::lround(84 + t * (37 - 84)));
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
  return buf;
}

std::string style_attrs(const Style& s) {
  std::string a = " stroke=\"" + s.stroke + "\" fill=\"" + s.fill +
                  "\" stroke-width=\"" + num(s.width) + "\"";
  if (s.opacity < 1) a += " opacity=\"" + num(s.opacity) + "\"";
  return a;
}

}  // namespace

std::vector<double> nice_ticks(double lo, double hi, int target) {
  std::vector<double> ticks;
  if (!(hi > lo) || !std::isfinite(lo) || !std::isfinite(hi)) return ticks;
  const double raw = (hi - lo) / std::max(target, 1);
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    step = m * mag;
    if (step >= raw) break;
  }
  const long first = static_cast<long>(std::ceil(lo / step - 1e-9));
  const long last = static_cast<long>(std::floor(hi / step + 1e-9));
  for (long k = first; k <= last; ++k) {
    const double v = k * step;
    ticks.push_back(std::abs(v) < 1e-12 * step ? 0.0 : v);
  }
  return ticks;
}

void Panel::polyline(std::vector<Point> pts, Style style, bool closed) {
  if (pts.empty()) return;
  items_.push_back({Item::line, std::move(pts), std::move(style), closed, 0, {}, 0, 0});
}

void Panel::scatter(std::vector<Point> pts, Style style, double radius) {
  if (pts.empty()) return;
  items_.push_back({Item::dots, std::move(pts), std::move(style), false, radius, {}, 0, 0});
}

void Panel::heatmap(const RMatrix& values, double log_min, double log_max) {
  if (values.size() == 0) return;
  items_.push_back({Item::cells, {}, {}, false, 0, values, log_min, log_max});
  if (!limits_) limits_ = {0.0, static_cast<double>(values.cols()), 0.0,
                           static_cast<double>(values.rows())};
}

Figure::Figure(int rows, int cols, std::string title)
    : rows_(rows), cols_(cols), title_(std::move(title)), panels_(rows * cols) {}

std::string Figure::render() const {
  warnings_.clear();
  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         std::to_string(canvas_width) + "\" height=\"" + std::to_string(canvas_height) +
         "\" viewBox=\"0 0 " + std::to_string(canvas_width) + " " +
         std::to_string(canvas_height) + "\" font-family=\"sans-serif\">\n";
  out += "<rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"white\"/>\n";
  const double top = title_.empty() ? 0.0 : 24.0;
  if (!title_.empty())
    out += "<text x=\"400\" y=\"17\" text-anchor=\"middle\" font-size=\"14\">" +
           escape(title_) + "</text>\n";
  const double cell_w = static_cast<double>(canvas_width) / cols_;
  const double cell_h = (canvas_height - top) / rows_;

  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) {
      const Panel& p = panels_[r * cols_ + c];
      const double ox = c * cell_w, oy = top + r * cell_h;
      const double left = ox + 62, right = ox + cell_w - 16;
      const double up = oy + (p.title_.empty() ? 12 : 28), down = oy + cell_h - 44;

      std::array<double, 4> lim{0, 1, 0, 1};
      if (p.limits_) {
        lim = *p.limits_;
      } else if (!p.items_.empty()) {
        double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
        for (const auto& it : p.items_)
          for (const auto& [x, y] : it.pts) {
            if (!std::isfinite(x) || !std::isfinite(y)) continue;
            x0 = std::min(x0, x), x1 = std::max(x1, x);
            y0 = std::min(y0, y), y1 = std::max(y1, y);
          }
        if (x0 <= x1 && y0 <= y1) {
          const double px = x1 > x0 ? 0.05 * (x1 - x0) : 1.0;
          const double py = y1 > y0 ? 0.05 * (y1 - y0) : 1.0;
          lim = {x0 - px, x1 + px, y0 - py, y1 + py};
        }
      }
      if (p.items_.empty())
        warnings_.push_back("empty plot in panel (" + std::to_string(r) + ", " +
                            std::to_string(c) + ")");
      auto sx = [&](double x) { return left + (x - lim[0]) / (lim[1] - lim[0]) * (right - left); };
      auto sy = [&](double y) { return down - (y - lim[2]) / (lim[3] - lim[2]) * (down - up); };

      const std::string clip = "clip" + std::to_string(r) + "_" + std::to_string(c);
      out += "<g>\n<clipPath id=\"" + clip + "\"><rect x=\"" + num(left) + "\" y=\"" +
             num(up) + "\" width=\"" + num(right - left) + "\" height=\"" +
             num(down - up) + "\"/></clipPath>\n";
      if (!p.title_.empty())
        out += "<text x=\"" + num((left + right) / 2) + "\" y=\"" + num(oy + 18) +
               "\" text-anchor=\"middle\" font-size=\"13\">" + escape(p.title_) + "</text>\n";

      out += "<g clip-path=\"url(#" + clip + ")\">\n";
      for (const auto& it : p.items_) {
        if (it.kind == Panel::Item::cells) {
          const auto nr = it.values.rows(), nc = it.values.cols();
          for (Eigen::Index i = 0; i < nr; ++i)
            for (Eigen::Index j = 0; j < nc; ++j) {
              const double v = std::abs(it.values(i, j));
              if (v == 0 || !std::isfinite(v)) continue;
              const double t = (std::log10(v) - it.log_min) / (it.log_max - it.log_min);
              const double x0 = sx(static_cast<double>(j)), x1 = sx(static_cast<double>(j + 1));
              const double y0 = sy(static_cast<double>(nr - i)), y1 = sy(static_cast<double>(nr - i - 1));
              out += "<rect x=\"" + num(x0) + "\" y=\"" + num(y0) + "\" width=\"" +
                     num(x1 - x0) + "\" height=\"" + num(y1 - y0) + "\" fill=\"" + ramp(t) +
                     "\"/>\n";
            }
        } else if (it.kind == Panel::Item::line) {
          std::string d;
          bool pen = false;
          for (const auto& [x, y] : it.pts) {
            if (!std::isfinite(x) || !std::isfinite(y)) {
              pen = false;
              continue;
            }
            d += (pen ? "L" : "M") + num(sx(x)) + " " + num(sy(y)) + " ";
            pen = true;
          }
          if (it.closed) d += "Z";
          else if (!d.empty()) d.pop_back();
          out += "<path d=\"" + d + "\"" + style_attrs(it.style) + "/>\n";
        } else {
          for (const auto& [x, y] : it.pts) {
            if (!std::isfinite(x) || !std::isfinite(y)) continue;
            out += "<circle cx=\"" + num(sx(x)) + "\" cy=\"" + num(sy(y)) + "\" r=\"" +
                   num(it.radius) + "\"" + style_attrs(it.style) + "/>\n";
          }
        }
      }
      out += "</g>\n";

      // Axes frame, ticks and labels.
      out += "<rect x=\"" + num(left) + "\" y=\"" + num(up) + "\" width=\"" +
             num(right - left) + "\" height=\"" + num(down - up) +
             "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
      for (double tx : nice_ticks(lim[0], lim[1])) {
        const double X = sx(tx);
        out += "<line x1=\"" + num(X) + "\" y1=\"" + num(down) + "\" x2=\"" + num(X) +
               "\" y2=\"" + num(down + 4) + "\" stroke=\"black\"/>\n";
        out += "<text x=\"" + num(X) + "\" y=\"" + num(down + 16) +
               "\" text-anchor=\"middle\" font-size=\"10\">" + tick_label(tx) + "</text>\n";
      }
      for (double ty : nice_ticks(lim[2], lim[3])) {
        const double Y = sy(ty);
        out += "<line x1=\"" + num(left - 4) + "\" y1=\"" + num(Y) + "\" x2=\"" + num(left) +
               "\" y2=\"" + num(Y) + "\" stroke=\"black\"/>\n";
        out += "<text x=\"" + num(left - 6) + "\" y=\"" + num(Y + 3) +
               "\" text-anchor=\"end\" font-size=\"10\">" + tick_label(ty) + "</text>\n";
      }
      if (!p.xlabel_.empty())
        out += "<text x=\"" + num((left + right) / 2) + "\" y=\"" + num(down + 32) +
               "\" text-anchor=\"middle\" font-size=\"12\">" + escape(p.xlabel_) + "</text>\n";
      if (!p.ylabel_.empty())
        out += "<text x=\"" + num(ox + 14) + "\" y=\"" + num((up + down) / 2) +
               "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 " +
               num(ox + 14) + " " + num((up + down) / 2) + ")\">" + escape(p.ylabel_) +
               "</text>\n";
      out += "</g>\n";
    }
  }
  out += "</svg>\n";
  return out;
}

}  // namespace pscheb::svg
