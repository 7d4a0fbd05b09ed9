#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pscheb/types.hpp"

namespace pscheb::svg {

inline constexpr int canvas_width = 800;
inline constexpr int canvas_height = 600;

struct Style {
  std::string stroke = "#1f77b4";
  std::string fill = "none";
  double width = 1.0;
  double opacity = 1.0;
};

using Point = std::pair<double, double>;

/// One set of axes. Elements render in insertion order.
class Panel {
 public:
  void set_title(std::string t) { title_ = std::move(t); }
  void set_labels(std::string x, std::string y) {
    xlabel_ = std::move(x);
    ylabel_ = std::move(y);
  }
  void set_limits(double x0, double x1, double y0, double y1) {
    limits_ = {x0, x1, y0, y1};
  }

  void polyline(std::vector<Point> pts, Style style, bool closed = false);
  void scatter(std::vector<Point> pts, Style style, double radius = 3.0);
  /// Cells of |values(i, j)| on a log10 colour scale, row 0 at the top;
  /// exact zeros are left blank.
  void heatmap(const RMatrix& values, double log_min = -16.0, double log_max = 0.0);

  bool empty() const { return items_.empty(); }

 private:
  friend class Figure;
  struct Item {
    enum Kind { line, dots, cells } kind;
    std::vector<Point> pts;
    Style style;
    bool closed = false;
    double radius = 3.0;
    RMatrix values;
    double log_min = 0, log_max = 0;
  };
  std::vector<Item> items_;
  std::string title_, xlabel_, ylabel_;
  std::optional<std::array<double, 4>> limits_;
};

/// Fixed 800x600 canvas split into a grid of panels.
class Figure {
 public:
  explicit Figure(int rows = 1, int cols = 1, std::string title = {});
  Panel& panel(int row = 0, int col = 0) { return panels_.at(row * cols_ + col); }

  std::string render() const;
  /// Warnings collected by the last render (e.g. empty panels).
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  int rows_, cols_;
  std::string title_;
  std::vector<Panel> panels_;
  mutable std::vector<std::string> warnings_;
};

/// Evenly spaced "nice" tick positions covering [lo, hi].
std::vector<double> nice_ticks(double lo, double hi, int target = 5);

}  // namespace pscheb::svg
