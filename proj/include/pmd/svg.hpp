#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>

#include "pmd/block_function.hpp"
#include "pmd/matching.hpp"

namespace pmd::svg {

// Fixed 600x600 layout: finite region on [60, 500] horizontally and
// [540, 60] vertically, the infinity column at x = 560.
inline constexpr double kSize = 600.0;
inline constexpr double kLeft = 60.0;
inline constexpr double kRight = 500.0;
inline constexpr double kTop = 60.0;
inline constexpr double kBottom = 540.0;
inline constexpr double kInfColumn = 560.0;

inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

class Canvas {
 public:
  explicit Canvas(double scale) : scale_(scale) {}

  double x(double a) const {
    return std::isinf(a) ? kInfColumn : kLeft + (kRight - kLeft) * a / scale_;
  }
  double y(double b) const { return kBottom - (kBottom - kTop) * b / scale_; }

  void frame() {
    body_ << "<rect x=\"0\" y=\"0\" width=\"600\" height=\"600\" fill=\"white\"/>\n";
    line(kLeft, kBottom, kRight, kBottom, "axis", "black");
    line(kLeft, kBottom, kLeft, kTop, "axis", "black");
    line(x(0), y(0), x(scale_), y(scale_), "diagonal", "gray");
    line(kInfColumn, kBottom, kInfColumn, kTop, "infinity", "blue");
    body_ << "<text x=\"" << num(kInfColumn) << "\" y=\"" << num(kBottom + 20)
          << "\" text-anchor=\"middle\" font-size=\"16\" fill=\"blue\">&#8734;</text>\n";
    body_ << "<text x=\"" << num(kRight) << "\" y=\"" << num(kBottom + 20)
          << "\" text-anchor=\"end\" font-size=\"12\">" << num(scale_) << "</text>\n";
    body_ << "<text x=\"" << num(kLeft - 8) << "\" y=\"" << num(kTop + 4)
          << "\" text-anchor=\"end\" font-size=\"12\">" << num(scale_) << "</text>\n";
    body_ << "<text x=\"" << num(kLeft - 8) << "\" y=\"" << num(kBottom + 4)
          << "\" text-anchor=\"end\" font-size=\"12\">0</text>\n";
  }

  void line(double x1, double y1, double x2, double y2, const char* cls, const char* color) {
    body_ << "<line class=\"" << cls << "\" x1=\"" << num(x1) << "\" y1=\"" << num(y1)
          << "\" x2=\"" << num(x2) << "\" y2=\"" << num(y2) << "\" stroke=\"" << color
          << "\" stroke-width=\"1\"/>\n";
  }

  void points(const MatchingDiagram& d, const char* color) {
    for (const auto& [key, m] : d.points) {
      const double cx = x(key.first), cy = y(key.second);
      body_ << "<circle class=\"point\" cx=\"" << num(cx) << "\" cy=\"" << num(cy)
            << "\" r=\"5\" fill=\"" << color << "\"/>\n";
      if (m > 1)
        body_ << "<text class=\"mult\" x=\"" << num(cx + 7) << "\" y=\"" << num(cy - 7)
              << "\" font-size=\"12\">" << m << "</text>\n";
    }
  }

  std::string finish() const {
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"600\" "
           "viewBox=\"0 0 600 600\">\n"
        << body_.str() << "</svg>\n";
    return out.str();
  }

 private:
  double scale_;
  std::ostringstream body_;
};

/// Upper end of both axes: 1.1 times the largest finite coordinate, or 1.
inline double plot_scale(const MatchingDiagram& d, const MatchingDiagram* other = nullptr) {
  double top = 0.0;
  auto scan = [&](const MatchingDiagram& m) {
    for (const auto& [key, _] : m.points) {
      if (!std::isinf(key.first)) top = std::max(top, key.first);
      top = std::max(top, key.second);
    }
  };
  scan(d);
  if (other) scan(*other);
  return top > 0.0 ? top * 1.1 : 1.0;
}

inline std::string render(const MatchingDiagram& d) {
  Canvas c(plot_scale(d));
  c.frame();
  c.points(d, "black");
  return c.finish();
}

/// Two diagrams in red and blue with the segments of a minimal matching.
inline std::string render_overlay(const MatchingDiagram& d1, const MatchingDiagram& d2) {
  Canvas c(plot_scale(d1, &d2));
  c.frame();
  const auto m = min_delta_matching(d1, d2);
  for (const auto& [p, q] : m.pairs) c.line(c.x(p.a), c.y(p.b), c.x(q.a), c.y(q.b), "match", "green");
  c.points(d1, "red");
  c.points(d2, "blue");
  return c.finish();
}

}  // namespace pmd::svg
