#include "caustics/svg.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace caustics {

namespace {
const char* const kPalette[] = {"#d62728", "#1f77b4", "#2ca02c",
                                "#9467bd", "#ff7f0e", "#8c564b"};
}

SvgDocument::SvgDocument(double xmin, double ymin, double xmax, double ymax,
                         int pixel_width) {
  const double mx = 0.05 * std::max(xmax - xmin, 1e-12);
  const double my = 0.05 * std::max(ymax - ymin, 1e-12);
  xmin_ = xmin - mx;
  xmax_ = xmax + mx;
  ymin_ = ymin - my;
  ymax_ = ymax + my;
  width_ = pixel_width;
  height_ = std::max(
      1, static_cast<int>(std::lround(pixel_width * (ymax_ - ymin_) /
                                      (xmax_ - xmin_))));
}

std::string SvgDocument::coord(Point p) const {
  return fmt::format("{:.6f},{:.6f}", p.x, -p.y);
}

void SvgDocument::polyline(const std::vector<Point>& pts,
                           const std::string& stroke, double stroke_width,
                           bool closed) {
  std::string d;
  for (const auto& p : pts) {
    if (!d.empty()) d += ' ';
    d += coord(p);
  }
  body_ += fmt::format(
      "  <{} points=\"{}\" fill=\"none\" stroke=\"{}\" "
      "stroke-width=\"{:.6f}\"/>\n",
      closed ? "polygon" : "polyline", d, stroke, stroke_width);
}

void SvgDocument::line(Point a, Point b, const std::string& stroke,
                       double stroke_width) {
  body_ += fmt::format(
      "  <line x1=\"{:.6f}\" y1=\"{:.6f}\" x2=\"{:.6f}\" y2=\"{:.6f}\" "
      "stroke=\"{}\" stroke-width=\"{:.6f}\"/>\n",
      a.x, -a.y, b.x, -b.y, stroke, stroke_width);
}

void SvgDocument::dot(Point c, double r, const std::string& fill) {
  body_ += fmt::format(
      "  <circle cx=\"{:.6f}\" cy=\"{:.6f}\" r=\"{:.6f}\" fill=\"{}\"/>\n", c.x,
      -c.y, r, fill);
}

std::string SvgDocument::str() const {
  return fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" "
      "viewBox=\"{:.6f} {:.6f} {:.6f} {:.6f}\">\n{}</svg>\n",
      width_, height_, xmin_, -ymax_, xmax_ - xmin_, ymax_ - ymin_, body_);
}

std::vector<Point> sample_boundary(const FourierCurve& curve, int count) {
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    pts.push_back(boundary_point(curve, kTwoPi * i / count));
  }
  return pts;
}

std::string table_svg(const FourierCurve& curve,
                      const std::vector<double>& deltas, int chords) {
  const auto pts = sample_boundary(curve, 1024);
  double xmin = pts[0].x, xmax = pts[0].x, ymin = pts[0].y, ymax = pts[0].y;
  for (const auto& p : pts) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  SvgDocument doc(xmin, ymin, xmax, ymax);
  const double w = 0.004 * (xmax - xmin);
  std::size_t colour = 0;
  for (double d : deltas) {
    const char* stroke = kPalette[colour++ % std::size(kPalette)];
    for (int j = 0; j < chords; ++j) {
      const double a = kTwoPi * j / chords;
      doc.line(boundary_point(curve, a), boundary_point(curve, a + 2.0 * d),
               stroke, 0.5 * w);
    }
  }
  doc.polyline(pts, "#000000", w, true);
  return doc.str();
}

std::string phase_portrait_svg(const std::vector<OrbitRecord>& orbit) {
  SvgDocument doc(0.0, 0.0, kTwoPi, kPi);
  doc.polyline({{0.0, 0.0}, {kTwoPi, 0.0}, {kTwoPi, kPi}, {0.0, kPi}},
               "#000000", 0.01, true);
  for (const auto& r : orbit) {
    double a = std::fmod(r.alpha, kTwoPi);
    if (a < 0.0) a += kTwoPi;
    doc.dot({a, r.theta}, 0.015, "#1f77b4");
  }
  return doc.str();
}

}  // namespace caustics
