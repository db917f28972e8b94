#pragma once

#include <string>
#include <vector>

#include "caustics/curve.hpp"
#include "caustics/billiard.hpp"

namespace caustics {

/// Minimal deterministic SVG writer. The viewBox is the data bounding box
/// padded by 5% on each side; y points up.
class SvgDocument {
 public:
  SvgDocument(double xmin, double ymin, double xmax, double ymax,
              int pixel_width = 640);

  void polyline(const std::vector<Point>& pts, const std::string& stroke,
                double stroke_width, bool closed = false);
  void line(Point a, Point b, const std::string& stroke, double stroke_width);
  void dot(Point c, double r, const std::string& fill);

  std::string str() const;

 private:
  std::string coord(Point p) const;

  double xmin_, ymin_, xmax_, ymax_;
  int width_, height_;
  std::string body_;
};

std::vector<Point> sample_boundary(const FourierCurve& curve, int count);

/// Boundary plus, for each delta, `chords` chords P(a) -> P(a + 2 delta).
std::string table_svg(const FourierCurve& curve,
                      const std::vector<double>& deltas, int chords = 24);

/// Orbit points in the (alpha mod 2 pi, theta) phase rectangle.
std::string phase_portrait_svg(const std::vector<OrbitRecord>& orbit);

}  // namespace caustics
