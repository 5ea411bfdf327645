#pragma once

#include <string>
#include <vector>

#include "nuband/types.hpp"

namespace nuband {

// Minimal deterministic SVG writer for complex-plane overlays. The viewport
// maps [-extent, extent]^2 to a square pixel canvas; output bytes depend only
// on the drawing calls.
class SvgCanvas {
 public:
  SvgCanvas(double extent = 1.35, int pixels = 560);

  void polyline(const std::vector<cplx>& pts, const std::string& stroke, double width = 1.5);
  void circle(cplx center, double radius, const std::string& stroke,
              const std::string& fill = "none", double width = 1.5);
  void dot(cplx at, double pixel_radius, const std::string& fill);
  // Axis-aligned filled cell in plane coordinates (for heat layers).
  void cell(cplx lo, cplx hi, const std::string& fill, double opacity);
  void text(cplx at, const std::string& s, const std::string& fill = "#444444");

  std::string str() const;

 private:
  double px(double x) const;
  double py(double y) const;
  double extent_;
  int pixels_;
  std::string body_;
};

// 8-step grayscale for log10-scaled heat values in [lo, hi].
std::string gray_shade(double value, double lo, double hi);

}  // namespace nuband
