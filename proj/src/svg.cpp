#include "nuband/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace nuband {

namespace {
std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}
}  // namespace

SvgCanvas::SvgCanvas(double extent, int pixels) : extent_(extent), pixels_(pixels) {}

double SvgCanvas::px(double x) const { return (x + extent_) / (2.0 * extent_) * pixels_; }
double SvgCanvas::py(double y) const { return (extent_ - y) / (2.0 * extent_) * pixels_; }

void SvgCanvas::polyline(const std::vector<cplx>& pts, const std::string& stroke, double width) {
  if (pts.size() < 2) return;
  body_ += "<polyline fill=\"none\" stroke=\"" + stroke + "\" stroke-width=\"" + fmt(width) +
           "\" points=\"";
  for (const cplx p : pts) body_ += fmt(px(p.real())) + "," + fmt(py(p.imag())) + " ";
  body_ += "\"/>\n";
}

void SvgCanvas::circle(cplx center, double radius, const std::string& stroke,
                       const std::string& fill, double width) {
  body_ += "<circle cx=\"" + fmt(px(center.real())) + "\" cy=\"" + fmt(py(center.imag())) +
           "\" r=\"" + fmt(radius / (2.0 * extent_) * pixels_) + "\" stroke=\"" + stroke +
           "\" stroke-width=\"" + fmt(width) + "\" fill=\"" + fill + "\"/>\n";
}

void SvgCanvas::dot(cplx at, double pixel_radius, const std::string& fill) {
  body_ += "<circle cx=\"" + fmt(px(at.real())) + "\" cy=\"" + fmt(py(at.imag())) + "\" r=\"" +
           fmt(pixel_radius) + "\" fill=\"" + fill + "\"/>\n";
}

void SvgCanvas::cell(cplx lo, cplx hi, const std::string& fill, double opacity) {
  const double x = px(lo.real()), y = py(hi.imag());
  const double w = px(hi.real()) - px(lo.real()), h = py(lo.imag()) - py(hi.imag());
  body_ += "<rect x=\"" + fmt(x) + "\" y=\"" + fmt(y) + "\" width=\"" + fmt(w) + "\" height=\"" +
           fmt(h) + "\" fill=\"" + fill + "\" fill-opacity=\"" + fmt(opacity) + "\"/>\n";
}

void SvgCanvas::text(cplx at, const std::string& s, const std::string& fill) {
  body_ += "<text x=\"" + fmt(px(at.real())) + "\" y=\"" + fmt(py(at.imag())) +
           "\" font-size=\"12\" font-family=\"monospace\" fill=\"" + fill + "\">" + s +
           "</text>\n";
}

std::string SvgCanvas::str() const {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(pixels_) +
         "\" height=\"" + std::to_string(pixels_) + "\" viewBox=\"0 0 " + std::to_string(pixels_) +
         " " + std::to_string(pixels_) + "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n" +
         body_ + "</svg>\n";
}

std::string gray_shade(double value, double lo, double hi) {
  double t = (value - lo) / (hi - lo);
  t = std::clamp(t, 0.0, 1.0);
  const int level = 32 + static_cast<int>(std::lround(t * 28.0)) * 8;  // 8 steps
  char buf[16];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", level, level, level);
  return buf;
}

}  // namespace nuband
