#include "nuband/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

namespace nuband {

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string spectrum_csv(const SymbolSpectrum& s) {
  std::string out = "x,re,im\n";
  for (size_t i = 0; i < s.xs.size(); ++i) {
    for (const cplx z : s.eigs[i]) {
      out += format_g17(s.xs[i]);
      out += ',';
      out += format_g17(z.real());
      out += ',';
      out += format_g17(z.imag());
      out += '\n';
    }
  }
  return out;
}

SymbolSpectrum parse_spectrum_csv(const std::string& text) {
  SymbolSpectrum s;
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);  // header
  double last_x = 0.0;
  bool have_x = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    double x = 0, re = 0, im = 0;
    if (std::sscanf(line.c_str(), "%lg,%lg,%lg", &x, &re, &im) != 3)
      throw ConfigError("parse_spectrum_csv: bad row '" + line + "'");
    if (!have_x || x != last_x) {
      s.xs.push_back(x);
      s.eigs.emplace_back();
      last_x = x;
      have_x = true;
    }
    s.eigs.back().emplace_back(re, im);
  }
  double lo = 1e300, hi = 0.0;
  for (const auto& per : s.eigs)
    for (const cplx z : per) {
      lo = std::min(lo, std::abs(z));
      hi = std::max(hi, std::abs(z));
    }
  s.min_mod = lo > hi ? 0.0 : lo;
  s.max_mod = hi;
  return s;
}

std::string points_csv(const std::vector<cplx>& pts) {
  std::string out = "re,im\n";
  for (const cplx z : pts) {
    out += format_g17(z.real());
    out += ',';
    out += format_g17(z.imag());
    out += '\n';
  }
  return out;
}

std::vector<cplx> parse_points_csv(const std::string& text) {
  std::vector<cplx> pts;
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    double re = 0, im = 0;
    if (std::sscanf(line.c_str(), "%lg,%lg", &re, &im) != 2)
      throw ConfigError("parse_points_csv: bad row '" + line + "'");
    pts.emplace_back(re, im);
  }
  return pts;
}

std::string autocorrelation_csv(const std::vector<cplx>& a) {
  std::string out = "n,re,im,abs\n";
  for (size_t n = 0; n < a.size(); ++n) {
    out += std::to_string(n);
    out += ',';
    out += format_g17(a[n].real());
    out += ',';
    out += format_g17(a[n].imag());
    out += ',';
    out += format_g17(std::abs(a[n]));
    out += '\n';
  }
  return out;
}

std::string pseudospectrum_csv(const PseudospectrumGrid& grid) {
  std::string out = "re,im,sigma_min\n";
  const GridSpec& sp = grid.spec;
  for (int i = 0; i < sp.nim; ++i) {
    const double y = sp.im0 + (sp.im1 - sp.im0) * (sp.nim == 1 ? 0.5 : double(i) / (sp.nim - 1));
    for (int j = 0; j < sp.nre; ++j) {
      const double x = sp.re0 + (sp.re1 - sp.re0) * (sp.nre == 1 ? 0.5 : double(j) / (sp.nre - 1));
      out += format_g17(x);
      out += ',';
      out += format_g17(y);
      out += ',';
      out += format_g17(grid.at(i, j));
      out += '\n';
    }
  }
  return out;
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open for writing: " + path);
  f.write(contents.data(), static_cast<std::streamsize>(contents.size()));
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace nuband
