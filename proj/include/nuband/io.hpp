#pragma once

#include <string>
#include <vector>

#include "nuband/spectra.hpp"
#include "nuband/symbol.hpp"
#include "nuband/types.hpp"

namespace nuband {

std::string format_g17(double v);  // round-trip-exact decimal form

// "x,re,im" rows, one per eigenvalue sample.
std::string spectrum_csv(const SymbolSpectrum& s);
SymbolSpectrum parse_spectrum_csv(const std::string& text);

// "re,im" rows.
std::string points_csv(const std::vector<cplx>& pts);
std::vector<cplx> parse_points_csv(const std::string& text);

// "n,re,im,abs" rows.
std::string autocorrelation_csv(const std::vector<cplx>& a);

// "re,im,sigma_min" rows over the grid.
std::string pseudospectrum_csv(const PseudospectrumGrid& grid);

void write_file(const std::string& path, const std::string& contents);
std::string read_file(const std::string& path);

}  // namespace nuband
