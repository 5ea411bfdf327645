#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace nuband {

using cplx = std::complex<double>;

inline constexpr double pi = 3.141592653589793238462643383279502884;
inline constexpr double two_pi = 2.0 * pi;

// Configuration / input errors (bad flags, bad JSON, out-of-range parameters).
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failures that must never pass silently (non-convergence, residual blowup).
struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

inline double sq(double x) { return x * x; }
inline double abs2(cplx z) { return z.real() * z.real() + z.imag() * z.imag(); }

// Wrap an angle into (-pi, pi].
inline double wrap_angle(double a) {
  while (a > pi) a -= two_pi;
  while (a <= -pi) a += two_pi;
  return a;
}

}  // namespace nuband
