#pragma once

#include <cstdint>
#include <vector>

#include "nuband/rng.hpp"
#include "nuband/types.hpp"

namespace nuband {

enum class PhaseDist { PointMass, UniformInterval, UniformTorus, Explicit };

// Index-addressed random phase field. phase(j) is a pure function of
// (distribution, seed, j), so any window of the realization is reproducible
// and wrap-around reuse under periodic boundary conditions is consistent.
struct PhaseField {
  PhaseDist dist = PhaseDist::PointMass;
  double eps = 0.0;     // support half-width for UniformInterval
  double theta0 = 0.0;  // PointMass location
  std::uint64_t seed = 0;
  std::vector<double> values;  // Explicit only
  std::int64_t first_index = 0;
  bool values_periodic = false;  // Explicit: index wraps modulo values.size()

  static PhaseField point(double theta = 0.0) {
    PhaseField p;
    p.dist = PhaseDist::PointMass;
    p.theta0 = theta;
    return p;
  }
  static PhaseField uniform(double eps, std::uint64_t seed) {
    PhaseField p;
    p.dist = PhaseDist::UniformInterval;
    p.eps = eps;
    p.seed = seed;
    return p;
  }
  static PhaseField torus(std::uint64_t seed) {
    PhaseField p;
    p.dist = PhaseDist::UniformTorus;
    p.seed = seed;
    return p;
  }
  static PhaseField explicit_values(std::vector<double> v, std::int64_t first = 0,
                                    bool periodic = false) {
    PhaseField p;
    p.dist = PhaseDist::Explicit;
    p.values = std::move(v);
    p.first_index = first;
    p.values_periodic = periodic;
    return p;
  }

  double phase(std::int64_t j) const {
    switch (dist) {
      case PhaseDist::PointMass:
        return theta0;
      case PhaseDist::UniformInterval: {
        const double u = unit_double(hash_mix(seed, static_cast<std::uint64_t>(j) * 2 + 1));
        return eps * (2.0 * u - 1.0);
      }
      case PhaseDist::UniformTorus: {
        const double u = unit_double(hash_mix(seed, static_cast<std::uint64_t>(j) * 2 + 1));
        return two_pi * u;
      }
      case PhaseDist::Explicit: {
        std::int64_t k = j - first_index;
        const std::int64_t n = static_cast<std::int64_t>(values.size());
        if (values_periodic) {
          k = ((k % n) + n) % n;
        } else if (k < 0 || k >= n) {
          throw std::invalid_argument("PhaseField: index outside the realized phase window");
        }
        return values[static_cast<std::size_t>(k)];
      }
    }
    return 0.0;
  }

  // Half-width of the support around 0 (2*pi markers the full torus).
  double support_halfwidth() const {
    switch (dist) {
      case PhaseDist::PointMass:
        return 0.0;
      case PhaseDist::UniformInterval:
        return eps;
      case PhaseDist::UniformTorus:
        return pi;
      case PhaseDist::Explicit:
        return pi;
    }
    return pi;
  }
};

}  // namespace nuband
