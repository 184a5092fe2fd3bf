#pragma once

#include <functional>
#include <string>

#include "evosplit/grid.hpp"

namespace evosplit {

/**
 * Built-in potentials, selected by tag:
 *   "zero"       V(x, t) = 0
 *   "t-500x2"    V(x, t) = t - 500 x^2
 *   "const:<c>"  V(x, t) = c
 * Throws ConfigError for unknown tags.
 */
Potential make_builtin_potential(const std::string& tag);

/**
 * Built-in initial profiles, selected by tag:
 *   "gaussian"   u0(x) = exp(-50 (x - 0.4)^2)
 *   "sine"       u0(x) = sin(pi x)
 *   "zero"       u0(x) = 0
 *   "spike"      1 at x = 0.5, 0 elsewhere (sharp data for robustness runs)
 * Throws ConfigError for unknown tags.
 */
std::function<double(double)> make_builtin_profile(const std::string& tag);

}  // namespace evosplit
