#include "evosplit/presets.hpp"

#include <cmath>
#include <numbers>

#include "evosplit/config.hpp"
#include "evosplit/errors.hpp"

namespace evosplit {

Potential make_builtin_potential(const std::string& tag) {
  if (tag == "zero") {
    return Potential{[](double, double) { return 0.0; }, "zero"};
  }
  if (tag == "t-500x2") {
    return Potential{[](double x, double t) { return t - 500.0 * x * x; }, "t-500x2"};
  }
  if (tag.rfind("const:", 0) == 0) {
    const std::string value_text = tag.substr(6);
    std::size_t consumed = 0;
    double c = 0.0;
    try {
      c = std::stod(value_text, &consumed);
    } catch (const std::exception&) {
      consumed = std::string::npos;
    }
    if (consumed != value_text.size()) {
      throw ConfigError("potential tag 'const:<c>': '" + value_text + "' is not a number");
    }
    return Potential{[c](double, double) { return c; }, tag};
  }
  throw ConfigError("unknown potential tag '" + tag +
                    "'; available: zero, t-500x2, const:<c>");
}

std::function<double(double)> make_builtin_profile(const std::string& tag) {
  if (tag == "gaussian") {
    return [](double x) { return std::exp(-50.0 * (x - 0.4) * (x - 0.4)); };
  }
  if (tag == "sine") {
    return [](double x) { return std::sin(std::numbers::pi * x); };
  }
  if (tag == "zero") {
    return [](double) { return 0.0; };
  }
  if (tag == "spike") {
    return [](double x) { return (std::abs(x - 0.5) < 1e-12) ? 1.0 : 0.0; };
  }
  throw ConfigError("unknown initial profile tag '" + tag +
                    "'; available: gaussian, sine, zero, spike");
}

}  // namespace evosplit
