#pragma once

#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>

namespace rydberg {

// Energies and frequencies are stored in rad/us; lengths in um; times in us.
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// 87Rb C6 in rad/us * um^6.
inline constexpr double kDefaultC6 = 858386.0 * kTwoPi;

constexpr double from_two_pi_mhz(double value) { return value * kTwoPi; }
constexpr double to_two_pi_mhz(double value) { return value / kTwoPi; }

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Bad user input: invalid config fields, inconsistent geometry, unreachable targets.
class ConfigError : public Error {
public:
  using Error::Error;
};

// A requested Hilbert space or dense matrix exceeds a hard size limit.
class DimensionError : public Error {
public:
  using Error::Error;
};

// Solver failure. Carries the best estimate reached before giving up, if any.
class NumericError : public Error {
public:
  explicit NumericError(const std::string& what, std::optional<double> best = std::nullopt)
      : Error(what), best_estimate(best) {}
  std::optional<double> best_estimate;
};

} // namespace rydberg
