// errors.hpp — exception taxonomy shared by the library and the CLI exit codes.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace specgrowth {

// Base class for everything thrown by this library.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad inputs: malformed graphs, out-of-range parameters, unusable windows.
// CLI exit code 1.
struct validation_error : error {
  using error::error;
};

// A requested materialization or sweep exceeds the configured resource caps.
// CLI exit code 2.
struct resource_error : error {
  resource_error(const std::string& msg, std::uint64_t vertices, std::uint64_t edges)
      : error(msg), vertices(vertices), edges(edges) {}
  std::uint64_t vertices = 0;
  std::uint64_t edges = 0;
};

// Eigensolver failed to meet its residual contract within the iteration cap.
// Carries the best iterate so callers can report it. CLI exit code 3.
struct convergence_error : error {
  convergence_error(const std::string& msg, double best_lambda, double residual, int iterations)
      : error(msg), best_lambda(best_lambda), residual(residual), iterations(iterations) {}
  double best_lambda = 0.0;
  double residual = 0.0;
  int iterations = 0;
};

}  // namespace specgrowth
