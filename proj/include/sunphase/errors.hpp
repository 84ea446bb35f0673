#pragma once

#include <stdexcept>
#include <string>

namespace sunphase {

// Input fails a mathematical precondition: non-unitary matrix, non-unit
// state vector, determinant off the unit circle, that sort of thing.
class validation_error : public std::runtime_error {
 public:
  explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

// Geometrically degenerate configuration: coincident triangle vertices,
// rephasing against an orthogonal state, zero-length geodesic leg.
class degenerate_error : public std::runtime_error {
 public:
  explicit degenerate_error(const std::string& what) : std::runtime_error(what) {}
};

// An internal cross-check failed: a solver's residual came out larger than
// its tolerance, or a cycle that must close did not. Carries the residual so
// callers can report how far off the computation landed.
class consistency_error : public std::runtime_error {
 public:
  consistency_error(const std::string& what, double residual)
      : std::runtime_error(what + " (residual " + std::to_string(residual) + ")"),
        residual_(residual) {}

  double residual() const { return residual_; }

 private:
  double residual_;
};

}  // namespace sunphase
