#pragma once

#include <stdexcept>

namespace lhg {

// bad construction data: tau = 0, wrong theta sign, malformed config
struct InvalidSpec : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// tangent plane degenerate (lightlike or rank-deficient) at the sample point
struct NullNormal : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// the {T, JT} basis is unusable because T is (numerically) zero
struct SingularBasis : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// induced metric not invertible somewhere on a difference stencil
struct DegenerateMetric : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// closed-form principal curvature requested inside its pole guard window
struct SingularLambda : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// a sampled callable produced NaN or Inf
struct NonFiniteValue : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace lhg
