#pragma once

#include <stdexcept>
#include <string>

namespace pinn {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// derivative order above the supported maximum
struct UnsupportedOrderError : Error {
  using Error::Error;
};

// division by a zero-valued jet, Cole-Hopf transform through theta <= 0, ...
struct SingularityError : Error {
  using Error::Error;
};

// non-finite value met during a gradient sweep or an optimizer step
struct NumericError : Error {
  using Error::Error;
};

// mismatched vector/grid shapes
struct ShapeError : Error {
  using Error::Error;
};

// invalid configuration (counts not splittable, bad sweep axes, ...)
struct ConfigError : Error {
  using Error::Error;
};

// point off the IC/BC manifold, point outside the domain box
struct DomainError : Error {
  using Error::Error;
};

// explicit scheme refused: stability bound violated
struct StabilityError : Error {
  using Error::Error;
};

// spectral series denominator collapsed
struct TruncationError : Error {
  using Error::Error;
};

}  // namespace pinn
