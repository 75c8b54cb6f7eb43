#pragma once

#include <stdexcept>
#include <string>

namespace mvol {

/// Base class for every error thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Zero denominator passed to a constructor or normalizer.
struct InvalidDenominatorError : Error {
  using Error::Error;
};

/// Division by the canonical zero value.
struct DivideByZeroError : Error {
  using Error::Error;
};

/// Manifold family/parameter combination outside the supported set.
struct UnsupportedManifoldError : Error {
  using Error::Error;
};

/// Quadrature order outside the supported range.
struct UnsupportedOrderError : Error {
  using Error::Error;
};

/// Tensor-product quadrature requested in too many dimensions.
struct DimensionError : Error {
  using Error::Error;
};

/// An internal identity failed to hold (signals a formula or chart bug).
struct InconsistencyError : Error {
  using Error::Error;
};

/// Partition does not sum to the stated n.
struct InvalidPartitionError : Error {
  using Error::Error;
};

/// Spectrum violates the unit-trace constraint.
struct InvalidSpectrumError : Error {
  using Error::Error;
};

}  // namespace mvol
