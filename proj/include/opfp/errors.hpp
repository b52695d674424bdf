// This file is part of the opfp library.
//
// Licensed under the Apache License, Version 2.0. You may obtain a copy
// of this license at http://www.apache.org/licenses/LICENSE-2.0.

#pragma once

#include <stdexcept>
#include <string>

namespace opfp {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Shape or block-structure mismatch between operands.
struct DimensionError : Error {
  using Error::Error;
};

// A precondition on an argument value failed.
struct ArgumentError : Error {
  using Error::Error;
};

// A requested order exceeds the configured cap of a moment source.
struct CapacityError : Error {
  using Error::Error;
};

// A fixed-point iteration did not reach the requested tolerance.
struct ConvergenceError : Error {
  ConvergenceError(const std::string& msg, double residual)
      : Error(msg), last_residual(residual) {}
  double last_residual;
};

// Spectrum touches the branch cut of the principal square root.
struct BranchError : Error {
  using Error::Error;
};

// Evaluation requested outside the natural domain of a transform.
struct DomainError : Error {
  using Error::Error;
};

// Malformed configuration or scenario document.
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace opfp
