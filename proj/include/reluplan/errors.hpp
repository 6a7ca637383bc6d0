// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace reluplan {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Mismatched widths, lengths or index ranges.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Numerical breakdown in a solver (stall, singular KKT system, ...).
class NumericError : public Error {
 public:
  using Error::Error;
};

/// File or document problems.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace reluplan
