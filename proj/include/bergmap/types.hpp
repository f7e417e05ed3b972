// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace bergmap {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Points closer to the boundary than this (in absolute units) are treated
/// as exterior by membership tests; kernel evaluation is unstable on the
/// boundary itself.
inline constexpr double kBoundaryBand = 1e-12;

enum class ErrorKind {
  UnsupportedDomain,
  DegenerateGeometry,
  DisconnectedAtResolution,
  EmptyGrid,
  GramBreakdown,
  Underflow,
  IllConditionedBasis,
  NearKernelZero,
  NotApplicable,
  InversionFailure,
  InsufficientSamples,
  BranchError,
  PoleError,
  ConfigError,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace bergmap
