#pragma once

#include <stdexcept>
#include <string>

namespace sasaki {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A point left the chart (or patch parameter) domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Singular metric or first fundamental form.
class LinearAlgebraError : public Error {
 public:
  using Error::Error;
};

/// Arguments that do not fit together, e.g. tangent vectors at different base points.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// The immersion (or the frame of xi(F)) lost rank.
class DegenerateImmersion : public Error {
 public:
  using Error::Error;
};

/// A direction needed by Omega_xi leaves the patch while xi is only known along it.
class ExtensionRequired : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace sasaki
