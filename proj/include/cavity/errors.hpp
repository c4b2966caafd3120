#pragma once

#include <stdexcept>
#include <string>

namespace cavity {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
  using Error::Error;
};

/// The self-interacting formulas divide by conj(U1); U1 = 0 is the decoupled case.
class ZeroCouplingError : public Error {
public:
  using Error::Error;
};

class DegenerateNormError : public Error {
public:
  using Error::Error;
};

class IncompatibleFamilies : public Error {
public:
  using Error::Error;
};

/// A constructed eigenpair failed its residual check against the 2x2 matrix.
class EigenConsistencyError : public Error {
public:
  using Error::Error;
};

class NonConvergence : public Error {
public:
  using Error::Error;
};

class SingularStep : public Error {
public:
  using Error::Error;
};

/// Malformed configuration or serialized description.
class ConfigError : public Error {
public:
  using Error::Error;
};

} // namespace cavity
