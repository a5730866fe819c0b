#pragma once

#include <stdexcept>
#include <string>

namespace twistkl {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or unsupported input: bad Coxeter matrix, bad star map,
/// a query outside the enumerated part of an infinite group.
class InputError : public Error {
 public:
  using Error::Error;
};

class InvalidMatrix : public InputError {
 public:
  using InputError::InputError;
};

class InvalidStar : public InputError {
 public:
  using InputError::InputError;
};

class UnsupportedGroup : public InputError {
 public:
  using InputError::InputError;
};

/// The caller asked for something outside an operation's domain.
class PreconditionViolated : public Error {
 public:
  using Error::Error;
};

class NotTwistedInvolution : public PreconditionViolated {
 public:
  using PreconditionViolated::PreconditionViolated;
};

/// An algebraic identity that must hold failed to hold. These never signal
/// bad input; they signal a defect in the computation.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

class NotDivisible : public ConsistencyError {
 public:
  using ConsistencyError::ConsistencyError;
};

class AntisymmetryViolated : public ConsistencyError {
 public:
  using ConsistencyError::ConsistencyError;
};

class PositivityViolated : public ConsistencyError {
 public:
  using ConsistencyError::ConsistencyError;
};

class RelationViolated : public ConsistencyError {
 public:
  using ConsistencyError::ConsistencyError;
};

class FiltrationViolated : public ConsistencyError {
 public:
  using ConsistencyError::ConsistencyError;
};

class MismatchDetected : public ConsistencyError {
 public:
  using ConsistencyError::ConsistencyError;
};

class SplitViolated : public ConsistencyError {
 public:
  using ConsistencyError::ConsistencyError;
};

}  // namespace twistkl
