#pragma once

#include <stdexcept>
#include <string>

namespace morseq {

/// Base of every error thrown by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input: rank mismatch, wall chamber, bad index,
/// unsupported root system, malformed JSON.  The CLI maps these to exit 2.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// A formal series that cannot be enumerated in a box (zero or unpolarized
/// denominator weight).
class UnboundedExpansion : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

/// Mathematical failures.  The CLI maps these to exit 1.
class MathFailure : public Error {
 public:
  using Error::Error;
};

/// The flow relation has a quasicycle, so no filtration exists.
class NotFilterable : public MathFailure {
 public:
  using MathFailure::MathFailure;
};

/// A graded character is not divisible by (1+t) at some weight.
class NotDivisible : public MathFailure {
 public:
  using MathFailure::MathFailure;
};

/// The lattice polytope of a divisor reaches the edge of the search box.
class PolytopeEscapesBox : public MathFailure {
 public:
  using MathFailure::MathFailure;
};

}  // namespace morseq
