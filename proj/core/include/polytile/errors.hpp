#pragma once

#include <stdexcept>
#include <string>

namespace polytile {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or unparsable user input (documents, rational strings).
class ParseError : public Error {
 public:
  using Error::Error;
};

// Degenerate vertex set passed where a simplex is required.
class InvalidSimplex : public Error {
 public:
  using Error::Error;
};

// A polytope whose simplices overlap in a set of positive volume.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidFlag : public Error {
 public:
  using Error::Error;
};

class UnsupportedDimension : public Error {
 public:
  using Error::Error;
};

class DegenerateInput : public Error {
 public:
  using Error::Error;
};

// A criterion was applied to an input outside its hypothesis class.
class HypothesisNotMet : public Error {
 public:
  using Error::Error;
};

class NotEquidecomposable : public Error {
 public:
  using Error::Error;
};

class NotZeroTiler : public Error {
 public:
  using Error::Error;
};

// Signals a broken internal invariant (a bug), never bad user input.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace polytile
