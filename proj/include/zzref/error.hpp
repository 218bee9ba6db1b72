#pragma once

#include <stdexcept>
#include <string>

namespace zzref {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shapes disagree: matrix sizes, module lengths, types, malformed diagrams.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// An index (position, arrow, interval endpoint) is outside its valid range.
class IndexError : public Error {
 public:
  using Error::Error;
};

/// The arguments are well formed but an operation's precondition fails,
/// e.g. reversing an arrow that is not an isomorphism.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Malformed serialized input; the message carries field/line context.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace zzref
