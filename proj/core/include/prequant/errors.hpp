#pragma once

#include <stdexcept>
#include <string>

namespace prequant {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// An input violates a documented precondition or type invariant.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(what) {}
};

/// The operation is not defined for the given space or bundle.
class UnsupportedError : public Error {
 public:
  explicit UnsupportedError(const std::string& what) : Error(what) {}
};

/// Two identical-system points coincide where a construction needs them apart.
class DegenerateInputError : public DomainError {
 public:
  explicit DegenerateInputError(const std::string& what) : DomainError(what) {}
};

/// Antipodal pair: the connecting circle is not unique and no tie-break axis
/// was supplied.
class AmbiguousAxisError : public DomainError {
 public:
  explicit AmbiguousAxisError(const std::string& what) : DomainError(what) {}
};

/// A pair path crosses the diagonal set, so no exchange phase is defined.
class DiagonalCrossingError : public Error {
 public:
  explicit DiagonalCrossingError(const std::string& what) : Error(what) {}
};

/// Numerical results disagree with an exact group-theoretic expectation.
/// Signals a bug in bundle arithmetic, not bad input.
class InconsistencyError : public Error {
 public:
  explicit InconsistencyError(const std::string& what) : Error(what) {}
};

/// A scenario file could not be parsed.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(what) {}
};

}  // namespace prequant
