#pragma once

#include <stdexcept>
#include <string>

namespace capgames {

// Base class for all library errors. The CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Dimension mismatch between a game, a strategy profile, or an action profile.
class ShapeError : public Error {
 public:
  explicit ShapeError(const std::string& msg) : Error(msg) {}
};

// A capital value fell outside a dynamics domain (e.g. x <= 0 under
// multiplicative dynamics).
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& msg) : Error(msg) {}
};

// Invariant violations found while constructing or parsing a game.  The
// message lists every failure, not just the first.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& msg) : Error(msg) {}
};

// An enumeration cap was exceeded (profile count, support size).
class SizeError : public Error {
 public:
  explicit SizeError(const std::string& msg) : Error(msg) {}
};

// The requested computation is not supported for this player count.
class ArityError : public Error {
 public:
  explicit ArityError(const std::string& msg) : Error(msg) {}
};

// Malformed input document (bad JSON, wrong types, unknown fields).
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& msg) : Error(msg) {}
};

}  // namespace capgames
