#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace blockforge {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller passed parameters outside an operation's domain.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A configured numeric bound (field size, enumeration cap, search budget) was exceeded.
class BoundExceeded : public Error {
 public:
  using Error::Error;
};

/// The group is too large to enumerate; use an ingested table instead.
class Unenumerable : public BoundExceeded {
 public:
  using BoundExceeded::BoundExceeded;
};

/// Derived-subgroup membership cannot be decided without a spinor norm.
class Undecidable : public Error {
 public:
  using Error::Error;
};

/// Data failed an internal consistency check (orthogonality, integrality, group order).
class IntegrityError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace blockforge
