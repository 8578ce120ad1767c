#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace comatroid {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An input exceeded one of the desk-scale caps (rank, ground-set size, ...).
class ResourceLimitError : public Error {
 public:
  using Error::Error;
};

class UnsupportedFieldError : public Error {
 public:
  using Error::Error;
};

/// A precondition on the arguments of an operation does not hold.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Two columns of a presentation are projectively equal (or one is zero).
class SimplicityError : public DomainError {
 public:
  using DomainError::DomainError;
};

class CatalogError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace comatroid
