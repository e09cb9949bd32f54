#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace meshtok {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input text or bytes that do not follow the expected grammar.
class ParseError : public Error {
 public:
  enum class Location { Line, Token, Byte };

  ParseError(Location kind, std::size_t where, const std::string& what);

  Location location_kind() const noexcept { return kind_; }
  /// 1-based line number, 0-based token position or 0-based byte offset.
  std::size_t location() const noexcept { return where_; }

 private:
  Location kind_;
  std::size_t where_;
};

/// A token stream that ends (or closes a patch) before the grammar allows.
class TruncationError : public ParseError {
 public:
  using ParseError::ParseError;
};

/// Well-formed input that is inconsistent with itself (bad indices, duplicate rows).
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// A value outside the domain an operation accepts.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Geometry with no usable extent or area.
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

/// Missing or inconsistent configuration (thresholds, score tables).
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace meshtok
