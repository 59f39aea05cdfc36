#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tweetmine {

// Error taxonomy mirrored by the CLI exit codes: configuration problems
// exit with 2, data problems (malformed input, schema violations, broken
// invariants in user data) exit with 3.

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input that could not be parsed at all. Carries the byte
/// offset within the offending line or stream.
class ParseError : public DataError {
 public:
  ParseError(const std::string& what, std::size_t byte_offset)
      : DataError(what + " (byte " + std::to_string(byte_offset) + ")"),
        byte_offset_(byte_offset) {}

  std::size_t byte_offset() const noexcept { return byte_offset_; }

 private:
  std::size_t byte_offset_;
};

/// Structurally parseable input that violates the record schema.
/// Carries the name of the offending field.
class SchemaError : public DataError {
 public:
  SchemaError(const std::string& what, std::string field)
      : DataError(what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace tweetmine
