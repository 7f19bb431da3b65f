#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace neoplanner {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Graph mutation that would break its structure (unknown source, edge out of
// the invalid sink, dangling reference in a loaded file).
class GraphStructureError : public Error {
 public:
  using Error::Error;
};

class LookupError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// Malformed persisted data. Syntax errors carry the byte offset where the
// parser gave up; schema errors carry the JSON pointer of the offending value.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t byte_offset)
      : Error(what + " (at byte " + std::to_string(byte_offset) + ")"),
        byte_offset_(byte_offset) {}
  ParseError(const std::string& what, const std::string& json_pointer)
      : Error(what + " (at " + (json_pointer.empty() ? "/" : json_pointer) + ")"),
        json_pointer_(json_pointer) {}

  std::optional<std::size_t> byte_offset() const noexcept { return byte_offset_; }
  const std::string& json_pointer() const noexcept { return json_pointer_; }

 private:
  std::optional<std::size_t> byte_offset_;
  std::string json_pointer_;
};

class VersionError : public Error {
 public:
  VersionError(int found, int expected)
      : Error("unsupported graph file version " + std::to_string(found) +
              " (expected " + std::to_string(expected) + ")"),
        found_(found) {}

  int found() const noexcept { return found_; }

 private:
  int found_;
};

// The oracle answered, but never in the expected list format.
class OracleFormatError : public Error {
 public:
  using Error::Error;
};

// The oracle could not be reached or returned a protocol-level failure.
class OracleTransportError : public Error {
 public:
  using Error::Error;
};

class EnvironmentError : public Error {
 public:
  using Error::Error;
};

}  // namespace neoplanner
