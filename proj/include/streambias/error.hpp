#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace streambias {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A record file line that could not be accepted. Carries the origin and the
/// 1-based line number.
class ParseError : public Error {
 public:
  ParseError(std::string origin, std::size_t line, const std::string& message)
      : Error(origin + ":" + std::to_string(line) + ": " + message),
        origin_(std::move(origin)),
        line_(line) {}

  const std::string& origin() const noexcept { return origin_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string origin_;
  std::size_t line_;
};

class DuplicateIdError : public ParseError {
 public:
  DuplicateIdError(std::string origin, std::size_t line, std::uint64_t id)
      : ParseError(std::move(origin), line, "duplicate id " + std::to_string(id)),
        id_(id) {}

  std::uint64_t id() const noexcept { return id_; }

 private:
  std::uint64_t id_;
};

/// Invalid scenario / sampler / scheme configuration. `field()` names the
/// offending key, e.g. "samplers[1].schedule[0].g".
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& message)
      : Error(field + ": " + message), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Two series or a series and a scheme disagree on bin layout.
class GeometryError : public Error {
 public:
  using Error::Error;
};

/// The statistic is undefined for the given input (too few items, empty
/// occurrence list, ...).
class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

}  // namespace streambias
