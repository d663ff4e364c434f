#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>

namespace thermocrack {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad input data: the caller handed us something that violates a contract.
class DataError : public Error {
 public:
  using Error::Error;
};

class ShapeError : public DataError {
 public:
  using DataError::DataError;
};

class DomainError : public DataError {
 public:
  using DataError::DataError;
};

class ValidationError : public DataError {
 public:
  using DataError::DataError;
};

class BuildError : public DataError {
 public:
  using DataError::DataError;
};

class GenerationError : public DataError {
 public:
  using DataError::DataError;
};

class DegenerateGeometryError : public DataError {
 public:
  using DataError::DataError;
};

class ConfigurationError : public DataError {
 public:
  using DataError::DataError;
};

class FormatError : public DataError {
 public:
  using DataError::DataError;
};

class MalformedColormapError : public DataError {
 public:
  MalformedColormapError(std::size_t x, std::size_t y, const std::string& detail);
  std::size_t x() const noexcept { return x_; }
  std::size_t y() const noexcept { return y_; }

 private:
  std::size_t x_;
  std::size_t y_;
};

class ParseError : public DataError {
 public:
  ParseError(std::size_t line, const std::string& detail);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class CorruptionError : public DataError {
 public:
  CorruptionError(std::uint64_t offset, const std::string& detail);
  std::uint64_t offset() const noexcept { return offset_; }

 private:
  std::uint64_t offset_;
};

// Filesystem failures; always carries the offending path.
class IoError : public Error {
 public:
  IoError(const std::filesystem::path& path, const std::string& detail);
  const std::filesystem::path& path() const noexcept { return path_; }

 private:
  std::filesystem::path path_;
};

// Internal invariant broken (NaN parameters, impossible states).
class InvariantError : public Error {
 public:
  using Error::Error;
};

}  // namespace thermocrack
