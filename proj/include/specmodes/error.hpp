#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace specmodes {

enum class ErrorCode {
  NotSymmetric,
  DidNotConverge,
  IndexOutOfRange,
  NotDiagonal,
  NonPositiveDiagonal,
  NonPositiveInput,
  InvalidConfig,
  TooSmall,
  NonPositiveEigenvalue,
  DegenerateSpectrum,
  NegativeSquaredComponent,
  MissingCapacitanceRatios,
  ShapeMismatch,
  NonFinite,
  InvalidSpectrum,
  TooFewPoints,
  CountMismatch,
  ParseError,
  SchemaError,
  IoError,
};

std::string_view to_string(ErrorCode code);

// Base exception for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message);
  // 1-based line number in the offending file.
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class NegativeSquaredComponent : public Error {
 public:
  NegativeSquaredComponent(std::size_t mode, std::size_t component, double value);
  std::size_t mode() const noexcept { return mode_; }
  std::size_t component() const noexcept { return component_; }
  double value() const noexcept { return value_; }

 private:
  std::size_t mode_;
  std::size_t component_;
  double value_;
};

}  // namespace specmodes
