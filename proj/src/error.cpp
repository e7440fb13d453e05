#include "specmodes/error.hpp"

#include <sstream>

namespace specmodes {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::DidNotConverge: return "DidNotConverge";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::NotDiagonal: return "NotDiagonal";
    case ErrorCode::NonPositiveDiagonal: return "NonPositiveDiagonal";
    case ErrorCode::NonPositiveInput: return "NonPositiveInput";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::TooSmall: return "TooSmall";
    case ErrorCode::NonPositiveEigenvalue: return "NonPositiveEigenvalue";
    case ErrorCode::DegenerateSpectrum: return "DegenerateSpectrum";
    case ErrorCode::NegativeSquaredComponent: return "NegativeSquaredComponent";
    case ErrorCode::MissingCapacitanceRatios: return "MissingCapacitanceRatios";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::InvalidSpectrum: return "InvalidSpectrum";
    case ErrorCode::TooFewPoints: return "TooFewPoints";
    case ErrorCode::CountMismatch: return "CountMismatch";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

ParseError::ParseError(std::size_t line, const std::string& message)
    : Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + message), line_(line) {}

namespace {
std::string negative_component_message(std::size_t mode, std::size_t component, double value) {
  std::ostringstream os;
  os.precision(12);
  os << "squared magnitude of mode " << mode + 1 << ", component " << component + 1 << " is "
     << value;
  return os.str();
}
}  // namespace

NegativeSquaredComponent::NegativeSquaredComponent(std::size_t mode, std::size_t component,
                                                   double value)
    : Error(ErrorCode::NegativeSquaredComponent,
            negative_component_message(mode, component, value)),
      mode_(mode),
      component_(component),
      value_(value) {}

}  // namespace specmodes
