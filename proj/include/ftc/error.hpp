#ifndef FTC_ERROR_HPP
#define FTC_ERROR_HPP

#include <stdexcept>
#include <string>

namespace ftc {

enum class ErrorKind {
  IndexOutOfRange,
  SelfLoop,
  DuplicateEdge,
  NegativeWeight,
  InvalidArgument,
  AlphaOutOfRange,
  DimensionMismatch,
  NotSymmetric,
  NoConvergence,
  NotZeroSum,
  DisconnectedTopology,
  TimeBeyondSchedule,
  UnknownTopologyId,
  ConfigError,
  NumericalBlowup,
  ProtocolMismatch,
  SyntaxError,
  ValidationError,
  IoError,
  SearchSpaceTooLarge,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::SelfLoop: return "SelfLoop";
    case ErrorKind::DuplicateEdge: return "DuplicateEdge";
    case ErrorKind::NegativeWeight: return "NegativeWeight";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::AlphaOutOfRange: return "AlphaOutOfRange";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotSymmetric: return "NotSymmetric";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::NotZeroSum: return "NotZeroSum";
    case ErrorKind::DisconnectedTopology: return "DisconnectedTopology";
    case ErrorKind::TimeBeyondSchedule: return "TimeBeyondSchedule";
    case ErrorKind::UnknownTopologyId: return "UnknownTopologyId";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::NumericalBlowup: return "NumericalBlowup";
    case ErrorKind::ProtocolMismatch: return "ProtocolMismatch";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::ValidationError: return "ValidationError";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::SearchSpaceTooLarge: return "SearchSpaceTooLarge";
  }
  return "Unknown";
}

/// Every failure in the library is reported as an ftc::Error carrying a kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Parse failure with a 1-based line number (0 when not tied to a line).
class ParseError : public Error {
 public:
  ParseError(ErrorKind kind, std::size_t line, const std::string& what)
      : Error(kind, line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace ftc

#endif  // FTC_ERROR_HPP
