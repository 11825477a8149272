#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace efunc {

// Base of every error raised by the library. Violations that are data
// (law violations, sweep mismatches) are reported as values instead.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CodingError : Error { using Error::Error; };
struct DecodeError : Error { using Error::Error; };

struct FunctionalInconsistency : Error { using Error::Error; };
struct InsufficientOracle : Error { using Error::Error; };
struct MalformedFunctional : Error { using Error::Error; };
struct FormatError : Error { using Error::Error; };

struct TotalityError : Error { using Error::Error; };
struct MalformedPullback : Error { using Error::Error; };
struct InsufficientClasses : Error { using Error::Error; };
struct CompositionError : Error { using Error::Error; };
struct InconsistentDiagram : Error { using Error::Error; };

struct KindError : Error { using Error::Error; };
struct IllFormedFunctor : Error { using Error::Error; };
struct WitnessMalformed : Error { using Error::Error; };

struct BoundsError : Error { using Error::Error; };
struct SearchExhausted : Error { using Error::Error; };

struct ConfigError : Error { using Error::Error; };

class ParseError : public Error {
 public:
  ParseError(std::string source, std::size_t line, std::size_t column, const std::string& msg)
      : Error(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace efunc
