#pragma once

#include <stdexcept>
#include <string>

namespace ddr {

enum class ErrorCode {
  Syntax,
  UndeclaredGenerator,
  DuplicateGenerator,
  InvalidName,
  EmptyRelator,
  NameCollision,
  NotCyclicallyReduced,
  SNotProper,
  NegativeWeight,
  WeightDomain,
  NotATree,
  LabelNotAVertex,
  UndeclaredVertex,
  InvalidSubLot,
  NotMaximal,
  AttachmentUnderspecified,
  SearchExhausted,
  InvalidDiagram,
  HypothesisNotMet,
  NotADisc,
  GeneratorNotEligible,
  InconsistentTable,
  InconsistentSubcomplex,
  InvalidArgument,
};

const char* to_string(ErrorCode code);

/// Every failure the library reports carries a machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what,
             ErrorCode code = ErrorCode::Syntax);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace ddr
