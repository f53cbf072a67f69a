#include "ddr/error.hpp"

namespace ddr {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::Syntax: return "SYNTAX";
    case ErrorCode::UndeclaredGenerator: return "UNDECLARED_GENERATOR";
    case ErrorCode::DuplicateGenerator: return "DUPLICATE_GENERATOR";
    case ErrorCode::InvalidName: return "INVALID_NAME";
    case ErrorCode::EmptyRelator: return "EMPTY_RELATOR";
    case ErrorCode::NameCollision: return "NAME_COLLISION";
    case ErrorCode::NotCyclicallyReduced: return "NOT_CYCLICALLY_REDUCED";
    case ErrorCode::SNotProper: return "S_NOT_PROPER";
    case ErrorCode::NegativeWeight: return "NEGATIVE_WEIGHT";
    case ErrorCode::WeightDomain: return "WEIGHT_DOMAIN";
    case ErrorCode::NotATree: return "NOT_A_TREE";
    case ErrorCode::LabelNotAVertex: return "LABEL_NOT_A_VERTEX";
    case ErrorCode::UndeclaredVertex: return "UNDECLARED_VERTEX";
    case ErrorCode::InvalidSubLot: return "INVALID_SUBLOT";
    case ErrorCode::NotMaximal: return "NOT_MAXIMAL";
    case ErrorCode::AttachmentUnderspecified: return "ATTACHMENT_UNDERSPECIFIED";
    case ErrorCode::SearchExhausted: return "SEARCH_EXHAUSTED";
    case ErrorCode::InvalidDiagram: return "INVALID_DIAGRAM";
    case ErrorCode::HypothesisNotMet: return "HYPOTHESIS_NOT_MET";
    case ErrorCode::NotADisc: return "NOT_A_DISC";
    case ErrorCode::GeneratorNotEligible: return "GENERATOR_NOT_ELIGIBLE";
    case ErrorCode::InconsistentTable: return "INCONSISTENT_TABLE";
    case ErrorCode::InconsistentSubcomplex: return "INCONSISTENT_SUBCOMPLEX";
    case ErrorCode::InvalidArgument: return "INVALID_ARGUMENT";
  }
  return "UNKNOWN";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what),
      code_(code) {}

ParseError::ParseError(std::size_t line, std::size_t column,
                       const std::string& what, ErrorCode code)
    : Error(code, "line " + std::to_string(line) + ", column " +
                      std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

}  // namespace ddr
