#include "protoalg/error.hpp"
#include "protoalg/report.hpp"
#include "protoalg/value.hpp"

namespace protoalg {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidVertex: return "InvalidVertex";
    case ErrorCode::UnknownSymbol: return "UnknownSymbol";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::DomainViolation: return "DomainViolation";
    case ErrorCode::ExtentTooLarge: return "ExtentTooLarge";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::MalformedState: return "MalformedState";
    case ErrorCode::InputNotInDomain: return "InputNotInDomain";
    case ErrorCode::InvalidProtoAlgorithm: return "InvalidProtoAlgorithm";
    case ErrorCode::InvalidGraph: return "InvalidGraph";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::NonLinearSpec: return "NonLinearSpec";
    case ErrorCode::AmbiguousGuards: return "AmbiguousGuards";
    case ErrorCode::OpenCondition: return "OpenCondition";
    case ErrorCode::AxiomMismatch: return "AxiomMismatch";
    case ErrorCode::NotAlgorithmProcess: return "NotAlgorithmProcess";
    case ErrorCode::MismatchedSignature: return "MismatchedSignature";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

std::string to_string(const Value& v) {
  std::string s = "<";
  for (std::size_t i = 0; i < v.arity(); ++i) {
    if (i) s += ',';
    s += std::to_string(v[i]);
  }
  return s + ">";
}

std::string Report::summary() const {
  std::string s;
  for (const auto& i : issues) {
    if (!s.empty()) s += "; ";
    s += "[" + i.code + "] ";
    if (!i.subject.empty()) s += i.subject + ": ";
    s += i.message;
  }
  return s;
}

}  // namespace protoalg
