#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "protoalg/error.hpp"

namespace protoalg {

struct Issue {
  std::string code;     // clause identifier, e.g. "predicate-degree"
  std::string subject;  // offending vertex / edge / symbol / value
  std::string message;
};

/// Outcome of a validation pass. Empty means every checked clause holds.
struct Report {
  std::vector<Issue> issues;

  bool ok() const noexcept { return issues.empty(); }
  bool cites(std::string_view code) const {
    for (const auto& i : issues)
      if (i.code == code) return true;
    return false;
  }
  void add(std::string code, std::string subject, std::string message) {
    issues.push_back({std::move(code), std::move(subject), std::move(message)});
  }
  void append(const Report& other) {
    issues.insert(issues.end(), other.issues.begin(), other.issues.end());
  }
  std::string summary() const;
};

/// Raised when a construction step rejects its input; carries the report.
class ValidationError : public Error {
 public:
  ValidationError(ErrorCode code, Report report)
      : Error(code, report.summary()), report_(std::move(report)) {}
  const Report& report() const noexcept { return report_; }

 private:
  Report report_;
};

}  // namespace protoalg
