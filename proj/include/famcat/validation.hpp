#ifndef FAMCAT_VALIDATION_HPP
#define FAMCAT_VALIDATION_HPP

#include <string>
#include <string_view>
#include <vector>

namespace famcat {

// One violated axiom instance or malformed reference. Codes are dotted paths;
// the first segment classifies the failure ("ref", "structure", "axiom").
struct ValidationIssue {
  std::string code;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;

  bool ok() const { return issues.empty(); }

  void add(std::string code, std::string detail) {
    issues.push_back({std::move(code), std::move(detail)});
  }

  void merge(const ValidationReport& other) {
    issues.insert(issues.end(), other.issues.begin(), other.issues.end());
  }

  bool has_prefix(std::string_view prefix) const {
    for (const auto& issue : issues)
      if (std::string_view(issue.code).substr(0, prefix.size()) == prefix) return true;
    return false;
  }

  std::string to_string() const {
    std::string out;
    for (const auto& issue : issues) {
      out += issue.code;
      out += ": ";
      out += issue.detail;
      out += '\n';
    }
    return out;
  }
};

}  // namespace famcat

#endif
