#ifndef FAMCAT_BUDGET_HPP
#define FAMCAT_BUDGET_HPP

#include <stdexcept>
#include <string>

namespace famcat {

// Thrown when an enumerative search runs out of budget. Callers surface this
// as "indeterminate", which is distinct from both a positive and a negative
// verdict.
struct BudgetExceeded : std::runtime_error {
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

// Precondition violations and unsupported requests (CLI exit status 3).
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Work cap shared by the enumerations of one operation. Every candidate
// examined charges one unit.
class Budget {
 public:
  Budget() : cap_(default_cap()) {}
  explicit Budget(long long cap) : cap_(cap) {}

  // FAMCAT_BUDGET env override, else 1e6.
  static long long default_cap();

  void charge(long long n = 1) {
    used_ += n;
    if (used_ > cap_)
      throw BudgetExceeded("enumeration budget exceeded (cap " + std::to_string(cap_) + ")");
  }

  long long used() const { return used_; }
  long long cap() const { return cap_; }

 private:
  long long cap_;
  long long used_ = 0;
};

}  // namespace famcat

#endif
