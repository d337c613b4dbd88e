#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace fdsi {

// Malformed instance or allocation: shape mismatches, unknown ids,
// overlapping bundles, incomplete allocations where completeness is required.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what)
      : std::runtime_error(what), problems_{what} {}

  explicit ValidationError(std::vector<std::string> problems)
      : std::runtime_error(join(problems)), problems_(std::move(problems)) {}

  const std::vector<std::string>& problems() const noexcept { return problems_; }

 private:
  static std::string join(const std::vector<std::string>& problems) {
    std::string out;
    for (const auto& p : problems) {
      if (!out.empty()) out += "; ";
      out += p;
    }
    return out;
  }

  std::vector<std::string> problems_;
};

// Raised by every checker and allocator that assumes goods when the
// instance carries a negative valuation.
class GoodsOnlyError : public std::domain_error {
 public:
  GoodsOnlyError()
      : std::domain_error("operation is defined for goods only; instance has a negative valuation") {}
};

// A search or enumeration ran past its configured budget. Never a verdict.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The requested notion is not served by this solver.
class UnsupportedNotion : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace fdsi
