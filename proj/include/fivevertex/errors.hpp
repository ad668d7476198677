#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace fv {

// Precondition violated by caller-supplied parameters.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Exact log-gas sum refused because its estimated work exceeds the budget.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(std::uint64_t estimated, std::uint64_t budget)
      : std::runtime_error("log-gas sum needs ~" + std::to_string(estimated) +
                           " products, budget is " + std::to_string(budget)),
        estimated_(estimated),
        budget_(budget) {}
  std::uint64_t estimated() const noexcept { return estimated_; }
  std::uint64_t budget() const noexcept { return budget_; }

 private:
  std::uint64_t estimated_;
  std::uint64_t budget_;
};

// An internal identity that must hold exactly (or to tight tolerance) failed.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Iterative solver or quadrature did not reach its target.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double achieved)
      : std::runtime_error(what + " (achieved " + std::to_string(achieved) + ")"),
        achieved_(achieved) {}
  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

}  // namespace fv
