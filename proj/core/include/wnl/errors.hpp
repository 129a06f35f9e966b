#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace wnl {

/// A request exceeds a configured or structural size limit.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Arguments violate an operation's preconditions.
class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The LP solver failed to reach a trustworthy optimum.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A threshold table lacks entries that a persistency bound depends on.
class GapError : public std::runtime_error {
 public:
  GapError(const std::string& what, std::vector<int> missing)
      : std::runtime_error(what), missing_(std::move(missing)) {}

  const std::vector<int>& missing() const noexcept { return missing_; }

 private:
  std::vector<int> missing_;
};

}  // namespace wnl
