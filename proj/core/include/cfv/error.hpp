#pragma once

#include <stdexcept>
#include <string>

namespace cfv {

/// Caller violated a precondition (negative time, s > t, tol <= 0, ...).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Valid request with no answer in the model: no IRR root, arbitrage present,
/// under-determined implied curve, unattainable tolerance.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed file content. `where()` names the offending field, e.g. "density[1].to".
class InputError : public std::runtime_error {
 public:
  InputError(std::string where, const std::string& what)
      : std::runtime_error(where.empty() ? what : where + ": " + what), where_(std::move(where)) {}

  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

}  // namespace cfv
