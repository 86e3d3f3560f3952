#pragma once

#include <stdexcept>
#include <string>

namespace powersph {

/// Thrown when an argument falls outside an operation's domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Thrown when an iterative numerical routine cannot produce a result.
class NumericError : public std::runtime_error {
 public:
  enum class Kind { NonConvergence, RejectionCap, NonFinite };

  NumericError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

}  // namespace powersph
