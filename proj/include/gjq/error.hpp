#pragma once

#include <stdexcept>
#include <string>

namespace gjq {

/// Invalid input: parameter out of range, argument outside a function's domain.
class domain_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Evaluation requested outside the oscillatory region the expansions cover.
class regime_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iteration failed to converge, or a post-hoc check on its result failed.
class convergence_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The oracle was asked for a degree above its configured limit.
class size_guard_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gjq
