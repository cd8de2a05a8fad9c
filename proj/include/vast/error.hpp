#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace vast {

enum class ErrorKind {
  invalid_order,
  not_a_group,
  format,
  invalid_arity,
  not_syndetic,
  bound_overflow,
  precondition_violated,
  not_a_subgroup,
  insufficient_members,
  invalid_phi,
  undefined_stratum,
  contradiction,
  vastness_bound_violated,
  isolation_not_certified,
  closure_precondition_failed,
  cannot_certify,
  chooser_exhausted,
};

std::string_view to_string(ErrorKind kind);

// Every failure the library raises carries a machine-checkable kind; the
// message holds the witness (cell, triple, index, ...) in readable form.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace vast
