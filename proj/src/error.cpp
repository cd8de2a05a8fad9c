#include "vast/error.hpp"

namespace vast {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_order: return "invalid-order";
    case ErrorKind::not_a_group: return "not-a-group";
    case ErrorKind::format: return "format";
    case ErrorKind::invalid_arity: return "invalid-arity";
    case ErrorKind::not_syndetic: return "not-syndetic";
    case ErrorKind::bound_overflow: return "bound-overflow";
    case ErrorKind::precondition_violated: return "precondition-violated";
    case ErrorKind::not_a_subgroup: return "not-a-subgroup";
    case ErrorKind::insufficient_members: return "insufficient-members";
    case ErrorKind::invalid_phi: return "invalid-phi";
    case ErrorKind::undefined_stratum: return "undefined-stratum";
    case ErrorKind::contradiction: return "contradiction";
    case ErrorKind::vastness_bound_violated: return "vastness-bound-violated";
    case ErrorKind::isolation_not_certified: return "isolation-not-certified";
    case ErrorKind::closure_precondition_failed: return "closure-precondition-failed";
    case ErrorKind::cannot_certify: return "cannot-certify";
    case ErrorKind::chooser_exhausted: return "chooser-exhausted";
  }
  return "unknown";
}

}  // namespace vast
