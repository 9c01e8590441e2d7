#ifndef HOPFFORGE_ERRORS_HPP
#define HOPFFORGE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hopfforge {

/// Malformed or mismatched caller input (bad file, wrong ambient algebra,
/// dimension overflow, ...).
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An operation was invoked without its stated precondition (e.g. a
/// canonical map needed by a check is not regular). The message names the
/// missing requirement.
struct PreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A theorem-instance assertion failed: the hypotheses of a verified
/// statement hold but its conclusion does not. This is never a property of
/// the input; it means the tool itself is inconsistent.
struct InternalInconsistency : std::logic_error {
  using std::logic_error::logic_error;
};

} // namespace hopfforge

#endif
