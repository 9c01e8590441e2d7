#ifndef HOPFFORGE_INTEGRALS_HPP
#define HOPFFORGE_INTEGRALS_HPP

#include "hopfforge/coproduct.hpp"
#include "hopfforge/functional.hpp"

namespace hopfforge {

struct IntegralCheckResult {
  bool pass = false;
  bool window_only = false;
  bool nonzero = false;
  std::string witness;  // failing triple, when any
  Scalar sample;        // value at the first window label, for normalization
};

/// Left invariance: (id (x) f)((c (x) 1) Delta(a) (c' (x) 1)) = f(a) c c'
/// on all window triples. Needs T2 or T4 regular.
IntegralCheckResult check_left_integral(const CanonicalMaps& cm, const Functional& f);

/// Right invariance: (f (x) id)((1 (x) b') Delta(a) (1 (x) b)) = f(a) b' b.
/// Needs T1 or T3 regular.
IntegralCheckResult check_right_integral(const CanonicalMaps& cm, const Functional& f);

enum class ScalarInvariance {
  NotInvariant,          // some Delta(a) slice is not a scalar multiple of 1
  MatchesOnRightLeg,     // invariant, and lambda = f on the right leg
  DiffersOutsideRightLeg // invariant, lambda = f on the right leg only
};

struct ScalarInvarianceReport {
  bool hypothesis_ok = false; // T1, T4 regular; Delta(A)(A(x)A) = A(x)A
  std::string hypothesis_failure;
  ScalarInvariance verdict = ScalarInvariance::NotInvariant;
  std::string witness;
  bool lambda_equals_f_everywhere = false;
};

/// Dense only. Decides whether (id (x) f)Delta(a) is a scalar multiple of
/// the identity for every a, and compares the scalar with f on the right
/// leg. lambda = f off the right leg can fail only when the leg is proper;
/// a mismatch on the leg itself is a fatal inconsistency.
ScalarInvarianceReport scalar_invariance_to_integral(const CanonicalMaps& cm,
                                                     const Functional& f);

} // namespace hopfforge

#endif
