#include "hopfforge/integrals.hpp"

#include "hopfforge/errors.hpp"

namespace hopfforge {

IntegralCheckResult check_left_integral(const CanonicalMaps& cm, const Functional& f) {
  const Algebra& A = cm.algebra();
  if (!cm.is_regular(Which::T2) && !cm.is_regular(Which::T4))
    throw PreconditionError("left integral needs T2 or T4 regular");
  const bool via_t2 = cm.is_regular(Which::T2);

  IntegralCheckResult res;
  res.window_only = cm.window_only();
  const auto& w = cm.window_labels();
  res.nonzero = !f.is_zero_on(w);
  if (!w.empty())
    res.sample = f.at(w.front());

  for (Label a : w)
    for (Label c : w)
      for (Label c2 : w) {
        Elem2 x = via_t2 ? leg1_right(A, cm.image(Which::T2, c, a), A.basis_elem(c2))
                         : leg1_left(A, A.basis_elem(c), cm.image(Which::T4, c2, a));
        Elem lhs = f.slice_second(x);
        Elem rhs = A.basis_product(c, c2);
        rhs.scale(f.at(a));
        if (!(lhs == rhs)) {
          res.witness = "(" + A.label_name(a) + "," + A.label_name(c) + "," +
                        A.label_name(c2) + ")";
          return res;
        }
      }
  res.pass = res.nonzero; // an integral is required to be non-zero
  if (!res.nonzero)
    res.witness = "functional vanishes on the window";
  return res;
}

IntegralCheckResult check_right_integral(const CanonicalMaps& cm, const Functional& f) {
  const Algebra& A = cm.algebra();
  if (!cm.is_regular(Which::T1) && !cm.is_regular(Which::T3))
    throw PreconditionError("right integral needs T1 or T3 regular");
  const bool via_t1 = cm.is_regular(Which::T1);

  IntegralCheckResult res;
  res.window_only = cm.window_only();
  const auto& w = cm.window_labels();
  res.nonzero = !f.is_zero_on(w);
  if (!w.empty())
    res.sample = f.at(w.front());

  for (Label a : w)
    for (Label b : w)
      for (Label b2 : w) {
        Elem2 x = via_t1 ? leg2_left(A, A.basis_elem(b2), cm.image(Which::T1, a, b))
                         : leg2_right(A, cm.image(Which::T3, a, b2), A.basis_elem(b));
        Elem lhs = f.slice_first(x);
        Elem rhs = A.basis_product(b2, b);
        rhs.scale(f.at(a));
        if (!(lhs == rhs)) {
          res.witness = "(" + A.label_name(a) + "," + A.label_name(b2) + "," +
                        A.label_name(b) + ")";
          return res;
        }
      }
  res.pass = res.nonzero;
  if (!res.nonzero)
    res.witness = "functional vanishes on the window";
  return res;
}

ScalarInvarianceReport scalar_invariance_to_integral(const CanonicalMaps& cm,
                                                     const Functional& f) {
  const Algebra& A = cm.algebra();
  ScalarInvarianceReport rep;
  if (!A.is_dense())
    throw PreconditionError("scalar_invariance_to_integral is dense-only");
  if (!cm.is_regular(Which::T1) || !cm.is_regular(Which::T4)) {
    rep.hypothesis_failure = "T1 and T4 must be regular";
    return rep;
  }
  const std::size_t n = A.dim();
  if (cm.range_span(false).dim() != n * n) {
    rep.hypothesis_failure = "Delta(A)(A(x)A) is a proper subspace of A(x)A";
    return rep;
  }
  rep.hypothesis_ok = true;

  // lambda(a): (id (x) f)(Delta(a)(c (x) 1)) must equal lambda * c for
  // every basis c simultaneously
  std::map<Label, Scalar> lambda;
  for (Label a = 0; a < static_cast<Label>(n); ++a) {
    std::optional<Scalar> seen;
    for (Label c = 0; c < static_cast<Label>(n); ++c) {
      Elem got = f.slice_second(cm.image(Which::T4, c, a));
      // got must be a scalar multiple of e_c
      Scalar coeff = got.at(c);
      Elem expect = A.basis_elem(c);
      expect.scale(coeff);
      if (!(got == expect)) {
        rep.verdict = ScalarInvariance::NotInvariant;
        rep.witness = A.label_name(a);
        return rep;
      }
      if (!seen)
        seen = coeff;
      else if (!(*seen == coeff)) {
        rep.verdict = ScalarInvariance::NotInvariant;
        rep.witness = A.label_name(a);
        return rep;
      }
    }
    lambda[a] = *seen;
  }

  auto lambda_eval = [&](const Elem& e) {
    Scalar acc;
    for (const auto& [l, s] : e.c)
      acc += s * lambda[l];
    return acc;
  };

  LegSubspace right_leg = cm.compute_leg(LegSide::Right);
  for (const auto& v : right_leg.basis)
    if (!(lambda_eval(v) == f.eval(v)))
      throw InternalInconsistency(
          "scalar invariance: lambda differs from the functional on the right leg");

  bool everywhere = true;
  std::string off_witness;
  for (Label a = 0; a < static_cast<Label>(n); ++a)
    if (!(lambda[a] == f.at(a))) {
      everywhere = false;
      off_witness = A.label_name(a);
      break;
    }
  rep.lambda_equals_f_everywhere = everywhere;
  if (everywhere) {
    rep.verdict = ScalarInvariance::MatchesOnRightLeg;
  } else {
    if (right_leg.dim() == n)
      throw InternalInconsistency(
          "scalar invariance: full right leg but lambda differs at " + off_witness);
    rep.verdict = ScalarInvariance::DiffersOutsideRightLeg;
    rep.witness = off_witness;
  }
  return rep;
}

} // namespace hopfforge
