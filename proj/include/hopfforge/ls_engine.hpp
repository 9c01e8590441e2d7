#ifndef HOPFFORGE_LS_ENGINE_HPP
#define HOPFFORGE_LS_ENGINE_HPP

#include "hopfforge/integrals.hpp"

namespace hopfforge {

enum class Verdict {
  HopfInvertibleS,
  Hopf,
  RegularMultiplierHopf,
  MultiplierHopf,
  LeftMultiplierHopf,
  RightMultiplierHopf,
  RegularWeakMultiplierHopf,
  WeakMultiplierHopf,
  LeftWeakMultiplierHopf,
  RightWeakMultiplierHopf,
  Fail
};
const char* verdict_name(Verdict v);

enum class CheckStatus { Pass, Fail, WindowPass, Skipped, Info };
const char* status_name(CheckStatus s);

struct EvidenceItem {
  std::string check; // stable identifier, e.g. "injective.T1"
  std::string law;   // the verified statement, in words
  CheckStatus status = CheckStatus::Skipped;
  std::string detail; // witness or reason
};

struct Classification {
  Verdict verdict = Verdict::Fail;
  bool window_verified = false;
  std::vector<EvidenceItem> evidence;
  std::string caveat; // one-sided weak verdicts carry an explicit caveat

  void add(std::string check, std::string law, CheckStatus st, std::string detail = "");
};

struct InjectivityReport {
  bool injective = false;
  bool window_only = false;
  std::size_t kernel_dim = 0;
  std::optional<Elem2> kernel_witness;
  bool hypothesis_met = false;
  std::string hypothesis_note;
};

/// Injectivity of one canonical map, with the matching integral hypothesis:
/// T1 from a right faithful right integral, T2 from a left faithful left
/// integral, T3 from a left faithful right integral, T4 from a right
/// faithful left integral. The kernel is computed regardless; met
/// hypotheses with a nonzero kernel are a fatal inconsistency.
InjectivityReport check_injectivity(const CanonicalMaps& cm, Which w,
                                    const Functional& integral);

struct LiftElement {
  Which which = Which::T1;
  Elem2 y;        // preimage in A (x) A
  Elem2 expected; // predicted simple tensor
  bool verified = false;
};

/// Integral-built preimages of simple tensors, evaluated without any
/// symbolic shorthand through the regular-pair factorization.
/// T1: (p,q,cover=b) with a left integral; T2: (p,q,cover=c) with a right
/// integral; T3: (p,q,cover=b) with a left integral; T4: (p,q,cover=c)
/// with a right integral.
LiftElement build_lift(const CanonicalMaps& cm, Which w, Label p, Label q,
                       Label cover, const Functional& integral);

/// Trilinear extension to arbitrary elements.
LiftElement build_lift(const CanonicalMaps& cm, Which w, const Elem& p,
                       const Elem& q, const Elem& cover, const Functional& integral);

struct BijectivityReport {
  bool bijective = false;
  std::size_t rank = 0;
  std::size_t full_rank = 0;
  bool hypothesis_met = false;
  std::string hypothesis_note;
};

/// Dense only: rank test of the canonical-map matrix, with the two-integral
/// hypothesis of the matching statement. Met hypotheses with a defective
/// rank are a fatal inconsistency.
BijectivityReport check_bijectivity(const CanonicalMaps& cm, Which w,
                                    const Functional& phi, const Functional& psi);

/// Full classification from a candidate left integral phi and right
/// integral psi. Every checked hypothesis lands in the evidence list; the
/// verdict is the strongest statement whose hypotheses all verified.
Classification classify(const CanonicalMaps& cm, const Functional& phi,
                        const Functional& psi);

struct CounitCertificate {
  bool hypotheses_met = false;
  bool consistent = false; // the defining linear system was solvable
  bool verified = false;   // the counit identity re-checked on windows
  Functional counit;
  std::string note;
};

/// Counit on the left leg from a left integral: eps of the slice
/// (id (x) phi)(Delta(p)(1 (x) q)) equals phi(pq). Needs T1, T4 regular, a
/// left faithful left integral and a right faithful right integral.
CounitCertificate construct_counit_left(const CanonicalMaps& cm,
                                        const Functional& phi,
                                        const Functional& psi);

/// Mirror construction on the right leg from a right integral psi; the
/// injectivity role is played by a right faithful left integral phi.
CounitCertificate construct_counit_right(const CanonicalMaps& cm,
                                         const Functional& psi,
                                         const Functional& phi);

struct AntipodeMap {
  bool hypotheses_met = false;
  bool consistent = false;
  bool window_only = false;
  std::vector<Elem> domain_basis; // basis of the left leg
  // dense: S(a)*e_j = action.at(j) * vec(a)
  std::map<Label, SparseMat> action;
  std::optional<SparseMat> element_form; // vec(S(a)) = element_form * vec(a)
  bool invertible = false;               // element_form has full rank
  std::map<Label, Elem> element_values;  // supported route: S on window basis

  Elem apply_to(const Algebra& alg, const Elem& a, const Elem& c) const;
  std::optional<Elem> element_of(const Algebra& alg, const Elem& a) const;
};

/// Antipode on the left leg as a left multiplier, from a left faithful left
/// integral (plus a right faithful right integral for injectivity); the
/// element form is computed when T3 is also regular.
AntipodeMap construct_antipode(const CanonicalMaps& cm, const Functional& phi,
                               const Functional& psi);

struct AntipodeAxiomReport {
  bool product_law = false;  // sum a(1) S(a(2)) b = eps(a) b
  bool inverse_law = false;  // (a,b) -> sum a(1) (x) S(a(2))b inverts T1
  bool window_only = false;
  std::string witness;
};

/// Both antipode laws on window pairs. Dense instances go through the
/// representable coproduct route; supported ones through the spanning-pair
/// factorization, which needs the left integral that built S.
AntipodeAxiomReport check_antipode_axioms(const CanonicalMaps& cm,
                                          const AntipodeMap& s,
                                          const Functional& eps,
                                          const Functional& phi);

/// Extra informational check, outside the verified core: whether S reverses
/// products. Never feeds a classification.
bool antipode_antihomomorphism(const CanonicalMaps& cm, const AntipodeMap& s);

} // namespace hopfforge

#endif
