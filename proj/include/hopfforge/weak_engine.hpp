#ifndef HOPFFORGE_WEAK_ENGINE_HPP
#define HOPFFORGE_WEAK_ENGINE_HPP

#include "hopfforge/ls_engine.hpp"

namespace hopfforge {

/// Derives the idempotent governing the weak case from the coproduct alone
/// (dense only): the unique element acting as the identity on both range
/// spans of Delta whose one-sided multiples stay inside them. Returns
/// nullopt when no such idempotent exists.
std::optional<Elem2> derive_E(const CanonicalMaps& cm);

/// The separability structure attached to an idempotent E: the legs B and
/// C, the antiisomorphisms between them, and the four twisted copies of E
/// controlling kernels and ranges. Built lazily; `verify()` runs the whole
/// invariant sweep once and caches the outcome.
class WeakStructure {
public:
  /// Dense element E.
  WeakStructure(std::shared_ptr<const CanonicalMaps> cm, Elem2 e_elem);
  /// E = 1 (x) 1 (the degenerate, non-weak case; works on supported
  /// algebras too).
  static WeakStructure identity(std::shared_ptr<const CanonicalMaps> cm);

  const CanonicalMaps& maps() const { return *cm_; }
  const Algebra& algebra() const { return cm_->algebra(); }
  bool is_identity() const { return identity_; }
  const std::optional<Elem2>& e_elem() const { return e_elem_; }
  const Mult2& e_mult() const { return e_mult_; }

  /// Full invariant sweep; every item carries a stable id and a witness.
  const std::vector<EvidenceItem>& verify() const;
  bool ok() const;

  // available after verify() on dense non-identity structures
  const std::vector<Elem>& b_basis() const { return b_basis_; }
  const std::vector<Elem>& c_basis() const { return c_basis_; }
  /// Images of the leg bases under the antiisomorphisms.
  Elem sb_of(const Elem& b) const;
  Elem sc_of(const Elem& c) const;
  const Elem2& f_elem(int i) const; // i in 1..4

  bool b_contains(const Elem& x) const;
  bool c_contains(const Elem& x) const;

private:
  WeakStructure() = default;

  std::shared_ptr<const CanonicalMaps> cm_;
  bool identity_ = false;
  std::optional<Elem2> e_elem_;
  Mult2 e_mult_;

  mutable bool verified_ = false;
  mutable std::vector<EvidenceItem> items_;
  mutable std::vector<Elem> b_basis_, c_basis_;
  mutable SparseMat sb_, sc_, sb_inv_, sc_inv_; // leg-coordinate matrices
  mutable std::array<Elem2, 4> f_;

  void run_verify() const;
  std::optional<SparseVec> leg_coords(const std::vector<Elem>& basis, const Elem& x) const;
};

enum class WeakIntegralStatus { Fail, Basic, Strengthened };

struct WeakIntegralReport {
  WeakIntegralStatus status = WeakIntegralStatus::Fail;
  bool window_only = false;
  std::string witness;
};

/// Weak integrals: `Basic` means the sliced coproduct lands in the proper
/// leg algebra; `Strengthened` means the twisted-idempotent formula holds
/// for every window element (the form the classification consumes).
WeakIntegralReport check_weak_integral(const WeakStructure& ws, const Functional& f,
                                       bool left_side);

struct KernelFormulaReport {
  bool hypothesis_met = false;
  std::string hypothesis_note;
  bool equal = false;
  std::size_t kernel_dim = 0;
  std::size_t span_dim = 0;
};

/// Dense: kernel of the canonical map versus the twisted-idempotent span.
/// Met hypotheses with unequal spaces are a fatal inconsistency.
KernelFormulaReport check_kernel_formula(const WeakStructure& ws, Which w,
                                         const std::vector<const Functional*>& set);

/// Same lift formulas as the non-weak engine, but landing on the
/// E-multiplied simple tensors.
LiftElement build_weak_lift(const WeakStructure& ws, Which w, Label a, Label b,
                            Label c, const Functional& integral);

struct RangeFormulaReport {
  bool equal = false;           // T(A(x)A) = E(A(x)A) (or the mirrored side)
  std::size_t t_rank = 0;
  std::size_t e_rank = 0;
  bool inclusions_ok = false;   // the two-step inclusion chain diagnostics
  std::string note;
};

/// Dense: column span of the canonical map against the span of
/// multiplication by E, with the inclusion-chain diagnostics.
RangeFormulaReport check_range_formula(const WeakStructure& ws, Which w);

/// Weak classification from faithful sets of integrals on both sides. With
/// the identity idempotent the verdict degenerates to the non-weak one.
Classification classify_weak(const WeakStructure& ws,
                             const std::vector<const Functional*>& left_set,
                             const std::vector<const Functional*>& right_set);

} // namespace hopfforge

#endif
