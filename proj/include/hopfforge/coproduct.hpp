#ifndef HOPFFORGE_COPRODUCT_HPP
#define HOPFFORGE_COPRODUCT_HPP

#include "hopfforge/algebra.hpp"
#include "hopfforge/functional.hpp"

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <string>

namespace hopfforge {

enum class Which { T1 = 0, T2 = 1, T3 = 2, T4 = 3 };
const char* which_name(Which w);

enum class TriState { No, Yes, WindowYes };

enum class LegSide { Left, Right };

/// The coproduct itself: basis label -> multiplier of A (x) A. Built-in
/// kinds also carry direct rules for the four canonical maps; a rule
/// returning nullopt at a pair certifies that the image is not an element
/// of A (x) A there.
class Coproduct {
public:
  using TRule = std::function<std::optional<Elem2>(Label, Label)>;

  std::shared_ptr<const Algebra> algebra;
  std::string kind; // "grouplike" | "dualfunction" | "explicit" | generator id

  Mult2 of_basis(Label l) const;
  Mult2 of(const Elem& a) const;

  /// Element form of the image when it is known up front, else nullptr.
  const Elem2* elem_image(Label l) const {
    auto it = elem_images_.find(l);
    return it == elem_images_.end() ? nullptr : &it->second;
  }

  const TRule& t_rule(Which w) const { return t_rules_[static_cast<int>(w)]; }

  /// Group-like coproduct on a dense basis (every basis element grouplike).
  static std::shared_ptr<Coproduct> grouplike(std::shared_ptr<const Algebra> alg);

  /// Coproduct of the dual function algebra of a finite group given by its
  /// multiplication table over basis indices.
  static std::shared_ptr<Coproduct>
  dual_function(std::shared_ptr<const Algebra> alg,
                std::vector<std::vector<int>> table);

  /// The same for a supported function algebra over an abelian group on the
  /// labels (e.g. the integers).
  static std::shared_ptr<Coproduct>
  dual_function_supported(std::shared_ptr<const Algebra> alg,
                          std::function<Label(Label, Label)> gmul,
                          std::function<Label(Label)> ginv);

  /// Explicit dense images, one per basis label.
  static std::shared_ptr<Coproduct>
  explicit_images(std::shared_ptr<const Algebra> alg, std::vector<Elem2> images);

  /// Explicit dense action tables (leftAction[i], rightAction[i] on basis
  /// pairs) for images that need not lie in A (x) A.
  static std::shared_ptr<Coproduct>
  explicit_actions(std::shared_ptr<const Algebra> alg,
                   std::function<Mult2(Label)> image);

  /// Flipped coproduct on the same algebra.
  static std::shared_ptr<Coproduct> flipped(const Coproduct& d);

  /// The same images viewed over the opposite algebra.
  static std::shared_ptr<Coproduct> on_opposite(const Coproduct& d,
                                                std::shared_ptr<const Algebra> op);

  /// Sets a direct canonical-map rule (used by corpus negatives).
  void set_t_rule(Which w, TRule rule) { t_rules_[static_cast<int>(w)] = rule; }

private:
  std::function<Mult2(Label)> image_;
  std::array<TRule, 4> t_rules_;
  // dense element images when known up front (grouplike, dual function)
  std::map<Label, Elem2> elem_images_;
};

struct LegSubspace {
  LegSide side = LegSide::Left;
  std::vector<Elem> basis; // reduced, deterministic order
  bool window_only = false;
  std::size_t dim() const { return basis.size(); }
};

struct CheckResult {
  bool pass = false;
  bool window_only = false;
  std::string witness;
};

/// Canonical maps T1..T4 of a coproduct, with regularity state, cached
/// element images and (dense) matrices. Regularity is decided eagerly at
/// construction; everything else is computed on demand.
class CanonicalMaps {
public:
  CanonicalMaps(std::shared_ptr<const Algebra> alg,
                std::shared_ptr<const Coproduct> delta, int window_size);

  struct Regularity {
    TriState state = TriState::No;
    std::string witness; // failing basis pair when state == No
  };

  const Algebra& algebra() const { return *alg_; }
  const Coproduct& coproduct() const { return *delta_; }
  int window_size() const { return window_; }
  const std::vector<Label>& window_labels() const { return window_labels_; }
  bool window_only() const { return !alg_->is_dense(); }

  const Regularity& regular(Which w) const;
  bool is_regular(Which w) const { return regular(w).state != TriState::No; }
  void require_regular(Which w) const;

  /// Element image of a canonical map at a basis pair; requires regularity.
  const Elem2& image(Which w, Label x, Label y) const;

  /// Bilinear extension to elements of A (x) A.
  Elem2 apply(Which w, const Elem2& z) const;

  /// Dense matrix of the map, columns indexed by pair_index.
  const SparseMat& matrix(Which w) const;

  /// Homomorphism property of the coproduct on window pairs.
  CheckResult check_homomorphism() const;

  /// Coassociativity in the variant named by a regular pair of maps.
  /// Variants: (T1,T2), (T3,T4), (T1,T4), (T2,T3).
  CheckResult check_coassoc(Which inner, Which outer) const;

  LegSubspace compute_leg(LegSide side) const;
  LegSubspace leg_via_functional(LegSide side, const Functional& f) const;
  CheckResult check_full() const;

  /// Both counit identities on all window pairs; requires T1 and T2.
  CheckResult check_counit(const Functional& eps) const;

  /// Spans of Delta(A)(A(x)A) and (A(x)A)Delta(A) as row spaces over pair
  /// coordinates (dense only).
  const RowSpace& range_span(bool left_multiplied_by_delta) const;

private:
  std::shared_ptr<const Algebra> alg_;
  std::shared_ptr<const Coproduct> delta_;
  int window_;
  std::vector<Label> window_labels_;

  std::array<Regularity, 4> regularity_;
  mutable std::array<std::optional<SparseMat>, 4> matrices_;
  mutable std::map<std::tuple<int, Label, Label>, Elem2> image_cache_;
  mutable std::optional<RowSpace> range_left_, range_right_;

  std::optional<Elem2> compute_image(Which w, Label x, Label y) const;
  Mult2 image_multiplier(Which w, Label x, Label y) const;
};

} // namespace hopfforge

#endif
