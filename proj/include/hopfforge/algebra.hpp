#ifndef HOPFFORGE_ALGEBRA_HPP
#define HOPFFORGE_ALGEBRA_HPP

#include "hopfforge/errors.hpp"
#include "hopfforge/sparse.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hopfforge {

class Algebra;

/// Basis label. Dense algebras use 0..n-1; supported (infinite-basis)
/// algebras may use any integers.
using Label = std::int64_t;
using PairKey = std::pair<Label, Label>;
using TripleKey = std::array<Label, 3>;

/// Finitely supported coefficient vector over basis keys of type K.
template <class K>
struct TVec {
  std::map<K, Scalar> c;
  const Algebra* ambient = nullptr;

  bool is_zero() const { return c.empty(); }

  Scalar at(const K& k) const {
    auto it = c.find(k);
    return it == c.end() ? Scalar() : it->second;
  }

  void add(const K& k, const Scalar& s) {
    if (s.is_zero())
      return;
    auto [it, fresh] = c.emplace(k, s);
    if (!fresh) {
      it->second += s;
      if (it->second.is_zero())
        c.erase(it);
    }
  }

  void set(const K& k, const Scalar& s) {
    if (s.is_zero())
      c.erase(k);
    else
      c[k] = s;
  }

  TVec& add_scaled(const TVec& other, const Scalar& s) {
    if (!s.is_zero())
      for (const auto& [k, v] : other.c)
        add(k, s * v);
    return *this;
  }

  TVec& operator+=(const TVec& other) { return add_scaled(other, Scalar::one()); }
  TVec& operator-=(const TVec& other) { return add_scaled(other, -Scalar::one()); }

  TVec& scale(const Scalar& s) {
    if (s.is_zero())
      c.clear();
    else
      for (auto& [k, v] : c)
        v *= s;
    return *this;
  }

  friend TVec operator+(TVec a, const TVec& b) { return a += b; }
  friend TVec operator-(TVec a, const TVec& b) { return a -= b; }
  friend TVec operator*(const Scalar& s, TVec v) { return v.scale(s); }

  friend bool operator==(const TVec& a, const TVec& b) { return a.c == b.c; }
};

using Elem = TVec<Label>;    // element of A
using Elem2 = TVec<PairKey>; // element of A (x) A
using Elem3 = TVec<TripleKey>;

/// Simple tensor of two algebra elements.
Elem2 outer(const Elem& x, const Elem& y);

/// Multiplier given by its two action operators. `left` computes m*x,
/// `right` computes x*m. Elements of M(A) use E = Elem; elements of
/// M(A (x) A) use E = Elem2.
template <class E>
struct Multiplier {
  std::function<E(const E&)> left;
  std::function<E(const E&)> right;
};

using Mult1 = Multiplier<Elem>;
using Mult2 = Multiplier<Elem2>;

struct WitnessReport {
  bool pass = true;
  std::string witness; // basis-label rendering of a failing item, if any
};

/// A non-degenerate algebra: finite-dimensional with dense structure
/// constants, or an enumerable basis with a finitely-supported product rule
/// plus a window generator. Immutable once built.
class Algebra {
public:
  enum class Kind { Dense, Supported };

  static std::shared_ptr<Algebra>
  dense(std::vector<std::string> labels,
        std::vector<std::vector<Elem>> products, // products[i][j] = e_i * e_j
        std::optional<Elem> unit, std::string name = "");

  static std::shared_ptr<Algebra>
  supported(std::string rule_name, std::function<Elem(Label, Label)> rule,
            std::function<std::vector<Label>(int)> window,
            std::function<Elem(const std::vector<Label>&)> local_unit,
            std::string name = "");

  Kind kind() const { return kind_; }
  bool is_dense() const { return kind_ == Kind::Dense; }
  bool is_unital() const { return unit_.has_value(); }
  const std::optional<Elem>& unit() const { return unit_; }
  std::size_t dim() const; // dense only
  const std::string& name() const { return name_; }
  const std::string& rule_name() const { return rule_name_; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::string label_name(Label l) const;

  /// Window of basis labels: the whole basis for dense algebras, the
  /// generated finite subset for supported ones.
  std::vector<Label> window(int k) const;

  /// Sum of the window basis acting as a unit on window-supported elements
  /// (supported algebras only; identity element for unital dense ones).
  Elem local_unit(int k) const;

  const Elem& basis_product(Label i, Label j) const;
  Elem basis_elem(Label l) const;

  Elem mul(const Elem& x, const Elem& y) const;
  Elem2 mul2(const Elem2& x, const Elem2& y) const;
  Elem3 mul3(const Elem3& x, const Elem3& y) const;

  // dense coordinate views; pair index (a,b) -> a*n + b
  std::size_t pair_index(Label a, Label b) const;
  PairKey pair_of_index(std::size_t idx) const;
  SparseVec to_vec(const Elem& x) const;
  Elem from_vec(const SparseVec& v) const;
  SparseVec to_vec2(const Elem2& x) const;
  Elem2 from_vec2(const SparseVec& v) const;

  // ---- structural checks ----

  /// Exhaustive on dense bases, window-quantified otherwise.
  WitnessReport check_associative(int window_size) const;
  WitnessReport check_unit_law() const;

  struct NondegeneracyReport {
    bool pass = true;
    bool window_only = false;
    std::optional<Elem> witness; // nonzero a with aA = 0 or Aa = 0
    std::string side;            // "left" or "right" when failing
  };
  NondegeneracyReport check_nondegenerate() const;

  /// True iff the products of basis elements span the algebra (dense).
  bool check_idempotent_algebra() const;

  // ---- multipliers ----

  Mult1 multiplier_from_element(const Elem& a) const;
  Mult2 multiplier_from_element2(const Elem2& a) const;
  Mult2 identity_multiplier2() const;

  /// Defining relation a*(m*b) = (a*m)*b on all window basis pairs.
  bool multiplier_check(const Mult1& m, int window_size) const;
  bool multiplier_check2(const Mult2& m, int window_size) const;

  /// Dense: the element e with e*x = m.left(x) for all x, if one exists.
  std::optional<Elem> multiplier_as_element(const Mult1& m) const;
  std::optional<Elem2> multiplier_as_element2(const Mult2& m) const;

  /// Supported: window probe. Tries to realize the multiplier as an element
  /// of A (x) A by cutting with local units at two window sizes; reports
  /// absent when the support keeps growing.
  std::optional<Elem2> multiplier_as_element2_window(const Mult2& m, int k) const;

private:
  Algebra() = default;

  Kind kind_ = Kind::Dense;
  std::string name_;
  std::vector<std::string> labels_;
  std::vector<std::vector<Elem>> products_;
  std::optional<Elem> unit_;

  std::string rule_name_;
  std::function<Elem(Label, Label)> rule_;
  std::function<std::vector<Label>(int)> window_;
  std::function<Elem(const std::vector<Label>&)> local_unit_;

  // lazily built solver for realizing tensor-square multipliers as elements
  // on non-unital dense algebras
  mutable std::once_flag embed2_once_;
  mutable std::unique_ptr<LinearSolver> embed2_solver_;
  const LinearSolver& embed2_solver() const;
};

/// Tensor cube helpers: insert a two-leg element into the stated legs of a
/// three-fold tensor, scaled by coeff.
void place_12(Elem3& out, const Elem2& xy, Label z, const Scalar& coeff);
void place_23(Elem3& out, Label x, const Elem2& yz, const Scalar& coeff);
void place_13(Elem3& out, const Elem2& xz, Label y, const Scalar& coeff);

/// Materializes A (x) A of a dense algebra as a dense algebra with pair
/// labels, componentwise product.
std::shared_ptr<Algebra> tensor_square(const Algebra& a);

/// Same algebra with the transposed product.
std::shared_ptr<Algebra> opposite(const Algebra& a);

// One-leg multiplier products on two-leg elements.
Elem2 leg1_left(const Algebra& a, const Elem& x, const Elem2& z);  // (x(x)1)z
Elem2 leg2_left(const Algebra& a, const Elem& x, const Elem2& z);  // (1(x)x)z
Elem2 leg1_right(const Algebra& a, const Elem2& z, const Elem& x); // z(x(x)1)
Elem2 leg2_right(const Algebra& a, const Elem2& z, const Elem& x); // z(1(x)x)

Elem2 flip2(const Elem2& z);

/// Incremental span of finitely supported vectors, echelonized by leading
/// label. Deterministic for a given insertion set.
template <class K>
class TSpan {
public:
  bool insert(TVec<K> v) {
    reduce(v);
    if (v.is_zero())
      return false;
    K lead = v.c.begin()->first;
    v.scale(v.c.begin()->second.inverse());
    for (auto& [k, row] : rows_) {
      Scalar c = row.at(lead);
      if (!c.is_zero())
        row.add_scaled(v, -c);
    }
    rows_.emplace(lead, std::move(v));
    return true;
  }

  bool contains(TVec<K> v) const {
    reduce(v);
    return v.is_zero();
  }

  std::size_t dim() const { return rows_.size(); }

  bool same_span(const TSpan& other) const {
    if (dim() != other.dim())
      return false;
    for (const auto& [k, row] : rows_)
      if (!other.contains(row))
        return false;
    return true;
  }

  bool contains_all(const TSpan& other) const {
    for (const auto& [k, row] : other.rows_)
      if (!contains(row))
        return false;
    return true;
  }

  std::vector<TVec<K>> basis() const {
    std::vector<TVec<K>> out;
    out.reserve(rows_.size());
    for (const auto& [k, row] : rows_)
      out.push_back(row);
    return out;
  }

private:
  void reduce(TVec<K>& v) const {
    while (!v.is_zero()) {
      auto it = rows_.find(v.c.begin()->first);
      if (it == rows_.end())
        return;
      v.add_scaled(it->second, -v.c.begin()->second);
    }
  }

  std::map<K, TVec<K>> rows_;
};

using ElemSpan = TSpan<Label>;
using Elem2Span = TSpan<PairKey>;

} // namespace hopfforge

#endif
