#ifndef HOPFFORGE_FUNCTIONAL_HPP
#define HOPFFORGE_FUNCTIONAL_HPP

#include "hopfforge/algebra.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>

namespace hopfforge {

/// Linear functional on A. Dense functionals carry explicit values; on
/// supported algebras a functional may instead be a total rule (the Haar
/// sum on an infinite basis has no finite value table).
struct Functional {
  std::string name;
  std::map<Label, Scalar> values;
  std::function<Scalar(Label)> rule;
  std::string rule_name; // set when rule is

  Scalar at(Label l) const {
    if (rule)
      return rule(l);
    auto it = values.find(l);
    return it == values.end() ? Scalar() : it->second;
  }

  Scalar eval(const Elem& e) const {
    Scalar acc;
    for (const auto& [l, s] : e.c)
      acc += s * at(l);
    return acc;
  }

  /// (id (x) f) applied to a two-leg element.
  Elem slice_second(const Elem2& x) const {
    Elem out;
    for (const auto& [p, s] : x.c)
      out.add(p.first, s * at(p.second));
    return out;
  }

  /// (f (x) id) applied to a two-leg element.
  Elem slice_first(const Elem2& x) const {
    Elem out;
    for (const auto& [p, s] : x.c)
      out.add(p.second, s * at(p.first));
    return out;
  }

  bool is_zero_on(const std::vector<Label>& window) const {
    for (Label l : window)
      if (!at(l).is_zero())
        return false;
    return true;
  }

  Functional scaled(const Scalar& r, const std::string& new_name) const {
    Functional out;
    out.name = new_name;
    if (rule) {
      out.rule = [inner = rule, r](Label l) { return r * inner(l); };
      out.rule_name = rule_name;
    } else {
      for (const auto& [l, s] : values) {
        Scalar v = r * s;
        if (!v.is_zero())
          out.values[l] = v;
      }
    }
    return out;
  }
};

struct FaithfulnessReport {
  bool left_faithful = false;
  bool right_faithful = false;
  bool window_only = false;
  std::optional<Elem> left_witness;  // nonzero a with f(a*A) = 0
  std::optional<Elem> right_witness; // nonzero a with f(A*a) = 0
  bool faithful() const { return left_faithful && right_faithful; }
};

/// Left faithful iff a -> f(a*.) is injective; window-quantified on
/// supported algebras.
FaithfulnessReport check_faithful(const Algebra& alg, const Functional& f,
                                  int window_size);

/// Joint version for a set of functionals: trivial joint kernel of the
/// induced pairings. An empty set vacuously fails.
struct FaithfulSetReport {
  bool pass = false;
  bool window_only = false;
  std::string reason;
  std::optional<Elem> witness;
};
FaithfulSetReport check_faithful_set(const Algebra& alg,
                                     const std::vector<const Functional*>& fs,
                                     bool left_side, int window_size);

/// The coordinate (dual basis) functionals of a dense algebra; jointly
/// faithful on every non-degenerate instance.
std::vector<Functional> coordinate_functionals(const Algebra& alg);

} // namespace hopfforge

#endif
