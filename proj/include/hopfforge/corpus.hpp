#ifndef HOPFFORGE_CORPUS_HPP
#define HOPFFORGE_CORPUS_HPP

#include "hopfforge/coproduct.hpp"
#include "hopfforge/functional.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hopfforge {

/// A ready-to-verify instance plus the outcomes its generator can predict
/// combinatorially (group tables, groupoid composability counts). The
/// oracle fields never come from the engines.
struct InstanceBundle {
  std::string name;
  std::shared_ptr<Algebra> algebra;
  std::shared_ptr<Coproduct> coproduct;
  std::map<std::string, Functional> functionals;
  std::vector<std::string> left_integrals;  // names into functionals
  std::vector<std::string> right_integrals;
  std::optional<Elem2> e_elem; // supplied separability idempotent
  int window = 0;              // supported instances: window request

  std::string expected;         // expected classification verdict name
  std::string expected_failure; // negatives: the check that must fail
  std::map<Label, Label> antipode_oracle; // basis label -> image label
  std::map<Label, Scalar> counit_oracle;
  std::optional<std::size_t> kernel_dim_oracle; // weak: dim Ker(T_i)
};

/// Finite group data; validated combinatorially before any algebra exists.
struct GroupTable {
  std::vector<std::string> names;
  std::vector<std::vector<int>> table; // table[i][j] = i * j
  int unit = 0;
  void validate() const; // throws InputError on a non-group
  int inverse(int g) const;
};

GroupTable z_table(int n);
GroupTable s3_group();

/// Finite groupoid data with the convention that g.h is defined iff
/// source(g) = target(h).
struct GroupoidTable {
  std::vector<std::string> names;
  std::vector<int> source, target;          // per arrow
  std::vector<std::vector<int>> compose;    // -1 where undefined
  void validate() const;
  std::size_t composable_pairs() const;
  std::vector<int> units() const; // unit arrow per object, sorted
};

GroupoidTable pair_groupoid(int npoints);
GroupoidTable group_bundle_z2_point();
GroupoidTable one_object_z2();

InstanceBundle gen_group_algebra(const GroupTable& g, const std::string& name);
InstanceBundle gen_function_algebra(const GroupTable& g, const std::string& name);
InstanceBundle gen_function_algebra_infinite(int window, const std::string& name);
InstanceBundle gen_groupoid_algebra(const GroupoidTable& g, const std::string& name);
InstanceBundle gen_groupoid_function_algebra(const GroupoidTable& g,
                                             const std::string& name);
InstanceBundle gen_negative(const std::string& kind);

std::vector<std::string> corpus_names();
InstanceBundle corpus_instance(const std::string& name);

} // namespace hopfforge

#endif
