#include "hopfforge/integrals.hpp"

#include "test_helpers.hpp"

#include <doctest.h>

using namespace hopfforge;
using namespace testutil;

namespace {

Functional delta_at(Label l, const std::string& name = "delta") {
  Functional f;
  f.name = name;
  f.values[l] = Scalar::one();
  return f;
}

Functional ones(std::size_t n, const std::string& name = "haar") {
  Functional f;
  f.name = name;
  for (std::size_t i = 0; i < n; ++i)
    f.values[static_cast<Label>(i)] = Scalar::one();
  return f;
}

} // namespace

TEST_CASE("faithfulness of functionals") {
  auto z2 = group_algebra({"e", "g"}, z2_table());

  auto rep = check_faithful(*z2, delta_at(0), 0);
  CHECK(rep.left_faithful);
  CHECK(rep.right_faithful);

  // f(e) = f(g) = 1 pairs to the all-ones matrix; kernel spanned by e - g
  auto bad = check_faithful(*z2, ones(2), 0);
  CHECK(!bad.left_faithful);
  REQUIRE(bad.left_witness.has_value());
  Elem w = *bad.left_witness;
  CHECK(w.at(0) == -w.at(1));

  Functional zero;
  zero.name = "zero";
  auto zr = check_faithful(*z2, zero, 0);
  CHECK(!zr.left_faithful);
  CHECK(!zr.right_faithful);
}

TEST_CASE("one-sided faithfulness is two-sided on finite-dimensional instances") {
  auto s3 = group_algebra({"e", "a", "b", "ab", "r", "rr"}, s3_table());
  for (Label l = 0; l < 6; ++l) {
    auto rep = check_faithful(*s3, delta_at(l), 0);
    CHECK(rep.left_faithful == rep.right_faithful);
  }
}

TEST_CASE("faithful sets") {
  auto z3 = group_algebra({"e", "g", "gg"}, z3_table());
  Functional d = delta_at(0);
  CHECK(check_faithful_set(*z3, {&d}, true, 0).pass);

  auto coords = coordinate_functionals(*z3);
  std::vector<const Functional*> all;
  for (const auto& c : coords)
    all.push_back(&c);
  CHECK(check_faithful_set(*z3, all, true, 0).pass);
  CHECK(check_faithful_set(*z3, all, false, 0).pass);

  Functional zero;
  zero.name = "zero";
  CHECK(!check_faithful_set(*z3, {&zero}, true, 0).pass);

  auto empty = check_faithful_set(*z3, {}, true, 0);
  CHECK(!empty.pass);
  CHECK(!empty.reason.empty());
}

TEST_CASE("left integrals on group algebras") {
  auto s3 = group_algebra({"e", "a", "b", "ab", "r", "rr"}, s3_table());
  CanonicalMaps cm(s3, Coproduct::grouplike(s3), 0);
  CHECK(check_left_integral(cm, delta_at(0)).pass);

  auto z2 = group_algebra({"e", "g"}, z2_table());
  CanonicalMaps cz(z2, Coproduct::grouplike(z2), 0);
  auto bad = check_left_integral(cz, delta_at(1));
  CHECK(!bad.pass);
  CHECK(bad.witness.substr(0, 2) == "(g"); // witness triple starts at a = g
}

TEST_CASE("integrals on function algebras use the Haar sum") {
  auto f3 = function_algebra({"e", "g", "g2"});
  CanonicalMaps cm(f3, Coproduct::dual_function(f3, z3_table()), 0);
  CHECK(check_left_integral(cm, ones(3)).pass);
  CHECK(check_right_integral(cm, ones(3)).pass);

  auto f4 = function_algebra({"e", "g", "g2", "g3"});
  CanonicalMaps c4(f4, Coproduct::dual_function(f4, z4_table()), 0);
  CHECK(check_right_integral(c4, ones(4)).pass);
  // evaluation at a non-identity point shifts instead of averaging
  CHECK(!check_right_integral(c4, delta_at(1)).pass);
}

TEST_CASE("integrals form a cone") {
  auto z3 = group_algebra({"e", "g", "gg"}, z3_table());
  CanonicalMaps cm(z3, Coproduct::grouplike(z3), 0);
  Functional f = delta_at(0);
  CHECK(check_left_integral(cm, f).pass);
  CHECK(check_left_integral(cm, f.scaled(Scalar(7, 3), "scaled")).pass);
  CHECK(!check_left_integral(cm, f.scaled(Scalar(0), "zeroed")).pass);
}

TEST_CASE("faithful left integral recovers the left leg through Prop-style span") {
  auto z3 = group_algebra({"e", "g", "gg"}, z3_table());
  CanonicalMaps cm(z3, Coproduct::grouplike(z3), 0);
  Functional f = delta_at(0);
  REQUIRE(check_left_integral(cm, f).pass);
  REQUIRE(check_faithful(*z3, f, 0).left_faithful);
  auto via = cm.leg_via_functional(LegSide::Left, f);
  auto leg = cm.compute_leg(LegSide::Left);
  REQUIRE(via.dim() == leg.dim());
  ElemSpan a, b;
  for (const auto& v : via.basis)
    a.insert(v);
  for (const auto& v : leg.basis)
    b.insert(v);
  CHECK(a.same_span(b));
}

TEST_CASE("scalar invariance verdicts") {
  auto z3 = group_algebra({"e", "g", "gg"}, z3_table());
  CanonicalMaps cm(z3, Coproduct::grouplike(z3), 0);

  auto rep = scalar_invariance_to_integral(cm, delta_at(0));
  CHECK(rep.hypothesis_ok);
  CHECK(rep.verdict == ScalarInvariance::MatchesOnRightLeg);
  CHECK(rep.lambda_equals_f_everywhere);

  // homogeneity: scaling the functional scales lambda along with it
  auto rep2 = scalar_invariance_to_integral(cm, delta_at(0).scaled(Scalar(2), "2d"));
  CHECK(rep2.verdict == ScalarInvariance::MatchesOnRightLeg);
  CHECK(rep2.lambda_equals_f_everywhere);

  auto z2 = group_algebra({"e", "g"}, z2_table());
  CanonicalMaps cz(z2, Coproduct::grouplike(z2), 0);
  auto bad = scalar_invariance_to_integral(cz, delta_at(1));
  CHECK(bad.hypothesis_ok);
  CHECK(bad.verdict == ScalarInvariance::NotInvariant);
  CHECK(bad.witness == "g");
}

TEST_CASE("supported instance: Haar rule functional is window-invariant") {
  auto a = fn_z_algebra();
  auto d = Coproduct::dual_function_supported(
      a, [](Label x, Label y) { return x + y; }, [](Label x) { return -x; });
  CanonicalMaps cm(a, d, 3);
  Functional haar;
  haar.name = "haar";
  haar.rule = [](Label) { return Scalar::one(); };
  haar.rule_name = "ones";
  auto res = check_left_integral(cm, haar);
  CHECK(res.pass);
  CHECK(res.window_only);
  CHECK(check_right_integral(cm, haar).pass);
}
