#include "hopfforge/algebra.hpp"

#include "test_helpers.hpp"

#include <doctest.h>

using namespace hopfforge;
using namespace testutil;

TEST_CASE("group algebra products follow the table") {
  auto a = group_algebra({"e", "g"}, z2_table());
  Elem g = a->basis_elem(1);
  CHECK(a->mul(g, g) == a->basis_elem(0)); // g*g = e

  Elem zero;
  CHECK(a->mul(g, zero).is_zero());

  auto f = function_algebra({"e", "g"});
  CHECK(f->mul(f->basis_elem(0), f->basis_elem(1)).is_zero());
  CHECK(f->mul(f->basis_elem(1), f->basis_elem(1)) == f->basis_elem(1));
}

TEST_CASE("ambient mismatch is an input error") {
  auto a = group_algebra({"e", "g"}, z2_table());
  auto b = group_algebra({"e", "g"}, z2_table());
  CHECK_THROWS_AS(a->mul(a->basis_elem(0), b->basis_elem(0)), InputError);
}

TEST_CASE("associativity holds exhaustively on the test instances") {
  CHECK(group_algebra({"e", "a", "b", "ab", "r", "rr"}, s3_table())
            ->check_associative(0)
            .pass);
  CHECK(function_algebra({"p", "q", "r"})->check_associative(0).pass);
  CHECK(fn_z_algebra()->check_associative(3).pass);
}

TEST_CASE("non-degeneracy: unital instances pass, zero product fails") {
  auto s3 = group_algebra({"e", "a", "b", "ab", "r", "rr"}, s3_table());
  CHECK(s3->check_nondegenerate().pass);
  CHECK(function_algebra({"0", "1", "2", "3"})->check_nondegenerate().pass);

  // 1-dim algebra with zero product
  std::vector<std::vector<Elem>> zp(1, std::vector<Elem>(1));
  auto degenerate = Algebra::dense({"x"}, std::move(zp), std::nullopt, "zero");
  auto rep = degenerate->check_nondegenerate();
  CHECK(!rep.pass);
  REQUIRE(rep.witness.has_value());
  CHECK(!rep.witness->is_zero());
}

TEST_CASE("idempotency of the algebra (A = A^2)") {
  CHECK(group_algebra({"e", "g", "gg"}, z3_table())->check_idempotent_algebra());
  std::vector<std::vector<Elem>> zp(1, std::vector<Elem>(1));
  CHECK(!Algebra::dense({"x"}, std::move(zp), std::nullopt, "zero")
             ->check_idempotent_algebra());
}

TEST_CASE("unit law") {
  auto a = group_algebra({"e", "g"}, z2_table());
  CHECK(a->check_unit_law().pass);
}

TEST_CASE("multiplier from element and back") {
  auto a = group_algebra({"e", "g"}, z2_table());
  Elem g = a->basis_elem(1);

  auto m = a->multiplier_from_element(g);
  CHECK(m.left(a->basis_elem(0)) == g); // g * e = g
  CHECK(a->multiplier_check(m, 0));

  auto unit_mult = a->multiplier_from_element(*a->unit());
  auto back = a->multiplier_as_element(unit_mult);
  REQUIRE(back.has_value());
  CHECK(*back == *a->unit());

  auto round = a->multiplier_as_element(m);
  REQUIRE(round.has_value());
  CHECK(*round == g);

  Elem zero;
  auto zm = a->multiplier_from_element(zero);
  CHECK(zm.left(g).is_zero());
  auto zback = a->multiplier_as_element(zm);
  REQUIRE(zback.has_value());
  CHECK(zback->is_zero());
}

TEST_CASE("incompatible action pair fails the multiplier relation") {
  auto a = group_algebra({"e", "g"}, z2_table());
  Mult1 bad;
  bad.left = [](const Elem& x) {
    Elem y = x;
    return y.scale(Scalar(2));
  };
  bad.right = [](const Elem& x) { return x; };
  CHECK(!a->multiplier_check(bad, 0));
}

TEST_CASE("tensor square of a non-degenerate algebra is non-degenerate") {
  auto a = group_algebra({"e", "g"}, z2_table());
  auto t = tensor_square(*a);
  CHECK(t->dim() == 4);
  CHECK(t->check_associative(0).pass);
  CHECK(t->check_nondegenerate().pass);

  // componentwise product: (a(x)b)(c(x)d) = ac(x)bd on basis elements
  auto fn = function_algebra({"p", "q"});
  auto t2 = tensor_square(*fn);
  // (p(x)q)*(p(x)q) = p(x)q ; (p(x)q)*(q(x)q) = 0
  CHECK(t2->mul(t2->basis_elem(1), t2->basis_elem(1)) == t2->basis_elem(1));
  CHECK(t2->mul(t2->basis_elem(1), t2->basis_elem(3)).is_zero());
}

TEST_CASE("opposite algebra transposes the product") {
  auto s3 = group_algebra({"e", "a", "b", "ab", "r", "rr"}, s3_table());
  auto op = opposite(*s3);
  CHECK(op->check_associative(0).pass);
  for (Label i = 0; i < 6; ++i)
    for (Label j = 0; j < 6; ++j) {
      Elem lhs = op->basis_product(i, j);
      Elem rhs = s3->basis_product(j, i);
      rhs.ambient = nullptr;
      lhs.ambient = nullptr;
      CHECK(lhs == rhs);
    }
}

TEST_CASE("multiplier_from_element is injective on non-degenerate instances") {
  auto a = group_algebra({"e", "g", "gg"}, z3_table());
  // If two elements give the same multiplier, their difference kills A
  // from the left; non-degeneracy forbids that for nonzero difference.
  Elem x = a->basis_elem(1);
  Elem y = a->basis_elem(2);
  auto mx = a->multiplier_from_element(x);
  auto my = a->multiplier_from_element(y);
  bool all_equal = true;
  for (Label l = 0; l < 3; ++l)
    if (!(mx.left(a->basis_elem(l)) == my.left(a->basis_elem(l))))
      all_equal = false;
  CHECK(!all_equal);
}

TEST_CASE("supported algebra windows and local units") {
  auto a = fn_z_algebra();
  auto w = a->window(2);
  CHECK(w.size() == 5);
  Elem u = a->local_unit(2);
  Elem x = a->basis_elem(-1);
  CHECK(a->mul(u, x) == x);
  CHECK(a->mul(x, u) == x);
  CHECK(a->multiplier_check(a->multiplier_from_element(x), 2));
}
