#ifndef HOPFFORGE_TEST_HELPERS_HPP
#define HOPFFORGE_TEST_HELPERS_HPP

#include "hopfforge/algebra.hpp"

#include <memory>
#include <string>
#include <vector>

// Hand-rolled instances used as independent oracles. These are built from
// multiplication tables directly, not through the corpus generators, so a
// corpus bug cannot mask an engine bug.
namespace testutil {

using namespace hopfforge;

// group algebra from an explicit table: table[i][j] = index of e_i * e_j
inline std::shared_ptr<Algebra>
group_algebra(const std::vector<std::string>& names,
              const std::vector<std::vector<int>>& table, int unit_index = 0) {
  const std::size_t n = names.size();
  std::vector<std::vector<Elem>> products(n, std::vector<Elem>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Elem e;
      e.set(static_cast<Label>(table[i][j]), Scalar::one());
      products[i][j] = std::move(e);
    }
  Elem unit;
  unit.set(static_cast<Label>(unit_index), Scalar::one());
  return Algebra::dense(names, std::move(products), unit, "test-group");
}

// pointwise (function) algebra on n points, unital
inline std::shared_ptr<Algebra>
function_algebra(const std::vector<std::string>& names) {
  const std::size_t n = names.size();
  std::vector<std::vector<Elem>> products(n, std::vector<Elem>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Elem e;
      if (i == j)
        e.set(static_cast<Label>(i), Scalar::one());
      products[i][j] = std::move(e);
    }
  Elem unit;
  for (std::size_t i = 0; i < n; ++i)
    unit.set(static_cast<Label>(i), Scalar::one());
  return Algebra::dense(names, std::move(products), unit, "test-fn");
}

inline std::vector<std::vector<int>> z2_table() { return {{0, 1}, {1, 0}}; }

inline std::vector<std::vector<int>> z3_table() {
  return {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
}

inline std::vector<std::vector<int>> z4_table() {
  return {{0, 1, 2, 3}, {1, 2, 3, 0}, {2, 3, 0, 1}, {3, 0, 1, 2}};
}

// S3 as permutations of {0,1,2}: id, (01), (02), (12), (012), (021)
inline std::vector<std::vector<int>> s3_table() {
  auto perms = std::vector<std::vector<int>>{
      {0, 1, 2}, {1, 0, 2}, {2, 1, 0}, {0, 2, 1}, {1, 2, 0}, {2, 0, 1}};
  auto compose = [&](int a, int b) { // (a after b)
    std::vector<int> c(3);
    for (int x = 0; x < 3; ++x)
      c[x] = perms[a][perms[b][x]];
    for (std::size_t i = 0; i < perms.size(); ++i)
      if (perms[i] == c)
        return static_cast<int>(i);
    return -1;
  };
  std::vector<std::vector<int>> t(6, std::vector<int>(6));
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b)
      t[a][b] = compose(a, b);
  return t;
}

inline int group_inverse(const std::vector<std::vector<int>>& table, int g,
                         int unit = 0) {
  for (std::size_t h = 0; h < table.size(); ++h)
    if (table[g][h] == unit)
      return static_cast<int>(h);
  return -1;
}

// pair groupoid on npoints objects: arrows (i,j): j -> i, composition
// (i,j)(j,l) = (i,l). The algebra is the span of the arrows.
inline std::shared_ptr<Algebra> pair_groupoid_algebra(int npoints) {
  const int n = npoints * npoints;
  auto arrow = [npoints](int i, int j) { return i * npoints + j; };
  std::vector<std::string> names(n);
  std::vector<std::vector<Elem>> products(n, std::vector<Elem>(n));
  for (int i = 0; i < npoints; ++i)
    for (int j = 0; j < npoints; ++j) {
      names[arrow(i, j)] = "(" + std::to_string(i) + "," + std::to_string(j) + ")";
      for (int k = 0; k < npoints; ++k)
        for (int l = 0; l < npoints; ++l) {
          Elem e;
          if (j == k)
            e.set(arrow(i, l), Scalar::one());
          products[arrow(i, j)][arrow(k, l)] = std::move(e);
        }
    }
  Elem unit;
  for (int i = 0; i < npoints; ++i)
    unit.set(arrow(i, i), Scalar::one());
  return Algebra::dense(names, std::move(products), unit, "test-pair-groupoid");
}

inline Functional unit_indicator(int npoints) {
  Functional f;
  f.name = "unit-indicator";
  for (int i = 0; i < npoints; ++i)
    f.values[i * npoints + i] = Scalar::one();
  return f;
}

// supported function algebra on the integers (finitely supported functions)
inline std::shared_ptr<Algebra> fn_z_algebra() {
  auto rule = [](Label a, Label b) {
    Elem e;
    if (a == b)
      e.set(a, Scalar::one());
    return e;
  };
  auto window = [](int k) {
    std::vector<Label> w;
    for (Label l = -k; l <= k; ++l)
      w.push_back(l);
    return w;
  };
  auto local_unit = [](const std::vector<Label>& w) {
    Elem u;
    for (Label l : w)
      u.set(l, Scalar::one());
    return u;
  };
  return Algebra::supported("function-algebra-z", rule, window, local_unit,
                            "test-fn-z");
}

} // namespace testutil

#endif
