#ifndef HOPFFORGE_SPARSE_HPP
#define HOPFFORGE_SPARSE_HPP

#include "hopfforge/scalar.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

namespace hopfforge {

/// Sparse vector over the rationals. Invariant: no stored zero entries.
struct SparseVec {
  std::map<std::size_t, Scalar> entries;

  SparseVec() = default;

  bool is_zero() const { return entries.empty(); }

  Scalar at(std::size_t i) const {
    auto it = entries.find(i);
    return it == entries.end() ? Scalar() : it->second;
  }

  void set(std::size_t i, const Scalar& s) {
    if (s.is_zero())
      entries.erase(i);
    else
      entries[i] = s;
  }

  void add(std::size_t i, const Scalar& s) {
    if (s.is_zero())
      return;
    auto [it, fresh] = entries.emplace(i, s);
    if (!fresh) {
      it->second += s;
      if (it->second.is_zero())
        entries.erase(it);
    }
  }

  /// this += c * other
  SparseVec& add_scaled(const SparseVec& other, const Scalar& c) {
    if (c.is_zero())
      return *this;
    for (const auto& [i, s] : other.entries)
      add(i, c * s);
    return *this;
  }

  SparseVec& scale(const Scalar& c) {
    if (c.is_zero()) {
      entries.clear();
      return *this;
    }
    for (auto& [i, s] : entries)
      s *= c;
    return *this;
  }

  /// Index of the first nonzero entry, if any.
  std::optional<std::size_t> leading() const {
    if (entries.empty())
      return std::nullopt;
    return entries.begin()->first;
  }

  friend bool operator==(const SparseVec& a, const SparseVec& b) {
    return a.entries == b.entries;
  }
};

/// Sparse matrix stored row-major; no stored zeros, indices in range.
struct SparseMat {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::map<std::size_t, SparseVec> row_data;

  SparseMat() = default;
  SparseMat(std::size_t r, std::size_t c) : rows(r), cols(c) {}

  static SparseMat identity(std::size_t n) {
    SparseMat m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      m.set(i, i, Scalar::one());
    return m;
  }

  Scalar at(std::size_t r, std::size_t c) const {
    auto it = row_data.find(r);
    return it == row_data.end() ? Scalar() : it->second.at(c);
  }

  void set(std::size_t r, std::size_t c, const Scalar& s) {
    if (s.is_zero()) {
      auto it = row_data.find(r);
      if (it != row_data.end()) {
        it->second.entries.erase(c);
        if (it->second.is_zero())
          row_data.erase(it);
      }
    } else {
      row_data[r].set(c, s);
    }
  }

  void add(std::size_t r, std::size_t c, const Scalar& s) {
    if (s.is_zero())
      return;
    auto& row = row_data[r];
    row.add(c, s);
    if (row.is_zero())
      row_data.erase(r);
  }

  /// Writes v into column c (clearing nothing else; caller owns consistency).
  void set_column(std::size_t c, const SparseVec& v) {
    for (const auto& [r, s] : v.entries)
      set(r, c, s);
  }

  SparseVec column(std::size_t c) const {
    SparseVec v;
    for (const auto& [r, row] : row_data) {
      auto it = row.entries.find(c);
      if (it != row.entries.end())
        v.set(r, it->second);
    }
    return v;
  }

  /// Matrix-vector product m * v.
  SparseVec apply(const SparseVec& v) const {
    SparseVec out;
    for (const auto& [r, row] : row_data) {
      Scalar acc;
      for (const auto& [c, s] : row.entries)
        acc += s * v.at(c);
      if (!acc.is_zero())
        out.set(r, acc);
    }
    return out;
  }

  SparseMat mul(const SparseMat& other) const {
    SparseMat out(rows, other.cols);
    for (const auto& [r, row] : row_data) {
      SparseVec acc;
      for (const auto& [k, s] : row.entries) {
        auto it = other.row_data.find(k);
        if (it != other.row_data.end())
          acc.add_scaled(it->second, s);
      }
      if (!acc.is_zero())
        out.row_data[r] = std::move(acc);
    }
    return out;
  }

  SparseMat transpose() const {
    SparseMat out(cols, rows);
    for (const auto& [r, row] : row_data)
      for (const auto& [c, s] : row.entries)
        out.set(c, r, s);
    return out;
  }

  friend bool operator==(const SparseMat& a, const SparseMat& b) {
    return a.rows == b.rows && a.cols == b.cols && a.row_data == b.row_data;
  }
};

/// Incremental reduced row space. Rows are kept fully reduced against each
/// other with unit pivots; pivot choice is always the first nonzero index,
/// so the stored basis is deterministic for a given insertion set.
class RowSpace {
public:
  /// Returns true when v enlarged the span.
  bool insert(SparseVec v) {
    reduce(v);
    if (v.is_zero())
      return false;
    std::size_t p = *v.leading();
    v.scale(v.at(p).inverse());
    // back-reduce existing rows against the new pivot
    for (auto& [q, row] : rows_) {
      Scalar c = row.at(p);
      if (!c.is_zero())
        row.add_scaled(v, -c);
    }
    rows_.emplace(p, std::move(v));
    return true;
  }

  bool contains(SparseVec v) const {
    reduce(v);
    return v.is_zero();
  }

  std::size_t dim() const { return rows_.size(); }

  bool same_span(const RowSpace& other) const {
    if (dim() != other.dim())
      return false;
    for (const auto& [p, row] : rows_)
      if (!other.contains(row))
        return false;
    return true;
  }

  bool contains_all(const RowSpace& other) const {
    for (const auto& [p, row] : other.rows_)
      if (!contains(row))
        return false;
    return true;
  }

  /// Canonical residual of v modulo the span (zero iff contained).
  SparseVec reduced(SparseVec v) const {
    reduce(v);
    return v;
  }

  /// Reduced basis, ordered by pivot index.
  std::vector<SparseVec> basis() const {
    std::vector<SparseVec> out;
    out.reserve(rows_.size());
    for (const auto& [p, row] : rows_)
      out.push_back(row);
    return out;
  }

  const std::map<std::size_t, SparseVec>& pivot_rows() const { return rows_; }

private:
  void reduce(SparseVec& v) const {
    while (auto p = v.leading()) {
      auto it = rows_.find(*p);
      if (it == rows_.end())
        return;
      v.add_scaled(it->second, -v.at(*p));
    }
  }

  std::map<std::size_t, SparseVec> rows_; // pivot index -> reduced row
};

std::size_t rank(const SparseMat& m);
std::vector<SparseVec> kernel_basis(const SparseMat& m);

/// Some x with m*x = b, or nullopt when inconsistent. Throws on a dimension
/// mismatch. Returned solutions set all free variables to zero.
std::optional<SparseVec> solve(const SparseMat& m, const SparseVec& b);

/// Kronecker product: (m1 (x) m2)(v1 (x) v2) = m1 v1 (x) m2 v2 with the
/// index convention (i,j) -> i*dim2 + j.
SparseMat tensor_product(const SparseMat& m1, const SparseMat& m2);

/// Permutation matrix of size dim^2 swapping tensor legs.
SparseMat flip_matrix(std::size_t dim);

/// Row space spanned by the columns of m (i.e. the image of m).
RowSpace column_space(const SparseMat& m);

/// Solver that echelonizes a matrix once and answers many right-hand sides.
class LinearSolver {
public:
  explicit LinearSolver(const SparseMat& m);

  /// Some x with m*x = b, or nullopt when b is outside the image.
  std::optional<SparseVec> solve(const SparseVec& b) const;

  std::size_t rank() const;

private:
  struct Step {
    std::size_t pivot_col;
    SparseVec row;     // eliminated row of m (pivot normalized to 1)
    SparseVec rhs_ops; // row of the transform matrix applied to b
  };
  std::size_t rows_, cols_;
  std::vector<Step> elim_;
};

} // namespace hopfforge

#endif
