#include "hopfforge/sparse.hpp"

#include <stdexcept>

namespace hopfforge {

namespace {

// Fully reduced row echelon of the rows of m. Pivot selection: columns are
// processed in ascending order, and within a column the surviving row with
// the smallest original index wins. Deterministic by construction.
struct Rref {
  std::vector<std::pair<std::size_t, SparseVec>> steps; // (pivot col, row)

  explicit Rref(const SparseMat& m) {
    std::map<std::size_t, SparseVec> pending = m.row_data;
    for (std::size_t col = 0; col < m.cols; ++col) {
      std::size_t pivot_row = 0;
      bool found = false;
      for (const auto& [r, row] : pending) {
        if (!row.at(col).is_zero()) {
          pivot_row = r;
          found = true;
          break;
        }
      }
      if (!found)
        continue;
      SparseVec prow = pending[pivot_row];
      pending.erase(pivot_row);
      prow.scale(prow.at(col).inverse());
      for (auto it = pending.begin(); it != pending.end();) {
        Scalar c = it->second.at(col);
        if (!c.is_zero())
          it->second.add_scaled(prow, -c);
        if (it->second.is_zero())
          it = pending.erase(it);
        else
          ++it;
      }
      for (auto& [pc, row] : steps) {
        Scalar c = row.at(col);
        if (!c.is_zero())
          row.add_scaled(prow, -c);
      }
      steps.emplace_back(col, std::move(prow));
    }
  }
};

} // namespace

std::size_t rank(const SparseMat& m) { return Rref(m).steps.size(); }

std::vector<SparseVec> kernel_basis(const SparseMat& m) {
  Rref rr(m);
  std::map<std::size_t, const SparseVec*> pivot_of_col;
  for (const auto& [pc, row] : rr.steps)
    pivot_of_col[pc] = &row;

  std::vector<SparseVec> out;
  for (std::size_t f = 0; f < m.cols; ++f) {
    if (pivot_of_col.count(f))
      continue;
    SparseVec v;
    v.set(f, Scalar::one());
    for (const auto& [pc, row] : pivot_of_col) {
      Scalar c = row->at(f);
      if (!c.is_zero())
        v.set(pc, -c);
    }
    out.push_back(std::move(v));
  }
  return out;
}

LinearSolver::LinearSolver(const SparseMat& m) : rows_(m.rows), cols_(m.cols) {
  // Gauss-Jordan on [m | I]; transform rows record how each reduced row was
  // produced from the original rows, so arbitrary right-hand sides can be
  // replayed later.
  std::map<std::size_t, std::pair<SparseVec, SparseVec>> pending; // row -> (m row, transform)
  for (std::size_t r = 0; r < m.rows; ++r) {
    SparseVec t;
    t.set(r, Scalar::one());
    auto it = m.row_data.find(r);
    pending.emplace(r, std::make_pair(it == m.row_data.end() ? SparseVec() : it->second,
                                      std::move(t)));
  }
  for (std::size_t col = 0; col < cols_; ++col) {
    auto pick = pending.end();
    for (auto it = pending.begin(); it != pending.end(); ++it) {
      if (!it->second.first.at(col).is_zero()) {
        pick = it;
        break;
      }
    }
    if (pick == pending.end())
      continue;
    auto [prow, ptrans] = std::move(pick->second);
    pending.erase(pick);
    Scalar inv = prow.at(col).inverse();
    prow.scale(inv);
    ptrans.scale(inv);
    for (auto& [r, rowpair] : pending) {
      Scalar c = rowpair.first.at(col);
      if (!c.is_zero()) {
        rowpair.first.add_scaled(prow, -c);
        rowpair.second.add_scaled(ptrans, -c);
      }
    }
    for (auto& step : elim_) {
      Scalar c = step.row.at(col);
      if (!c.is_zero()) {
        step.row.add_scaled(prow, -c);
        step.rhs_ops.add_scaled(ptrans, -c);
      }
    }
    elim_.push_back(Step{col, std::move(prow), std::move(ptrans)});
  }
  // whatever is left reduced to zero: those transform rows are the
  // consistency constraints, folded into elim_ with an out-of-range pivot
  for (auto& [r, rowpair] : pending)
    elim_.push_back(Step{cols_, SparseVec(), std::move(rowpair.second)});
}

std::optional<SparseVec> LinearSolver::solve(const SparseVec& b) const {
  if (auto lead = b.leading(); lead && b.entries.rbegin()->first >= rows_)
    throw std::invalid_argument("solve: right-hand side dimension mismatch");
  SparseVec x;
  for (const auto& step : elim_) {
    Scalar v;
    for (const auto& [r, s] : step.rhs_ops.entries)
      v += s * b.at(r);
    if (step.pivot_col >= cols_) {
      if (!v.is_zero())
        return std::nullopt; // inconsistent
    } else if (!v.is_zero()) {
      x.set(step.pivot_col, v);
    }
  }
  return x;
}

std::size_t LinearSolver::rank() const {
  std::size_t n = 0;
  for (const auto& step : elim_)
    if (step.pivot_col < cols_)
      ++n;
  return n;
}

std::optional<SparseVec> solve(const SparseMat& m, const SparseVec& b) {
  return LinearSolver(m).solve(b);
}

SparseMat tensor_product(const SparseMat& m1, const SparseMat& m2) {
  SparseMat out(m1.rows * m2.rows, m1.cols * m2.cols);
  for (const auto& [r1, row1] : m1.row_data)
    for (const auto& [c1, s1] : row1.entries)
      for (const auto& [r2, row2] : m2.row_data)
        for (const auto& [c2, s2] : row2.entries)
          out.set(r1 * m2.rows + r2, c1 * m2.cols + c2, s1 * s2);
  return out;
}

SparseMat flip_matrix(std::size_t dim) {
  SparseMat out(dim * dim, dim * dim);
  for (std::size_t a = 0; a < dim; ++a)
    for (std::size_t b = 0; b < dim; ++b)
      out.set(b * dim + a, a * dim + b, Scalar::one());
  return out;
}

RowSpace column_space(const SparseMat& m) {
  RowSpace space;
  SparseMat t = m.transpose();
  for (const auto& [r, row] : t.row_data)
    space.insert(row);
  return space;
}

} // namespace hopfforge
