#include "hopfforge/functional.hpp"

namespace hopfforge {

namespace {

// G[j][i] = f(e_i e_j) for the left pairing, f(e_j e_i) for the right one;
// the respective kernel (in i) is the set of elements killed by the pairing.
std::optional<Elem> pairing_kernel_witness(const Algebra& alg, const Functional& f,
                                           const std::vector<Label>& w,
                                           bool left_side) {
  const std::size_t n = w.size();
  SparseMat g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Elem& prod = left_side ? alg.basis_product(w[i], w[j])
                                   : alg.basis_product(w[j], w[i]);
      g.add(j, i, f.eval(prod));
    }
  auto ker = kernel_basis(g);
  if (ker.empty())
    return std::nullopt;
  Elem witness;
  for (const auto& [i, s] : ker.front().entries)
    witness.set(w[i], s);
  return witness;
}

} // namespace

FaithfulnessReport check_faithful(const Algebra& alg, const Functional& f,
                                  int window_size) {
  FaithfulnessReport rep;
  rep.window_only = !alg.is_dense();
  auto w = alg.window(window_size);

  auto lw = pairing_kernel_witness(alg, f, w, true);
  rep.left_faithful = !lw.has_value();
  rep.left_witness = std::move(lw);

  auto rw = pairing_kernel_witness(alg, f, w, false);
  rep.right_faithful = !rw.has_value();
  rep.right_witness = std::move(rw);
  return rep;
}

FaithfulSetReport check_faithful_set(const Algebra& alg,
                                     const std::vector<const Functional*>& fs,
                                     bool left_side, int window_size) {
  FaithfulSetReport rep;
  rep.window_only = !alg.is_dense();
  if (fs.empty()) {
    rep.reason = "empty set of functionals is vacuously non-faithful";
    return rep;
  }
  auto w = alg.window(window_size);
  const std::size_t n = w.size();
  // stack the pairing matrices of all members
  SparseMat g(n * fs.size(), n);
  for (std::size_t m = 0; m < fs.size(); ++m)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const Elem& prod = left_side ? alg.basis_product(w[i], w[j])
                                     : alg.basis_product(w[j], w[i]);
        g.add(m * n + j, i, fs[m]->eval(prod));
      }
  auto ker = kernel_basis(g);
  if (ker.empty()) {
    rep.pass = true;
    return rep;
  }
  Elem witness;
  for (const auto& [i, s] : ker.front().entries)
    witness.set(w[i], s);
  rep.witness = std::move(witness);
  rep.reason = "joint pairing has a nonzero kernel";
  return rep;
}

std::vector<Functional> coordinate_functionals(const Algebra& alg) {
  std::vector<Functional> out;
  const std::size_t n = alg.dim();
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Functional f;
    f.name = "coord:" + alg.labels()[i];
    f.values[static_cast<Label>(i)] = Scalar::one();
    out.push_back(std::move(f));
  }
  return out;
}

} // namespace hopfforge
