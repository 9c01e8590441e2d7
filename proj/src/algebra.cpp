#include "hopfforge/algebra.hpp"

namespace hopfforge {

Elem2 outer(const Elem& x, const Elem& y) {
  Elem2 out;
  out.ambient = x.ambient ? x.ambient : y.ambient;
  for (const auto& [a, s] : x.c)
    for (const auto& [b, t] : y.c)
      out.add({a, b}, s * t);
  return out;
}

void place_12(Elem3& out, const Elem2& xy, Label z, const Scalar& coeff) {
  for (const auto& [p, s] : xy.c)
    out.add({p.first, p.second, z}, coeff * s);
}

void place_23(Elem3& out, Label x, const Elem2& yz, const Scalar& coeff) {
  for (const auto& [p, s] : yz.c)
    out.add({x, p.first, p.second}, coeff * s);
}

void place_13(Elem3& out, const Elem2& xz, Label y, const Scalar& coeff) {
  for (const auto& [p, s] : xz.c)
    out.add({p.first, y, p.second}, coeff * s);
}

std::shared_ptr<Algebra> Algebra::dense(std::vector<std::string> labels,
                                        std::vector<std::vector<Elem>> products,
                                        std::optional<Elem> unit,
                                        std::string name) {
  auto a = std::shared_ptr<Algebra>(new Algebra());
  a->kind_ = Kind::Dense;
  a->name_ = std::move(name);
  a->labels_ = std::move(labels);
  const std::size_t n = a->labels_.size();
  if (products.size() != n)
    throw InputError("algebra: product table must be n x n");
  for (auto& row : products) {
    if (row.size() != n)
      throw InputError("algebra: product table must be n x n");
    for (auto& e : row) {
      e.ambient = a.get();
      for (const auto& [l, s] : e.c)
        if (l < 0 || static_cast<std::size_t>(l) >= n)
          throw InputError("algebra: product coefficient label out of range");
    }
  }
  a->products_ = std::move(products);
  if (unit) {
    unit->ambient = a.get();
    a->unit_ = std::move(unit);
  }
  return a;
}

std::shared_ptr<Algebra>
Algebra::supported(std::string rule_name, std::function<Elem(Label, Label)> rule,
                   std::function<std::vector<Label>(int)> window,
                   std::function<Elem(const std::vector<Label>&)> local_unit,
                   std::string name) {
  auto a = std::shared_ptr<Algebra>(new Algebra());
  a->kind_ = Kind::Supported;
  a->name_ = std::move(name);
  a->rule_name_ = std::move(rule_name);
  a->rule_ = std::move(rule);
  a->window_ = std::move(window);
  a->local_unit_ = std::move(local_unit);
  return a;
}

std::size_t Algebra::dim() const {
  if (!is_dense())
    throw PreconditionError("dim: supported algebras have no finite dimension");
  return labels_.size();
}

std::string Algebra::label_name(Label l) const {
  if (is_dense()) {
    if (l < 0 || static_cast<std::size_t>(l) >= labels_.size())
      return "?" + std::to_string(l);
    return labels_[static_cast<std::size_t>(l)];
  }
  return std::to_string(l);
}

std::vector<Label> Algebra::window(int k) const {
  if (is_dense()) {
    std::vector<Label> out(labels_.size());
    for (std::size_t i = 0; i < labels_.size(); ++i)
      out[i] = static_cast<Label>(i);
    return out;
  }
  return window_(k);
}

Elem Algebra::local_unit(int k) const {
  if (is_dense()) {
    if (!unit_)
      throw PreconditionError("local_unit: dense algebra has no unit");
    return *unit_;
  }
  return local_unit_(window_(k));
}

const Elem& Algebra::basis_product(Label i, Label j) const {
  if (is_dense()) {
    if (i < 0 || j < 0 || static_cast<std::size_t>(i) >= labels_.size() ||
        static_cast<std::size_t>(j) >= labels_.size())
      throw InputError("basis_product: label out of range");
    return products_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  // supported rules are pure; a small cache keeps repeated window sweeps cheap
  static thread_local std::map<std::pair<const Algebra*, PairKey>, Elem> cache;
  auto key = std::make_pair(this, PairKey{i, j});
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, rule_(i, j)).first;
  return it->second;
}

Elem Algebra::basis_elem(Label l) const {
  Elem e;
  e.ambient = this;
  e.set(l, Scalar::one());
  return e;
}

Elem Algebra::mul(const Elem& x, const Elem& y) const {
  if ((x.ambient && x.ambient != this) || (y.ambient && y.ambient != this))
    throw InputError("mul: elements from a different algebra");
  Elem out;
  out.ambient = this;
  for (const auto& [i, s] : x.c)
    for (const auto& [j, t] : y.c)
      out.add_scaled(basis_product(i, j), s * t);
  return out;
}

Elem2 Algebra::mul2(const Elem2& x, const Elem2& y) const {
  Elem2 out;
  out.ambient = this;
  for (const auto& [p, s] : x.c)
    for (const auto& [q, t] : y.c) {
      const Elem& left = basis_product(p.first, q.first);
      const Elem& right = basis_product(p.second, q.second);
      const Scalar st = s * t;
      for (const auto& [u, su] : left.c)
        for (const auto& [v, sv] : right.c)
          out.add({u, v}, st * su * sv);
    }
  return out;
}

Elem3 Algebra::mul3(const Elem3& x, const Elem3& y) const {
  Elem3 out;
  out.ambient = this;
  for (const auto& [p, s] : x.c)
    for (const auto& [q, t] : y.c) {
      const Elem& l0 = basis_product(p[0], q[0]);
      const Elem& l1 = basis_product(p[1], q[1]);
      const Elem& l2 = basis_product(p[2], q[2]);
      const Scalar st = s * t;
      for (const auto& [u, su] : l0.c)
        for (const auto& [v, sv] : l1.c)
          for (const auto& [w, sw] : l2.c)
            out.add({u, v, w}, st * su * sv * sw);
    }
  return out;
}

std::size_t Algebra::pair_index(Label a, Label b) const {
  const std::size_t n = dim();
  return static_cast<std::size_t>(a) * n + static_cast<std::size_t>(b);
}

PairKey Algebra::pair_of_index(std::size_t idx) const {
  const std::size_t n = dim();
  return {static_cast<Label>(idx / n), static_cast<Label>(idx % n)};
}

SparseVec Algebra::to_vec(const Elem& x) const {
  SparseVec v;
  for (const auto& [l, s] : x.c)
    v.set(static_cast<std::size_t>(l), s);
  return v;
}

Elem Algebra::from_vec(const SparseVec& v) const {
  Elem e;
  e.ambient = this;
  for (const auto& [i, s] : v.entries)
    e.set(static_cast<Label>(i), s);
  return e;
}

SparseVec Algebra::to_vec2(const Elem2& x) const {
  SparseVec v;
  for (const auto& [p, s] : x.c)
    v.set(pair_index(p.first, p.second), s);
  return v;
}

Elem2 Algebra::from_vec2(const SparseVec& v) const {
  Elem2 e;
  e.ambient = this;
  for (const auto& [i, s] : v.entries) {
    auto p = pair_of_index(i);
    e.set(p, s);
  }
  return e;
}

WitnessReport Algebra::check_associative(int window_size) const {
  auto w = window(window_size);
  for (Label i : w)
    for (Label j : w)
      for (Label k : w) {
        Elem lhs = mul(basis_product(i, j), basis_elem(k));
        Elem rhs = mul(basis_elem(i), basis_product(j, k));
        if (!(lhs == rhs))
          return {false, "(" + label_name(i) + "," + label_name(j) + "," +
                             label_name(k) + ")"};
      }
  return {};
}

WitnessReport Algebra::check_unit_law() const {
  if (!unit_)
    return {};
  auto w = window(0);
  for (Label i : w) {
    Elem e = basis_elem(i);
    if (!(mul(*unit_, e) == e) || !(mul(e, *unit_) == e))
      return {false, label_name(i)};
  }
  return {};
}

Algebra::NondegeneracyReport Algebra::check_nondegenerate() const {
  NondegeneracyReport rep;
  std::vector<Label> w = window(is_dense() ? 0 : 4);
  rep.window_only = !is_dense();
  const std::size_t n = w.size();

  auto stacked = [&](bool left_side) {
    // rows indexed by (window column j, output label); output labels may
    // leave the window on supported algebras and get rows of their own
    SparseMat m(0, n);
    std::map<std::pair<std::size_t, Label>, std::size_t> row_index;
    auto row_of = [&](std::size_t j, Label l) {
      auto [it, fresh] = row_index.emplace(std::make_pair(j, l), row_index.size());
      if (fresh)
        m.rows = row_index.size();
      return it->second;
    };
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const Elem& p = left_side ? basis_product(w[i], w[j])
                                  : basis_product(w[j], w[i]);
        for (const auto& [l, s] : p.c)
          m.add(row_of(j, l), i, s);
      }
    return m;
  };

  for (bool left : {true, false}) {
    auto ker = kernel_basis(stacked(left));
    if (!ker.empty()) {
      rep.pass = false;
      rep.side = left ? "left" : "right";
      Elem witness;
      witness.ambient = this;
      for (const auto& [i, s] : ker.front().entries)
        witness.set(w[i], s);
      rep.witness = witness;
      return rep;
    }
  }
  return rep;
}

bool Algebra::check_idempotent_algebra() const {
  const std::size_t n = dim();
  RowSpace span;
  for (std::size_t i = 0; i < n && span.dim() < n; ++i)
    for (std::size_t j = 0; j < n && span.dim() < n; ++j)
      span.insert(to_vec(basis_product(static_cast<Label>(i), static_cast<Label>(j))));
  return span.dim() == n;
}

Mult1 Algebra::multiplier_from_element(const Elem& a) const {
  Mult1 m;
  m.left = [this, a](const Elem& x) { return mul(a, x); };
  m.right = [this, a](const Elem& x) { return mul(x, a); };
  return m;
}

Mult2 Algebra::multiplier_from_element2(const Elem2& a) const {
  Mult2 m;
  m.left = [this, a](const Elem2& x) { return mul2(a, x); };
  m.right = [this, a](const Elem2& x) { return mul2(x, a); };
  return m;
}

Mult2 Algebra::identity_multiplier2() const {
  Mult2 m;
  m.left = [](const Elem2& x) { return x; };
  m.right = [](const Elem2& x) { return x; };
  return m;
}

bool Algebra::multiplier_check(const Mult1& m, int window_size) const {
  auto w = window(window_size);
  for (Label a : w)
    for (Label b : w)
      if (!(mul(basis_elem(a), m.left(basis_elem(b))) ==
            mul(m.right(basis_elem(a)), basis_elem(b))))
        return false;
  return true;
}

bool Algebra::multiplier_check2(const Mult2& m, int window_size) const {
  auto w = window(window_size);
  for (Label a1 : w)
    for (Label a2 : w)
      for (Label b1 : w)
        for (Label b2 : w) {
          Elem2 x = outer(basis_elem(a1), basis_elem(a2));
          Elem2 y = outer(basis_elem(b1), basis_elem(b2));
          if (!(mul2(x, m.left(y)) == mul2(m.right(x), y)))
            return false;
        }
  return true;
}

std::optional<Elem> Algebra::multiplier_as_element(const Mult1& m) const {
  const std::size_t n = dim();
  if (unit_) {
    Elem cand = m.left(*unit_);
    for (std::size_t j = 0; j < n; ++j) {
      Elem ej = basis_elem(static_cast<Label>(j));
      if (!(mul(cand, ej) == m.left(ej)))
        return std::nullopt;
    }
    return cand;
  }
  SparseMat sys(n * n, n);
  SparseVec rhs;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i)
      for (const auto& [k, s] : basis_product(static_cast<Label>(i), static_cast<Label>(j)).c)
        sys.add(j * n + static_cast<std::size_t>(k), i, s);
    for (const auto& [k, s] : m.left(basis_elem(static_cast<Label>(j))).c)
      rhs.set(j * n + static_cast<std::size_t>(k), s);
  }
  auto x = solve(sys, rhs);
  if (!x)
    return std::nullopt;
  return from_vec(*x);
}

const LinearSolver& Algebra::embed2_solver() const {
  std::call_once(embed2_once_, [this] {
    const std::size_t n = dim();
    const std::size_t nn = n * n;
    SparseMat sys(nn * nn, nn);
    for (std::size_t p = 0; p < nn; ++p) {
      auto [p1, p2] = pair_of_index(p);
      Elem2 basis_p = outer(basis_elem(p1), basis_elem(p2));
      for (std::size_t q = 0; q < nn; ++q) {
        auto [q1, q2] = pair_of_index(q);
        Elem2 prod = mul2(basis_p, outer(basis_elem(q1), basis_elem(q2)));
        for (const auto& [key, s] : prod.c)
          sys.add(q * nn + pair_index(key.first, key.second), p, s);
      }
    }
    embed2_solver_ = std::make_unique<LinearSolver>(sys);
  });
  return *embed2_solver_;
}

std::optional<Elem2> Algebra::multiplier_as_element2(const Mult2& m) const {
  const std::size_t n = dim();
  const std::size_t nn = n * n;
  if (unit_) {
    Elem2 cand = m.left(outer(*unit_, *unit_));
    for (std::size_t q = 0; q < nn; ++q) {
      auto [q1, q2] = pair_of_index(q);
      Elem2 eq = outer(basis_elem(q1), basis_elem(q2));
      if (!(mul2(cand, eq) == m.left(eq)))
        return std::nullopt;
    }
    return cand;
  }
  SparseVec rhs;
  for (std::size_t q = 0; q < nn; ++q) {
    auto [q1, q2] = pair_of_index(q);
    for (const auto& [key, s] : m.left(outer(basis_elem(q1), basis_elem(q2))).c)
      rhs.set(q * nn + pair_index(key.first, key.second), s);
  }
  auto x = embed2_solver().solve(rhs);
  if (!x)
    return std::nullopt;
  return from_vec2(*x);
}

std::shared_ptr<Algebra> tensor_square(const Algebra& a) {
  const std::size_t n = a.dim();
  std::vector<std::string> labels(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      labels[i * n + j] = a.labels()[i] + "(x)" + a.labels()[j];
  std::vector<std::vector<Elem>> products(n * n, std::vector<Elem>(n * n));
  for (std::size_t p = 0; p < n * n; ++p)
    for (std::size_t q = 0; q < n * n; ++q) {
      const Elem& l = a.basis_product(static_cast<Label>(p / n), static_cast<Label>(q / n));
      const Elem& r = a.basis_product(static_cast<Label>(p % n), static_cast<Label>(q % n));
      Elem out;
      for (const auto& [u, su] : l.c)
        for (const auto& [v, sv] : r.c)
          out.add(static_cast<Label>(static_cast<std::size_t>(u) * n +
                                     static_cast<std::size_t>(v)),
                  su * sv);
      products[p][q] = std::move(out);
    }
  std::optional<Elem> unit;
  if (a.unit()) {
    Elem u;
    for (const auto& [i, si] : a.unit()->c)
      for (const auto& [j, sj] : a.unit()->c)
        u.add(static_cast<Label>(static_cast<std::size_t>(i) * n +
                                 static_cast<std::size_t>(j)),
              si * sj);
    unit = std::move(u);
  }
  return Algebra::dense(std::move(labels), std::move(products), std::move(unit),
                        a.name() + "(x)" + a.name());
}

Elem2 leg1_left(const Algebra& a, const Elem& x, const Elem2& z) {
  Elem2 out;
  for (const auto& [p, s] : z.c)
    for (const auto& [i, si] : x.c)
      for (const auto& [u, su] : a.basis_product(i, p.first).c)
        out.add({u, p.second}, s * si * su);
  return out;
}

Elem2 leg2_left(const Algebra& a, const Elem& x, const Elem2& z) {
  Elem2 out;
  for (const auto& [p, s] : z.c)
    for (const auto& [i, si] : x.c)
      for (const auto& [v, sv] : a.basis_product(i, p.second).c)
        out.add({p.first, v}, s * si * sv);
  return out;
}

Elem2 leg1_right(const Algebra& a, const Elem2& z, const Elem& x) {
  Elem2 out;
  for (const auto& [p, s] : z.c)
    for (const auto& [i, si] : x.c)
      for (const auto& [u, su] : a.basis_product(p.first, i).c)
        out.add({u, p.second}, s * si * su);
  return out;
}

Elem2 leg2_right(const Algebra& a, const Elem2& z, const Elem& x) {
  Elem2 out;
  for (const auto& [p, s] : z.c)
    for (const auto& [i, si] : x.c)
      for (const auto& [v, sv] : a.basis_product(p.second, i).c)
        out.add({p.first, v}, s * si * sv);
  return out;
}

Elem2 flip2(const Elem2& z) {
  Elem2 out;
  out.ambient = z.ambient;
  for (const auto& [p, s] : z.c)
    out.set({p.second, p.first}, s);
  return out;
}

std::shared_ptr<Algebra> opposite(const Algebra& a) {
  const std::size_t n = a.dim();
  std::vector<std::vector<Elem>> products(n, std::vector<Elem>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Elem p = a.basis_product(static_cast<Label>(j), static_cast<Label>(i));
      p.ambient = nullptr;
      products[i][j] = std::move(p);
    }
  std::optional<Elem> unit;
  if (a.unit()) {
    unit = *a.unit();
    unit->ambient = nullptr;
  }
  return Algebra::dense(a.labels(), std::move(products), std::move(unit),
                        a.name() + "^op");
}

std::optional<Elem2>
Algebra::multiplier_as_element2_window(const Mult2& m, int k) const {
  Elem u1 = local_unit(k);
  Elem u2 = local_unit(k + 2);
  Elem2 y1 = m.left(outer(u1, u1));
  Elem2 y2 = m.left(outer(u2, u2));
  if (!(y1 == y2))
    return std::nullopt; // support still growing with the window
  for (Label a : window(k))
    for (Label b : window(k)) {
      Elem2 eab = outer(basis_elem(a), basis_elem(b));
      if (!(mul2(y1, eab) == m.left(eab)))
        return std::nullopt;
    }
  return y1;
}

} // namespace hopfforge
