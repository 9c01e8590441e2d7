#include "hopfforge/coproduct.hpp"

namespace hopfforge {

const char* which_name(Which w) {
  switch (w) {
  case Which::T1: return "T1";
  case Which::T2: return "T2";
  case Which::T3: return "T3";
  case Which::T4: return "T4";
  }
  return "?";
}

Mult2 Coproduct::of_basis(Label l) const {
  auto it = elem_images_.find(l);
  if (it != elem_images_.end())
    return algebra->multiplier_from_element2(it->second);
  return image_(l);
}

Mult2 Coproduct::of(const Elem& a) const {
  std::vector<std::pair<Scalar, Mult2>> parts;
  parts.reserve(a.c.size());
  for (const auto& [l, s] : a.c)
    parts.emplace_back(s, of_basis(l));
  Mult2 m;
  m.left = [parts](const Elem2& z) {
    Elem2 out;
    for (const auto& [s, p] : parts)
      out.add_scaled(p.left(z), s);
    return out;
  };
  m.right = [parts](const Elem2& z) {
    Elem2 out;
    for (const auto& [s, p] : parts)
      out.add_scaled(p.right(z), s);
    return out;
  };
  return m;
}

std::shared_ptr<Coproduct> Coproduct::grouplike(std::shared_ptr<const Algebra> alg) {
  auto d = std::make_shared<Coproduct>();
  d->algebra = alg;
  d->kind = "grouplike";
  const std::size_t n = alg->dim();
  for (std::size_t i = 0; i < n; ++i) {
    Label l = static_cast<Label>(i);
    d->elem_images_[l] = outer(alg->basis_elem(l), alg->basis_elem(l));
  }
  return d;
}

std::shared_ptr<Coproduct>
Coproduct::dual_function(std::shared_ptr<const Algebra> alg,
                         std::vector<std::vector<int>> table) {
  auto d = std::make_shared<Coproduct>();
  d->algebra = alg;
  d->kind = "dualfunction";
  const std::size_t n = alg->dim();
  for (std::size_t g = 0; g < n; ++g)
    d->elem_images_[static_cast<Label>(g)] = Elem2{};
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = 0; t < n; ++t) {
      Label g = static_cast<Label>(table[s][t]);
      d->elem_images_[g].add({static_cast<Label>(s), static_cast<Label>(t)},
                             Scalar::one());
    }
  return d;
}

std::shared_ptr<Coproduct>
Coproduct::dual_function_supported(std::shared_ptr<const Algebra> alg,
                                   std::function<Label(Label, Label)> gmul,
                                   std::function<Label(Label)> ginv) {
  auto d = std::make_shared<Coproduct>();
  d->algebra = alg;
  d->kind = "dualfunction";
  // Delta(delta_n) acts by pointwise multiplication with the indicator of
  // {(u,v) : uv = n}; as a multiplier that is a filter on tensor terms.
  d->image_ = [gmul](Label n) {
    auto filter = [gmul, n](const Elem2& z) {
      Elem2 out;
      for (const auto& [p, s] : z.c)
        if (gmul(p.first, p.second) == n)
          out.add(p, s);
      return out;
    };
    return Mult2{filter, filter};
  };
  d->t_rules_[0] = d->t_rules_[2] = [alg, gmul, ginv](Label a, Label b) {
    return std::optional<Elem2>(
        outer(alg->basis_elem(gmul(a, ginv(b))), alg->basis_elem(b)));
  };
  d->t_rules_[1] = d->t_rules_[3] = [alg, gmul, ginv](Label c, Label a) {
    return std::optional<Elem2>(
        outer(alg->basis_elem(c), alg->basis_elem(gmul(ginv(c), a))));
  };
  return d;
}

std::shared_ptr<Coproduct>
Coproduct::explicit_images(std::shared_ptr<const Algebra> alg,
                           std::vector<Elem2> images) {
  auto d = std::make_shared<Coproduct>();
  d->algebra = alg;
  d->kind = "explicit";
  if (images.size() != alg->dim())
    throw InputError("coproduct: one image per basis label required");
  for (std::size_t i = 0; i < images.size(); ++i)
    d->elem_images_[static_cast<Label>(i)] = std::move(images[i]);
  return d;
}

std::shared_ptr<Coproduct>
Coproduct::explicit_actions(std::shared_ptr<const Algebra> alg,
                            std::function<Mult2(Label)> image) {
  auto d = std::make_shared<Coproduct>();
  d->algebra = alg;
  d->kind = "explicit";
  d->image_ = std::move(image);
  return d;
}

std::shared_ptr<Coproduct> Coproduct::flipped(const Coproduct& src) {
  auto d = std::make_shared<Coproduct>();
  d->algebra = src.algebra;
  d->kind = src.kind + "^cop";
  if (!src.elem_images_.empty()) {
    for (const auto& [l, img] : src.elem_images_)
      d->elem_images_[l] = flip2(img);
  }
  if (src.image_) {
    auto inner = src.image_;
    d->image_ = [inner](Label l) {
      Mult2 m = inner(l);
      Mult2 out;
      out.left = [m](const Elem2& z) { return flip2(m.left(flip2(z))); };
      out.right = [m](const Elem2& z) { return flip2(m.right(flip2(z))); };
      return out;
    };
  }
  auto lift = [](const TRule& r) -> TRule {
    if (!r)
      return nullptr;
    return [r](Label x, Label y) -> std::optional<Elem2> {
      auto v = r(y, x);
      if (!v)
        return std::nullopt;
      return flip2(*v);
    };
  };
  // conjugating by the flip exchanges T1 with T4 and T2 with T3
  d->t_rules_[0] = lift(src.t_rules_[3]);
  d->t_rules_[3] = lift(src.t_rules_[0]);
  d->t_rules_[1] = lift(src.t_rules_[2]);
  d->t_rules_[2] = lift(src.t_rules_[1]);
  return d;
}

std::shared_ptr<Coproduct>
Coproduct::on_opposite(const Coproduct& src, std::shared_ptr<const Algebra> op) {
  auto d = std::make_shared<Coproduct>();
  d->algebra = op;
  d->kind = src.kind + "^op";
  if (!src.elem_images_.empty()) {
    for (const auto& [l, img] : src.elem_images_) {
      Elem2 copy = img;
      copy.ambient = nullptr;
      d->elem_images_[l] = std::move(copy);
    }
    // element images multiply through the (transposed) ambient product, so
    // nothing else changes
  }
  if (src.image_) {
    auto inner = src.image_;
    d->image_ = [inner](Label l) {
      Mult2 m = inner(l);
      return Mult2{m.right, m.left}; // left and right actions swap roles
    };
  }
  // transposing the product exchanges T1 with T3 and T2 with T4
  d->t_rules_[0] = src.t_rules_[2];
  d->t_rules_[2] = src.t_rules_[0];
  d->t_rules_[1] = src.t_rules_[3];
  d->t_rules_[3] = src.t_rules_[1];
  return d;
}

// ---------------------------------------------------------------------------

CanonicalMaps::CanonicalMaps(std::shared_ptr<const Algebra> alg,
                             std::shared_ptr<const Coproduct> delta,
                             int window_size)
    : alg_(std::move(alg)), delta_(std::move(delta)), window_(window_size) {
  window_labels_ = alg_->window(window_);
  for (int wi = 0; wi < 4; ++wi) {
    Which w = static_cast<Which>(wi);
    Regularity reg;
    reg.state = alg_->is_dense() ? TriState::Yes : TriState::WindowYes;
    for (Label x : window_labels_) {
      for (Label y : window_labels_) {
        auto img = compute_image(w, x, y);
        if (!img) {
          reg.state = TriState::No;
          reg.witness = "(" + alg_->label_name(x) + "," + alg_->label_name(y) + ")";
          break;
        }
        image_cache_.emplace(std::make_tuple(wi, x, y), std::move(*img));
      }
      if (reg.state == TriState::No)
        break;
    }
    regularity_[wi] = std::move(reg);
  }
}

const CanonicalMaps::Regularity& CanonicalMaps::regular(Which w) const {
  return regularity_[static_cast<int>(w)];
}

void CanonicalMaps::require_regular(Which w) const {
  if (!is_regular(w))
    throw PreconditionError(std::string("canonical map ") + which_name(w) +
                            " is not regular");
}

Mult2 CanonicalMaps::image_multiplier(Which w, Label x, Label y) const {
  const Algebra& A = *alg_;
  switch (w) {
  case Which::T1: {
    Mult2 m = delta_->of_basis(x);
    Elem cover = A.basis_elem(y);
    return Mult2{[&A, m, cover](const Elem2& z) { return m.left(leg2_left(A, cover, z)); },
                 [&A, m, cover](const Elem2& z) { return leg2_right(A, m.right(z), cover); }};
  }
  case Which::T2: {
    Mult2 m = delta_->of_basis(y);
    Elem cover = A.basis_elem(x);
    return Mult2{[&A, m, cover](const Elem2& z) { return leg1_left(A, cover, m.left(z)); },
                 [&A, m, cover](const Elem2& z) { return m.right(leg1_right(A, z, cover)); }};
  }
  case Which::T3: {
    Mult2 m = delta_->of_basis(x);
    Elem cover = A.basis_elem(y);
    return Mult2{[&A, m, cover](const Elem2& z) { return leg2_left(A, cover, m.left(z)); },
                 [&A, m, cover](const Elem2& z) { return m.right(leg2_right(A, z, cover)); }};
  }
  case Which::T4: {
    Mult2 m = delta_->of_basis(y);
    Elem cover = A.basis_elem(x);
    return Mult2{[&A, m, cover](const Elem2& z) { return m.left(leg1_left(A, cover, z)); },
                 [&A, m, cover](const Elem2& z) { return leg1_right(A, m.right(z), cover); }};
  }
  }
  throw std::logic_error("unreachable");
}

std::optional<Elem2> CanonicalMaps::compute_image(Which w, Label x, Label y) const {
  if (const auto& rule = delta_->t_rule(w))
    return rule(x, y);

  const Algebra& A = *alg_;

  // direct leg products when the coproduct image is an element of A (x) A
  const Label arg = (w == Which::T1 || w == Which::T3) ? x : y;
  if (const Elem2* d = delta_->elem_image(arg)) {
    switch (w) {
    case Which::T1: return leg2_right(A, *d, A.basis_elem(y));
    case Which::T2: return leg1_left(A, A.basis_elem(x), *d);
    case Which::T3: return leg2_left(A, A.basis_elem(y), *d);
    case Which::T4: return leg1_right(A, *d, A.basis_elem(x));
    }
  }

  Mult2 m = image_multiplier(w, x, y);
  if (A.is_dense())
    return A.multiplier_as_element2(m);
  return A.multiplier_as_element2_window(m, window_);
}

const Elem2& CanonicalMaps::image(Which w, Label x, Label y) const {
  auto key = std::make_tuple(static_cast<int>(w), x, y);
  auto it = image_cache_.find(key);
  if (it != image_cache_.end())
    return it->second;
  auto img = compute_image(w, x, y);
  if (!img)
    throw PreconditionError(std::string("canonical map ") + which_name(w) +
                            " has no element image at (" + alg_->label_name(x) +
                            "," + alg_->label_name(y) + ")");
  return image_cache_.emplace(key, std::move(*img)).first->second;
}

Elem2 CanonicalMaps::apply(Which w, const Elem2& z) const {
  Elem2 out;
  for (const auto& [p, s] : z.c)
    out.add_scaled(image(w, p.first, p.second), s);
  return out;
}

const SparseMat& CanonicalMaps::matrix(Which w) const {
  int wi = static_cast<int>(w);
  if (matrices_[wi])
    return *matrices_[wi];
  if (!alg_->is_dense())
    throw PreconditionError("canonical-map matrices exist only for dense algebras");
  require_regular(w);
  const std::size_t n = alg_->dim();
  SparseMat m(n * n, n * n);
  for (Label x = 0; x < static_cast<Label>(n); ++x)
    for (Label y = 0; y < static_cast<Label>(n); ++y)
      m.set_column(alg_->pair_index(x, y), alg_->to_vec2(image(w, x, y)));
  matrices_[wi] = std::move(m);
  return *matrices_[wi];
}

CheckResult CanonicalMaps::check_homomorphism() const {
  CheckResult res;
  res.window_only = window_only();
  const Algebra& A = *alg_;
  for (Label i : window_labels_)
    for (Label j : window_labels_) {
      Mult2 prod_image = delta_->of(A.basis_product(i, j));
      Mult2 di = delta_->of_basis(i);
      Mult2 dj = delta_->of_basis(j);
      for (Label u : window_labels_)
        for (Label v : window_labels_) {
          Elem2 z = outer(A.basis_elem(u), A.basis_elem(v));
          if (!(prod_image.left(z) == di.left(dj.left(z))) ||
              !(prod_image.right(z) == dj.right(di.right(z)))) {
            res.witness = "(" + A.label_name(i) + "*" + A.label_name(j) +
                          ") on (" + A.label_name(u) + "," + A.label_name(v) + ")";
            return res;
          }
        }
    }
  res.pass = true;
  return res;
}

CheckResult CanonicalMaps::check_coassoc(Which inner, Which outer_map) const {
  const bool inner_ok = inner == Which::T1 || inner == Which::T3;
  const bool outer_ok = outer_map == Which::T2 || outer_map == Which::T4;
  if (!inner_ok || !outer_ok)
    throw InputError("check_coassoc: variant must pair one of T1/T3 with one of T2/T4");
  require_regular(inner);
  require_regular(outer_map);

  CheckResult res;
  res.window_only = window_only();
  const Algebra& A = *alg_;
  for (Label a : window_labels_)
    for (Label b : window_labels_)
      for (Label c : window_labels_) {
        Elem3 lhs, rhs;
        for (const auto& [rs, coeff] : image(inner, a, b).c)
          place_12(lhs, image(outer_map, c, rs.first), rs.second, coeff);
        for (const auto& [uv, coeff] : image(outer_map, c, a).c)
          place_23(rhs, uv.first, image(inner, uv.second, b), coeff);
        if (!(lhs == rhs)) {
          res.witness = "(" + A.label_name(a) + "," + A.label_name(b) + "," +
                        A.label_name(c) + ")";
          return res;
        }
      }
  res.pass = true;
  return res;
}

LegSubspace CanonicalMaps::compute_leg(LegSide side) const {
  LegSubspace leg;
  leg.side = side;
  leg.window_only = window_only();
  Which w;
  if (side == LegSide::Left)
    w = is_regular(Which::T1) ? Which::T1 : Which::T3;
  else
    w = is_regular(Which::T2) ? Which::T2 : Which::T4;
  require_regular(w);

  ElemSpan span;
  for (Label x : window_labels_)
    for (Label y : window_labels_) {
      const Elem2& img = image(w, x, y);
      // sweep of coordinate functionals on the other leg
      std::map<Label, Elem> slices;
      for (const auto& [p, s] : img.c) {
        if (side == LegSide::Left)
          slices[p.second].add(p.first, s);
        else
          slices[p.first].add(p.second, s);
      }
      for (auto& [l, slice] : slices)
        span.insert(std::move(slice));
    }
  leg.basis = span.basis();
  return leg;
}

LegSubspace CanonicalMaps::leg_via_functional(LegSide side, const Functional& f) const {
  LegSubspace leg;
  leg.side = side;
  leg.window_only = window_only();
  Which w;
  if (side == LegSide::Left)
    w = is_regular(Which::T1) ? Which::T1 : Which::T3;
  else
    w = is_regular(Which::T2) ? Which::T2 : Which::T4;
  require_regular(w);

  ElemSpan span;
  for (Label x : window_labels_)
    for (Label y : window_labels_) {
      const Elem2& img = image(w, x, y);
      span.insert(side == LegSide::Left ? f.slice_second(img) : f.slice_first(img));
    }
  leg.basis = span.basis();
  return leg;
}

CheckResult CanonicalMaps::check_full() const {
  CheckResult res;
  res.window_only = window_only();
  for (LegSide side : {LegSide::Left, LegSide::Right}) {
    LegSubspace leg = compute_leg(side);
    ElemSpan span;
    for (const auto& v : leg.basis)
      span.insert(v);
    bool full = true;
    if (alg_->is_dense()) {
      full = leg.dim() == alg_->dim();
    } else {
      for (Label l : window_labels_)
        if (!span.contains(alg_->basis_elem(l))) {
          full = false;
          break;
        }
    }
    if (!full) {
      res.witness = std::string(side == LegSide::Left ? "left" : "right") +
                    " leg has dimension " + std::to_string(leg.dim());
      return res;
    }
  }
  res.pass = true;
  return res;
}

CheckResult CanonicalMaps::check_counit(const Functional& eps) const {
  require_regular(Which::T1);
  require_regular(Which::T2);
  CheckResult res;
  res.window_only = window_only();
  const Algebra& A = *alg_;
  for (Label a : window_labels_)
    for (Label b : window_labels_) {
      if (!(eps.slice_first(image(Which::T1, a, b)) == A.basis_product(a, b))) {
        res.witness = "(eps(x)id) at (" + A.label_name(a) + "," + A.label_name(b) + ")";
        return res;
      }
      if (!(eps.slice_second(image(Which::T2, a, b)) == A.basis_product(a, b))) {
        res.witness = "(id(x)eps) at (" + A.label_name(a) + "," + A.label_name(b) + ")";
        return res;
      }
    }
  res.pass = true;
  return res;
}

const RowSpace& CanonicalMaps::range_span(bool left_multiplied_by_delta) const {
  auto& cache = left_multiplied_by_delta ? range_right_ : range_left_;
  if (cache)
    return *cache;
  const Algebra& A = *alg_;
  const std::size_t n = A.dim();
  RowSpace span;
  for (Label i = 0; i < static_cast<Label>(n); ++i) {
    Mult2 m = delta_->of_basis(i);
    for (Label j = 0; j < static_cast<Label>(n); ++j)
      for (Label k = 0; k < static_cast<Label>(n); ++k) {
        Elem2 z = outer(A.basis_elem(j), A.basis_elem(k));
        span.insert(A.to_vec2(left_multiplied_by_delta ? m.right(z) : m.left(z)));
      }
  }
  cache = std::move(span);
  return *cache;
}

} // namespace hopfforge
