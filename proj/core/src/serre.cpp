#include "sseq/serre.hpp"

#include "sseq/errors.hpp"

namespace sseq {

const SimplicialSet& Fibration::fiber() const {
  if (!product) throw UnsupportedInput("the fiber is only available for product fibrations");
  return *product->left;
}

Fibration product_fibration(const SimplicialSet& fiber, const SimplicialSet& base, std::optional<int> truncation) {
  auto p = std::make_shared<ProductSet>(product(fiber, base, truncation));
  std::vector<std::vector<Simplex>> images(p->components.size());
  for (std::size_t n = 0; n < p->components.size(); ++n)
    for (const auto& [x, y] : p->components[n]) images[n].push_back(y);
  Fibration fib;
  fib.total = p->set;
  fib.base = p->right;
  fib.map = SimplicialMap(p->set, p->right, std::move(images));
  fib.fiber_basepoint = 0;
  fib.product = std::move(p);
  return fib;
}

void validate_fibration(const Fibration& fib) {
  if (!fib.total || !fib.base) throw InvalidSimplicialSet("fibration is missing its total space or base");
  fib.map.validate();
  if (fib.base->count(0) <= fib.fiber_basepoint) throw InvalidSimplicialSet("fiber basepoint is not a vertex of the base");
  if (!fib.base->connected()) throw UnsupportedInput("the base of a fibration must be connected");
}

int degeneracy_level(const Fibration& fib, const Simplex& alpha) { return alpha.dim() - fib.map.apply(alpha).nd_dim; }

SerreFiltration serre_filtration(const Fibration& fib, Field f, bool validate) {
  if (validate) validate_fibration(fib);
  const SimplicialSet& e = *fib.total;
  ChainComplex c = normalized_chains(e, f);
  std::vector<std::vector<int>> level(c.top_degree() + 1);
  for (int n = 0; n <= c.top_degree(); ++n)
    for (std::size_t k = 0; k < e.count(n); ++k)
      level[n].push_back(n - degeneracy_level(fib, Simplex::nondegenerate(n, k)));
  SerreFiltration sf{fib, f, {}, level};
  sf.coalgebra.filtered = FilteredComplex::from_levels(std::move(c), level);
  sf.coalgebra.comult = chain_comult(e, f);
  sf.coalgebra.counit = augmentation(e, f);
  if (e.count(0) > 0) sf.coalgebra.unit = Vector::unit(f, e.count(0), 0);
  if (validate) {
    sf.coalgebra.filtered.validate();
    sf.coalgebra.validate();
  }
  return sf;
}

// ---------------------------------------------------------------- C_p(B; C_q(F))

namespace {

const ProductSet& product_of(const SerreFiltration& sf) {
  if (!sf.fibration.is_product()) throw UnsupportedInput("only product fibrations carry the canonical lift");
  return *sf.fibration.product;
}

// Coefficient generator (u, V) for a simplex U ⊗ V, or nullopt when either is
// degenerate. Throws if U leaves the fiber over V(0).
std::optional<std::pair<std::size_t, std::size_t>> coefficient_of(const ProductSet& P, const Simplex& front,
                                                                  const Simplex& back) {
  if (front.degenerate() || back.degenerate()) return std::nullopt;
  const auto& [x, y] = P.components.at(front.nd_dim).at(front.index);
  if (y.nd_dim != 0 || P.right->vertex(back, 0).index != y.index)
    throw InternalConsistency("front face does not lie in the fiber over the base vertex");
  if (x.degenerate()) throw InternalConsistency("fiber part of a non-degenerate fiber simplex is degenerate");
  return std::pair(x.index, back.index);
}

// φ^{a,c} of a single simplex α of E, as (u, V) or nothing.
std::optional<std::pair<std::size_t, std::size_t>> phi_simplex(const SerreFiltration& sf, int c, const Simplex& alpha) {
  const ProductSet& P = product_of(sf);
  const SimplicialSet& e = *P.set;
  int n = alpha.dim();
  Simplex front = e.apply(alpha, interval_map(0, c, n));
  Simplex back = sf.fibration.map.apply(e.apply(alpha, interval_map(c, n, n)));
  return coefficient_of(P, front, back);
}

}  // namespace

BaseCoefficientComplex::BaseCoefficientComplex(const SerreFiltration& sf) : field_(sf.field) {
  const ProductSet& P = product_of(sf);
  fiber_ = P.left;
  base_ = P.right;
}

std::size_t BaseCoefficientComplex::dim(int p, int q) const {
  if (p < 0 || q < 0) return 0;
  return fiber_->count(q) * base_->count(p);
}

std::size_t BaseCoefficientComplex::index(int p, int /*q*/, std::size_t u, std::size_t v) const {
  return u * base_->count(p) + v;
}

std::pair<std::size_t, std::size_t> BaseCoefficientComplex::pair_of(int p, int /*q*/, std::size_t idx) const {
  return {idx / base_->count(p), idx % base_->count(p)};
}

std::string BaseCoefficientComplex::label(int p, int q, std::size_t idx) const {
  auto [u, v] = pair_of(p, q, idx);
  return fiber_->simplex_name(q, u) + "⊗" + base_->simplex_name(p, v);
}

Matrix BaseCoefficientComplex::boundary(int p, int q) const {
  Matrix m(field_, dim(p, q - 1), dim(p, q));
  if (q <= 0) return m;
  for (std::size_t u = 0; u < fiber_->count(q); ++u) {
    Simplex us = Simplex::nondegenerate(q, u);
    for (int i = 0; i <= q; ++i) {
      Simplex face = fiber_->face(us, i);
      if (face.degenerate()) continue;
      for (std::size_t v = 0; v < base_->count(p); ++v) {
        std::size_t row = index(p, q - 1, face.index, v), col = index(p, q, u, v);
        m.set(row, col, m.at(row, col) + sign_scalar(field_, i));
      }
    }
  }
  return m;
}

Matrix phi(const SerreFiltration& sf, int p, int q) {
  BaseCoefficientComplex coef(sf);
  const SimplicialSet& e = *sf.fibration.total;
  int n = p + q;
  Field f = sf.field;
  Matrix m(f, coef.dim(p, q), e.count(n));
  for (std::size_t k = 0; k < e.count(n); ++k) {
    if (sf.level[n][k] > p) continue;
    auto uv = phi_simplex(sf, q, Simplex::nondegenerate(n, k));
    if (uv) m.set(coef.index(p, q, uv->first, uv->second), k, Scalar::one(f));
  }
  return m;
}

Vector psi(const SerreFiltration& sf, int p, int q, std::size_t u, std::size_t v) {
  const ProductSet& P = product_of(sf);
  return ez_of(P, sf.field, Simplex::nondegenerate(q, u), Simplex::nondegenerate(p, v));
}

Matrix psi_matrix(const SerreFiltration& sf, int p, int q) {
  BaseCoefficientComplex coef(sf);
  std::vector<Vector> cols;
  for (std::size_t idx = 0; idx < coef.dim(p, q); ++idx) {
    auto [u, v] = coef.pair_of(p, q, idx);
    cols.push_back(psi(sf, p, q, u, v));
  }
  return Matrix::from_columns(sf.field, sf.fibration.total->count(p + q), std::move(cols));
}

// ---------------------------------------------------------------- ∇⁰

CoefficientTensorLayout::CoefficientTensorLayout(const BaseCoefficientComplex& coef, int p, int q)
    : coef_(coef), p_(p), q_(q) {
  for (int a = 0; a <= p; ++a)
    for (int c = 0; c <= q; ++c) {
      offset_[{a, c}] = dim_;
      dim_ += coef.dim(a, c) * coef.dim(p - a, q - c);
    }
}

std::size_t CoefficientTensorLayout::index(int a, int c, std::size_t x, std::size_t y) const {
  return offset_.at({a, c}) + x * coef_.dim(p_ - a, q_ - c) + y;
}

std::string CoefficientTensorLayout::label(std::size_t idx) const {
  for (auto it = offset_.rbegin(); it != offset_.rend(); ++it) {
    if (idx < it->second) continue;
    auto [a, c] = it->first;
    std::size_t rd = coef_.dim(p_ - a, q_ - c);
    if (rd == 0) continue;
    std::size_t loc = idx - it->second;
    return "(" + coef_.label(a, c, loc / rd) + ")⊗(" + coef_.label(p_ - a, q_ - c, loc % rd) + ")";
  }
  throw RangeError("coefficient tensor index out of range");
}

Nabla0Result nabla0(const SerreFiltration& sf, int p, int q, std::size_t u, std::size_t v) {
  const ProductSet& P = product_of(sf);
  const SimplicialSet& F = *P.left;
  const SimplicialSet& B = *P.right;
  Field f = sf.field;
  if (u >= F.count(q) || v >= B.count(p)) throw RangeError("nabla0: generator out of range");
  BaseCoefficientComplex coef(sf);
  CoefficientTensorLayout layout(coef, p, q);
  int n = p + q;
  Simplex us = Simplex::nondegenerate(q, u), vs = Simplex::nondegenerate(p, v);

  Nabla0Result out;
  out.p = p;
  out.q = q;
  out.u = u;
  out.v = v;
  out.shuffles = enumerate_shuffles(q, p);
  out.total = Vector(f, layout.dim());
  for (std::size_t s = 0; s < out.shuffles.size(); ++s) {
    const Shuffle& sh = out.shuffles[s];
    bool exc = is_exceptional(sh);
    auto w = is_simple(sh);
    for (int j = 0; j <= n; ++j) {
      Nabla0Entry entry{s, j, w.has_value(), exc, w, Vector(f, layout.dim())};
      Simplex x = P.pair(F.apply(us, compose(sh.mu, interval_map(0, j, n))),
                         B.apply(vs, compose(sh.sigma, interval_map(0, j, n))));
      Simplex y = P.pair(F.apply(us, compose(sh.mu, interval_map(j, n, n))),
                         B.apply(vs, compose(sh.sigma, interval_map(j, n, n))));
      if (!x.degenerate() && !y.degenerate()) {
        int a = sh.sigma(j), c = j - a;
        auto px = phi_simplex(sf, c, x);
        auto py = phi_simplex(sf, q - c, y);
        if (px && py)
          entry.value.set(layout.index(a, c, coef.index(a, c, px->first, px->second),
                                       coef.index(p - a, q - c, py->first, py->second)),
                          Scalar(f, sh.sign));
      }
      if (!entry.value.is_zero()) {
        if (!entry.simple) out.nonsimple_zero = false;
        else if (!exc && j != w->b) out.off_b_zero = false;
      }
      out.total = out.total + entry.value;
      out.ledger.push_back(std::move(entry));
    }
  }

  // Δ_F(U) ⊗̃ Δ_B(V) = Σ (-1)^{(q-i)k} (u[0..i] □ V[0..k]) ⊗ (u[i..q] □ V[k..p]).
  out.expected = Vector(f, layout.dim());
  for (int i = 0; i <= q; ++i) {
    Simplex u1 = F.apply(us, interval_map(0, i, q)), u2 = F.apply(us, interval_map(i, q, q));
    if (u1.degenerate() || u2.degenerate()) continue;
    for (int k = 0; k <= p; ++k) {
      Simplex v1 = B.apply(vs, interval_map(0, k, p)), v2 = B.apply(vs, interval_map(k, p, p));
      if (v1.degenerate() || v2.degenerate()) continue;
      std::size_t idx =
          layout.index(k, i, coef.index(k, i, u1.index, v1.index), coef.index(p - k, q - i, u2.index, v2.index));
      out.expected.add(idx, sign_scalar(f, static_cast<long long>(q - i) * k));
    }
  }
  return out;
}

// ---------------------------------------------------------------- E²

E2Report e2_identify(const SerreFiltration& sf, const CoalgebraSpectralSequence& css) {
  const ProductSet& P = product_of(sf);
  const SimplicialSet& F = *P.left;
  const SimplicialSet& B = *P.right;
  Field f = sf.field;
  E2Report rep;

  ChainComplex cf = normalized_chains(F, f), cb = normalized_chains(B, f);
  Homology hf = compute_homology(cf), hb = compute_homology(cb);
  GradedCoalgebra hcb = homology_coalgebra_unchecked(B, f);
  GradedCoalgebra hcf = homology_coalgebra_unchecked(F, f);
  rep.target = tensor_coalgebra(hcb, hcf);
  std::size_t df = hcf.dim();
  auto offsets = [](const Homology& h) {
    std::vector<std::size_t> off;
    std::size_t n = 0;
    for (std::size_t d : h.dims()) {
      off.push_back(n);
      n += d;
    }
    return off;
  };
  std::vector<std::size_t> off_f = offsets(hf), off_b = offsets(hb);

  rep.page = css.page_coalgebra(2);
  auto page = css.sseq().page(2);
  auto poff = css.page_offsets(2);
  std::size_t d = rep.page.dim(), dt = rep.target.dim();

  std::vector<Vector> cols(d, Vector(f, dt));
  for (const auto& b : page->bidegrees()) {
    std::size_t n = page->dim(b);
    if (n == 0) continue;
    int p = b.p, q = b.q;
    std::size_t expect = hb.dim(p) * hf.dim(q);
    if (n != expect) {
      rep.dims_match = false;
      rep.messages.push_back("E2 at (" + std::to_string(p) + "," + std::to_string(q) + ") has dimension " +
                             std::to_string(n) + ", expected " + std::to_string(expect));
    }
    Matrix ph = phi(sf, p, q);
    BaseCoefficientComplex coef(sf);
    Scalar swap = sign_scalar(f, static_cast<long long>(p) * q);
    const auto& lifts = page->terms.at(b).lifts();
    for (std::size_t k = 0; k < n; ++k) {
      Vector img = ph.apply(lifts[k]);
      Vector col(f, dt);
      for (const auto& [idx, s] : img.entries()) {
        auto [u, v] = coef.pair_of(p, q, idx);
        for (const auto& [i, si] : hb.projection[p].column(v).entries())
          for (const auto& [j, sj] : hf.projection[q].column(u).entries())
            col.add((off_b[p] + i) * df + off_f[q] + j, swap * s * si * sj);
      }
      cols[poff.at(b) + k] = std::move(col);
    }
  }
  rep.identification = Matrix::from_columns(f, dt, cols);
  if (d != dt || rank(rep.identification) != d) {
    rep.iso = false;
    rep.messages.push_back("E2 does not map isomorphically onto H(B)⊗H(F)");
    return rep;
  }

  Echelon inv(f, dt, d);
  for (std::size_t g = 0; g < d; ++g) inv.insert(rep.identification.column(g), Vector::unit(f, d, g));
  auto transport = [&](const Vector& t) {
    std::vector<Vector::Entry> e;
    for (const auto& [idx, s] : t.entries()) {
      const Vector& l = rep.identification.column(idx / d);
      const Vector& r = rep.identification.column(idx % d);
      for (const auto& [i, si] : l.entries())
        for (const auto& [j, sj] : r.entries()) e.emplace_back(i * dt + j, s * si * sj);
    }
    return Vector::from_entries(f, dt * dt, std::move(e));
  };
  for (std::size_t t = 0; t < dt; ++t) {
    Vector pre = *inv.tag_combination(Vector::unit(f, dt, t));
    Vector moved = transport(rep.page.apply_comult(pre));
    if (moved != rep.target.comult(t)) {
      rep.comult_match = false;
      rep.messages.push_back("comultiplication of " + rep.target.label(t) + " differs: " +
                             rep.target.format_tensor(moved) + " vs " + rep.target.format_tensor(rep.target.comult(t)));
    }
    rep.transported.push_back(std::move(moved));
  }
  return rep;
}

E2Report e2_identify(const SerreFiltration& sf) {
  CoalgebraSpectralSequence css(sf.coalgebra, false);
  return e2_identify(sf, css);
}

}  // namespace sseq
