#include "sseq/sseq.hpp"

#include <algorithm>

#include "sseq/errors.hpp"
#include "sseq/parallel.hpp"

namespace sseq {

std::size_t Page::dim(Bidegree b) const {
  auto it = terms.find(b);
  return it == terms.end() ? 0 : it->second.dim();
}

std::vector<Bidegree> Page::bidegrees() const {
  std::vector<Bidegree> out;
  for (const auto& [b, t] : terms) out.push_back(b);
  std::sort(out.begin(), out.end(), [](Bidegree x, Bidegree y) {
    return std::pair(x.total(), x.p) < std::pair(y.total(), y.p);
  });
  return out;
}

std::map<Bidegree, std::size_t> Page::dims() const {
  std::map<Bidegree, std::size_t> out;
  for (const auto& [b, t] : terms) out[b] = t.dim();
  return out;
}

// ---------------------------------------------------------------- pages

namespace {

Subspace cycles_of(const FilteredComplex& fc, int r, Bidegree b) {
  int m = b.total();
  const Subspace& fp = fc.level(b.p, m);
  if (m == 0) return fp;
  return preimage(fc.complex().boundary(m), fc.level(b.p - r, m - 1), fp);
}

Subspace boundaries_of(const FilteredComplex& fc, int r, Bidegree b) {
  int m = b.total();
  const Subspace& fp = fc.level(b.p, m);
  if (m + 1 > fc.top_degree()) return Subspace(fc.field(), fc.complex().dim(m));
  Subspace im = image_of(fc.complex().boundary(m + 1), fc.level(b.p + r - 1, m + 1));
  return fp.intersect(im);
}

PageTerm make_term(const FilteredComplex& fc, int r, Bidegree b) {
  Subspace z = cycles_of(fc, r, b);
  Subspace below = fc.level(b.p - 1, b.total());
  Subspace bd = boundaries_of(fc, r, b);
  return {b, z, QuotientPresentation(z + below, bd + below, z)};
}

Matrix page_differential_of(const FilteredComplex& fc, const Page& page, Bidegree b) {
  const PageTerm& src = page.terms.at(b);
  Bidegree t = page.target(b);
  auto it = page.terms.find(t);
  if (it == page.terms.end()) return Matrix(fc.field(), 0, src.dim());
  Matrix d = fc.complex().boundary(b.total());
  std::vector<Vector> cols;
  for (const auto& z : src.lifts()) cols.push_back(it->second.quotient.project(d.apply(z)));
  return Matrix::from_columns(fc.field(), it->second.dim(), std::move(cols));
}

Page build_page_impl(const FilteredComplex& fc, int r) {
  if (r < 0) throw RangeError("page index must be non-negative");
  Page page;
  page.r = r;
  page.field = fc.field();
  std::vector<Bidegree> bs = fc.bidegrees();
  std::vector<PageTerm> terms(bs.size());
  parallel_for(bs.size(), [&](std::size_t i) { terms[i] = make_term(fc, r, bs[i]); });
  for (std::size_t i = 0; i < bs.size(); ++i) page.terms.emplace(bs[i], std::move(terms[i]));
  std::vector<Matrix> ds(bs.size());
  parallel_for(bs.size(), [&](std::size_t i) { ds[i] = page_differential_of(fc, page, bs[i]); });
  for (std::size_t i = 0; i < bs.size(); ++i) page.differentials.emplace(bs[i], std::move(ds[i]));
  return page;
}

}  // namespace

Subspace almost_cycles(const FilteredComplex& fc, int r, int p, int q) { return cycles_of(fc, r, {p, q}); }
Subspace almost_boundaries(const FilteredComplex& fc, int r, int p, int q) { return boundaries_of(fc, r, {p, q}); }
Page build_page(const FilteredComplex& fc, int r) { return build_page_impl(fc, r); }

SpectralSequence::SpectralSequence(FilteredComplex fc) : fc_(std::move(fc)) {}

Subspace SpectralSequence::almost_cycles(int r, Bidegree b) const { return cycles_of(fc_, r, b); }
Subspace SpectralSequence::almost_boundaries(int r, Bidegree b) const { return boundaries_of(fc_, r, b); }
PageTerm SpectralSequence::term(int r, Bidegree b) const { return make_term(fc_, r, b); }

std::shared_ptr<const Page> SpectralSequence::page(int r) const {
  {
    std::lock_guard lock(mutex_);
    auto it = cache_.find(r);
    if (it != cache_.end()) return it->second;
  }
  auto built = std::make_shared<const Page>(build(r));
  std::lock_guard lock(mutex_);
  return cache_.emplace(r, built).first->second;
}

Page SpectralSequence::build(int r) const { return build_page_impl(fc_, r); }

int SpectralSequence::stable_page() const { return fc_.stable_page(); }

Page SpectralSequence::infinity_page() const {
  if (!fc_.first_quadrant())
    throw UnsupportedInput("E-infinity is only computed for first-quadrant filtrations");
  int top = stable_page();
  Page out = *page(top);
  for (const auto& b : fc_.bidegrees()) {
    std::size_t d = out.dim(b);
    int s = top;
    while (s > 1 && page(s - 1)->dim(b) == d) --s;
    out.stabilization[b] = s;
  }
  return out;
}

Page infinity_page(const FilteredComplex& fc) { return SpectralSequence(fc).infinity_page(); }

// ---------------------------------------------------------------- filtered basis

FilteredBasis filtered_basis(const FilteredComplex& fc) {
  const ChainComplex& c = fc.complex();
  Field f = c.field();
  int top = c.top_degree();

  // Basis of each C_m adapted to the flag of levels, in increasing level.
  std::vector<std::vector<Vector>> adapted(top + 1);
  std::vector<std::vector<int>> alevel(top + 1);
  std::vector<Echelon> coords;
  for (int m = 0; m <= top; ++m) {
    std::size_t n = c.dim(m);
    Echelon e(f, n, n);
    for (int p = fc.low(m); p <= fc.high(m) && adapted[m].size() < n; ++p)
      for (const auto& v : fc.level(p, m).basis())
        if (adapted[m].size() < n && !e.insert(v, Vector::unit(f, n, adapted[m].size()))) {
          adapted[m].push_back(v);
          alevel[m].push_back(p);
        }
    if (adapted[m].size() != n) throw InternalConsistency("filtration does not exhaust degree " + std::to_string(m));
    coords.push_back(std::move(e));
  }

  // Column reduction of ∂ in adapted coordinates; low = last nonzero position.
  std::vector<std::vector<Vector>> red(top + 1), vmat(top + 1);
  std::vector<std::vector<long>> birth_of(top + 1);  // birth index in m-1 -> killing column in m
  for (int m = 0; m <= top; ++m) {
    std::size_t n = c.dim(m);
    red[m].assign(n, Vector(f, m > 0 ? c.dim(m - 1) : 0));
    for (std::size_t k = 0; k < n; ++k) vmat[m].push_back(Vector::unit(f, n, k));
    if (m == 0) continue;
    birth_of[m].assign(c.dim(m - 1), -1);
    Matrix d = c.boundary(m);
    for (std::size_t k = 0; k < n; ++k) {
      Vector r = *coords[m - 1].tag_combination(d.apply(adapted[m][k]));
      Vector v = vmat[m][k];
      while (!r.is_zero()) {
        std::size_t low = r.entries().back().first;
        long other = birth_of[m][low];
        if (other < 0) break;
        Scalar q = r.entries().back().second / red[m][other].entries().back().second;
        r.axpy(-q, red[m][other]);
        v.axpy(-q, vmat[m][other]);
      }
      if (!r.is_zero()) birth_of[m][r.entries().back().first] = static_cast<long>(k);
      red[m][k] = std::move(r);
      vmat[m][k] = std::move(v);
    }
  }

  FilteredBasis fb;
  fb.gens.resize(top + 1);
  fb.level = alevel;
  fb.gap.resize(top + 1);
  fb.inverse.resize(top + 1);
  for (int m = 0; m <= top; ++m) {
    std::size_t n = c.dim(m);
    for (std::size_t i = 0; i < n; ++i) {
      long killer = m + 1 <= top ? birth_of[m + 1][i] : -1;
      Vector g;
      int gap = -1;
      if (killer >= 0) {
        g = red[m + 1][killer];
        gap = alevel[m + 1][killer] - alevel[m][i];
      } else {
        g = vmat[m][i];
        if (m > 0 && !red[m][i].is_zero()) gap = alevel[m][i] - alevel[m - 1][red[m][i].entries().back().first];
      }
      Vector orig(f, n);
      for (const auto& [k, s] : g.entries()) orig.axpy(s, adapted[m][k]);
      fb.gens[m].push_back(std::move(orig));
      fb.gap[m].push_back(gap);
    }
    Echelon inv(f, n, n);
    for (std::size_t k = 0; k < n; ++k)
      if (inv.insert(fb.gens[m][k], Vector::unit(f, n, k)))
        throw InternalConsistency("filtered basis is not a basis in degree " + std::to_string(m));
    for (std::size_t i = 0; i < n; ++i) fb.inverse[m].push_back(*inv.tag_combination(Vector::unit(f, n, i)));
  }
  return fb;
}

// ---------------------------------------------------------------- tensor pages

namespace {

std::vector<std::size_t> degree_dims(const ChainComplex& c) {
  std::vector<std::size_t> d;
  for (int m = 0; m <= c.top_degree(); ++m) d.push_back(c.dim(m));
  return d;
}

}  // namespace

TensorPageIdentification::TensorPageIdentification(const SpectralSequence& d)
    : d_(d),
      basis_(filtered_basis(d.filtered())),
      layout_(degree_dims(d.filtered().complex()), degree_dims(d.filtered().complex()),
              2 * d.filtered().top_degree()) {}

const std::vector<std::vector<Vector>>& TensorPageIdentification::classes(int r) const {
  {
    std::lock_guard lock(mutex_);
    auto it = classes_.find(r);
    if (it != classes_.end()) return *it->second;
  }
  auto page = d_.page(r);
  auto out = std::make_unique<std::vector<std::vector<Vector>>>(basis_.gens.size());
  for (std::size_t m = 0; m < basis_.gens.size(); ++m)
    for (std::size_t k = 0; k < basis_.gens[m].size(); ++k) {
      if (!basis_.survives(static_cast<int>(m), k, r)) {
        (*out)[m].emplace_back();
        continue;
      }
      int lv = basis_.level[m][k];
      (*out)[m].push_back(page->terms.at({lv, static_cast<int>(m) - lv}).quotient.project(basis_.gens[m][k]));
    }
  std::lock_guard lock(mutex_);
  return *classes_.emplace(r, std::move(out)).first->second;
}

std::vector<TensorBlock> TensorPageIdentification::blocks(int r, Bidegree b) const {
  const FilteredComplex& fc = d_.filtered();
  auto page = d_.page(r);
  int m = b.total(), top = fc.top_degree();
  std::vector<TensorBlock> out;
  std::size_t offset = 0;
  for (int i = std::max(0, m - top); i <= std::min(m, top); ++i) {
    int j = m - i;
    for (int a = fc.low(i); a <= fc.high(i); ++a) {
      Bidegree left{a, i - a}, right{b.p - a, j - (b.p - a)};
      std::size_t dl = page->dim(left), dr = page->dim(right);
      if (dl == 0 || dr == 0) continue;
      out.push_back({left, right, offset, dl, dr});
      offset += dl * dr;
    }
  }
  return out;
}

std::size_t TensorPageIdentification::target_dim(int r, Bidegree b) const {
  std::size_t n = 0;
  for (const auto& blk : blocks(r, b)) n += blk.left_dim * blk.right_dim;
  return n;
}

Vector TensorPageIdentification::phi(int r, Bidegree b, const Vector& w) const {
  int m = b.total();
  if (m < 0 || m > layout_.max_degree() || w.dim() != layout_.dim(m))
    throw DimensionMismatch("phi: element has the wrong degree");
  Field f = d_.field();
  std::map<std::tuple<int, std::size_t, std::size_t>, Scalar> acc;
  for (const auto& [idx, s] : w.entries()) {
    auto pos = layout_.locate(m, idx);
    int a = pos.left_degree;
    for (const auto& [k, sk] : basis_.inverse[a][pos.left].entries())
      for (const auto& [l, sl] : basis_.inverse[m - a][pos.right].entries()) {
        Scalar t = s * sk * sl;
        auto [it, fresh] = acc.try_emplace({a, k, l}, t);
        if (!fresh) it->second += t;
      }
  }
  auto blks = blocks(r, b);
  std::map<std::pair<Bidegree, Bidegree>, const TensorBlock*> where;
  std::size_t td = 0;
  for (const auto& blk : blks) {
    where[{blk.left, blk.right}] = &blk;
    td += blk.left_dim * blk.right_dim;
  }
  const auto& cls = classes(r);
  Vector out(f, td);
  for (const auto& [key, s] : acc) {
    if (s.is_zero()) continue;
    auto [a, k, l] = key;
    int lk = basis_.level[a][k], ll = basis_.level[m - a][l];
    if (lk + ll > b.p)
      throw InternalConsistency("element of the tensor page at (" + std::to_string(b.p) + "," + std::to_string(b.q) +
                                ") does not lie in filtration " + std::to_string(b.p));
    if (lk + ll < b.p || cls[a][k].dim() == 0 || cls[m - a][l].dim() == 0) continue;
    auto it = where.find({Bidegree{lk, a - lk}, Bidegree{ll, m - a - ll}});
    if (it == where.end()) throw InternalConsistency("surviving tensor class has no block");
    const TensorBlock& blk = *it->second;
    for (const auto& [u, su] : cls[a][k].entries())
      for (const auto& [v, sv] : cls[m - a][l].entries()) out.add(blk.offset + u * blk.right_dim + v, s * su * sv);
  }
  return out;
}

Matrix TensorPageIdentification::tensor_differential(int r, Bidegree b) const {
  Field f = d_.field();
  auto src = blocks(r, b);
  Bidegree t{b.p - r, b.q + r - 1};
  std::vector<TensorBlock> tgt;
  if (t.total() >= 0) tgt = blocks(r, t);
  std::map<std::pair<Bidegree, Bidegree>, const TensorBlock*> where;
  std::size_t rows = 0;
  for (const auto& blk : tgt) {
    where[{blk.left, blk.right}] = &blk;
    rows += blk.left_dim * blk.right_dim;
  }
  std::size_t cols = 0;
  for (const auto& blk : src) cols += blk.left_dim * blk.right_dim;
  auto page = d_.page(r);
  std::vector<std::tuple<std::size_t, std::size_t, Scalar>> trip;
  auto target_block = [&](Bidegree l, Bidegree rt) -> const TensorBlock& {
    auto it = where.find({l, rt});
    if (it == where.end()) throw InternalConsistency("tensor differential hits a missing block");
    return *it->second;
  };
  for (const auto& blk : src) {
    Bidegree l2{blk.left.p - r, blk.left.q + r - 1};
    Bidegree r2{blk.right.p - r, blk.right.q + r - 1};
    const Matrix& dl = page->differential(blk.left);
    const Matrix& dr = page->differential(blk.right);
    Scalar sign = sign_scalar(f, blk.left.total());
    for (std::size_t k = 0; k < blk.left_dim; ++k)
      for (std::size_t l = 0; l < blk.right_dim; ++l) {
        std::size_t col = blk.offset + k * blk.right_dim + l;
        for (const auto& [k2, s] : dl.column(k).entries()) {
          const TensorBlock& tb = target_block(l2, blk.right);
          trip.emplace_back(tb.offset + k2 * tb.right_dim + l, col, s);
        }
        for (const auto& [l2i, s] : dr.column(l).entries()) {
          const TensorBlock& tb = target_block(blk.left, r2);
          trip.emplace_back(tb.offset + k * tb.right_dim + l2i, col, sign * s);
        }
      }
  }
  return Matrix::from_triplets(f, rows, cols, trip);
}

bool TensorIsoReport::passes() const {
  for (const auto& e : entries)
    if (e.tensor_dim != e.convolution_dim || !e.invertible || !e.intertwines) return false;
  return true;
}

TensorIsoReport tensor_page_iso(const TensorPageIdentification& ident, const SpectralSequence& tensor_ss, int r) {
  TensorIsoReport rep;
  rep.r = r;
  Field f = ident.base().field();
  auto page = tensor_ss.page(r);
  std::vector<Bidegree> bs = page->bidegrees();
  std::vector<Matrix> isos(bs.size());
  std::vector<TensorIsoEntry> entries(bs.size());
  parallel_for(bs.size(), [&](std::size_t i) {
    Bidegree b = bs[i];
    const PageTerm& term = page->terms.at(b);
    std::size_t td = ident.target_dim(r, b);
    std::vector<Vector> cols;
    for (const auto& z : term.lifts()) cols.push_back(ident.phi(r, b, z));
    isos[i] = Matrix::from_columns(f, td, std::move(cols));
    entries[i].at = b;
    entries[i].tensor_dim = term.dim();
    entries[i].convolution_dim = td;
    entries[i].invertible = td == term.dim() && rank(isos[i]) == td;
  });
  for (std::size_t i = 0; i < bs.size(); ++i) rep.isomorphisms.emplace(bs[i], isos[i]);
  parallel_for(bs.size(), [&](std::size_t i) {
    Bidegree b = bs[i];
    Bidegree t = page->target(b);
    Matrix lhs = ident.tensor_differential(r, b) * isos[i];
    auto it = rep.isomorphisms.find(t);
    Matrix rhs = it == rep.isomorphisms.end() ? Matrix(f, lhs.rows(), lhs.cols())
                                              : it->second * page->differential(b);
    entries[i].intertwines = lhs.rows() == rhs.rows() && lhs == rhs;
  });
  rep.entries = std::move(entries);
  return rep;
}

TensorIsoReport tensor_page_iso(const FilteredComplex& fc, int r) {
  SpectralSequence d(fc);
  TensorPageIdentification ident(d);
  SpectralSequence t(tensor_filtered(fc).filtered);
  return tensor_page_iso(ident, t, r);
}

// ---------------------------------------------------------------- coalgebra pages

CoalgebraSpectralSequence::CoalgebraSpectralSequence(FilteredCoalgebra fcs, bool validate)
    : fcs_(std::move(fcs)), ss_(fcs_.filtered), ident_(ss_) {
  if (validate) fcs_.validate();
}

Vector CoalgebraSpectralSequence::comult_of_chain(int r, Bidegree b, const Vector& z) const {
  return ident_.phi(r, b, fcs_.comult[b.total()].apply(z));
}

Matrix CoalgebraSpectralSequence::page_comult(int r, Bidegree b) const {
  auto page = ss_.page(r);
  std::size_t td = ident_.target_dim(r, b);
  std::vector<Vector> cols;
  auto it = page->terms.find(b);
  if (it != page->terms.end())
    for (const auto& z : it->second.lifts()) cols.push_back(comult_of_chain(r, b, z));
  return Matrix::from_columns(ss_.field(), td, std::move(cols));
}

std::shared_ptr<const Page> CoalgebraSpectralSequence::page_with_comult(int r) const {
  {
    std::lock_guard lock(mutex_);
    auto it = comult_pages_.find(r);
    if (it != comult_pages_.end()) return it->second;
  }
  auto out = std::make_shared<Page>(*ss_.page(r));
  std::vector<Bidegree> bs = out->bidegrees();
  std::vector<Matrix> ms(bs.size());
  std::vector<std::vector<TensorBlock>> blks(bs.size());
  parallel_for(bs.size(), [&](std::size_t i) {
    ms[i] = page_comult(r, bs[i]);
    blks[i] = ident_.blocks(r, bs[i]);
  });
  for (std::size_t i = 0; i < bs.size(); ++i) {
    out->comultiplications.emplace(bs[i], std::move(ms[i]));
    out->comult_blocks.emplace(bs[i], std::move(blks[i]));
  }
  std::lock_guard lock(mutex_);
  return comult_pages_.emplace(r, std::move(out)).first->second;
}

std::map<Bidegree, std::size_t> CoalgebraSpectralSequence::page_offsets(int r) const {
  auto page = ss_.page(r);
  std::map<Bidegree, std::size_t> off;
  std::size_t n = 0;
  for (const auto& b : page->bidegrees()) {
    off[b] = n;
    n += page->dim(b);
  }
  return off;
}

GradedCoalgebra CoalgebraSpectralSequence::page_coalgebra(int r) const {
  auto page = page_with_comult(r);
  auto off = page_offsets(r);
  Field f = ss_.field();
  std::size_t d = 0;
  std::vector<CoalgebraGenerator> basis;
  for (const auto& b : page->bidegrees())
    for (std::size_t k = 0; k < page->dim(b); ++k) {
      basis.push_back({b.total(), "[" + std::to_string(b.p) + "," + std::to_string(b.q) + "]" + std::to_string(k), b.p});
      ++d;
    }
  std::vector<Vector> comult;
  for (const auto& b : page->bidegrees()) {
    const Matrix& m = page->comultiplications.at(b);
    const auto& blks = page->comult_blocks.at(b);
    for (std::size_t k = 0; k < page->dim(b); ++k) {
      std::vector<Vector::Entry> e;
      for (const auto& [idx, s] : m.column(k).entries()) {
        auto blk = std::upper_bound(blks.begin(), blks.end(), idx,
                                    [](std::size_t v, const TensorBlock& t) { return v < t.offset; }) -
                   1;
        std::size_t loc = idx - blk->offset;
        std::size_t kl = loc / blk->right_dim, kr = loc % blk->right_dim;
        e.emplace_back((off.at(blk->left) + kl) * d + off.at(blk->right) + kr, s);
      }
      comult.push_back(Vector::from_entries(f, d * d, std::move(e)));
    }
  }
  Vector counit(f, d);
  for (const auto& b : page->bidegrees()) {
    if (b.total() != 0) continue;
    const auto& lifts = page->terms.at(b).lifts();
    for (std::size_t k = 0; k < lifts.size(); ++k) {
      Scalar s = Scalar::zero(f);
      for (const auto& [i, t] : lifts[k].entries()) s += t * fcs_.counit[i];
      counit.set(off.at(b) + k, s);
    }
  }
  return GradedCoalgebra(f, std::move(basis), std::move(comult), std::move(counit));
}

Matrix CoalgebraSpectralSequence::page_differential(int r) const {
  auto page = ss_.page(r);
  auto off = page_offsets(r);
  std::size_t d = 0;
  for (const auto& [b, n] : page->dims()) d += n;
  std::vector<std::tuple<std::size_t, std::size_t, Scalar>> trip;
  for (const auto& b : page->bidegrees()) {
    const Matrix& m = page->differential(b);
    if (m.rows() == 0) continue;
    std::size_t t = off.at(page->target(b));
    for (std::size_t k = 0; k < m.cols(); ++k)
      for (const auto& [i, s] : m.column(k).entries()) trip.emplace_back(t + i, off.at(b) + k, s);
  }
  return Matrix::from_triplets(ss_.field(), d, d, trip);
}

std::optional<Vector> CoalgebraSpectralSequence::unit_class(int r) const {
  if (!fcs_.unit) return std::nullopt;
  const FilteredComplex& fc = fcs_.filtered;
  auto page = ss_.page(r);
  auto off = page_offsets(r);
  std::size_t d = 0;
  for (const auto& [b, n] : page->dims()) d += n;
  for (int p = fc.low(0); p <= fc.high(0); ++p) {
    if (!fc.level(p, 0).contains(*fcs_.unit)) continue;
    Bidegree b{p, -p};
    Vector cls = page->terms.at(b).quotient.project(*fcs_.unit);
    Vector out(ss_.field(), d);
    for (const auto& [i, s] : cls.entries()) out.set(off.at(b) + i, s);
    return out;
  }
  return std::nullopt;
}

CoLeibnizReport CoalgebraSpectralSequence::check_co_leibniz(int r) const {
  CoLeibnizReport rep;
  rep.r = r;
  auto page = ss_.page(r);
  std::vector<Bidegree> bs = page->bidegrees();
  std::vector<char> ok(bs.size(), 1), checked(bs.size(), 0);
  Field f = ss_.field();
  parallel_for(bs.size(), [&](std::size_t i) {
    Bidegree b = bs[i];
    if (page->dim(b) == 0) return;
    checked[i] = 1;
    Bidegree t = page->target(b);
    Matrix rhs = ident_.tensor_differential(r, b) * page_comult(r, b);
    Matrix lhs = page->terms.count(t) ? page_comult(r, t) * page->differential(b)
                                      : Matrix(f, rhs.rows(), rhs.cols());
    ok[i] = lhs.rows() == rhs.rows() && lhs == rhs;
  });
  for (std::size_t i = 0; i < bs.size(); ++i) {
    rep.checked += checked[i];
    if (!ok[i]) rep.violations.push_back(bs[i]);
  }
  return rep;
}

Matrix page_comult(const FilteredCoalgebra& fcs, int r, int p, int q) {
  return CoalgebraSpectralSequence(fcs).page_comult(r, {p, q});
}

CoLeibnizReport check_co_leibniz(const FilteredCoalgebra& fcs, int r) {
  return CoalgebraSpectralSequence(fcs).check_co_leibniz(r);
}

// ---------------------------------------------------------------- E-infinity vs Gr H

namespace {

// Unpaired generators of a FilteredBasis: a homology basis adapted to the
// filtration. Projecting onto them is a filtered chain map C -> H.
struct AdaptedBasis {
  std::vector<Vector> cycles;
  std::vector<int> level;
  std::vector<long> slot;  // generator index -> position in cycles, -1 if paired
};

}  // namespace

GrReport gr_compare(const CoalgebraSpectralSequence& css) {
  GrReport rep;
  const FilteredComplex& fc = css.coalgebra().filtered;
  const ChainComplex& c = fc.complex();
  Field f = c.field();
  if (!fc.first_quadrant()) {
    rep.first_quadrant = false;
    rep.messages.push_back("filtration is not first-quadrant");
    return rep;
  }
  int top = c.top_degree();
  const FilteredBasis& fb = css.identification().basis();
  std::vector<AdaptedBasis> ab(top + 1);
  for (int m = 0; m <= top; ++m) {
    AdaptedBasis& a = ab[m];
    a.slot.assign(fb.gens[m].size(), -1);
    for (std::size_t k = 0; k < fb.gens[m].size(); ++k)
      if (fb.gap[m][k] < 0) {
        a.slot[k] = static_cast<long>(a.cycles.size());
        a.cycles.push_back(fb.gens[m][k]);
        a.level.push_back(fb.level[m][k]);
      }
    std::vector<std::size_t> dims;
    for (int p = fc.low(m); p <= fc.high(m); ++p)
      dims.push_back(static_cast<std::size_t>(std::count_if(a.level.begin(), a.level.end(), [&](int l) { return l <= p; })));
    rep.filtration_low.push_back(fc.low(m));
    rep.filtration_dims.push_back(dims);
  }

  // Global Gr H basis: degree m, adapted index k; ordered by (m, level), matching the page order.
  std::vector<std::vector<std::size_t>> gidx(top + 1);
  std::vector<std::pair<int, std::size_t>> gens;
  for (int m = 0; m <= top; ++m) {
    std::vector<std::size_t> order(ab[m].cycles.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return ab[m].level[x] < ab[m].level[y]; });
    gidx[m].resize(order.size());
    for (std::size_t k : order) {
      gidx[m][k] = gens.size();
      gens.push_back({m, k});
    }
  }
  std::size_t d = gens.size();
  auto adapted = [&](int m, const Vector& chain) {
    Vector out(f, ab[m].cycles.size());
    for (const auto& [j, s] : chain.entries())
      for (const auto& [k, t] : fb.inverse[m][j].entries())
        if (ab[m].slot[k] >= 0) out.add(static_cast<std::size_t>(ab[m].slot[k]), s * t);
    return out;
  };

  int R = css.sseq().stable_page();
  auto page = css.page_with_comult(R);
  auto off = css.page_offsets(R);
  std::size_t ed = 0;
  for (const auto& [b, n] : page->dims()) ed += n;
  if (ed != d) {
    rep.dims_match = false;
    rep.messages.push_back("total dimension of E-infinity differs from homology");
    return rep;
  }

  // Θ : E^∞ -> Gr H as a d×d matrix.
  std::vector<Vector> theta_cols(d);
  for (const auto& b : page->bidegrees()) {
    int m = b.total();
    const auto& lifts = page->terms.at(b).lifts();
    std::size_t grdim = 0;
    for (int lv : ab[m].level) grdim += lv == b.p;
    if (grdim != lifts.size()) {
      rep.dims_match = false;
      rep.messages.push_back("dimension mismatch at (" + std::to_string(b.p) + "," + std::to_string(b.q) + ")");
    }
    for (std::size_t k = 0; k < lifts.size(); ++k) {
      Vector t = adapted(m, lifts[k]);
      Vector col(f, d);
      for (const auto& [i, s] : t.entries())
        if (ab[m].level[i] == b.p) col.set(gidx[m][i], s);
      theta_cols[off.at(b) + k] = col;
    }
  }
  Matrix theta = Matrix::from_columns(f, d, theta_cols);
  if (rank(theta) != d) {
    rep.dims_match = false;
    rep.messages.push_back("E-infinity does not map isomorphically onto Gr H");
  }
  if (!rep.dims_match) return rep;

  // Gr(Δ) on the adapted basis: keep the terms whose levels add up to p.
  const TensorLayout& layout = css.identification().layout();
  std::vector<std::vector<Vector>> q(top + 1);  // chain basis element -> adapted coordinates
  for (int m = 0; m <= top; ++m)
    for (std::size_t j = 0; j < c.dim(m); ++j) q[m].push_back(adapted(m, Vector::unit(f, c.dim(m), j)));
  std::vector<Vector> gr_delta(d);
  for (int m = 0; m <= top; ++m)
    for (std::size_t k = 0; k < ab[m].cycles.size(); ++k) {
      int p = ab[m].level[k];
      Vector img = css.coalgebra().comult[m].apply(ab[m].cycles[k]);
      std::vector<Vector::Entry> e;
      for (const auto& [idx, s] : img.entries()) {
        auto pos = layout.locate(m, idx);
        int a = pos.left_degree, b = m - a;
        for (const auto& [u, su] : q[a][pos.left].entries())
          for (const auto& [v, sv] : q[b][pos.right].entries()) {
            int lv = ab[a].level[u] + ab[b].level[v];
            if (lv > p) {
              rep.adapted_ok = false;
              rep.messages.push_back("comultiplication raises filtration in degree " + std::to_string(m));
            } else if (lv == p) {
              e.emplace_back(gidx[a][u] * d + gidx[b][v], s * su * sv);
            }
          }
      }
      gr_delta[gidx[m][k]] = Vector::from_entries(f, d * d, std::move(e));
    }

  GradedCoalgebra einf = css.page_coalgebra(R);
  for (std::size_t g = 0; g < d; ++g) {
    std::vector<Vector::Entry> e;
    for (const auto& [idx, s] : einf.comult(g).entries()) {
      const Vector& tl = theta.column(idx / d);
      const Vector& tr = theta.column(idx % d);
      for (const auto& [u, su] : tl.entries())
        for (const auto& [v, sv] : tr.entries()) e.emplace_back(u * d + v, s * su * sv);
    }
    Vector lhs = Vector::from_entries(f, d * d, std::move(e));
    Vector rhs(f, d * d);
    for (const auto& [i, s] : theta.column(g).entries()) rhs.axpy(s, gr_delta[i]);
    if (lhs != rhs) {
      rep.comult_match = false;
      rep.messages.push_back("comultiplication mismatch on " + einf.label(g));
    }
  }
  return rep;
}

GrReport gr_compare(const FilteredCoalgebra& fcs) { return gr_compare(CoalgebraSpectralSequence(fcs)); }

Matrix induced_page_map(const ChainMap& f, const SpectralSequence& source, const SpectralSequence& target, int r,
                        Bidegree b) {
  auto sp = source.page(r);
  auto tp = target.page(r);
  auto si = sp->terms.find(b);
  auto ti = tp->terms.find(b);
  std::size_t cols = si == sp->terms.end() ? 0 : si->second.dim();
  std::size_t rows = ti == tp->terms.end() ? 0 : ti->second.dim();
  std::vector<Vector> out;
  for (std::size_t k = 0; k < cols; ++k) {
    Vector img = f[b.total()].apply(si->second.lifts()[k]);
    if (rows == 0) {
      if (!target.filtered().level(b.p, b.total()).contains(img))
        throw FiltrationViolation("chain map does not preserve the filtration", b.total(), k);
      out.emplace_back(f.field, 0);
      continue;
    }
    auto cls = ti->second.quotient.try_project(img);
    if (!cls) throw FiltrationViolation("chain map does not preserve the filtration", b.total(), k);
    out.push_back(*cls);
  }
  return Matrix::from_columns(source.field(), rows, std::move(out));
}

}  // namespace sseq
