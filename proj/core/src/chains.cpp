#include "sseq/chains.hpp"

#include <algorithm>

#include "sseq/errors.hpp"

namespace sseq {

// ---------------------------------------------------------------- ChainComplex

ChainComplex::ChainComplex(Field f, std::vector<std::size_t> dims, std::vector<Matrix> boundaries)
    : field_(f), dims_(std::move(dims)), boundaries_(std::move(boundaries)) {
  if (boundaries_.size() != dims_.size())
    throw DimensionMismatch("chain complex: need one boundary matrix per degree");
  for (std::size_t n = 0; n < dims_.size(); ++n) {
    const Matrix& d = boundaries_[n];
    std::size_t rows = n == 0 ? 0 : dims_[n - 1];
    if (d.rows() != rows || d.cols() != dims_[n] || d.field() != f)
      throw DimensionMismatch("chain complex: boundary in degree " + std::to_string(n) + " has the wrong shape");
  }
}

std::size_t ChainComplex::dim(int n) const {
  if (n < 0 || n > top_degree()) return 0;
  return dims_[n];
}

Matrix ChainComplex::boundary(int n) const {
  if (n >= 0 && n <= top_degree()) return boundaries_[n];
  return Matrix(field_, dim(n - 1), dim(n));
}

std::string ChainComplex::label(int n, std::size_t i) const {
  if (n >= 0 && n < static_cast<int>(labels_.size()) && i < labels_[n].size()) return labels_[n][i];
  return "e" + std::to_string(n) + "_" + std::to_string(i);
}

void ChainComplex::validate() const {
  for (int n = 2; n <= top_degree(); ++n)
    if (!(boundaries_[n - 1] * boundaries_[n]).is_zero())
      throw InternalConsistency("boundary squares to a nonzero map in degree " + std::to_string(n));
}

ChainComplex normalized_chains(const SimplicialSet& x, Field f) {
  int top = x.truncation();
  std::vector<std::size_t> dims;
  std::vector<Matrix> bds;
  std::vector<std::vector<std::string>> labels(top + 1);
  for (int n = 0; n <= top; ++n) {
    dims.push_back(x.count(n));
    for (std::size_t i = 0; i < x.count(n); ++i) labels[n].push_back(x.simplex_name(n, i));
    if (n == 0) {
      bds.emplace_back(f, 0, x.count(0));
      continue;
    }
    std::vector<Vector> cols;
    for (std::size_t k = 0; k < x.count(n); ++k) {
      Vector col(f, x.count(n - 1));
      for (int i = 0; i <= n; ++i) {
        const Simplex& face = x.faces(n, k)[i];
        if (!face.degenerate()) col.add(face.index, sign_scalar(f, i));
      }
      cols.push_back(std::move(col));
    }
    bds.push_back(Matrix::from_columns(f, x.count(n - 1), std::move(cols)));
  }
  ChainComplex c(f, std::move(dims), std::move(bds));
  c.set_labels(std::move(labels));
  return c;
}

// ---------------------------------------------------------------- tensor layout

TensorLayout::TensorLayout(std::vector<std::size_t> left, std::vector<std::size_t> right, int max_degree)
    : left_(std::move(left)), right_(std::move(right)), max_degree_(max_degree) {
  offsets_.resize(max_degree_ + 1);
  for (int n = 0; n <= max_degree_; ++n) {
    offsets_[n].resize(n + 2);
    std::size_t off = 0;
    for (int a = 0; a <= n; ++a) {
      offsets_[n][a] = off;
      off += left_dim(a) * right_dim(n - a);
    }
    offsets_[n][n + 1] = off;
  }
}

std::size_t TensorLayout::left_dim(int a) const {
  return a < 0 || a >= static_cast<int>(left_.size()) ? 0 : left_[a];
}

std::size_t TensorLayout::right_dim(int b) const {
  return b < 0 || b >= static_cast<int>(right_.size()) ? 0 : right_[b];
}

std::size_t TensorLayout::dim(int n) const {
  if (n < 0 || n > max_degree_) return 0;
  return offsets_[n][n + 1];
}

std::size_t TensorLayout::offset(int n, int a) const { return offsets_.at(n).at(a); }

std::size_t TensorLayout::index(int n, int a, std::size_t i, std::size_t j) const {
  return offsets_.at(n).at(a) + i * right_dim(n - a) + j;
}

TensorLayout::Position TensorLayout::locate(int n, std::size_t idx) const {
  const auto& offs = offsets_.at(n);
  int a = static_cast<int>(std::upper_bound(offs.begin(), offs.end() - 1, idx) - offs.begin()) - 1;
  while (a < n && offs[a + 1] <= idx) ++a;
  std::size_t local = idx - offs[a];
  std::size_t rd = right_dim(n - a);
  return Position{a, local / rd, local % rd};
}

Vector TensorLayout::tensor(const Vector& x, int a, const Vector& y, int b) const {
  int n = a + b;
  Vector out(x.field(), dim(n));
  if (n > max_degree_) throw RangeError("tensor degree beyond layout");
  std::vector<Vector::Entry> entries;
  entries.reserve(x.nnz() * y.nnz());
  for (const auto& [i, s] : x.entries())
    for (const auto& [j, t] : y.entries()) entries.emplace_back(index(n, a, i, j), s * t);
  return Vector::from_entries(x.field(), dim(n), std::move(entries));
}

TensorComplex tensor_complex(const ChainComplex& a, const ChainComplex& b, int max_degree) {
  Field f = a.field();
  TensorLayout layout(a.dims(), b.dims(), max_degree);
  std::vector<std::size_t> dims;
  std::vector<Matrix> bds;
  std::vector<Matrix> da(a.top_degree() + 2), db(b.top_degree() + 2);
  for (int n = 0; n <= a.top_degree() + 1; ++n) da[n] = a.boundary(n);
  for (int n = 0; n <= b.top_degree() + 1; ++n) db[n] = b.boundary(n);
  auto bd_a = [&](int n) -> const Matrix& { return da[n]; };
  auto bd_b = [&](int n) -> const Matrix& { return db[n]; };
  std::vector<std::vector<std::string>> labels(max_degree + 1);
  for (int n = 0; n <= max_degree; ++n) {
    dims.push_back(layout.dim(n));
    std::vector<Vector> cols;
    cols.reserve(layout.dim(n));
    for (int p = 0; p <= n; ++p) {
      int q = n - p;
      for (std::size_t i = 0; i < a.dim(p); ++i)
        for (std::size_t j = 0; j < b.dim(q); ++j) {
          labels[n].push_back(a.label(p, i) + "|" + b.label(q, j));
          std::vector<Vector::Entry> entries;
          if (n > 0) {
            if (p > 0)
              for (const auto& [k, s] : bd_a(p).column(i).entries())
                entries.emplace_back(layout.index(n - 1, p - 1, k, j), s);
            if (q > 0) {
              Scalar sg = sign_scalar(f, p);
              for (const auto& [k, s] : bd_b(q).column(j).entries())
                entries.emplace_back(layout.index(n - 1, p, i, k), sg * s);
            }
          }
          cols.push_back(Vector::from_entries(f, layout.dim(n - 1), std::move(entries)));
        }
    }
    bds.push_back(Matrix::from_columns(f, n == 0 ? 0 : layout.dim(n - 1), std::move(cols)));
  }
  ChainComplex c(f, std::move(dims), std::move(bds));
  c.set_labels(std::move(labels));
  return {std::move(c), std::move(layout)};
}

// ---------------------------------------------------------------- chain maps

bool ChainMap::commutes(const ChainComplex& source, const ChainComplex& target) const {
  for (int n = 1; n <= top_degree(); ++n) {
    Matrix lhs = target.boundary(n) * components[n];
    Matrix rhs = components[n - 1] * source.boundary(n);
    if (lhs != rhs) return false;
  }
  return true;
}

ChainMap compose(const ChainMap& f, const ChainMap& g) {
  ChainMap h{f.field, {}};
  int top = std::min(f.top_degree(), g.top_degree());
  for (int n = 0; n <= top; ++n) h.components.push_back(f.components[n] * g.components[n]);
  return h;
}

ChainMap identity_map(const ChainComplex& c) {
  ChainMap h{c.field(), {}};
  for (int n = 0; n <= c.top_degree(); ++n) h.components.push_back(Matrix::identity(c.field(), c.dim(n)));
  return h;
}

TensorLayout product_tensor_layout(const ProductSet& p) {
  std::vector<std::size_t> l, r;
  for (int n = 0; n <= p.left->truncation(); ++n) l.push_back(p.left->count(n));
  for (int n = 0; n <= p.right->truncation(); ++n) r.push_back(p.right->count(n));
  return TensorLayout(std::move(l), std::move(r), p.set->truncation());
}

Vector ez_of(const ProductSet& p, Field f, const Simplex& x, const Simplex& y) {
  int q = x.dim();
  int pp = y.dim();
  int n = pp + q;
  Vector out(f, p.set->count(n));
  for (const auto& sh : enumerate_shuffles(q, pp)) {
    Simplex s = p.pair(p.left->apply(x, sh.mu), p.right->apply(y, sh.sigma));
    if (!s.degenerate()) out.add(s.index, Scalar(f, sh.sign));
  }
  return out;
}

ChainMap ez_map(const ProductSet& p, Field f) {
  TensorLayout layout = product_tensor_layout(p);
  ChainMap m{f, {}};
  for (int n = 0; n <= p.set->truncation(); ++n) {
    std::vector<Vector> cols;
    for (int a = 0; a <= n; ++a)
      for (std::size_t i = 0; i < layout.left_dim(a); ++i)
        for (std::size_t j = 0; j < layout.right_dim(n - a); ++j)
          cols.push_back(ez_of(p, f, Simplex::nondegenerate(a, i), Simplex::nondegenerate(n - a, j)));
    m.components.push_back(Matrix::from_columns(f, p.set->count(n), std::move(cols)));
  }
  return m;
}

ChainMap aw_map(const ProductSet& p, Field f) {
  TensorLayout layout = product_tensor_layout(p);
  ChainMap m{f, {}};
  for (int n = 0; n <= p.set->truncation(); ++n) {
    std::vector<Vector> cols;
    for (const auto& [xs, yt] : p.components[n]) {
      Vector col(f, layout.dim(n));
      for (int j = 0; j <= n; ++j) {
        Simplex front = p.left->apply(xs, interval_map(0, j, n));
        Simplex back = p.right->apply(yt, interval_map(j, n, n));
        if (!front.degenerate() && !back.degenerate())
          col.add(layout.index(n, j, front.index, back.index), Scalar::one(f));
      }
      cols.push_back(std::move(col));
    }
    m.components.push_back(Matrix::from_columns(f, layout.dim(n), std::move(cols)));
  }
  return m;
}

TensorLayout self_tensor_layout(const ChainComplex& c) { return TensorLayout(c.dims(), c.dims(), c.top_degree()); }

ChainMap chain_comult(const SimplicialSet& x, Field f) {
  std::vector<std::size_t> dims;
  for (int n = 0; n <= x.truncation(); ++n) dims.push_back(x.count(n));
  TensorLayout layout(dims, dims, x.truncation());
  ChainMap m{f, {}};
  for (int n = 0; n <= x.truncation(); ++n) {
    std::vector<Vector> cols;
    for (std::size_t k = 0; k < x.count(n); ++k) {
      Simplex a = Simplex::nondegenerate(n, k);
      Vector col(f, layout.dim(n));
      for (int j = 0; j <= n; ++j) {
        Simplex front = x.apply(a, interval_map(0, j, n));
        Simplex back = x.apply(a, interval_map(j, n, n));
        if (!front.degenerate() && !back.degenerate())
          col.add(layout.index(n, j, front.index, back.index), Scalar::one(f));
      }
      cols.push_back(std::move(col));
    }
    m.components.push_back(Matrix::from_columns(f, layout.dim(n), std::move(cols)));
  }
  return m;
}

Vector augmentation(const SimplicialSet& x, Field f) {
  Vector v(f, x.count(0));
  for (std::size_t i = 0; i < x.count(0); ++i) v.set(i, Scalar::one(f));
  return v;
}

// ---------------------------------------------------------------- homology

std::vector<std::size_t> Homology::dims() const {
  std::vector<std::size_t> d;
  for (const auto& c : classes) d.push_back(c.dim());
  return d;
}

Homology compute_homology(const ChainComplex& c) {
  Field f = c.field();
  Homology h{f, {}, {}, {}, {}};
  for (int n = 0; n <= c.top_degree(); ++n) {
    Subspace z = kernel_basis(c.boundary(n));
    Subspace b = n + 1 <= c.top_degree() ? image(c.boundary(n + 1)) : Subspace(f, c.dim(n));
    QuotientPresentation qp(z, b);
    // v = Σ v[pivot_j] z_j + (part supported off the pivots of Z).
    Matrix proj(f, qp.dim(), c.dim(n));
    for (std::size_t j = 0; j < z.dim(); ++j) proj.set_column(z.pivots()[j], qp.project(z.basis()[j]));
    h.cycles.push_back(std::move(z));
    h.boundaries.push_back(std::move(b));
    h.classes.push_back(std::move(qp));
    h.projection.push_back(std::move(proj));
  }
  return h;
}

}  // namespace sseq
