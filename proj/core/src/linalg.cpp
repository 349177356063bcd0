#include "sseq/linalg.hpp"

#include <algorithm>

#include "sseq/errors.hpp"

namespace sseq {

namespace {

void check_field(Field expected, Field got) {
  if (expected != got) throw FieldMismatch("expected " + expected.name() + ", got " + got.name());
}

void check_dim(std::size_t expected, std::size_t got, const char* what) {
  if (expected != got)
    throw DimensionMismatch(std::string(what) + ": expected dimension " + std::to_string(expected) + ", got " +
                            std::to_string(got));
}

}  // namespace

// ---------------------------------------------------------------- Vector

Vector Vector::unit(Field f, std::size_t dim, std::size_t i) {
  if (i >= dim) throw RangeError("unit vector index out of range");
  Vector v(f, dim);
  v.entries_.emplace_back(i, Scalar::one(f));
  return v;
}

Vector Vector::from_dense(Field f, const std::vector<Scalar>& values) {
  Vector v(f, values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    check_field(f, values[i].field());
    if (!values[i].is_zero()) v.entries_.emplace_back(i, values[i]);
  }
  return v;
}

Vector Vector::from_entries(Field f, std::size_t dim, std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
  Vector v(f, dim);
  for (auto& [i, s] : entries) {
    check_field(f, s.field());
    if (i >= dim) throw RangeError("vector index out of range");
    if (!v.entries_.empty() && v.entries_.back().first == i)
      v.entries_.back().second += s;
    else
      v.entries_.emplace_back(i, s);
    if (v.entries_.back().second.is_zero()) v.entries_.pop_back();
  }
  return v;
}

std::optional<std::size_t> Vector::leading_index() const {
  if (entries_.empty()) return std::nullopt;
  return entries_.front().first;
}

Scalar Vector::operator[](std::size_t i) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), i,
                             [](const Entry& e, std::size_t k) { return e.first < k; });
  if (it != entries_.end() && it->first == i) return it->second;
  return Scalar::zero(field_);
}

void Vector::set(std::size_t i, const Scalar& s) {
  if (i >= dim_) throw RangeError("vector index out of range");
  check_field(field_, s.field());
  auto it = std::lower_bound(entries_.begin(), entries_.end(), i,
                             [](const Entry& e, std::size_t k) { return e.first < k; });
  if (it != entries_.end() && it->first == i) {
    if (s.is_zero())
      entries_.erase(it);
    else
      it->second = s;
  } else if (!s.is_zero()) {
    entries_.insert(it, Entry(i, s));
  }
}

void Vector::add(std::size_t i, const Scalar& s) {
  if (s.is_zero()) return;
  set(i, (*this)[i] + s);
}

void Vector::axpy(const Scalar& c, const Vector& x) {
  check_dim(dim_, x.dim_, "axpy");
  check_field(field_, x.field_);
  if (c.is_zero() || x.entries_.empty()) return;
  std::vector<Entry> out;
  out.reserve(entries_.size() + x.entries_.size());
  auto a = entries_.begin();
  auto b = x.entries_.begin();
  const bool unit = c.is_one();
  while (a != entries_.end() || b != x.entries_.end()) {
    if (b == x.entries_.end() || (a != entries_.end() && a->first < b->first)) {
      out.push_back(std::move(*a));
      ++a;
    } else if (a == entries_.end() || b->first < a->first) {
      out.emplace_back(b->first, unit ? b->second : c * b->second);
      ++b;
    } else {
      Scalar s = a->second + (unit ? b->second : c * b->second);
      if (!s.is_zero()) out.emplace_back(a->first, std::move(s));
      ++a;
      ++b;
    }
  }
  entries_ = std::move(out);
}

Vector Vector::scaled(const Scalar& c) const {
  Vector v(field_, dim_);
  if (c.is_zero()) return v;
  v.entries_.reserve(entries_.size());
  for (const auto& [i, s] : entries_) v.entries_.emplace_back(i, s * c);
  return v;
}

std::vector<Scalar> Vector::to_dense() const {
  std::vector<Scalar> out(dim_, Scalar::zero(field_));
  for (const auto& [i, s] : entries_) out[i] = s;
  return out;
}

Vector operator+(const Vector& a, const Vector& b) {
  Vector r = a;
  r.axpy(Scalar::one(a.field()), b);
  return r;
}

Vector operator-(const Vector& a, const Vector& b) {
  Vector r = a;
  r.axpy(Scalar(a.field(), -1), b);
  return r;
}

bool operator==(const Vector& a, const Vector& b) {
  return a.field_ == b.field_ && a.dim_ == b.dim_ && a.entries_ == b.entries_;
}

// ---------------------------------------------------------------- Matrix

Matrix::Matrix(Field f, std::size_t rows, std::size_t cols)
    : field_(f), rows_(rows), columns_(cols, Vector(f, rows)) {}

Matrix Matrix::identity(Field f, std::size_t n) {
  Matrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m.columns_[i] = Vector::unit(f, n, i);
  return m;
}

Matrix Matrix::from_columns(Field f, std::size_t rows, std::vector<Vector> columns) {
  Matrix m(f, rows, 0);
  for (auto& c : columns) {
    check_field(f, c.field());
    check_dim(rows, c.dim(), "matrix column");
  }
  m.columns_ = std::move(columns);
  return m;
}

Matrix Matrix::from_rows(Field f, std::size_t cols, const std::vector<Vector>& rows) {
  Matrix m(f, rows.size(), cols);
  std::vector<std::vector<Vector::Entry>> acc(cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    check_field(f, rows[r].field());
    check_dim(cols, rows[r].dim(), "matrix row");
    for (const auto& [c, s] : rows[r].entries()) acc[c].emplace_back(r, s);
  }
  for (std::size_t c = 0; c < cols; ++c) m.columns_[c] = Vector::from_entries(f, rows.size(), std::move(acc[c]));
  return m;
}

Matrix Matrix::from_dense(Field f, const std::vector<std::vector<Scalar>>& rows, std::size_t cols) {
  std::vector<Vector> rv;
  for (const auto& r : rows) {
    check_dim(cols, r.size(), "dense row");
    rv.push_back(Vector::from_dense(f, r));
  }
  return from_rows(f, cols, rv);
}

Matrix Matrix::from_triplets(Field f, std::size_t rows, std::size_t cols,
                             const std::vector<std::tuple<std::size_t, std::size_t, Scalar>>& entries) {
  std::vector<std::vector<Vector::Entry>> acc(cols);
  for (const auto& [r, c, s] : entries) {
    check_field(f, s.field());
    if (r >= rows || c >= cols) throw RangeError("matrix entry out of range");
    acc[c].emplace_back(r, s);
  }
  Matrix m(f, rows, cols);
  for (std::size_t c = 0; c < cols; ++c) m.columns_[c] = Vector::from_entries(f, rows, std::move(acc[c]));
  return m;
}

void Matrix::set_column(std::size_t j, Vector v) {
  check_field(field_, v.field());
  check_dim(rows_, v.dim(), "set_column");
  columns_.at(j) = std::move(v);
}

Scalar Matrix::at(std::size_t r, std::size_t c) const { return columns_.at(c)[r]; }

void Matrix::set(std::size_t r, std::size_t c, const Scalar& s) { columns_.at(c).set(r, s); }

std::vector<Vector> Matrix::row_vectors() const {
  std::vector<std::vector<Vector::Entry>> acc(rows_);
  for (std::size_t c = 0; c < columns_.size(); ++c)
    for (const auto& [r, s] : columns_[c].entries()) acc[r].emplace_back(c, s);
  std::vector<Vector> out;
  out.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out.push_back(Vector::from_entries(field_, cols(), std::move(acc[r])));
  return out;
}

std::size_t Matrix::nnz() const {
  std::size_t n = 0;
  for (const auto& c : columns_) n += c.nnz();
  return n;
}

bool Matrix::is_zero() const {
  return std::all_of(columns_.begin(), columns_.end(), [](const Vector& c) { return c.is_zero(); });
}

Vector Matrix::apply(const Vector& v) const {
  check_dim(cols(), v.dim(), "matrix-vector product");
  check_field(field_, v.field());
  Vector out(field_, rows_);
  for (const auto& [j, s] : v.entries()) out.axpy(s, columns_[j]);
  return out;
}

Matrix Matrix::transpose() const { return from_rows(field_, rows_, columns_); }

Matrix Matrix::scaled(const Scalar& c) const {
  Matrix m = *this;
  for (auto& col : m.columns_) col = col.scaled(c);
  return m;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  check_dim(a.cols(), b.rows(), "matrix product");
  Matrix m(a.field(), a.rows(), b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j) m.columns_[j] = a.apply(b.columns_[j]);
  return m;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  check_dim(a.rows(), b.rows(), "matrix sum rows");
  check_dim(a.cols(), b.cols(), "matrix sum cols");
  Matrix m = a;
  for (std::size_t j = 0; j < a.cols(); ++j) m.columns_[j].axpy(Scalar::one(a.field()), b.columns_[j]);
  return m;
}

Matrix operator-(const Matrix& a, const Matrix& b) { return a + b.scaled(Scalar(b.field(), -1)); }

bool operator==(const Matrix& a, const Matrix& b) {
  return a.field_ == b.field_ && a.rows_ == b.rows_ && a.columns_ == b.columns_;
}

// ---------------------------------------------------------------- Echelon

Echelon::Echelon(Field f, std::size_t dim, std::size_t tag_dim)
    : field_(f), dim_(dim), tag_dim_(tag_dim), pivot_row_(dim, -1), col_count_(dim, 0) {}

long Echelon::row_of_pivot(std::size_t column) const { return pivot_row_[column]; }

Vector Echelon::residue(const Vector& v) const {
  check_dim(dim_, v.dim(), "echelon residue");
  Vector r = v;
  // Rows vanish on each other's pivots, so the coefficients can be read off v.
  for (const auto& [i, s] : v.entries()) {
    long row = pivot_row_[i];
    if (row >= 0) r.axpy(-s, rows_[row]);
  }
  return r;
}

std::optional<Vector> Echelon::tag_combination(const Vector& v) const {
  check_dim(dim_, v.dim(), "echelon combination");
  Vector r = v;
  Vector t(field_, tag_dim_);
  for (const auto& [i, s] : v.entries()) {
    long row = pivot_row_[i];
    if (row >= 0) {
      r.axpy(-s, rows_[row]);
      t.axpy(s, tags_[row]);
    }
  }
  if (!r.is_zero()) return std::nullopt;
  return t;
}

std::optional<std::vector<Scalar>> Echelon::coordinates(const Vector& v) const {
  check_dim(dim_, v.dim(), "membership");
  std::vector<Scalar> coords(rows_.size(), Scalar::zero(field_));
  Vector r = v;
  for (const auto& [i, s] : v.entries()) {
    long row = pivot_row_[i];
    if (row >= 0) {
      coords[row] = s;
      r.axpy(-s, rows_[row]);
    }
  }
  if (!r.is_zero()) return std::nullopt;
  return coords;
}

std::optional<Vector> Echelon::insert(const Vector& v, const Vector& tag) {
  check_dim(dim_, v.dim(), "echelon insert");
  check_field(field_, v.field());
  Vector r = v;
  Vector t = tag;
  for (const auto& [i, s] : v.entries()) {
    long row = pivot_row_[i];
    if (row >= 0) {
      r.axpy(-s, rows_[row]);
      if (tag_dim_ > 0) t.axpy(-s, tags_[row]);
    }
  }
  if (r.is_zero()) return t;
  std::size_t lead = *r.leading_index();
  Scalar inv = r.entries().front().second.inverse();
  if (!inv.is_one()) {
    r = r.scaled(inv);
    if (tag_dim_ > 0) t = t.scaled(inv);
  }
  if (col_count_[lead] > 0) {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      Scalar c = rows_[k][lead];
      if (c.is_zero()) continue;
      for (const auto& e : rows_[k].entries()) --col_count_[e.first];
      rows_[k].axpy(-c, r);
      for (const auto& e : rows_[k].entries()) ++col_count_[e.first];
      if (tag_dim_ > 0) tags_[k].axpy(-c, t);
    }
  }
  for (const auto& e : r.entries()) ++col_count_[e.first];
  auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), lead) - pivots_.begin();
  pivots_.insert(pivots_.begin() + pos, lead);
  rows_.insert(rows_.begin() + pos, std::move(r));
  if (tag_dim_ > 0) tags_.insert(tags_.begin() + pos, std::move(t));
  for (std::size_t k = pos; k < pivots_.size(); ++k) pivot_row_[pivots_[k]] = static_cast<long>(k);
  return std::nullopt;
}

bool Echelon::insert(const Vector& v) { return !insert(v, Vector(field_, tag_dim_)).has_value(); }

// ---------------------------------------------------------------- Subspace

Subspace::Subspace(Field f, std::size_t ambient) : echelon_(f, ambient) {}

Subspace Subspace::span(Field f, std::size_t ambient, const std::vector<Vector>& vectors) {
  Subspace s(f, ambient);
  for (const auto& v : vectors) s.echelon_.insert(v);
  return s;
}

Subspace Subspace::full(Field f, std::size_t ambient) {
  Subspace s(f, ambient);
  for (std::size_t i = 0; i < ambient; ++i) s.echelon_.insert(Vector::unit(f, ambient, i));
  return s;
}

Subspace Subspace::coordinate(Field f, std::size_t ambient, const std::vector<std::size_t>& indices) {
  Subspace s(f, ambient);
  for (std::size_t i : indices) s.echelon_.insert(Vector::unit(f, ambient, i));
  return s;
}

Vector Subspace::residue(const Vector& v) const { return echelon_.residue(v); }

bool Subspace::contains(const Vector& v) const { return residue(v).is_zero(); }

bool Subspace::contains(const Subspace& s) const {
  check_dim(ambient_dim(), s.ambient_dim(), "subspace containment");
  return std::all_of(s.basis().begin(), s.basis().end(), [&](const Vector& v) { return contains(v); });
}

std::optional<std::vector<Scalar>> Subspace::coordinates(const Vector& v) const { return echelon_.coordinates(v); }

Subspace Subspace::operator+(const Subspace& other) const {
  check_dim(ambient_dim(), other.ambient_dim(), "subspace sum");
  const Subspace& big = dim() >= other.dim() ? *this : other;
  const Subspace& small = dim() >= other.dim() ? other : *this;
  Subspace s = big;
  for (const auto& v : small.basis()) s.echelon_.insert(v);
  return s;
}

Subspace Subspace::intersect(const Subspace& other) const {
  check_dim(ambient_dim(), other.ambient_dim(), "subspace intersection");
  Field f = field();
  // Combinations of our basis whose residue modulo `other` vanishes.
  Echelon e(f, ambient_dim(), ambient_dim());
  std::vector<Vector> found;
  for (const auto& v : basis()) {
    auto dep = e.insert(other.residue(v), v);
    if (dep) found.push_back(std::move(*dep));
  }
  return span(f, ambient_dim(), found);
}

bool operator==(const Subspace& a, const Subspace& b) {
  return a.field() == b.field() && a.ambient_dim() == b.ambient_dim() && a.basis() == b.basis();
}

// ---------------------------------------------------------------- Quotient

QuotientPresentation::QuotientPresentation(const Subspace& ambient, const Subspace& denominator)
    : QuotientPresentation(ambient, denominator, ambient) {}

QuotientPresentation::QuotientPresentation(const Subspace& ambient, const Subspace& denominator,
                                           const Subspace& lift_space)
    : ambient_(ambient), denominator_(denominator) {
  check_dim(ambient.ambient_dim(), denominator.ambient_dim(), "quotient");
  if (!ambient.contains(denominator)) throw ContainmentError("quotient: denominator is not contained in ambient");
  Field f = ambient.field();
  std::size_t n = ambient.ambient_dim();
  reps_ = Echelon(f, n, n);
  for (const auto& l : lift_space.basis()) reps_.insert(denominator.residue(l), l);
  if (reps_.rank() != ambient.dim() - denominator.dim())
    throw ContainmentError("quotient: lift space does not cover the quotient");
  lifts_ = reps_.tags();
}

std::optional<Vector> QuotientPresentation::try_project(const Vector& v) const {
  auto coords = reps_.coordinates(denominator_.residue(v));
  if (!coords) return std::nullopt;
  return Vector::from_dense(ambient_.field(), *coords);
}

Vector QuotientPresentation::project(const Vector& v) const {
  auto r = try_project(v);
  if (!r) throw ContainmentError("project: vector is not in the ambient subspace");
  return *r;
}

// ---------------------------------------------------------------- free functions

namespace {

RrefResult rref_dense(const Matrix& m) {
  Field f = m.field();
  std::size_t R = m.rows(), C = m.cols();
  std::vector<std::vector<Scalar>> a(R, std::vector<Scalar>(C, Scalar::zero(f)));
  for (std::size_t c = 0; c < C; ++c)
    for (const auto& [r, s] : m.column(c).entries()) a[r][c] = s;
  RrefResult out;
  std::size_t row = 0;
  for (std::size_t c = 0; c < C && row < R; ++c) {
    std::size_t piv = row;
    while (piv < R && a[piv][c].is_zero()) ++piv;
    if (piv == R) continue;
    std::swap(a[piv], a[row]);
    Scalar inv = a[row][c].inverse();
    for (std::size_t k = c; k < C; ++k) a[row][k] = a[row][k] * inv;
    for (std::size_t i = 0; i < R; ++i) {
      if (i == row || a[i][c].is_zero()) continue;
      Scalar factor = a[i][c];
      for (std::size_t k = c; k < C; ++k)
        if (!a[row][k].is_zero()) a[i][k] = a[i][k] - factor * a[row][k];
    }
    out.pivots.push_back(c);
    ++row;
  }
  out.rank = row;
  out.reduced = Matrix::from_dense(f, a, C);
  return out;
}

RrefResult rref_sparse(const Matrix& m) {
  Echelon e(m.field(), m.cols());
  for (const auto& r : m.row_vectors()) e.insert(r);
  RrefResult out;
  out.rank = e.rank();
  out.pivots = e.pivots();
  std::vector<Vector> rows = e.rows();
  while (rows.size() < m.rows()) rows.emplace_back(m.field(), m.cols());
  out.reduced = Matrix::from_rows(m.field(), m.cols(), rows);
  return out;
}

}  // namespace

RrefResult rref(const Matrix& m) {
  if (m.cols() < 64) return rref_dense(m);
  return rref_sparse(m);
}

std::size_t rank(const Matrix& m) {
  Echelon e(m.field(), m.rows());
  for (const auto& c : m.columns()) e.insert(c);
  return e.rank();
}

Subspace kernel_basis(const Matrix& m) {
  Field f = m.field();
  Echelon e(f, m.rows(), m.cols());
  std::vector<Vector> found;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    auto dep = e.insert(m.column(j), Vector::unit(f, m.cols(), j));
    if (dep) found.push_back(std::move(*dep));
  }
  return Subspace::span(f, m.cols(), found);
}

Subspace image(const Matrix& m) { return Subspace::span(m.field(), m.rows(), m.columns()); }

Subspace image_of(const Matrix& m, const Subspace& s) {
  check_dim(m.cols(), s.ambient_dim(), "image_of");
  Subspace out(m.field(), m.rows());
  std::vector<Vector> imgs;
  imgs.reserve(s.dim());
  for (const auto& v : s.basis()) imgs.push_back(m.apply(v));
  return Subspace::span(m.field(), m.rows(), imgs);
}

Subspace preimage(const Matrix& m, const Subspace& target, const Subspace& domain) {
  check_dim(m.cols(), domain.ambient_dim(), "preimage domain");
  check_dim(m.rows(), target.ambient_dim(), "preimage target");
  Field f = m.field();
  Echelon e(f, m.rows(), m.cols());
  std::vector<Vector> found;
  for (const auto& v : domain.basis()) {
    auto dep = e.insert(target.residue(m.apply(v)), v);
    if (dep) found.push_back(std::move(*dep));
  }
  return Subspace::span(f, m.cols(), found);
}

QuotientPresentation quotient(const Subspace& ambient, const Subspace& denominator) {
  return QuotientPresentation(ambient, denominator);
}

std::optional<std::vector<Scalar>> membership(const Vector& v, const Subspace& s) {
  check_dim(s.ambient_dim(), v.dim(), "membership");
  return s.coordinates(v);
}

}  // namespace sseq
