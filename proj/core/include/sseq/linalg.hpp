#pragma once

#include <cstddef>
#include <optional>
#include <tuple>
#include <utility>
#include <vector>

#include "sseq/field.hpp"

namespace sseq {

// Sparse vector: sorted (index, value) pairs, no stored zeros.
class Vector {
 public:
  using Entry = std::pair<std::size_t, Scalar>;

  Vector() = default;
  Vector(Field f, std::size_t dim) : field_(f), dim_(dim) {}
  static Vector unit(Field f, std::size_t dim, std::size_t i);
  static Vector from_dense(Field f, const std::vector<Scalar>& values);
  // Unsorted input with possible repeats; repeated indices are summed.
  static Vector from_entries(Field f, std::size_t dim, std::vector<Entry> entries);

  Field field() const { return field_; }
  std::size_t dim() const { return dim_; }
  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t nnz() const { return entries_.size(); }
  bool is_zero() const { return entries_.empty(); }
  std::optional<std::size_t> leading_index() const;

  Scalar operator[](std::size_t i) const;
  void set(std::size_t i, const Scalar& s);
  void add(std::size_t i, const Scalar& s);
  // this += c * x
  void axpy(const Scalar& c, const Vector& x);
  Vector scaled(const Scalar& c) const;
  std::vector<Scalar> to_dense() const;

  friend Vector operator+(const Vector& a, const Vector& b);
  friend Vector operator-(const Vector& a, const Vector& b);
  friend bool operator==(const Vector& a, const Vector& b);
  friend bool operator!=(const Vector& a, const Vector& b) { return !(a == b); }

 private:
  Field field_;
  std::size_t dim_ = 0;
  std::vector<Entry> entries_;
};

// Column-major sparse matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(Field f, std::size_t rows, std::size_t cols);
  static Matrix identity(Field f, std::size_t n);
  static Matrix from_columns(Field f, std::size_t rows, std::vector<Vector> columns);
  static Matrix from_rows(Field f, std::size_t cols, const std::vector<Vector>& rows);
  static Matrix from_dense(Field f, const std::vector<std::vector<Scalar>>& rows, std::size_t cols);
  static Matrix from_triplets(Field f, std::size_t rows, std::size_t cols,
                              const std::vector<std::tuple<std::size_t, std::size_t, Scalar>>& entries);

  Field field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return columns_.size(); }
  const Vector& column(std::size_t j) const { return columns_.at(j); }
  const std::vector<Vector>& columns() const { return columns_; }
  void set_column(std::size_t j, Vector v);
  Scalar at(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, const Scalar& s);
  std::vector<Vector> row_vectors() const;
  std::size_t nnz() const;
  bool is_zero() const;

  Vector apply(const Vector& v) const;
  Matrix transpose() const;
  Matrix scaled(const Scalar& c) const;
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b);
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

 private:
  Field field_;
  std::size_t rows_ = 0;
  std::vector<Vector> columns_;
};

// Incremental reduced row-echelon builder. Each row may carry a tag vector that
// records which combination of inserted tags produced it.
class Echelon {
 public:
  Echelon() = default;
  Echelon(Field f, std::size_t dim, std::size_t tag_dim = 0);

  // Returns nullopt if v was independent (and is now a row); otherwise the
  // reduced tag, i.e. tag minus the tags of the rows that cancel v.
  std::optional<Vector> insert(const Vector& v, const Vector& tag);
  bool insert(const Vector& v);

  Vector residue(const Vector& v) const;
  // Combination of row tags reproducing v, if v lies in the span.
  std::optional<Vector> tag_combination(const Vector& v) const;
  std::optional<std::vector<Scalar>> coordinates(const Vector& v) const;

  Field field() const { return field_; }
  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return rows_.size(); }
  const std::vector<Vector>& rows() const { return rows_; }
  const std::vector<Vector>& tags() const { return tags_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

 private:
  long row_of_pivot(std::size_t column) const;

  Field field_;
  std::size_t dim_ = 0;
  std::size_t tag_dim_ = 0;
  std::vector<Vector> rows_;  // sorted by pivot
  std::vector<Vector> tags_;
  std::vector<std::size_t> pivots_;
  std::vector<long> pivot_row_;  // column -> row, -1 if not a pivot
  std::vector<unsigned> col_count_;  // rows with an entry in each column
};

class Subspace {
 public:
  Subspace() = default;
  Subspace(Field f, std::size_t ambient);  // zero subspace
  static Subspace span(Field f, std::size_t ambient, const std::vector<Vector>& vectors);
  static Subspace full(Field f, std::size_t ambient);
  static Subspace coordinate(Field f, std::size_t ambient, const std::vector<std::size_t>& indices);

  Field field() const { return echelon_.field(); }
  std::size_t ambient_dim() const { return echelon_.dim(); }
  std::size_t dim() const { return echelon_.rank(); }
  const std::vector<Vector>& basis() const { return echelon_.rows(); }
  const std::vector<std::size_t>& pivots() const { return echelon_.pivots(); }

  Vector residue(const Vector& v) const;
  bool contains(const Vector& v) const;
  bool contains(const Subspace& s) const;
  std::optional<std::vector<Scalar>> coordinates(const Vector& v) const;

  Subspace operator+(const Subspace& other) const;
  Subspace intersect(const Subspace& other) const;
  friend bool operator==(const Subspace& a, const Subspace& b);

 private:
  Echelon echelon_;
};

// ambient / denominator with canonical representatives: the echelon basis of
// the residues of ambient modulo the denominator. When a lift space L is given
// (with L + denominator ⊇ ambient), lifts() holds elements of L congruent to
// the representatives.
class QuotientPresentation {
 public:
  QuotientPresentation() = default;
  QuotientPresentation(const Subspace& ambient, const Subspace& denominator);
  QuotientPresentation(const Subspace& ambient, const Subspace& denominator, const Subspace& lift_space);

  std::size_t dim() const { return reps_.rank(); }
  const Subspace& ambient() const { return ambient_; }
  const Subspace& denominator() const { return denominator_; }
  const std::vector<Vector>& coset_reps() const { return reps_.rows(); }
  const std::vector<Vector>& lifts() const { return lifts_; }
  // Coordinates of the class of v; v must lie in the ambient subspace.
  Vector project(const Vector& v) const;
  std::optional<Vector> try_project(const Vector& v) const;

 private:
  Subspace ambient_;
  Subspace denominator_;
  Echelon reps_;
  std::vector<Vector> lifts_;
};

struct RrefResult {
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
  Matrix reduced;
};

RrefResult rref(const Matrix& m);
Subspace kernel_basis(const Matrix& m);
Subspace image(const Matrix& m);
Subspace image_of(const Matrix& m, const Subspace& s);
// {v in domain : m v in target}
Subspace preimage(const Matrix& m, const Subspace& target, const Subspace& domain);
QuotientPresentation quotient(const Subspace& ambient, const Subspace& denominator);
std::optional<std::vector<Scalar>> membership(const Vector& v, const Subspace& s);
std::size_t rank(const Matrix& m);

}  // namespace sseq
