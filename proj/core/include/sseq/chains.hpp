#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "sseq/linalg.hpp"
#include "sseq/simplicial.hpp"

namespace sseq {

// Non-negatively graded, degreewise finite chain complex, truncated at
// top_degree(). boundary(n) : C_n -> C_{n-1}.
class ChainComplex {
 public:
  ChainComplex() = default;
  ChainComplex(Field f, std::vector<std::size_t> dims, std::vector<Matrix> boundaries);

  Field field() const { return field_; }
  int top_degree() const { return static_cast<int>(dims_.size()) - 1; }
  std::size_t dim(int n) const;
  const std::vector<std::size_t>& dims() const { return dims_; }
  // Zero-size matrices outside the stored range.
  Matrix boundary(int n) const;
  const std::vector<std::vector<std::string>>& labels() const { return labels_; }
  void set_labels(std::vector<std::vector<std::string>> labels) { labels_ = std::move(labels); }
  std::string label(int n, std::size_t i) const;

  // Throws InternalConsistency unless ∂∘∂ = 0.
  void validate() const;

 private:
  Field field_;
  std::vector<std::size_t> dims_;
  std::vector<Matrix> boundaries_;
  std::vector<std::vector<std::string>> labels_;
};

ChainComplex normalized_chains(const SimplicialSet& x, Field f);

// Index bookkeeping for (A ⊗ B)_n = ⊕_a A_a ⊗ B_{n-a}; blocks ordered by a,
// inside a block the left index varies slowest.
class TensorLayout {
 public:
  TensorLayout() = default;
  TensorLayout(std::vector<std::size_t> left, std::vector<std::size_t> right, int max_degree);

  int max_degree() const { return max_degree_; }
  std::size_t dim(int n) const;
  std::size_t left_dim(int a) const;
  std::size_t right_dim(int b) const;
  std::size_t offset(int n, int a) const;
  std::size_t index(int n, int a, std::size_t i, std::size_t j) const;
  struct Position {
    int left_degree;
    std::size_t left;
    std::size_t right;
  };
  Position locate(int n, std::size_t idx) const;
  // x ∈ A_a, y ∈ B_b.
  Vector tensor(const Vector& x, int a, const Vector& y, int b) const;

 private:
  std::vector<std::size_t> left_;
  std::vector<std::size_t> right_;
  int max_degree_ = -1;
  std::vector<std::vector<std::size_t>> offsets_;  // offsets_[n][a], with a sentinel
};

struct TensorComplex {
  ChainComplex complex;
  TensorLayout layout;
};

// Koszul differential ∂⊗1 + (-1)^a 1⊗∂.
TensorComplex tensor_complex(const ChainComplex& a, const ChainComplex& b, int max_degree);

struct ChainMap {
  Field field;
  std::vector<Matrix> components;  // components[n] : source_n -> target_n
  const Matrix& operator[](int n) const { return components.at(n); }
  int top_degree() const { return static_cast<int>(components.size()) - 1; }
  // f∘∂ = ∂∘f in degrees 1..top.
  bool commutes(const ChainComplex& source, const ChainComplex& target) const;
};

ChainMap compose(const ChainMap& f, const ChainMap& g);
ChainMap identity_map(const ChainComplex& c);

// EZ: C(X)⊗C(Y) -> C(X×Y) and AW: C(X×Y) -> C(X)⊗C(Y), in degrees up to the
// product's truncation. `layout` is the tensor layout of C(X)⊗C(Y).
ChainMap ez_map(const ProductSet& p, Field f);
ChainMap aw_map(const ProductSet& p, Field f);
TensorLayout product_tensor_layout(const ProductSet& p);
// EZ of a single pair of simplices, as a chain on X×Y.
Vector ez_of(const ProductSet& p, Field f, const Simplex& x, const Simplex& y);

// Δ = AW ∘ diagonal : C(X) -> C(X)⊗C(X), tensor layout up to X's truncation.
ChainMap chain_comult(const SimplicialSet& x, Field f);
TensorLayout self_tensor_layout(const ChainComplex& c);
Vector augmentation(const SimplicialSet& x, Field f);

// Homology with chosen representatives and a chain-level projection
// π : C_n -> H_n killing boundaries and a complement of the cycles.
struct Homology {
  Field field;
  std::vector<Subspace> cycles;
  std::vector<Subspace> boundaries;
  std::vector<QuotientPresentation> classes;
  std::vector<Matrix> projection;

  std::size_t dim(int n) const { return n < 0 || n >= static_cast<int>(classes.size()) ? 0 : classes[n].dim(); }
  const Vector& representative(int n, std::size_t k) const { return classes.at(n).coset_reps().at(k); }
  std::vector<std::size_t> dims() const;
};

Homology compute_homology(const ChainComplex& c);

}  // namespace sseq
