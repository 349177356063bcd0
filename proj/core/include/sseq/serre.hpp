#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sseq/coalgebra.hpp"
#include "sseq/filtered.hpp"
#include "sseq/simplicial.hpp"
#include "sseq/sseq.hpp"

namespace sseq {

// π : E -> B with a chosen fiber basepoint in B. When built by
// product_fibration, E = F × B and π is the second projection.
struct Fibration {
  SimplicialSetPtr total;
  SimplicialSetPtr base;
  SimplicialMap map;
  std::size_t fiber_basepoint = 0;  // vertex index in B
  std::shared_ptr<const ProductSet> product;

  bool is_product() const { return product != nullptr; }
  const SimplicialSet& fiber() const;  // product fibrations only
};

Fibration product_fibration(const SimplicialSet& fiber, const SimplicialSet& base,
                            std::optional<int> truncation = std::nullopt);
// Checks π is simplicial and B is connected.
void validate_fibration(const Fibration& fib);

// dim α - dim of the non-degenerate simplex underlying π∘α.
int degeneracy_level(const Fibration& fib, const Simplex& alpha);

struct SerreFiltration {
  Fibration fibration;
  Field field;
  FilteredCoalgebra coalgebra;
  // level[n][k] = n - degeneracy_level of the k-th n-simplex: the least p with
  // the simplex in T^{p, n-p}.
  std::vector<std::vector<int>> level;

  const FilteredComplex& filtered() const { return coalgebra.filtered; }
};

SerreFiltration serre_filtration(const Fibration& fib, Field f, bool validate = true);

// C_p(B; C_q(F)) for a product fibration: basis pairs (u, V) with u a
// non-degenerate q-simplex of F and V a non-degenerate p-simplex of B, standing
// for (u, V(0)) ⊗ V. Boundary ∂_E ⊗ 1 moves only the fiber part.
class BaseCoefficientComplex {
 public:
  explicit BaseCoefficientComplex(const SerreFiltration& sf);

  Field field() const { return field_; }
  std::size_t dim(int p, int q) const;
  std::size_t index(int p, int q, std::size_t u, std::size_t v) const;
  std::pair<std::size_t, std::size_t> pair_of(int p, int q, std::size_t idx) const;
  std::string label(int p, int q, std::size_t idx) const;
  // (p, q) -> (p, q-1).
  Matrix boundary(int p, int q) const;
  const SimplicialSet& fiber() const { return *fiber_; }
  const SimplicialSet& base() const { return *base_; }

 private:
  Field field_;
  SimplicialSetPtr fiber_;
  SimplicialSetPtr base_;
};

// φ^{p,q} : C_{p+q}(E) -> C_p(B; C_q(F)), α ↦ (α∘[0..q]) ⊗ (π∘α∘[q..p+q]).
// Columns of simplices outside T^{p,q} are zero.
Matrix phi(const SerreFiltration& sf, int p, int q);
// ψ(U⊗V) = G_*(EZ(1_q ⊗ 1_p)) as a chain in C_{p+q}(E).
Vector psi(const SerreFiltration& sf, int p, int q, std::size_t u, std::size_t v);
Matrix psi_matrix(const SerreFiltration& sf, int p, int q);

// Basis index of a pair of coefficient generators in
// ⊕ C_a(B;C_c(F)) ⊗ C_b(B;C_d(F)) over a+b = p, c+d = q.
class CoefficientTensorLayout {
 public:
  CoefficientTensorLayout(const BaseCoefficientComplex& coef, int p, int q);
  std::size_t dim() const { return dim_; }
  std::size_t index(int a, int c, std::size_t x, std::size_t y) const;
  std::string label(std::size_t idx) const;

 private:
  const BaseCoefficientComplex& coef_;
  int p_, q_;
  std::map<std::pair<int, int>, std::size_t> offset_;
  std::size_t dim_ = 0;
};

struct Nabla0Entry {
  std::size_t shuffle = 0;  // position in enumerate_shuffles(q, p)
  int j = 0;
  bool simple = false;
  bool exceptional = false;
  std::optional<SimpleWitness> witness;
  Vector value;  // sgn · (φ⊗φ)(X_j ⊗ Y_j)
};

struct Nabla0Result {
  int p = 0, q = 0;
  std::size_t u = 0, v = 0;
  std::vector<Shuffle> shuffles;
  std::vector<Nabla0Entry> ledger;
  Vector total;
  Vector expected;  // Δ_F(U) ⊗̃ Δ_B(V)
  bool nonsimple_zero = true;
  bool off_b_zero = true;
  bool passes() const { return nonsimple_zero && off_b_zero && total == expected; }
};

Nabla0Result nabla0(const SerreFiltration& sf, int p, int q, std::size_t u, std::size_t v);

struct E2Report {
  bool dims_match = true;
  bool iso = true;
  bool comult_match = true;
  std::vector<std::string> messages;
  // E² as a coalgebra and the target H_*(B) ⊗ H_*(F) with Δ_B ⊗̃ Δ_F.
  GradedCoalgebra page;
  GradedCoalgebra target;
  Matrix identification;  // page basis -> target basis
  // ∇² transported to the target basis, one column per target basis element.
  std::vector<Vector> transported;
  bool passes() const { return dims_match && iso && comult_match; }
};

// E²_{p,q} ≅ H_p(B) ⊗ H_q(F) via φ and the homology projections of F and B,
// followed by the swap (u⊗V) ↦ (-1)^{pq} V⊗u into base-first order.
E2Report e2_identify(const SerreFiltration& sf);
E2Report e2_identify(const SerreFiltration& sf, const CoalgebraSpectralSequence& css);

}  // namespace sseq
