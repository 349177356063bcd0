#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "sseq/chains.hpp"
#include "sseq/linalg.hpp"
#include "sseq/simplicial.hpp"

namespace sseq {

struct CoalgebraGenerator {
  int degree = 0;
  std::string label;
  int filtration = 0;  // p for bigraded coalgebras, 0 otherwise
};

// Finite-dimensional graded coalgebra on a homogeneous basis e_0..e_{d-1}.
// Tensors e_i ⊗ e_j are indexed by i*d + j.
class GradedCoalgebra {
 public:
  GradedCoalgebra() = default;
  GradedCoalgebra(Field f, std::vector<CoalgebraGenerator> basis, std::vector<Vector> comult, Vector counit);

  Field field() const { return field_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<CoalgebraGenerator>& basis() const { return basis_; }
  int degree(std::size_t i) const { return basis_.at(i).degree; }
  const std::string& label(std::size_t i) const { return basis_.at(i).label; }
  const Vector& comult(std::size_t i) const { return comult_.at(i); }
  const Vector& counit() const { return counit_; }
  std::size_t pair_index(std::size_t i, std::size_t j) const { return i * dim() + j; }
  int top_degree() const;
  std::vector<std::size_t> degree_dims() const;
  std::vector<std::size_t> indices_of_degree(int n) const;

  Vector apply_comult(const Vector& x) const;
  Vector tensor(const Vector& x, const Vector& y) const;
  // Pretty form "a⊗b + ..." for reports.
  std::string format_tensor(const Vector& t) const;
  std::string format(const Vector& x) const;

 private:
  Field field_;
  std::vector<CoalgebraGenerator> basis_;
  std::vector<Vector> comult_;
  Vector counit_;
};

struct CoalgebraReport {
  bool coassociative = true;
  bool counital = true;
  bool cocommutative = true;
  bool degrees_ok = true;
  std::vector<std::string> violations;  // "<property>: <basis label>"
  bool passes() const { return coassociative && counital && degrees_ok; }
};

CoalgebraReport check_coalgebra(const GradedCoalgebra& c);

// H_*(X) with ∇ induced by the chain comultiplication and the Künneth
// projection. Refuses disconnected X.
GradedCoalgebra homology_coalgebra(const SimplicialSet& x, Field f);
// Same without the connectivity check; the counit is the augmentation.
GradedCoalgebra homology_coalgebra_unchecked(const SimplicialSet& x, Field f);
// A ⊗ B with ∇ = ∇_A ⊗̃ ∇_B, (a⊗b)⊗̃(c⊗d) = (-1)^{|b||c|} (a□c)⊗(b□d).
GradedCoalgebra tensor_coalgebra(const GradedCoalgebra& a, const GradedCoalgebra& b);
// H_*(X; Γ) = H_*(X) ⊗ Γ with the twisted tensor comultiplication.
GradedCoalgebra coefficient_comult(const SimplicialSet& x, const GradedCoalgebra& gamma, Field f);
// The ground field as a coalgebra concentrated in degree 0.
GradedCoalgebra trivial_coalgebra(Field f);

// Label of a homology class: "1" for the class of a vertex in a connected
// set, otherwise the simplex carrying the leading coefficient of the
// representative.
std::string homology_class_label(const ChainComplex& c, const Vector& rep, int degree, bool connected);

}  // namespace sseq
