#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "sseq/coalgebra.hpp"
#include "sseq/linalg.hpp"
#include "sseq/sseq.hpp"

namespace sseq {

// A coalgebra with η : k -> C_0, i.e. a group-like element with ε(η) = 1.
struct CoaugmentedCoalgebra {
  GradedCoalgebra coalgebra;
  Vector unit;

  // Throws unless ε(η) = 1, ∇η = η⊗η and η has degree 0.
  void validate() const;
};

CoaugmentedCoalgebra coaugment(GradedCoalgebra c, Vector unit);
// Connected case: C_0 is one-dimensional and η is its basis vector rescaled.
CoaugmentedCoalgebra coaugment(GradedCoalgebra c);

struct GeneratorSpec {
  std::vector<int> degrees;

  // Generators x_{2i-1} for i = 1..n.
  static GeneratorSpec odd_up_to(int n);
  void validate() const;  // all degrees odd and positive
};

// Subspaces of the whole coalgebra, one per degree.
struct GradedSubspace {
  std::vector<Subspace> by_degree;

  std::size_t dim() const;
  std::size_t dim(int n) const;
  std::vector<int> support() const;
  std::vector<Vector> basis() const;
};

// Kernel of x ↦ ∇x - x⊗η - η⊗x in positive degrees.
GradedSubspace primitives(const CoaugmentedCoalgebra& c);
bool is_primitive(const CoaugmentedCoalgebra& c, const Vector& x);

// Exterior-shaped coalgebra on odd generators: basis = subsets S of the
// generators, ∇ x_S = Σ_{T ⊔ U = S} ±x_T ⊗ x_U with the sign of the
// interleaving. Requires odd degrees and characteristic ≠ 2.
CoaugmentedCoalgebra cofree(const GeneratorSpec& v, Field f);
// Basis index of x_S in cofree(v) for S given as increasing generator indices.
std::size_t cofree_index(const GeneratorSpec& v, const std::vector<std::size_t>& subset);

// (g⊗g)∇_D = ∇_C g, ε_C g = ε_D, and g preserves degrees.
bool is_coalgebra_map(const Matrix& g, const GradedCoalgebra& d, const GradedCoalgebra& c);

struct CofreeExtension {
  CoaugmentedCoalgebra cofree;
  Matrix map;  // D -> cofree(V)
};

// f has one row per generator of v and one column per basis element of D;
// it is read on D̄ through x ↦ x - ε(x)η. Requires D cocommutative.
CofreeExtension cofree_extend(const CoaugmentedCoalgebra& d, const Matrix& f, const GeneratorSpec& v);

struct PrimitiveDifferentialReport {
  int r = 0;
  bool coaugmented = true;  // false: no unit class on the page, check skipped
  std::size_t primitives = 0;
  std::vector<std::string> violations;
  bool passes() const { return violations.empty(); }
};

// For each primitive x of E^r, d^r(x) must again be primitive.
PrimitiveDifferentialReport primitive_differential_check(const CoalgebraSpectralSequence& css, int r);

struct CollapseReplay {
  int n = 0;
  Field field;
  std::vector<int> fiber_primitive_degrees;
  bool base_class_primitive = false;
  bool differentials_zero = true;    // every d^r, r >= 2
  bool primitives_preserved = true;  // primitive_differential_check on E^2..E^{2n-1}
  bool cofree_iso = false;           // H_*(total) ≅ cofree(V_n) via cofree_extend
  std::vector<std::size_t> homology_dims;
  std::vector<std::string> messages;
  bool passes() const { return base_class_primitive && differentials_zero && primitives_preserved && cofree_iso; }
};

// S^{2n-1} × (S^1 × S^3 × ... × S^{2n-3}) over S^{2n-1}: the fiber coalgebra
// has primitives only in odd degrees up to 2n-3, so the transgression of the
// base class lands on zero and the sequence collapses.
CollapseReplay collapse_replay(int n, Field f);

}  // namespace sseq
