#pragma once

#include <optional>
#include <vector>

#include "sseq/chains.hpp"
#include "sseq/linalg.hpp"

namespace sseq {

struct Bidegree {
  int p = 0;
  int q = 0;
  int total() const { return p + q; }
  friend bool operator==(const Bidegree&, const Bidegree&) = default;
  friend auto operator<=>(const Bidegree&, const Bidegree&) = default;
};

// Increasing filtration F^p_m of a chain complex. In degree m the levels
// low(m)..high(m) are stored; below low(m) the filtration is 0 and above
// high(m) it is the whole of C_m.
class FilteredComplex {
 public:
  FilteredComplex() = default;
  FilteredComplex(ChainComplex c, std::vector<int> low, std::vector<std::vector<Subspace>> levels);
  // Filtration spanned by basis elements: e_i of degree m sits in F^p for
  // p >= level[m][i].
  static FilteredComplex from_levels(ChainComplex c, const std::vector<std::vector<int>>& level);
  // F^p = C for p >= 0.
  static FilteredComplex trivial(ChainComplex c);

  const ChainComplex& complex() const { return complex_; }
  Field field() const { return complex_.field(); }
  int top_degree() const { return complex_.top_degree(); }
  int low(int m) const { return low_.at(m); }
  int high(int m) const { return low_.at(m) + static_cast<int>(levels_.at(m).size()) - 1; }
  const Subspace& level(int p, int m) const;
  // Basis levels when the filtration is spanned by basis elements.
  const std::optional<std::vector<std::vector<int>>>& generator_levels() const { return generator_levels_; }

  // Bidegrees (p, m-p) with low(m) <= p <= high(m), ordered by m then p.
  std::vector<Bidegree> bidegrees() const;
  bool in_range(Bidegree b) const;
  bool first_quadrant() const;
  // max over stored bidegrees of max(p+1, q+2).
  int stable_page() const;
  // Nested levels and ∂F^p ⊆ F^p; throws FiltrationViolation.
  void validate() const;

 private:
  ChainComplex complex_;
  std::vector<int> low_;
  std::vector<std::vector<Subspace>> levels_;
  std::vector<Subspace> zero_;
  std::vector<Subspace> full_;
  std::optional<std::vector<std::vector<int>>> generator_levels_;
};

// F^p_m spanned by simplices of dimension <= p, i.e. level(e) = degree(e).
FilteredComplex skeletal_filtration(const ChainComplex& c);

struct FilteredTensor {
  FilteredComplex filtered;  // C⊗C with G^p = Σ F^c ⊗ F^{p-c}
  TensorLayout layout;
};

FilteredTensor tensor_filtered(const FilteredComplex& fc, std::optional<int> max_degree = std::nullopt);

// Filtered DG coalgebra: Δ : C -> C⊗C (tensor layout of C with itself up to
// the top degree of C), counit on C_0 and a chosen unit chain in C_0.
struct FilteredCoalgebra {
  FilteredComplex filtered;
  ChainMap comult;
  Vector counit;
  std::optional<Vector> unit;

  // Δ is a chain map into C⊗C and Δ(F^p) ⊆ G^p. Throws FiltrationViolation
  // naming the offending generator.
  void validate() const;
};

}  // namespace sseq
