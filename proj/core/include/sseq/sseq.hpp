#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "sseq/coalgebra.hpp"
#include "sseq/filtered.hpp"

namespace sseq {

// E^r_{p,q} = (Z^r_{p,q} + F^{p-1}) / (B^{r-1}_{p,q} + F^{p-1}), with lifts of
// the representatives chosen inside Z^r_{p,q}.
struct PageTerm {
  Bidegree at;
  Subspace cycles;
  QuotientPresentation quotient;
  std::size_t dim() const { return quotient.dim(); }
  const std::vector<Vector>& lifts() const { return quotient.lifts(); }
};

// One summand E_L ⊗ E_R of the tensor target of ∇^r at some bidegree.
struct TensorBlock {
  Bidegree left;
  Bidegree right;
  std::size_t offset = 0;
  std::size_t left_dim = 0;
  std::size_t right_dim = 0;
};

struct Page {
  int r = 0;
  Field field;
  std::map<Bidegree, PageTerm> terms;
  std::map<Bidegree, Matrix> differentials;  // keyed by source bidegree
  std::map<Bidegree, Matrix> comultiplications;
  std::map<Bidegree, std::vector<TensorBlock>> comult_blocks;
  std::map<Bidegree, int> stabilization;  // filled on infinity pages

  std::size_t dim(Bidegree b) const;
  Bidegree target(Bidegree b) const { return {b.p - r, b.q + r - 1}; }
  const Matrix& differential(Bidegree b) const { return differentials.at(b); }
  std::vector<Bidegree> bidegrees() const;
  std::map<Bidegree, std::size_t> dims() const;
};

class SpectralSequence {
 public:
  explicit SpectralSequence(FilteredComplex fc);
  SpectralSequence(const SpectralSequence&) = delete;
  SpectralSequence& operator=(const SpectralSequence&) = delete;

  const FilteredComplex& filtered() const { return fc_; }
  Field field() const { return fc_.field(); }
  Subspace almost_cycles(int r, Bidegree b) const;
  Subspace almost_boundaries(int r, Bidegree b) const;
  PageTerm term(int r, Bidegree b) const;
  std::shared_ptr<const Page> page(int r) const;
  // Smallest page from which a first-quadrant sequence is constant.
  int stable_page() const;
  // Requires a first-quadrant filtration.
  Page infinity_page() const;

 private:
  Page build(int r) const;

  FilteredComplex fc_;
  std::vector<Matrix> boundary_;
  mutable std::mutex mutex_;
  mutable std::map<int, std::shared_ptr<const Page>> cache_;
};

Subspace almost_cycles(const FilteredComplex& fc, int r, int p, int q);
Subspace almost_boundaries(const FilteredComplex& fc, int r, int p, int q);
Page build_page(const FilteredComplex& fc, int r);
Page infinity_page(const FilteredComplex& fc);

// Basis of C adapted to the filtration in which ∂ sends each generator to 0
// or to another generator (a persistence-style pairing). gap is the level
// drop across a pair, or -1 for unpaired cycles.
struct FilteredBasis {
  std::vector<std::vector<Vector>> gens;
  std::vector<std::vector<int>> level;
  std::vector<std::vector<int>> gap;
  // inverse[m][i] = coordinates of the i-th standard basis vector of C_m.
  std::vector<std::vector<Vector>> inverse;

  // True when the generator still carries a class on page r.
  bool survives(int m, std::size_t k, int r) const { return gap[m][k] < 0 || r <= gap[m][k]; }
};

FilteredBasis filtered_basis(const FilteredComplex& fc);

// φ^r : E(C⊗C)^r_{p,q} -> ⊕ D^r_{a,c} ⊗ D^r_{b,d}, [x⊗y] ↦ [x]⊗[y]. C⊗C
// splits as a sum of tensor products of the elementary pieces of a
// FilteredBasis, so φ^r keeps the level-p coefficients of tensors of
// generators that survive to page r.
class TensorPageIdentification {
 public:
  explicit TensorPageIdentification(const SpectralSequence& d);
  TensorPageIdentification(const TensorPageIdentification&) = delete;
  TensorPageIdentification& operator=(const TensorPageIdentification&) = delete;

  const SpectralSequence& base() const { return d_; }
  const TensorLayout& layout() const { return layout_; }
  const FilteredBasis& basis() const { return basis_; }
  std::vector<TensorBlock> blocks(int r, Bidegree b) const;
  std::size_t target_dim(int r, Bidegree b) const;
  // w must lie in Z^r(C⊗C)_{p,q} + G^{p-1}; throws InternalConsistency when
  // w is not even in G^p.
  Vector phi(int r, Bidegree b, const Vector& w) const;
  // d^r ⊗ 1 + (-1)^{a+c} 1 ⊗ d^r from bidegree b to b + (-r, r-1).
  Matrix tensor_differential(int r, Bidegree b) const;

 private:
  // classes(r)[m][k]: class of generator k of degree m on page r (empty if it
  // does not survive).
  const std::vector<std::vector<Vector>>& classes(int r) const;

  const SpectralSequence& d_;
  FilteredBasis basis_;
  TensorLayout layout_;
  mutable std::mutex mutex_;
  mutable std::map<int, std::unique_ptr<std::vector<std::vector<Vector>>>> classes_;
};

struct TensorIsoEntry {
  Bidegree at;
  std::size_t tensor_dim = 0;       // dim E(C⊗C)^r_{p,q}
  std::size_t convolution_dim = 0;  // Σ dim D_{a,c} · dim D_{b,d}
  bool invertible = false;
  bool intertwines = false;
};

struct TensorIsoReport {
  int r = 0;
  std::vector<TensorIsoEntry> entries;
  std::map<Bidegree, Matrix> isomorphisms;
  bool passes() const;
};

TensorIsoReport tensor_page_iso(const FilteredComplex& fc, int r);
TensorIsoReport tensor_page_iso(const TensorPageIdentification& ident, const SpectralSequence& tensor_ss, int r);

struct CoLeibnizReport {
  int r = 0;
  std::size_t checked = 0;
  std::vector<Bidegree> violations;
  bool passes() const { return violations.empty(); }
};

class CoalgebraSpectralSequence {
 public:
  explicit CoalgebraSpectralSequence(FilteredCoalgebra fcs, bool validate = true);
  CoalgebraSpectralSequence(const CoalgebraSpectralSequence&) = delete;
  CoalgebraSpectralSequence& operator=(const CoalgebraSpectralSequence&) = delete;

  const FilteredCoalgebra& coalgebra() const { return fcs_; }
  const SpectralSequence& sseq() const { return ss_; }
  const TensorPageIdentification& identification() const { return ident_; }

  // ∇^r on E^r_b as a matrix into the blocks of identification().blocks(r, b).
  Matrix page_comult(int r, Bidegree b) const;
  // ∇ of the class of an arbitrary Z^r representative z.
  Vector comult_of_chain(int r, Bidegree b, const Vector& z) const;
  std::shared_ptr<const Page> page_with_comult(int r) const;

  // The whole page as one coalgebra; basis ordered by bidegree then class.
  GradedCoalgebra page_coalgebra(int r) const;
  // Offsets of each bidegree inside page_coalgebra(r).
  std::map<Bidegree, std::size_t> page_offsets(int r) const;
  Matrix page_differential(int r) const;
  std::optional<Vector> unit_class(int r) const;

  CoLeibnizReport check_co_leibniz(int r) const;

 private:
  FilteredCoalgebra fcs_;
  SpectralSequence ss_;
  TensorPageIdentification ident_;
  mutable std::mutex mutex_;
  mutable std::map<int, std::shared_ptr<const Page>> comult_pages_;
};

Matrix page_comult(const FilteredCoalgebra& fcs, int r, int p, int q);
CoLeibnizReport check_co_leibniz(const FilteredCoalgebra& fcs, int r);

struct GrReport {
  bool first_quadrant = true;
  bool dims_match = true;
  bool comult_match = true;
  bool adapted_ok = true;
  // filtration_dims[m][p - low] = dim F^p H_m for p from low(m) to high(m).
  std::vector<std::vector<std::size_t>> filtration_dims;
  std::vector<int> filtration_low;
  std::vector<std::string> messages;
  bool passes() const { return first_quadrant && dims_match && comult_match && adapted_ok; }
};

// Compares E^∞ with Gr H_*(C) as bigraded coalgebras. Non-isomorphic
// coalgebras can share the same associated graded, so a pass says nothing
// about the extension problem.
GrReport gr_compare(const CoalgebraSpectralSequence& css);
GrReport gr_compare(const FilteredCoalgebra& fcs);

// Page map induced by a filtration-preserving chain map.
Matrix induced_page_map(const ChainMap& f, const SpectralSequence& source, const SpectralSequence& target, int r,
                        Bidegree b);

}  // namespace sseq
