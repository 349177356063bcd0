#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sseq/delta.hpp"

namespace sseq {

// A simplex of arbitrary dimension, stored as (non-degenerate simplex) ∘ s
// with s : [dim] ->> [nd_dim] a surjection.
struct Simplex {
  int nd_dim = 0;
  std::size_t index = 0;
  DeltaMorphism degeneracy;

  static Simplex nondegenerate(int dim, std::size_t index) { return {dim, index, DeltaMorphism::identity(dim)}; }
  int dim() const { return degeneracy.source(); }
  bool degenerate() const { return dim() != nd_dim; }

  friend bool operator==(const Simplex&, const Simplex&) = default;
  friend auto operator<=>(const Simplex&, const Simplex&) = default;
};

// Degreewise-finite simplicial set described by its non-degenerate simplices
// and their faces. Simplices above the truncation are not represented; a set
// marked finite has none at all.
class SimplicialSet {
 public:
  SimplicialSet() = default;
  SimplicialSet(std::string name, int truncation, bool finite = false);

  std::size_t add_simplex(int dim, std::string name, std::vector<Simplex> faces = {});

  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }
  int truncation() const { return truncation_; }
  bool finite() const { return finite_; }
  // Largest dimension with a non-degenerate simplex (-1 if empty).
  int top_dimension() const;
  std::size_t count(int n) const;
  const std::string& simplex_name(int n, std::size_t i) const { return names_.at(n).at(i); }
  std::string label(const Simplex& x) const;
  std::optional<std::size_t> find(int n, std::string_view name) const;
  const std::vector<Simplex>& faces(int n, std::size_t i) const { return faces_.at(n).at(i); }

  Simplex face(const Simplex& x, int i) const;
  // x ∘ theta
  Simplex apply(const Simplex& x, const DeltaMorphism& theta) const;
  Simplex vertex(const Simplex& x, int k) const;
  bool connected() const;
  std::size_t component_count() const;

  // Simplicial identities for all faces of all stored simplices.
  void validate() const;
  SimplicialSet truncated(int n) const;

 private:
  Simplex face_of_nondegenerate(int n, std::size_t index, const DeltaMorphism& mono) const;

  std::string name_;
  int truncation_ = 0;
  bool finite_ = false;
  std::vector<std::vector<std::string>> names_;
  std::vector<std::vector<std::vector<Simplex>>> faces_;
  std::vector<std::map<std::string, std::size_t, std::less<>>> lookup_;
};

using SimplicialSetPtr = std::shared_ptr<const SimplicialSet>;

SimplicialSet point_set();
SimplicialSet delta_set(int n);
SimplicialSet boundary_delta_set(int n);
// One vertex and one non-degenerate n-simplex (two vertices for n = 0).
SimplicialSet sphere_set(int n);
// Ordered simplicial complex generated by the given facets (vertex lists).
SimplicialSet simplicial_complex(std::string name, const std::vector<std::vector<int>>& facets);
// X/A for a subcomplex A given per degree as sets of non-degenerate indices.
SimplicialSet quotient_set(const SimplicialSet& x, const std::vector<std::vector<std::size_t>>& subcomplex,
                           std::string name = {});
// Bouquet of minimal spheres of the given dimensions (all >= 1).
SimplicialSet wedge_of_spheres(const std::vector<int>& dims);

struct ProductSet {
  SimplicialSetPtr left;
  SimplicialSetPtr right;
  SimplicialSetPtr set;
  // components[n][i] = (x, y) for the i-th non-degenerate n-simplex.
  std::vector<std::vector<std::pair<Simplex, Simplex>>> components;

  // The simplex (x, y) of the product; x and y must have equal dimension.
  Simplex pair(const Simplex& x, const Simplex& y) const;

  std::map<std::tuple<int, std::size_t, std::vector<int>, int, std::size_t, std::vector<int>>, std::size_t> index;
};

ProductSet product(const SimplicialSet& x, const SimplicialSet& y, std::optional<int> truncation = std::nullopt);

// Simplicial map given by images of the non-degenerate simplices.
class SimplicialMap {
 public:
  SimplicialMap() = default;
  SimplicialMap(SimplicialSetPtr source, SimplicialSetPtr target, std::vector<std::vector<Simplex>> images);

  const SimplicialSet& source() const { return *source_; }
  const SimplicialSet& target() const { return *target_; }
  SimplicialSetPtr source_ptr() const { return source_; }
  SimplicialSetPtr target_ptr() const { return target_; }
  Simplex apply(const Simplex& x) const;
  const Simplex& image(int n, std::size_t i) const { return images_.at(n).at(i); }
  // Throws InvalidSimplicialSet if faces are not preserved.
  void validate() const;

 private:
  SimplicialSetPtr source_;
  SimplicialSetPtr target_;
  std::vector<std::vector<Simplex>> images_;
};

}  // namespace sseq
