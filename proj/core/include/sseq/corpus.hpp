#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sseq/filtered.hpp"
#include "sseq/simplicial.hpp"

namespace sseq {

struct RandomSetOptions {
  int max_vertices = 5;
  int max_per_degree = 5;  // non-degenerate simplices per positive degree
  int max_dimension = 5;
  bool connected = false;  // forces a single vertex
};

// Finite simplicial set with randomly chosen (consistent) faces, possibly
// degenerate. Deterministic in the seed.
SimplicialSet random_simplicial_set(std::uint64_t seed, const RandomSetOptions& opt = {});

// Normalized chains with the skeletal filtration, Alexander-Whitney
// comultiplication, augmentation and the first vertex as unit.
FilteredCoalgebra skeletal_coalgebra(const SimplicialSet& x, Field f);

// Filtration pulled back from X -> X/A: simplices of A sit in level 0, every
// other non-degenerate n-simplex in level n. Higher differentials are the
// connecting maps of the pair.
FilteredCoalgebra relative_coalgebra(const SimplicialSet& x, const std::vector<std::vector<bool>>& in_a, Field f);
// Random subcomplex: a random choice of simplices closed under faces.
std::vector<std::vector<bool>> random_subcomplex(const SimplicialSet& x, std::uint64_t seed);

struct CorpusMember {
  std::string name;
  std::string kind;  // "skeletal", "relative" or "serre"
  std::uint64_t seed = 0;
  Field field;
  SimplicialSetPtr set;
  FilteredCoalgebra coalgebra;
  // ≤ 5 non-degenerate simplices per degree and dimension ≤ 5.
  bool small = false;
};

// count skeletal members, fields used round-robin.
std::vector<CorpusMember> skeletal_corpus(std::size_t count, std::uint64_t seed, const std::vector<Field>& fields);
std::vector<CorpusMember> relative_corpus(std::size_t count, std::uint64_t seed, const std::vector<Field>& fields);
// Serre filtrations of products of two small random one-vertex sets, whose
// sequences have nonzero higher differentials.
std::vector<CorpusMember> serre_corpus(std::size_t count, std::uint64_t seed, const std::vector<Field>& fields);

}  // namespace sseq
