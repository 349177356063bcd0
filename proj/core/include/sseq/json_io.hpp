#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "sseq/coalgebra.hpp"
#include "sseq/coalgebra_tools.hpp"
#include "sseq/errors.hpp"
#include "sseq/filtered.hpp"
#include "sseq/serre.hpp"
#include "sseq/simplicial.hpp"

// All writers produce two-space indented JSON with sorted keys and a final
// newline, so equal values serialize to identical bytes. Readers throw
// ParseError carrying the line and column of malformed JSON, or a path such
// as "faces.x3[1]" for well-formed JSON with bad content.
namespace sseq {

std::string matrix_json(const Matrix& m);
Matrix parse_matrix(std::string_view text);

// {name, truncation, finite, simplices: {n: [names]}, faces: {name: [labels]},
// degeneracies: {alias: label}}. A label is a simplex name, optionally followed
// by a degeneracy "[0,0,1]"; aliases may be used wherever labels are.
std::string simplicial_set_json(const SimplicialSet& x);
SimplicialSet parse_simplicial_set(std::string_view text);

// "point", "delta(n)", "boundary-delta(n)", "sphere(n)", "wedge(n1,...)",
// "product(A,B)", and "random(seed)" for a small random finite set.
SimplicialSet builtin_set(std::string_view expr, std::optional<int> truncation = std::nullopt);

// {total, base, map: {total simplex name: base label}, fiber_basepoint}.
// "product(F,B)" builds the product fibration.
std::string fibration_json(const Fibration& fib);
Fibration parse_fibration(std::string_view text, std::optional<int> truncation = std::nullopt);

// {field, dims, labels, boundaries: [matrix for degree 1..top],
//  filtration: {p: {m: [[[i,"v"],...], ...]}}, coalgebra?: {...}}.
// F^p_m is spanned by everything listed at levels ≤ p in degree m; above the
// highest listed level the filtration is everything, and a degree with no
// entries sits entirely in level 0.
std::string filtered_complex_json(const FilteredComplex& fc);
std::string filtered_coalgebra_json(const FilteredCoalgebra& fc);
FilteredComplex parse_filtered_complex(std::string_view text, std::optional<Field> field = std::nullopt);
// Needs the optional "coalgebra" member: {comult: [matrix per degree into the
// tensor layout], counit: vector, unit?: vector}.
FilteredCoalgebra parse_filtered_coalgebra(std::string_view text, std::optional<Field> field = std::nullopt);

// {field, basis: [{degree, label, filtration}], counit, comult: [vector per
// basis element over the pair index i*d+j]}.
std::string coalgebra_json(const GradedCoalgebra& c);
GradedCoalgebra parse_coalgebra(std::string_view text, std::optional<Field> field = std::nullopt);

GeneratorSpec parse_generator_spec(std::string_view text);

enum class ModelKind { simplicial_set, fibration, filtered_complex, filtered_coalgebra, coalgebra, generators };
std::string kind_name(ModelKind k);

struct Model {
  ModelKind kind = ModelKind::simplicial_set;
  std::string source;  // exact input text
  std::optional<SimplicialSet> set;
  std::optional<Fibration> fibration;
  std::optional<FilteredComplex> filtered;
  std::optional<FilteredCoalgebra> filtered_coalgebra;
  std::optional<GradedCoalgebra> coalgebra;
  std::optional<GeneratorSpec> generators;
};

// Accepts a JSON document of any kind above or a bare shorthand expression.
// Shorthands "product(F,B)" become fibrations, other built-ins simplicial sets,
// and a bare degree list a generator spec.
Model load_model(std::string_view text, Field f, std::optional<int> truncation = std::nullopt);

// 64-bit FNV-1a as 16 hex digits.
std::string fnv1a_hex(std::string_view data);

}  // namespace sseq
