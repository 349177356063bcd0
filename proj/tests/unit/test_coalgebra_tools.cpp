#include <doctest.h>

#include "frozen.hpp"
#include "sseq/coalgebra_tools.hpp"
#include "sseq/corpus.hpp"
#include "sseq/errors.hpp"
#include "sseq/serre.hpp"

using namespace sseq;

TEST_CASE("cofree coalgebras have exterior dimensions") {
  auto o = frozen("exterior.json");
  for (auto name : {"F3", "F5", "Q"}) {
    Field f = Field::parse(name);
    for (const auto& [n, e] : o["odd"].items()) {
      auto co = cofree(GeneratorSpec::odd_up_to(std::stoi(n)), f);
      auto dims = e["dims"].get<std::vector<std::size_t>>();
      auto got = co.coalgebra.degree_dims();
      got.resize(dims.size(), 0);
      CHECK(got == dims);
      CHECK(co.coalgebra.dim() == e["total"].get<std::size_t>());
      auto rep = check_coalgebra(co.coalgebra);
      CHECK(rep.passes());
      CHECK(rep.cocommutative);
      auto prim = primitives(co);
      CHECK(prim.dim() == e["primitives"].get<std::size_t>());
      CHECK(prim.support() == e["degrees"].get<std::vector<int>>());
    }
    for (const auto& [key, e] : o["specs"].items()) {
      GeneratorSpec v;
      std::stringstream ss(key);
      for (std::string t; std::getline(ss, t, ',');) v.degrees.push_back(std::stoi(t));
      auto co = cofree(v, f);
      auto dims = e["dims"].get<std::vector<std::size_t>>();
      auto got = co.coalgebra.degree_dims();
      got.resize(dims.size(), 0);
      CAPTURE(key);
      CHECK(got == dims);
      CHECK(check_coalgebra(co.coalgebra).passes());
    }
  }
}

TEST_CASE("products of generators are not primitive") {
  Field f = Field::rationals();
  GeneratorSpec v{{1, 3}};
  auto co = cofree(v, f);
  Vector x31 = Vector::unit(f, co.coalgebra.dim(), cofree_index(v, {0, 1}));
  CHECK_FALSE(is_primitive(co, x31));
  CHECK(is_primitive(co, Vector::unit(f, co.coalgebra.dim(), cofree_index(v, {1}))));
}

TEST_CASE("cofree refuses even degrees and characteristic 2") {
  CHECK_THROWS_AS(cofree(GeneratorSpec{{2}}, Field::rationals()), UnsupportedInput);
  CHECK_THROWS_AS(cofree(GeneratorSpec{{1}}, Field::prime(2)), UnsupportedInput);
  CHECK(cofree(GeneratorSpec{}, Field::prime(3)).coalgebra.dim() == 1);
}

TEST_CASE("H(S1 x S3) extends to an isomorphism onto the cofree coalgebra") {
  for (auto name : {"F3", "Q"}) {
    Field f = Field::parse(name);
    auto h = homology_coalgebra(*product(sphere_set(1), sphere_set(3)).set, f);
    auto d = coaugment(h);
    GeneratorSpec v{{1, 3}};
    Matrix fm(f, 2, h.dim());
    for (std::size_t i = 0; i < h.dim(); ++i) {
      if (h.degree(i) == 1) fm.set(0, i, Scalar::one(f));
      if (h.degree(i) == 3) fm.set(1, i, Scalar::one(f));
    }
    auto ext = cofree_extend(d, fm, v);
    CHECK(is_coalgebra_map(ext.map, h, ext.cofree.coalgebra));
    CHECK(rank(ext.map) == h.dim());
  }
}

TEST_CASE("collapse replays") {
  for (auto [n, name] : std::vector<std::pair<int, const char*>>{{2, "Q"}, {2, "F3"}, {3, "Q"}}) {
    auto rep = collapse_replay(n, Field::parse(name));
    CAPTURE(n);
    CHECK(rep.passes());
    std::size_t total = 0;
    for (auto d : rep.homology_dims) total += d;
    CHECK(total == (std::size_t{1} << n));
  }
}

TEST_CASE("primitive differentials on corpus pages") {
  auto corpus = relative_corpus(6, 3, {Field::prime(3), Field::rationals()});
  for (const auto& m : corpus) {
    CoalgebraSpectralSequence css(m.coalgebra);
    for (int r = 1; r <= 4; ++r) {
      auto rep = primitive_differential_check(css, r);
      CAPTURE(m.name);
      CHECK(rep.passes());
    }
  }
}
