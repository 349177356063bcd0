#include <doctest.h>

#include <map>
#include <tuple>

#include "frozen.hpp"
#include "sseq/chains.hpp"
#include "sseq/coalgebra.hpp"
#include "sseq/errors.hpp"
#include "sseq/simplicial.hpp"

using namespace sseq;

TEST_CASE("built-in sets") {
  CHECK(point_set().count(0) == 1);
  auto d2 = delta_set(2);
  CHECK(d2.count(0) == 3);
  CHECK(d2.count(1) == 3);
  CHECK(d2.count(2) == 1);
  auto s3 = sphere_set(3);
  CHECK(s3.count(0) == 1);
  CHECK(s3.count(3) == 1);
  for (int i = 0; i <= 3; ++i) CHECK(s3.face(Simplex::nondegenerate(3, 0), i).nd_dim == 0);
  CHECK(wedge_of_spheres({1, 2}).count(1) == 1);
  CHECK_NOTHROW(boundary_delta_set(3).validate());
  CHECK(boundary_delta_set(2).connected());
}

TEST_CASE("simplicial identities are enforced") {
  SimplicialSet x("bad", 2, true);
  x.add_simplex(0, "a");
  x.add_simplex(0, "b");
  x.add_simplex(1, "e", {Simplex::nondegenerate(0, 1), Simplex::nondegenerate(0, 0)});
  x.add_simplex(1, "f", {Simplex::nondegenerate(0, 1), Simplex::nondegenerate(0, 1)});
  auto e = Simplex::nondegenerate(1, 0), f = Simplex::nondegenerate(1, 1);
  x.add_simplex(2, "t", {e, f, e});
  CHECK_THROWS_AS(x.validate(), InvalidSimplicialSet);
}

TEST_CASE("boundary of the 2-simplex against the rank oracle") {
  auto o = frozen("linalg.json")["boundary_delta2"];
  for (auto name : {"Q", "F2", "F3"}) {
    ChainComplex c = normalized_chains(boundary_delta_set(2), Field::parse(name));
    CHECK(c.dims() == o["dims"].get<std::vector<std::size_t>>());
    CHECK(rank(c.boundary(1)) == o["rank"].get<std::size_t>());
    CHECK(compute_homology(c).dims() == o["homology"].get<std::vector<std::size_t>>());
  }
}

TEST_CASE("products of simplices have the enumerated non-degenerate simplices") {
  auto o = frozen("products.json")["delta_products"];
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; b <= 3; ++b) {
      auto p = product(delta_set(a), delta_set(b));
      auto expect = o[std::to_string(a) + "," + std::to_string(b)].get<std::vector<std::size_t>>();
      CAPTURE(a);
      CAPTURE(b);
      for (std::size_t n = 0; n < expect.size(); ++n) CHECK(p.set->count(static_cast<int>(n)) == expect[n]);
      CHECK(p.set->count(static_cast<int>(expect.size())) == 0);
    }
}

TEST_CASE("products of spheres have the Kunneth homology") {
  auto o = frozen("products.json")["sphere_products"];
  for (const auto& [key, dims] : o.items()) {
    int a = std::stoi(key.substr(0, key.find(',')));
    int b = std::stoi(key.substr(key.find(',') + 1));
    std::string field = key.substr(key.rfind(',') + 1);
    auto p = product(sphere_set(a), sphere_set(b));
    CAPTURE(key);
    CHECK(compute_homology(normalized_chains(*p.set, Field::parse(field))).dims() == dims.get<std::vector<std::size_t>>());
  }
}

TEST_CASE("Eilenberg-Zilber and Alexander-Whitney") {
  Field q = Field::rationals();
  auto d1 = delta_set(1);
  auto p11 = product(d1, d1);
  // EZ(1_1 ⊗ 1_1) has one term per (1,1) shuffle
  Vector ez = ez_of(p11, q, Simplex::nondegenerate(1, 0), Simplex::nondegenerate(1, 0));
  CHECK(ez.nnz() == 2);
  for (auto* x : {&d1}) {
    for (const auto& y : {delta_set(1), boundary_delta_set(2)}) {
      auto p = product(*x, y, 3);
      ChainMap ezm = ez_map(p, q), awm = aw_map(p, q);
      TensorComplex t = tensor_complex(normalized_chains(*x, q), normalized_chains(y, q), p.set->truncation());
      ChainComplex cp = normalized_chains(*p.set, q);
      CHECK(ezm.commutes(t.complex, cp));
      CHECK(awm.commutes(cp, t.complex));
      ChainMap id = compose(awm, ezm);
      for (int n = 0; n <= id.top_degree(); ++n) CHECK(id[n] == Matrix::identity(q, t.complex.dim(n)));
    }
  }
}

TEST_CASE("chain comultiplication is coassociative on the boundary of the 2-simplex") {
  Field f = Field::prime(3);
  auto x = boundary_delta_set(2);
  ChainComplex c = normalized_chains(x, f);
  ChainMap delta = chain_comult(x, f);
  TensorLayout lay = self_tensor_layout(c);
  using Key = std::tuple<int, std::size_t, int, std::size_t, int, std::size_t>;
  for (int n = 0; n <= c.top_degree(); ++n)
    for (std::size_t g = 0; g < c.dim(n); ++g) {
      std::map<Key, Scalar> left, right;
      auto add = [&](std::map<Key, Scalar>& m, Key k, const Scalar& s) {
        auto [it, fresh] = m.emplace(k, s);
        if (!fresh) it->second += s;
      };
      for (const auto& [idx, s] : delta[n].column(g).entries()) {
        auto pos = lay.locate(n, idx);
        int a = pos.left_degree, b = n - a;
        for (const auto& [i2, t] : delta[a].column(pos.left).entries()) {
          auto p2 = lay.locate(a, i2);
          add(left, {p2.left_degree, p2.left, a - p2.left_degree, p2.right, b, pos.right}, s * t);
        }
        for (const auto& [i2, t] : delta[b].column(pos.right).entries()) {
          auto p2 = lay.locate(b, i2);
          add(right, {a, pos.left, p2.left_degree, p2.left, b - p2.left_degree, p2.right}, s * t);
        }
      }
      std::erase_if(left, [](const auto& kv) { return kv.second.is_zero(); });
      std::erase_if(right, [](const auto& kv) { return kv.second.is_zero(); });
      CHECK(left == right);
    }
  CHECK(delta.commutes(c, tensor_complex(c, c, c.top_degree()).complex));
}

TEST_CASE("homology coalgebras") {
  for (auto name : {"F2", "F3", "Q"}) {
    Field f = Field::parse(name);
    auto h = homology_coalgebra(sphere_set(3), f);
    CHECK(h.degree_dims() == std::vector<std::size_t>{1, 0, 0, 1});
    auto rep = check_coalgebra(h);
    CHECK(rep.passes());
    CHECK(rep.cocommutative);
    auto gamma = homology_coalgebra(sphere_set(1), f);
    auto coef = coefficient_comult(sphere_set(3), gamma, f);
    CHECK(coef.dim() == 4);
    CHECK(check_coalgebra(coef).counital);
    CHECK(check_coalgebra(coef).coassociative);
  }
  CHECK_THROWS_AS(homology_coalgebra(boundary_delta_set(1), Field()), UnsupportedInput);
}

TEST_CASE("a corrupted comultiplication is caught with a witness") {
  Field f = Field::rationals();
  auto h = homology_coalgebra(product(sphere_set(1), sphere_set(2)).set->truncated(3), f);
  std::vector<CoalgebraGenerator> basis = h.basis();
  std::vector<Vector> comult;
  for (std::size_t i = 0; i < h.dim(); ++i) comult.push_back(h.comult(i));
  std::size_t top = h.dim() - 1;
  comult[top].add(h.pair_index(top, top), Scalar::one(f));
  auto bad = GradedCoalgebra(f, basis, comult, h.counit());
  auto rep = check_coalgebra(bad);
  CHECK_FALSE(rep.passes());
  REQUIRE_FALSE(rep.violations.empty());
  CHECK(rep.violations[0].find(h.label(top)) != std::string::npos);
}
