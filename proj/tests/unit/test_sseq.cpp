#include <doctest.h>

#include "frozen.hpp"
#include "sseq/corpus.hpp"
#include "sseq/errors.hpp"
#include "sseq/json_io.hpp"
#include "sseq/sseq.hpp"

using namespace sseq;

namespace {

std::map<Bidegree, std::size_t> nonzero(const std::map<Bidegree, std::size_t>& m) {
  std::map<Bidegree, std::size_t> out;
  for (auto [b, d] : m)
    if (d) out[b] = d;
  return out;
}

std::map<Bidegree, std::size_t> expected_dims(const nlohmann::json& cells) {
  std::map<Bidegree, std::size_t> out;
  for (const auto& c : cells) out[{c[0].get<int>(), c[1].get<int>()}] = c[2].get<std::size_t>();
  return out;
}

// dims of H(E^r, d^r) from the page's own differentials
std::map<Bidegree, std::size_t> page_homology(const Page& pg) {
  std::map<Bidegree, std::size_t> out;
  for (const auto& b : pg.bidegrees()) {
    std::size_t d = pg.dim(b);
    if (d == 0) continue;
    std::size_t out_rank = pg.differentials.count(b) ? rank(pg.differential(b)) : 0;
    Bidegree src{b.p + pg.r, b.q - pg.r + 1};
    std::size_t in_rank = pg.differentials.count(src) ? rank(pg.differential(src)) : 0;
    if (d - out_rank - in_rank) out[b] = d - out_rank - in_rank;
  }
  return out;
}

}  // namespace

TEST_CASE("page dimensions match the brute-force oracle") {
  auto cases = frozen("pages.json")["cases"];
  CHECK(cases.size() >= 40);
  for (const auto& cs : cases) {
    FilteredComplex fc = parse_filtered_complex(cs["complex"].dump());
    SpectralSequence ss(fc);
    CAPTURE(cs["complex"]["name"].get<std::string>());
    for (std::size_t r = 0; r < cs["pages"].size(); ++r) {
      auto pg = ss.page(static_cast<int>(r));
      CHECK(nonzero(pg->dims()) == expected_dims(cs["pages"][r]));
      if (r + 1 < cs["pages"].size()) CHECK(page_homology(*pg) == expected_dims(cs["pages"][r + 1]));
      for (const auto& [b, d] : pg->differentials) {
        Bidegree t = pg->target(b);
        if (pg->differentials.count(t)) CHECK((pg->differential(t) * d).is_zero());
      }
    }
  }
}

TEST_CASE("hand complex: d1 and a field-dependent d2") {
  auto cases = frozen("pages.json")["cases"];
  FilteredComplex q = parse_filtered_complex(cases[0]["complex"].dump());
  FilteredComplex f2 = parse_filtered_complex(cases[1]["complex"].dump());
  SpectralSequence sq(q), s2(f2);
  CHECK_FALSE(sq.page(1)->differential({1, 0}).is_zero());
  CHECK_FALSE(sq.page(2)->differential({2, 0}).is_zero());
  CHECK(s2.page(2)->differential({2, 0}).is_zero());
  CHECK(sq.almost_cycles(0, {1, 0}).dim() == 2);
  CHECK(sq.almost_cycles(1, {1, 0}).dim() == 2);
  CHECK(sq.almost_cycles(2, {1, 0}).dim() == 1);
}

TEST_CASE("non-first-quadrant filtrations are refused for E-infinity") {
  Field f = Field::rationals();
  ChainComplex c(f, {1}, {Matrix(f, 0, 1)});
  FilteredComplex fc = FilteredComplex::from_levels(c, {{1}});
  CHECK_FALSE(fc.first_quadrant());
  CHECK_THROWS_AS(infinity_page(fc), UnsupportedInput);
}

TEST_CASE("a boundary that raises filtration is rejected") {
  Field f = Field::rationals();
  ChainComplex c(f, {1, 1}, {Matrix(f, 0, 1), Matrix::identity(f, 1)});
  CHECK_THROWS_AS(FilteredComplex::from_levels(c, {{1}, {0}}).validate(), FiltrationViolation);
}

TEST_CASE("tensor pages on random complexes over F3") {
  auto cases = frozen("pages.json")["cases"];
  int tested = 0;
  for (const auto& cs : cases) {
    if (cs["complex"]["field"] != "F3") continue;
    FilteredComplex fc = parse_filtered_complex(cs["complex"].dump());
    for (int r = 0; r <= 4; ++r) {
      auto rep = tensor_page_iso(fc, r);
      CAPTURE(r);
      CHECK(rep.passes());
    }
    ++tested;
  }
  CHECK(tested >= 5);
}

TEST_CASE("co-Leibniz and representative independence on skeletal members") {
  auto corpus = skeletal_corpus(9, 42, {Field::prime(2), Field::prime(3), Field::rationals()});
  for (const auto& m : corpus) {
    CAPTURE(m.name);
    CoalgebraSpectralSequence css(m.coalgebra);
    for (int r = 0; r <= 3; ++r) CHECK(css.check_co_leibniz(r).passes());
    int r = 1;
    auto pg = css.sseq().page(r);
    for (const auto& b : pg->bidegrees()) {
      const auto& term = pg->terms.at(b);
      Subspace bnd = css.sseq().almost_boundaries(r, b);
      for (std::size_t k = 0; k < term.dim(); ++k) {
        Vector z = term.lifts()[k];
        Vector base = css.comult_of_chain(r, b, z);
        for (const auto& v : bnd.basis()) {
          Vector z2 = z;
          z2.axpy(Scalar::one(m.field), v);
          CHECK(css.comult_of_chain(r, b, z2) == base);
        }
      }
    }
  }
}

TEST_CASE("E-infinity matches the associated graded of homology") {
  for (const auto& m : skeletal_corpus(6, 7, {Field::prime(3), Field::rationals()})) {
    CAPTURE(m.name);
    CHECK(gr_compare(m.coalgebra).passes());
  }
  for (const auto& m : relative_corpus(6, 7, {Field::prime(2), Field::rationals()})) {
    CAPTURE(m.name);
    CHECK(gr_compare(m.coalgebra).passes());
  }
}

TEST_CASE("filtered basis pairs generators") {
  auto cases = frozen("pages.json")["cases"];
  for (const auto& cs : cases) {
    FilteredComplex fc = parse_filtered_complex(cs["complex"].dump());
    FilteredBasis fb = filtered_basis(fc);
    for (int m = 0; m <= fc.top_degree(); ++m) {
      CHECK(fb.gens[m].size() == fc.complex().dim(m));
      for (std::size_t k = 0; k < fb.gens[m].size(); ++k) CHECK(fc.level(fb.level[m][k], m).contains(fb.gens[m][k]));
    }
  }
}

namespace {

// I + N with N mixing each generator into generators of no higher level;
// nilpotent, so the inverse is a finite Neumann series.
std::pair<Matrix, Matrix> unitriangular(Field f, const std::vector<int>& level, std::uint64_t seed) {
  std::size_t n = level.size();
  Matrix nil(f, n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      bool earlier = level[i] < level[j] || (level[i] == level[j] && i < j);
      seed = seed * 6364136223846793005ull + 1442695040888963407ull;
      if (earlier && (seed >> 33) % 3 != 0) nil.set(i, j, Scalar(f, static_cast<long long>((seed >> 40) % 5) + 1));
    }
  Matrix id = Matrix::identity(f, n), inv = id, term = id;
  for (std::size_t k = 1; k <= n; ++k) {
    term = term * nil.scaled(Scalar(f, -1));
    inv = inv + term;
  }
  return {id + nil, inv};
}

}  // namespace

TEST_CASE("filtered chain isomorphisms induce isomorphisms on every page") {
  auto corpus = relative_corpus(6, 11, {Field::prime(3), Field::rationals()});
  for (const auto& m : skeletal_corpus(4, 11, {Field::prime(2), Field::rationals()})) corpus.push_back(m);
  for (const auto& m : corpus) {
    CAPTURE(m.name);
    const FilteredComplex& fc = m.coalgebra.filtered;
    const ChainComplex& c = fc.complex();
    const auto& level = *fc.generator_levels();
    int top = c.top_degree();
    std::vector<Matrix> g, ginv;
    for (int n = 0; n <= top; ++n) {
      auto [a, b] = unitriangular(m.field, level[n], m.seed + static_cast<std::uint64_t>(n));
      REQUIRE((a * b) == Matrix::identity(m.field, c.dim(n)));
      g.push_back(a);
      ginv.push_back(b);
    }
    std::vector<Matrix> bd{c.boundary(0)};
    for (int n = 1; n <= top; ++n) bd.push_back(g[n - 1] * c.boundary(n) * ginv[n]);
    FilteredComplex moved = FilteredComplex::from_levels(ChainComplex(m.field, c.dims(), bd), level);
    REQUIRE_NOTHROW(moved.validate());
    ChainMap f{m.field, g};
    REQUIRE(f.commutes(c, moved.complex()));
    std::vector<Matrix> zeros;
    for (int n = 0; n <= top; ++n) zeros.emplace_back(m.field, c.dim(n), c.dim(n));
    ChainMap zero{m.field, zeros};

    SpectralSequence src(fc), dst(moved);
    for (int r = 0; r <= 4; ++r)
      for (const auto& b : fc.bidegrees()) {
        Matrix phi = induced_page_map(f, src, dst, r, b);
        CHECK(phi.rows() == phi.cols());
        CHECK(rank(phi) == phi.cols());
        if (r == 0 && phi.cols() > 0) CHECK(rank(induced_page_map(zero, src, dst, r, b)) < phi.cols());
      }
  }
}
