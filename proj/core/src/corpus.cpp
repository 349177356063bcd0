#include "sseq/corpus.hpp"

#include <random>

#include "sseq/chains.hpp"
#include "sseq/errors.hpp"
#include "sseq/serre.hpp"

namespace sseq {

namespace {

// mt19937_64 with plain modulo so sequences agree across standard libraries.
struct Rng {
  std::mt19937_64 gen;
  explicit Rng(std::uint64_t seed) : gen(seed) {}
  int below(int n) { return static_cast<int>(gen() % static_cast<std::uint64_t>(n)); }
  int between(int lo, int hi) { return lo + below(hi - lo + 1); }
};

// All simplices of dimension n: x∘s for non-degenerate x and surjections s.
std::vector<Simplex> all_simplices(const SimplicialSet& x, int n) {
  std::vector<Simplex> out;
  for (int d = 0; d <= n; ++d) {
    if (x.count(d) == 0) continue;
    // surjections [n] ->> [d] <-> d-subsets of {1..n} where the value steps up
    std::vector<int> pick(n, 0);
    for (int i = 0; i < d; ++i) pick[n - 1 - i] = 1;
    do {
      std::vector<int> values{0};
      for (int i = 0; i < n; ++i) values.push_back(values.back() + pick[i]);
      DeltaMorphism s(values, d);
      for (std::size_t k = 0; k < x.count(d); ++k) out.push_back({d, k, s});
    } while (std::next_permutation(pick.begin(), pick.end()));
  }
  return out;
}

}  // namespace

SimplicialSet random_simplicial_set(std::uint64_t seed, const RandomSetOptions& opt) {
  Rng rng(seed);
  int top = rng.between(1, opt.max_dimension);
  SimplicialSet x("random-" + std::to_string(seed), top, true);
  int nv = opt.connected ? 1 : rng.between(1, opt.max_vertices);
  for (int v = 0; v < nv; ++v) x.add_simplex(0, "v" + std::to_string(v));
  for (int n = 1; n <= top; ++n) {
    int k = rng.between(n == 1 ? 1 : 0, opt.max_per_degree);
    std::vector<Simplex> lower = all_simplices(x, n - 1);
    for (int s = 0; s < k; ++s) {
      std::vector<Simplex> faces;
      for (int attempt = 0; attempt < 20 && faces.size() != static_cast<std::size_t>(n + 1); ++attempt) {
        faces.clear();
        for (int j = 0; j <= n; ++j) {
          // d_i x_j = d_{j-1} x_i for i < j
          std::vector<const Simplex*> ok, ok_nd;
          for (const auto& z : lower) {
            bool fits = true;
            for (int i = 0; i < j && fits && n > 1; ++i) fits = x.face(z, i) == x.face(faces[i], j - 1);
            if (!fits) continue;
            ok.push_back(&z);
            if (!z.degenerate()) ok_nd.push_back(&z);
          }
          if (ok.empty()) break;
          const auto& from = !ok_nd.empty() && rng.below(4) != 0 ? ok_nd : ok;
          faces.push_back(*from[rng.below(static_cast<int>(from.size()))]);
        }
      }
      if (faces.size() != static_cast<std::size_t>(n + 1))
        faces.assign(n + 1, Simplex{0, 0, DeltaMorphism::constant(n - 1, 0, 0)});
      x.add_simplex(n, "e" + std::to_string(n) + "_" + std::to_string(s), std::move(faces));
    }
  }
  x.validate();
  return x;
}

FilteredCoalgebra skeletal_coalgebra(const SimplicialSet& x, Field f) {
  FilteredCoalgebra fc;
  fc.filtered = skeletal_filtration(normalized_chains(x, f));
  fc.comult = chain_comult(x, f);
  fc.counit = augmentation(x, f);
  if (x.count(0) > 0) fc.unit = Vector::unit(f, x.count(0), 0);
  return fc;
}

std::vector<std::vector<bool>> random_subcomplex(const SimplicialSet& x, std::uint64_t seed) {
  Rng rng(seed);
  int top = x.top_dimension();
  std::vector<std::vector<bool>> in(top + 1);
  for (int n = 0; n <= top; ++n) {
    in[n].resize(x.count(n));
    for (std::size_t k = 0; k < x.count(n); ++k) in[n][k] = rng.below(2) == 1;
  }
  for (int n = top; n >= 1; --n)
    for (std::size_t k = 0; k < x.count(n); ++k)
      if (in[n][k])
        for (const auto& face : x.faces(n, k)) in[face.nd_dim][face.index] = true;
  return in;
}

FilteredCoalgebra relative_coalgebra(const SimplicialSet& x, const std::vector<std::vector<bool>>& in_a, Field f) {
  ChainComplex c = normalized_chains(x, f);
  std::vector<std::vector<int>> level(c.top_degree() + 1);
  for (int n = 0; n <= c.top_degree(); ++n)
    for (std::size_t k = 0; k < x.count(n); ++k)
      level[n].push_back(n < static_cast<int>(in_a.size()) && k < in_a[n].size() && in_a[n][k] ? 0 : n);
  FilteredCoalgebra fc;
  fc.filtered = FilteredComplex::from_levels(std::move(c), level);
  fc.comult = chain_comult(x, f);
  fc.counit = augmentation(x, f);
  if (x.count(0) > 0) fc.unit = Vector::unit(f, x.count(0), 0);
  return fc;
}

namespace {

bool is_small(const SimplicialSet& x) {
  if (x.top_dimension() > 5) return false;
  for (int n = 1; n <= x.top_dimension(); ++n)
    if (x.count(n) > 5) return false;
  return true;
}

}  // namespace

std::vector<CorpusMember> skeletal_corpus(std::size_t count, std::uint64_t seed, const std::vector<Field>& fields) {
  if (fields.empty()) throw RangeError("corpus needs at least one field");
  std::vector<CorpusMember> out;
  for (std::size_t i = 0; i < count; ++i) {
    std::uint64_t s = seed * 1000003u + i;
    Field f = fields[i % fields.size()];
    auto set = std::make_shared<const SimplicialSet>(random_simplicial_set(s));
    CorpusMember m{set->name() + "/" + f.name(), "skeletal", s, f, set, skeletal_coalgebra(*set, f), is_small(*set)};
    out.push_back(std::move(m));
  }
  return out;
}

std::vector<CorpusMember> relative_corpus(std::size_t count, std::uint64_t seed, const std::vector<Field>& fields) {
  if (fields.empty()) throw RangeError("corpus needs at least one field");
  std::vector<CorpusMember> out;
  for (std::size_t i = 0; i < count; ++i) {
    std::uint64_t s = seed * 1000003u + 250000u + i;
    Field f = fields[i % fields.size()];
    auto set = std::make_shared<const SimplicialSet>(random_simplicial_set(s));
    auto a = random_subcomplex(*set, s ^ 0x9e3779b97f4a7c15ull);
    CorpusMember m{set->name() + "-rel/" + f.name(), "relative", s, f, set, relative_coalgebra(*set, a, f), is_small(*set)};
    out.push_back(std::move(m));
  }
  return out;
}

std::vector<CorpusMember> serre_corpus(std::size_t count, std::uint64_t seed, const std::vector<Field>& fields) {
  if (fields.empty()) throw RangeError("corpus needs at least one field");
  RandomSetOptions opt;
  opt.connected = true;
  opt.max_per_degree = 2;
  opt.max_dimension = 2;
  std::vector<CorpusMember> out;
  for (std::size_t i = 0; i < count; ++i) {
    std::uint64_t s = seed * 1000003u + 500000u + i;
    Field f = fields[i % fields.size()];
    SimplicialSet fiber = random_simplicial_set(2 * s, opt);
    SimplicialSet base = random_simplicial_set(2 * s + 1, opt);
    Fibration fib = product_fibration(fiber, base, 4);
    SerreFiltration sf = serre_filtration(fib, f, false);
    CorpusMember m{"serre(" + fiber.name() + "," + base.name() + ")/" + f.name(), "serre", s, f, fib.total,
                   std::move(sf.coalgebra), is_small(*fib.total)};
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace sseq
