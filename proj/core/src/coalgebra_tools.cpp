#include "sseq/coalgebra_tools.hpp"

#include <algorithm>
#include <bit>
#include <map>

#include "sseq/errors.hpp"
#include "sseq/serre.hpp"

namespace sseq {

namespace {

Scalar counit_of(const GradedCoalgebra& c, const Vector& x) {
  Scalar s = Scalar::zero(c.field());
  for (const auto& [i, v] : x.entries()) s += v * c.counit()[i];
  return s;
}

// ∇x - x⊗η - η⊗x
Vector reduced_comult(const CoaugmentedCoalgebra& c, const Vector& x) {
  const GradedCoalgebra& g = c.coalgebra;
  Vector out = g.apply_comult(x);
  out.axpy(Scalar(g.field(), -1), g.tensor(x, c.unit));
  out.axpy(Scalar(g.field(), -1), g.tensor(c.unit, x));
  return out;
}

std::vector<std::uint32_t> cofree_masks(const GeneratorSpec& v) {
  std::size_t k = v.degrees.size();
  if (k > 20) throw UnsupportedInput("cofree: at most 20 generators");
  std::vector<std::uint32_t> masks(std::size_t{1} << k);
  for (std::uint32_t m = 0; m < masks.size(); ++m) masks[m] = m;
  auto degree = [&](std::uint32_t m) {
    int d = 0;
    for (std::size_t i = 0; i < k; ++i)
      if (m >> i & 1u) d += v.degrees[i];
    return d;
  };
  auto key = [&](std::uint32_t m) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < k; ++i)
      if (m >> i & 1u) idx.push_back(i);
    return idx;
  };
  std::stable_sort(masks.begin(), masks.end(), [&](std::uint32_t a, std::uint32_t b) {
    int da = degree(a), db = degree(b);
    if (da != db) return da < db;
    return key(a) < key(b);
  });
  return masks;
}

std::string generator_name(const GeneratorSpec& v, std::size_t i) {
  int d = v.degrees[i];
  long same = std::count(v.degrees.begin(), v.degrees.end(), d);
  std::string s = "x" + std::to_string(d);
  if (same > 1) s += "_" + std::to_string(std::count(v.degrees.begin(), v.degrees.begin() + static_cast<long>(i), d));
  return s;
}

}  // namespace

void CoaugmentedCoalgebra::validate() const {
  const GradedCoalgebra& c = coalgebra;
  if (unit.dim() != c.dim() || unit.field() != c.field()) throw DimensionMismatch("coaugmentation has the wrong shape");
  for (const auto& [i, s] : unit.entries())
    if (c.degree(i) != 0) throw InternalConsistency("coaugmentation must sit in degree 0");
  if (!counit_of(c, unit).is_one()) throw InternalConsistency("coaugmentation: ε(η) ≠ 1");
  if (c.apply_comult(unit) != c.tensor(unit, unit)) throw InternalConsistency("coaugmentation is not group-like");
}

CoaugmentedCoalgebra coaugment(GradedCoalgebra c, Vector unit) {
  CoaugmentedCoalgebra out{std::move(c), std::move(unit)};
  out.validate();
  return out;
}

CoaugmentedCoalgebra coaugment(GradedCoalgebra c) {
  auto zero = c.indices_of_degree(0);
  if (zero.size() != 1) throw UnsupportedInput("coaugment: degree 0 is not one-dimensional");
  Scalar e = c.counit()[zero[0]];
  if (e.is_zero()) throw InternalConsistency("coaugment: counit vanishes in degree 0");
  Vector u(c.field(), c.dim());
  u.set(zero[0], e.inverse());
  return coaugment(std::move(c), std::move(u));
}

GeneratorSpec GeneratorSpec::odd_up_to(int n) {
  GeneratorSpec v;
  for (int i = 1; i <= n; ++i) v.degrees.push_back(2 * i - 1);
  return v;
}

void GeneratorSpec::validate() const {
  for (int d : degrees)
    if (d <= 0 || d % 2 == 0)
      throw UnsupportedInput("cofree coalgebras are only built on odd positive degrees (got " + std::to_string(d) + ")");
}

std::size_t GradedSubspace::dim() const {
  std::size_t n = 0;
  for (const auto& s : by_degree) n += s.dim();
  return n;
}

std::size_t GradedSubspace::dim(int n) const {
  return n < 0 || n >= static_cast<int>(by_degree.size()) ? 0 : by_degree[n].dim();
}

std::vector<int> GradedSubspace::support() const {
  std::vector<int> out;
  for (std::size_t n = 0; n < by_degree.size(); ++n)
    if (by_degree[n].dim() > 0) out.push_back(static_cast<int>(n));
  return out;
}

std::vector<Vector> GradedSubspace::basis() const {
  std::vector<Vector> out;
  for (const auto& s : by_degree) out.insert(out.end(), s.basis().begin(), s.basis().end());
  return out;
}

GradedSubspace primitives(const CoaugmentedCoalgebra& c) {
  const GradedCoalgebra& g = c.coalgebra;
  Field f = g.field();
  std::size_t d = g.dim();
  GradedSubspace out;
  out.by_degree.emplace_back(f, d);
  for (int n = 1; n <= g.top_degree(); ++n) {
    auto idx = g.indices_of_degree(n);
    std::vector<Vector> cols;
    for (std::size_t i : idx) cols.push_back(reduced_comult(c, Vector::unit(f, d, i)));
    Subspace ker = kernel_basis(Matrix::from_columns(f, d * d, std::move(cols)));
    std::vector<Vector> gens;
    for (const auto& k : ker.basis()) {
      Vector v(f, d);
      for (const auto& [j, s] : k.entries()) v.set(idx[j], s);
      gens.push_back(std::move(v));
    }
    out.by_degree.push_back(Subspace::span(f, d, gens));
  }
  return out;
}

bool is_primitive(const CoaugmentedCoalgebra& c, const Vector& x) { return reduced_comult(c, x).is_zero(); }

CoaugmentedCoalgebra cofree(const GeneratorSpec& v, Field f) {
  v.validate();
  if (f.characteristic() == 2) throw UnsupportedInput("cofree coalgebras on odd generators need characteristic ≠ 2");
  auto masks = cofree_masks(v);
  std::size_t d = masks.size(), k = v.degrees.size();
  std::map<std::uint32_t, std::size_t> pos;
  for (std::size_t i = 0; i < d; ++i) pos[masks[i]] = i;

  std::vector<CoalgebraGenerator> basis;
  for (std::uint32_t m : masks) {
    CoalgebraGenerator g;
    for (std::size_t i = 0; i < k; ++i)
      if (m >> i & 1u) {
        g.degree += v.degrees[i];
        g.label += generator_name(v, i);
      }
    if (m == 0) g.label = "1";
    basis.push_back(std::move(g));
  }
  std::vector<Vector> comult;
  for (std::uint32_t s : masks) {
    std::vector<Vector::Entry> e;
    // T runs over submasks of s; U = s \ T.
    for (std::uint32_t t = s;; t = (t - 1) & s) {
      std::uint32_t u = s & ~t;
      int inversions = 0;  // pairs (u_i, t_j) with u_i before t_j
      for (std::size_t i = 0; i < k; ++i)
        if (u >> i & 1u) inversions += std::popcount(t >> i);
      e.emplace_back(pos[t] * d + pos[u], sign_scalar(f, inversions));
      if (t == 0) break;
    }
    comult.push_back(Vector::from_entries(f, d * d, std::move(e)));
  }
  Vector counit(f, d);
  counit.set(pos[0], Scalar::one(f));
  Vector unit = counit;
  return coaugment(GradedCoalgebra(f, std::move(basis), std::move(comult), std::move(counit)), std::move(unit));
}

std::size_t cofree_index(const GeneratorSpec& v, const std::vector<std::size_t>& subset) {
  std::uint32_t m = 0;
  for (std::size_t i : subset) {
    if (i >= v.degrees.size()) throw RangeError("cofree_index: generator out of range");
    m |= 1u << i;
  }
  auto masks = cofree_masks(v);
  return static_cast<std::size_t>(std::find(masks.begin(), masks.end(), m) - masks.begin());
}

bool is_coalgebra_map(const Matrix& g, const GradedCoalgebra& d, const GradedCoalgebra& c) {
  if (g.rows() != c.dim() || g.cols() != d.dim()) return false;
  std::size_t dd = d.dim();
  for (std::size_t j = 0; j < dd; ++j) {
    const Vector& col = g.column(j);
    for (const auto& [i, s] : col.entries())
      if (c.degree(i) != d.degree(j)) return false;
    if (counit_of(c, col) != d.counit()[j]) return false;
    Vector lhs(c.field(), c.dim() * c.dim());
    for (const auto& [idx, s] : d.comult(j).entries()) lhs.axpy(s, c.tensor(g.column(idx / dd), g.column(idx % dd)));
    if (lhs != c.apply_comult(col)) return false;
  }
  return true;
}

CofreeExtension cofree_extend(const CoaugmentedCoalgebra& d, const Matrix& f, const GeneratorSpec& v) {
  const GradedCoalgebra& D = d.coalgebra;
  Field fld = D.field();
  std::size_t dd = D.dim(), k = v.degrees.size();
  if (f.rows() != k || f.cols() != dd) throw DimensionMismatch("cofree_extend: f must be |V| × dim D");
  for (std::size_t j = 0; j < dd; ++j)
    for (const auto& [i, s] : f.column(j).entries())
      if (D.degree(j) != v.degrees[i])
        throw DimensionMismatch("cofree_extend: f is not degree-preserving at " + D.label(j));
  if (D.indices_of_degree(0).size() != 1) throw UnsupportedInput("cofree_extend needs a connected coalgebra");
  if (!check_coalgebra(D).cocommutative) throw UnsupportedInput("cofree_extend needs a cocommutative coalgebra");

  CofreeExtension out{cofree(v, fld), Matrix(fld, std::size_t{1} << k, dd)};
  auto masks = cofree_masks(v);
  std::map<std::uint32_t, std::size_t> pos;
  for (std::size_t i = 0; i < masks.size(); ++i) pos[masks[i]] = i;

  std::vector<Vector> rc(dd);
  for (std::size_t a = 0; a < dd; ++a) rc[a] = reduced_comult(d, Vector::unit(fld, dd, a));
  std::vector<std::vector<std::pair<std::size_t, Scalar>>> fcol(dd);
  for (std::size_t a = 0; a < dd; ++a)
    for (const auto& [i, s] : f.column(a).entries()) fcol[a].emplace_back(i, s);

  for (std::size_t j = 0; j < dd; ++j) {
    Scalar e = D.counit()[j];
    Vector col(fld, masks.size());
    col.add(pos[0], e);
    // x̄ = e_j - ε(e_j)η, then iterated reduced comultiplication on the last factor.
    std::map<std::vector<std::size_t>, Scalar> level;
    Vector bar = Vector::unit(fld, dd, j);
    bar.axpy(-e, d.unit);
    for (const auto& [i, s] : bar.entries()) level[{i}] = s;
    for (std::size_t depth = 1; depth <= k && !level.empty(); ++depth) {
      for (const auto& [word, c] : level) {
        // f^{⊗depth}, keeping strictly increasing generator sequences.
        std::vector<std::tuple<std::uint32_t, int, Scalar>> cur{{0u, -1, c}};
        for (std::size_t a : word) {
          std::vector<std::tuple<std::uint32_t, int, Scalar>> nxt;
          for (const auto& [m, top, s] : cur)
            for (const auto& [i, t] : fcol[a])
              if (static_cast<int>(i) > top) nxt.emplace_back(m | 1u << i, static_cast<int>(i), s * t);
          cur = std::move(nxt);
          if (cur.empty()) break;
        }
        for (const auto& [m, top, s] : cur) col.add(pos[m], s);
      }
      std::map<std::vector<std::size_t>, Scalar> next;
      for (const auto& [word, c] : level)
        for (const auto& [idx, s] : rc[word.back()].entries()) {
          std::vector<std::size_t> w(word.begin(), word.end() - 1);
          w.push_back(idx / dd);
          w.push_back(idx % dd);
          auto [it, fresh] = next.try_emplace(std::move(w), c * s);
          if (!fresh) it->second += c * s;
        }
      std::erase_if(next, [](const auto& kv) { return kv.second.is_zero(); });
      level = std::move(next);
    }
    out.map.set_column(j, std::move(col));
  }
  if (!is_coalgebra_map(out.map, D, out.cofree.coalgebra))
    throw InternalConsistency("cofree_extend produced a map that is not a coalgebra map");
  return out;
}

PrimitiveDifferentialReport primitive_differential_check(const CoalgebraSpectralSequence& css, int r) {
  PrimitiveDifferentialReport rep;
  rep.r = r;
  auto u = css.unit_class(r);
  if (!u || u->is_zero()) {
    rep.coaugmented = false;
    return rep;
  }
  GradedCoalgebra page = css.page_coalgebra(r);
  CoaugmentedCoalgebra c{page, *u};
  try {
    c.validate();
  } catch (const InternalConsistency&) {
    rep.coaugmented = false;
    return rep;
  }
  Matrix d = css.page_differential(r);
  for (const auto& x : primitives(c).basis()) {
    ++rep.primitives;
    Vector y = d.apply(x);
    if (!is_primitive(c, y)) rep.violations.push_back(page.format(x) + " ↦ " + page.format(y));
  }
  return rep;
}

namespace {

// Functional on D that is 1 on p and 0 on a complement of p inside its degree.
Vector dual_functional(const GradedCoalgebra& D, const Vector& p, int degree) {
  Field f = D.field();
  std::size_t n = D.dim();
  auto idx = D.indices_of_degree(degree);
  Echelon e(f, n, idx.size() + 1);
  e.insert(p, Vector::unit(f, idx.size() + 1, 0));
  std::size_t next = 1;
  for (std::size_t i : idx)
    if (!e.insert(Vector::unit(f, n, i), Vector::unit(f, idx.size() + 1, next))) ++next;
  Vector out(f, n);
  for (std::size_t i : idx) {
    Scalar s = (*e.tag_combination(Vector::unit(f, n, i)))[0];
    if (!s.is_zero()) out.set(i, s);
  }
  return out;
}

}  // namespace

CollapseReplay collapse_replay(int n, Field f) {
  if (n < 2) throw RangeError("collapse_replay needs n >= 2");
  CollapseReplay rep;
  rep.n = n;
  rep.field = f;
  SimplicialSet fiber = sphere_set(1);
  for (int i = 2; i <= n - 1; ++i) fiber = *product(fiber, sphere_set(2 * i - 1)).set;
  SimplicialSet base = sphere_set(2 * n - 1);

  CoaugmentedCoalgebra hf = coaugment(homology_coalgebra(fiber, f));
  rep.fiber_primitive_degrees = primitives(hf).support();
  for (int d : rep.fiber_primitive_degrees)
    if (d % 2 == 0 || d > 2 * n - 3) rep.messages.push_back("fiber primitive in degree " + std::to_string(d));

  Fibration fib = product_fibration(fiber, base);
  SerreFiltration sf = serre_filtration(fib, f, false);
  CoalgebraSpectralSequence css(sf.coalgebra, false);

  // The base class on E^2 at (2n-1, 0).
  Bidegree top{2 * n - 1, 0};
  auto page2 = css.page_with_comult(2);
  if (page2->dim(top) != 1) {
    rep.messages.push_back("E^2 at the base class has dimension " + std::to_string(page2->dim(top)));
  } else {
    GradedCoalgebra c2 = css.page_coalgebra(2);
    CoaugmentedCoalgebra e2{c2, *css.unit_class(2)};
    Vector x = Vector::unit(f, c2.dim(), css.page_offsets(2).at(top));
    rep.base_class_primitive = is_primitive(e2, x);
  }
  for (int r = 2; r <= 2 * n - 1; ++r) {
    auto pr = primitive_differential_check(css, r);
    if (!pr.coaugmented || !pr.passes()) {
      rep.primitives_preserved = false;
      for (const auto& v : pr.violations) rep.messages.push_back("E^" + std::to_string(r) + ": " + v);
    }
  }
  int last = sf.filtered().stable_page();
  for (int r = 2; r <= last; ++r)
    for (const auto& [b, m] : css.sseq().page(r)->differentials)
      if (!m.is_zero()) {
        rep.differentials_zero = false;
        rep.messages.push_back("d^" + std::to_string(r) + " nonzero at (" + std::to_string(b.p) + "," +
                               std::to_string(b.q) + ")");
      }

  CoaugmentedCoalgebra h = coaugment(homology_coalgebra(*fib.total, f));
  rep.homology_dims = h.coalgebra.degree_dims();
  GeneratorSpec v = GeneratorSpec::odd_up_to(n);
  GradedSubspace prim = primitives(h);
  Matrix fm(f, v.degrees.size(), h.coalgebra.dim());
  bool ok = true;
  for (std::size_t i = 0; i < v.degrees.size(); ++i) {
    int deg = v.degrees[i];
    if (prim.dim(deg) != 1) {
      rep.messages.push_back("H_" + std::to_string(deg) + " has " + std::to_string(prim.dim(deg)) + " primitives");
      ok = false;
      continue;
    }
    Vector phi = dual_functional(h.coalgebra, prim.by_degree[deg].basis()[0], deg);
    for (const auto& [j, s] : phi.entries()) fm.set(i, j, s);
  }
  if (ok) {
    Matrix g = cofree_extend(h, fm, v).map;
    rep.cofree_iso = g.rows() == g.cols() && rank(g) == g.rows();
    if (!rep.cofree_iso) rep.messages.push_back("extension to the cofree coalgebra is not invertible");
  }
  return rep;
}

}  // namespace sseq
