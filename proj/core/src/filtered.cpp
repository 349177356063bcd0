#include "sseq/filtered.hpp"

#include <algorithm>
#include <climits>

#include "sseq/errors.hpp"

namespace sseq {

FilteredComplex::FilteredComplex(ChainComplex c, std::vector<int> low, std::vector<std::vector<Subspace>> levels)
    : complex_(std::move(c)), low_(std::move(low)), levels_(std::move(levels)) {
  int top = complex_.top_degree();
  if (static_cast<int>(low_.size()) != top + 1 || static_cast<int>(levels_.size()) != top + 1)
    throw DimensionMismatch("filtration: one level list per degree");
  Field f = complex_.field();
  for (int m = 0; m <= top; ++m) {
    zero_.emplace_back(f, complex_.dim(m));
    full_.push_back(Subspace::full(f, complex_.dim(m)));
    // Above the listed levels the filtration is everything.
    if (levels_[m].empty() || levels_[m].back().dim() != complex_.dim(m)) levels_[m].push_back(full_.back());
    for (const auto& s : levels_[m])
      if (s.ambient_dim() != complex_.dim(m) || s.field() != f)
        throw DimensionMismatch("filtration level has the wrong ambient space in degree " + std::to_string(m));
  }
}

FilteredComplex FilteredComplex::from_levels(ChainComplex c, const std::vector<std::vector<int>>& level) {
  int top = c.top_degree();
  if (static_cast<int>(level.size()) != top + 1) throw DimensionMismatch("filtration: one level list per degree");
  Field f = c.field();
  std::vector<int> low(top + 1, 0);
  std::vector<std::vector<Subspace>> levels(top + 1);
  for (int m = 0; m <= top; ++m) {
    if (level[m].size() != c.dim(m)) throw DimensionMismatch("filtration: one level per basis element");
    if (level[m].empty()) {
      low[m] = 0;
      levels[m].emplace_back(f, 0);
      continue;
    }
    int lo = *std::min_element(level[m].begin(), level[m].end());
    int hi = *std::max_element(level[m].begin(), level[m].end());
    low[m] = lo;
    for (int p = lo; p <= hi; ++p) {
      std::vector<std::size_t> idx;
      for (std::size_t i = 0; i < level[m].size(); ++i)
        if (level[m][i] <= p) idx.push_back(i);
      levels[m].push_back(Subspace::coordinate(f, c.dim(m), idx));
    }
  }
  FilteredComplex fc(std::move(c), std::move(low), std::move(levels));
  fc.generator_levels_ = level;
  return fc;
}

FilteredComplex FilteredComplex::trivial(ChainComplex c) {
  std::vector<std::vector<int>> level(c.top_degree() + 1);
  for (int m = 0; m <= c.top_degree(); ++m) level[m].assign(c.dim(m), 0);
  return from_levels(std::move(c), level);
}

const Subspace& FilteredComplex::level(int p, int m) const {
  if (m < 0 || m > top_degree()) throw RangeError("filtration degree out of range");
  if (p < low_[m]) return zero_[m];
  if (p > high(m)) return full_[m];
  return levels_[m][p - low_[m]];
}

std::vector<Bidegree> FilteredComplex::bidegrees() const {
  std::vector<Bidegree> out;
  for (int m = 0; m <= top_degree(); ++m)
    for (int p = low(m); p <= high(m); ++p) out.push_back({p, m - p});
  return out;
}

bool FilteredComplex::in_range(Bidegree b) const {
  int m = b.total();
  return m >= 0 && m <= top_degree() && b.p >= low(m) && b.p <= high(m);
}

bool FilteredComplex::first_quadrant() const {
  for (int m = 0; m <= top_degree(); ++m) {
    if (complex_.dim(m) == 0) continue;
    if (!level(-1, m).basis().empty()) return false;
    if (level(m, m).dim() != complex_.dim(m)) return false;
  }
  return true;
}

int FilteredComplex::stable_page() const {
  int r = 1;
  for (const auto& b : bidegrees()) r = std::max({r, b.p + 1, b.q + 2});
  return r;
}

void FilteredComplex::validate() const {
  for (int m = 0; m <= top_degree(); ++m) {
    for (int p = low(m) + 1; p <= high(m); ++p)
      if (!level(p, m).contains(level(p - 1, m))) {
        std::size_t gen = 0;
        for (const auto& v : level(p - 1, m).basis())
          if (!level(p, m).contains(v)) {
            gen = *v.leading_index();
            break;
          }
        throw FiltrationViolation("filtration is not increasing at p=" + std::to_string(p) + " in degree " +
                                      std::to_string(m),
                                  m, gen);
      }
    if (m == 0) continue;
    Matrix d = complex_.boundary(m);
    for (int p = low(m); p <= high(m); ++p)
      for (const auto& v : level(p, m).basis())
        if (!level(p, m - 1).contains(d.apply(v)))
          throw FiltrationViolation("boundary leaves F^" + std::to_string(p) + " in degree " + std::to_string(m), m,
                                    *v.leading_index());
  }
}

FilteredComplex skeletal_filtration(const ChainComplex& c) {
  std::vector<std::vector<int>> level(c.top_degree() + 1);
  for (int m = 0; m <= c.top_degree(); ++m) level[m].assign(c.dim(m), m);
  return FilteredComplex::from_levels(c, level);
}

FilteredTensor tensor_filtered(const FilteredComplex& fc, std::optional<int> max_degree) {
  const ChainComplex& c = fc.complex();
  int top = c.top_degree();
  int maxd = max_degree.value_or(2 * top);
  TensorComplex tc = tensor_complex(c, c, maxd);
  Field f = c.field();
  const TensorLayout& layout = tc.layout;

  if (fc.generator_levels()) {
    const auto& gl = *fc.generator_levels();
    std::vector<std::vector<int>> level(maxd + 1);
    for (int m = 0; m <= maxd; ++m) {
      level[m].resize(layout.dim(m));
      for (int a = 0; a <= m; ++a)
        for (std::size_t i = 0; i < layout.left_dim(a); ++i)
          for (std::size_t j = 0; j < layout.right_dim(m - a); ++j)
            level[m][layout.index(m, a, i, j)] = gl[a][i] + gl[m - a][j];
    }
    return {FilteredComplex::from_levels(std::move(tc.complex), level), layout};
  }

  std::vector<int> low(maxd + 1, 0);
  std::vector<std::vector<Subspace>> levels(maxd + 1);
  for (int m = 0; m <= maxd; ++m) {
    int lo = INT_MAX, hi = INT_MIN;
    for (int a = 0; a <= m; ++a) {
      if (a > top || m - a > top || layout.left_dim(a) == 0 || layout.right_dim(m - a) == 0) continue;
      lo = std::min(lo, fc.low(a) + fc.low(m - a));
      hi = std::max(hi, fc.high(a) + fc.high(m - a));
    }
    if (lo == INT_MAX) {
      low[m] = 0;
      levels[m].emplace_back(f, layout.dim(m));
      continue;
    }
    low[m] = lo;
    for (int p = lo; p <= hi; ++p) {
      std::vector<Vector> gens;
      for (int a = 0; a <= m; ++a) {
        int b = m - a;
        if (a > top || b > top || layout.left_dim(a) == 0 || layout.right_dim(b) == 0) continue;
        for (int cc = fc.low(a); cc <= fc.high(a); ++cc) {
          const Subspace& fa = fc.level(cc, a);
          const Subspace& fb = fc.level(p - cc, b);
          for (const auto& x : fa.basis())
            for (const auto& y : fb.basis()) gens.push_back(layout.tensor(x, a, y, b));
        }
      }
      levels[m].push_back(Subspace::span(f, layout.dim(m), gens));
    }
  }
  return {FilteredComplex(std::move(tc.complex), std::move(low), std::move(levels)), layout};
}

void FilteredCoalgebra::validate() const {
  const FilteredComplex& fc = filtered;
  int top = fc.top_degree();
  if (comult.top_degree() != top) throw DimensionMismatch("comultiplication must cover every degree");
  FilteredTensor ft = tensor_filtered(fc, top);
  if (!comult.commutes(fc.complex(), ft.filtered.complex()))
    throw InternalConsistency("comultiplication is not a chain map");
  for (int m = 0; m <= top; ++m)
    for (int p = fc.low(m); p <= fc.high(m); ++p)
      for (const auto& v : fc.level(p, m).basis())
        if (!ft.filtered.level(p, m).contains(comult[m].apply(v)))
          throw FiltrationViolation("comultiplication of generator " + fc.complex().label(m, *v.leading_index()) +
                                        " leaves G^" + std::to_string(p),
                                    m, *v.leading_index());
}

}  // namespace sseq
