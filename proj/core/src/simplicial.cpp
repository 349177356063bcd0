#include "sseq/simplicial.hpp"

#include <algorithm>
#include <climits>
#include <numeric>
#include <set>

#include "sseq/errors.hpp"

namespace sseq {

SimplicialSet::SimplicialSet(std::string name, int truncation, bool finite)
    : name_(std::move(name)), truncation_(truncation), finite_(finite) {
  if (truncation < 0) throw InvalidSimplicialSet("truncation must be non-negative");
  names_.resize(truncation + 1);
  faces_.resize(truncation + 1);
  lookup_.resize(truncation + 1);
}

std::size_t SimplicialSet::add_simplex(int dim, std::string name, std::vector<Simplex> faces) {
  if (dim < 0 || dim > truncation_)
    throw InvalidSimplicialSet("simplex '" + name + "' of dimension " + std::to_string(dim) +
                               " exceeds truncation " + std::to_string(truncation_));
  if (lookup_[dim].count(name)) throw InvalidSimplicialSet("duplicate simplex name '" + name + "'");
  std::size_t expected = dim == 0 ? 0 : static_cast<std::size_t>(dim) + 1;
  if (faces.size() != expected)
    throw InvalidSimplicialSet("simplex '" + name + "' needs " + std::to_string(expected) + " faces");
  for (const auto& f : faces) {
    if (f.dim() != dim - 1) throw InvalidSimplicialSet("face of '" + name + "' has the wrong dimension");
    if (f.nd_dim < 0 || f.nd_dim >= dim || f.index >= names_[f.nd_dim].size())
      throw InvalidSimplicialSet("face of '" + name + "' refers to an unknown simplex");
    if (!f.degeneracy.surjective()) throw InvalidSimplicialSet("face of '" + name + "' has a non-surjective degeneracy");
  }
  std::size_t idx = names_[dim].size();
  lookup_[dim].emplace(name, idx);
  names_[dim].push_back(std::move(name));
  faces_[dim].push_back(std::move(faces));
  return idx;
}

int SimplicialSet::top_dimension() const {
  for (int n = truncation_; n >= 0; --n)
    if (!names_[n].empty()) return n;
  return -1;
}

std::size_t SimplicialSet::count(int n) const {
  if (n < 0 || n > truncation_) return 0;
  return names_[n].size();
}

std::string SimplicialSet::label(const Simplex& x) const {
  const std::string& base = simplex_name(x.nd_dim, x.index);
  if (!x.degenerate()) return base;
  return base + x.degeneracy.to_string();
}

std::optional<std::size_t> SimplicialSet::find(int n, std::string_view name) const {
  if (n < 0 || n > truncation_) return std::nullopt;
  auto it = lookup_[n].find(name);
  if (it == lookup_[n].end()) return std::nullopt;
  return it->second;
}

Simplex SimplicialSet::face_of_nondegenerate(int n, std::size_t index, const DeltaMorphism& mono) const {
  int j = mono.source();
  if (j == n) return Simplex::nondegenerate(n, index);
  int missing = 0;
  for (int v : mono.values()) {
    if (v != missing) break;
    ++missing;
  }
  const Simplex& f = faces_[n][index][missing];
  std::vector<int> rest;
  rest.reserve(mono.values().size());
  for (int v : mono.values()) rest.push_back(v > missing ? v - 1 : v);
  return apply(f, DeltaMorphism(std::move(rest), n - 1));
}

Simplex SimplicialSet::apply(const Simplex& x, const DeltaMorphism& theta) const {
  if (theta.target() != x.dim())
    throw RangeError("cannot apply " + theta.to_string() + " to a " + std::to_string(x.dim()) + "-simplex");
  DeltaMorphism st = compose(x.degeneracy, theta);
  auto [mono, epi] = st.epi_mono();
  Simplex face = face_of_nondegenerate(x.nd_dim, x.index, mono);
  return Simplex{face.nd_dim, face.index, compose(face.degeneracy, epi)};
}

Simplex SimplicialSet::face(const Simplex& x, int i) const { return apply(x, DeltaMorphism::coface(i, x.dim())); }

Simplex SimplicialSet::vertex(const Simplex& x, int k) const {
  return apply(x, DeltaMorphism::constant(0, k, x.dim()));
}

std::size_t SimplicialSet::component_count() const {
  std::size_t nv = count(0);
  std::vector<std::size_t> parent(nv);
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  std::size_t comps = nv;
  for (std::size_t e = 0; e < count(1); ++e) {
    std::size_t a = root(faces_[1][e][0].index);
    std::size_t b = root(faces_[1][e][1].index);
    if (a != b) {
      parent[a] = b;
      --comps;
    }
  }
  return comps;
}

bool SimplicialSet::connected() const { return component_count() == 1; }

void SimplicialSet::validate() const {
  for (int n = 2; n <= truncation_; ++n) {
    for (std::size_t k = 0; k < count(n); ++k) {
      Simplex x = Simplex::nondegenerate(n, k);
      for (int j = 1; j <= n; ++j)
        for (int i = 0; i < j; ++i) {
          Simplex lhs = face(face(x, j), i);
          Simplex rhs = face(face(x, i), j - 1);
          if (lhs != rhs)
            throw InvalidSimplicialSet("simplicial identity d" + std::to_string(i) + "d" + std::to_string(j) +
                                       " fails on '" + names_[n][k] + "'");
        }
    }
  }
}

SimplicialSet SimplicialSet::truncated(int n) const {
  int t = std::min(n, truncation_);
  SimplicialSet out(name_, t, finite_ && top_dimension() <= t);
  for (int d = 0; d <= t; ++d) {
    out.names_[d] = names_[d];
    out.faces_[d] = faces_[d];
    out.lookup_[d] = lookup_[d];
  }
  return out;
}

// ---------------------------------------------------------------- builders

SimplicialSet point_set() {
  SimplicialSet s("point", 0, true);
  s.add_simplex(0, "*");
  return s;
}

namespace {

std::string vertex_list_name(const std::vector<int>& vs) {
  std::string s = "[";
  for (std::size_t i = 0; i < vs.size(); ++i) s += (i ? "," : "") + std::to_string(vs[i]);
  return s + "]";
}

}  // namespace

SimplicialSet simplicial_complex(std::string name, const std::vector<std::vector<int>>& facets) {
  std::set<std::vector<int>> all;
  for (auto f : facets) {
    std::sort(f.begin(), f.end());
    f.erase(std::unique(f.begin(), f.end()), f.end());
    if (f.empty()) continue;
    if (f.size() > 20) throw UnsupportedInput("facet too large");
    std::size_t k = f.size();
    for (unsigned long mask = 1; mask < (1UL << k); ++mask) {
      std::vector<int> sub;
      for (std::size_t i = 0; i < k; ++i)
        if (mask & (1UL << i)) sub.push_back(f[i]);
      all.insert(sub);
    }
  }
  int top = 0;
  for (const auto& s : all) top = std::max(top, static_cast<int>(s.size()) - 1);
  std::vector<std::vector<std::vector<int>>> by_dim(top + 1);
  for (const auto& s : all) by_dim[s.size() - 1].push_back(s);
  SimplicialSet out(std::move(name), top, true);
  std::vector<std::map<std::vector<int>, std::size_t>> index(top + 1);
  for (int d = 0; d <= top; ++d) {
    for (const auto& s : by_dim[d]) {
      std::vector<Simplex> faces;
      if (d > 0)
        for (int i = 0; i <= d; ++i) {
          std::vector<int> f = s;
          f.erase(f.begin() + i);
          faces.push_back(Simplex::nondegenerate(d - 1, index[d - 1].at(f)));
        }
      index[d][s] = out.add_simplex(d, vertex_list_name(s), std::move(faces));
    }
  }
  return out;
}

SimplicialSet delta_set(int n) {
  if (n < 0) throw RangeError("delta(n) needs n >= 0");
  std::vector<int> f(n + 1);
  std::iota(f.begin(), f.end(), 0);
  return simplicial_complex("delta(" + std::to_string(n) + ")", {f});
}

SimplicialSet boundary_delta_set(int n) {
  if (n < 1) throw RangeError("boundary-delta(n) needs n >= 1");
  std::vector<std::vector<int>> facets;
  for (int skip = 0; skip <= n; ++skip) {
    std::vector<int> f;
    for (int v = 0; v <= n; ++v)
      if (v != skip) f.push_back(v);
    facets.push_back(f);
  }
  return simplicial_complex("boundary-delta(" + std::to_string(n) + ")", facets);
}

SimplicialSet sphere_set(int n) {
  if (n < 0) throw RangeError("sphere(n) needs n >= 0");
  std::string name = "sphere(" + std::to_string(n) + ")";
  if (n == 0) {
    SimplicialSet s(name, 0, true);
    s.add_simplex(0, "a");
    s.add_simplex(0, "b");
    return s;
  }
  SimplicialSet s(name, n, true);
  s.add_simplex(0, "*");
  std::vector<Simplex> faces(n + 1, Simplex{0, 0, DeltaMorphism::constant(n - 1, 0, 0)});
  s.add_simplex(n, "x" + std::to_string(n), faces);
  return s;
}

SimplicialSet wedge_of_spheres(const std::vector<int>& dims) {
  int top = 0;
  for (int d : dims) {
    if (d < 1) throw RangeError("wedge summands need dimension >= 1");
    top = std::max(top, d);
  }
  std::string name = "wedge(";
  for (std::size_t i = 0; i < dims.size(); ++i) name += (i ? "," : "") + std::to_string(dims[i]);
  SimplicialSet s(name + ")", top, true);
  s.add_simplex(0, "*");
  std::map<int, int> seen;
  for (int d : dims) {
    int k = seen[d]++;
    std::string sname = "x" + std::to_string(d) + (k ? "_" + std::to_string(k) : "");
    s.add_simplex(d, sname, std::vector<Simplex>(d + 1, Simplex{0, 0, DeltaMorphism::constant(d - 1, 0, 0)}));
  }
  return s;
}

SimplicialSet quotient_set(const SimplicialSet& x, const std::vector<std::vector<std::size_t>>& subcomplex,
                           std::string name) {
  int top = x.truncation();
  std::vector<std::vector<bool>> in_a(top + 1);
  bool any = false;
  for (int n = 0; n <= top; ++n) {
    in_a[n].assign(x.count(n), false);
    if (n < static_cast<int>(subcomplex.size()))
      for (std::size_t i : subcomplex[n]) {
        if (i >= x.count(n)) throw RangeError("subcomplex index out of range");
        in_a[n][i] = true;
        any = true;
      }
  }
  if (!any) throw UnsupportedInput("quotient by an empty subcomplex");
  for (int n = 1; n <= top; ++n)
    for (std::size_t i = 0; i < x.count(n); ++i)
      if (in_a[n][i])
        for (const auto& f : x.faces(n, i))
          if (!in_a[f.nd_dim][f.index]) throw InvalidSimplicialSet("quotient: subset is not a subcomplex");
  if (name.empty()) name = x.name() + "/A";
  SimplicialSet out(name, top, x.finite());
  std::vector<std::vector<std::size_t>> renumber(top + 1);
  out.add_simplex(0, "*");
  for (int n = 0; n <= top; ++n) {
    renumber[n].assign(x.count(n), 0);
    for (std::size_t i = 0; i < x.count(n); ++i) {
      if (in_a[n][i]) continue;
      std::vector<Simplex> faces;
      if (n > 0)
        for (const auto& f : x.faces(n, i)) {
          if (in_a[f.nd_dim][f.index])
            faces.push_back(Simplex{0, 0, DeltaMorphism::constant(n - 1, 0, 0)});
          else
            faces.push_back(Simplex{f.nd_dim, renumber[f.nd_dim][f.index], f.degeneracy});
        }
      std::string nm = x.simplex_name(n, i);
      if (nm == "*") nm = "*'";
      renumber[n][i] = out.add_simplex(n, nm, std::move(faces));
    }
  }
  return out;
}

// ---------------------------------------------------------------- products

namespace {

// All subsets of {1..n} of size k, as sorted vectors.
void subsets(int n, int k, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  for (int s = start; s <= n; ++s) {
    cur.push_back(s);
    subsets(n, k, s + 1, cur, out);
    cur.pop_back();
  }
}

DeltaMorphism surjection_with_stays(int n, const std::vector<int>& stays) {
  std::vector<int> v{0};
  std::size_t k = 0;
  for (int step = 1; step <= n; ++step) {
    bool stay = k < stays.size() && stays[k] == step;
    if (stay) ++k;
    v.push_back(v.back() + (stay ? 0 : 1));
  }
  return DeltaMorphism(v, v.back());
}

}  // namespace

Simplex ProductSet::pair(const Simplex& x, const Simplex& y) const {
  if (x.dim() != y.dim()) throw RangeError("product simplex components differ in dimension");
  int n = x.dim();
  std::vector<int> e{0};
  std::vector<int> s{x.degeneracy(0)};
  std::vector<int> t{y.degeneracy(0)};
  for (int k = 1; k <= n; ++k) {
    bool both_flat = x.degeneracy(k) == x.degeneracy(k - 1) && y.degeneracy(k) == y.degeneracy(k - 1);
    if (both_flat) {
      e.push_back(e.back());
    } else {
      e.push_back(e.back() + 1);
      s.push_back(x.degeneracy(k));
      t.push_back(y.degeneracy(k));
    }
  }
  int m = e.back();
  auto it = index.find({x.nd_dim, x.index, s, y.nd_dim, y.index, t});
  if (it == index.end())
    throw RangeError("product simplex of dimension " + std::to_string(m) + " lies beyond the truncation");
  return Simplex{m, it->second, DeltaMorphism(e, m)};
}

ProductSet product(const SimplicialSet& x, const SimplicialSet& y, std::optional<int> truncation) {
  int bx = x.finite() ? INT_MAX : x.truncation();
  int by = y.finite() ? INT_MAX : y.truncation();
  int top = std::max(0, x.top_dimension()) + std::max(0, y.top_dimension());
  int bound = std::min({bx, by, top});
  bool finite = x.finite() && y.finite();
  if (truncation && *truncation < bound) {
    bound = *truncation;
    finite = false;
  }
  ProductSet P;
  P.left = std::make_shared<const SimplicialSet>(x);
  P.right = std::make_shared<const SimplicialSet>(y);
  auto set = std::make_shared<SimplicialSet>("product(" + x.name() + "," + y.name() + ")", bound, finite);
  P.components.resize(bound + 1);
  for (int n = 0; n <= bound; ++n) {
    for (int i = 0; i <= n; ++i) {
      for (int j = n - i; j <= n; ++j) {
        if (x.count(i) == 0 || y.count(j) == 0) continue;
        std::vector<std::vector<int>> stays_x, stays_y;
        std::vector<int> cur;
        subsets(n, n - i, 1, cur, stays_x);
        subsets(n, n - j, 1, cur, stays_y);
        for (const auto& sx : stays_x)
          for (const auto& sy : stays_y) {
            std::vector<int> both;
            std::set_intersection(sx.begin(), sx.end(), sy.begin(), sy.end(), std::back_inserter(both));
            if (!both.empty()) continue;
            DeltaMorphism s = surjection_with_stays(n, sx);
            DeltaMorphism t = surjection_with_stays(n, sy);
            for (std::size_t a = 0; a < x.count(i); ++a)
              for (std::size_t b = 0; b < y.count(j); ++b) {
                Simplex xs{i, a, s};
                Simplex yt{j, b, t};
                std::vector<Simplex> faces;
                if (n > 0)
                  for (int k = 0; k <= n; ++k) {
                    auto cf = DeltaMorphism::coface(k, n);
                    faces.push_back(P.pair(x.apply(xs, cf), y.apply(yt, cf)));
                  }
                std::string nm = "(" + x.label(xs) + "," + y.label(yt) + ")";
                std::size_t idx = set->add_simplex(n, nm, std::move(faces));
                P.index[{i, a, s.values(), j, b, t.values()}] = idx;
                P.components[n].emplace_back(xs, yt);
              }
          }
      }
    }
  }
  P.set = set;
  return P;
}

// ---------------------------------------------------------------- maps

SimplicialMap::SimplicialMap(SimplicialSetPtr source, SimplicialSetPtr target, std::vector<std::vector<Simplex>> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
  images_.resize(source_->truncation() + 1);
  for (int n = 0; n <= source_->truncation(); ++n) {
    if (images_[n].size() != source_->count(n))
      throw InvalidSimplicialSet("simplicial map: missing images in degree " + std::to_string(n));
    for (const auto& s : images_[n]) {
      if (s.dim() != n) throw InvalidSimplicialSet("simplicial map: image has the wrong dimension");
      if (s.nd_dim > target_->truncation() || s.index >= target_->count(s.nd_dim))
        throw InvalidSimplicialSet("simplicial map: image refers to an unknown simplex");
    }
  }
}

Simplex SimplicialMap::apply(const Simplex& x) const {
  return target_->apply(images_.at(x.nd_dim).at(x.index), x.degeneracy);
}

void SimplicialMap::validate() const {
  for (int n = 1; n <= source_->truncation(); ++n)
    for (std::size_t k = 0; k < source_->count(n); ++k) {
      Simplex x = Simplex::nondegenerate(n, k);
      for (int i = 0; i <= n; ++i)
        if (apply(source_->face(x, i)) != target_->face(images_[n][k], i))
          throw InvalidSimplicialSet("map does not commute with d" + std::to_string(i) + " on '" +
                                     source_->simplex_name(n, k) + "'");
    }
}

}  // namespace sseq
