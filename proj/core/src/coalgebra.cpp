#include "sseq/coalgebra.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "sseq/errors.hpp"

namespace sseq {

GradedCoalgebra::GradedCoalgebra(Field f, std::vector<CoalgebraGenerator> basis, std::vector<Vector> comult,
                                 Vector counit)
    : field_(f), basis_(std::move(basis)), comult_(std::move(comult)), counit_(std::move(counit)) {
  std::size_t d = basis_.size();
  if (comult_.size() != d) throw DimensionMismatch("coalgebra: one comultiplication image per basis element");
  for (const auto& v : comult_)
    if (v.dim() != d * d || v.field() != f) throw DimensionMismatch("coalgebra: comultiplication image has wrong shape");
  if (counit_.dim() != d || counit_.field() != f) throw DimensionMismatch("coalgebra: counit has wrong shape");
}

int GradedCoalgebra::top_degree() const {
  int t = 0;
  for (const auto& g : basis_) t = std::max(t, g.degree);
  return t;
}

std::vector<std::size_t> GradedCoalgebra::degree_dims() const {
  std::vector<std::size_t> d(top_degree() + 1, 0);
  for (const auto& g : basis_) ++d[g.degree];
  return d;
}

std::vector<std::size_t> GradedCoalgebra::indices_of_degree(int n) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < basis_.size(); ++i)
    if (basis_[i].degree == n) out.push_back(i);
  return out;
}

Vector GradedCoalgebra::apply_comult(const Vector& x) const {
  Vector out(field_, dim() * dim());
  for (const auto& [i, s] : x.entries()) out.axpy(s, comult_[i]);
  return out;
}

Vector GradedCoalgebra::tensor(const Vector& x, const Vector& y) const {
  std::vector<Vector::Entry> e;
  for (const auto& [i, s] : x.entries())
    for (const auto& [j, t] : y.entries()) e.emplace_back(pair_index(i, j), s * t);
  return Vector::from_entries(field_, dim() * dim(), std::move(e));
}

namespace {

std::string coefficient_prefix(const Scalar& s, bool first) {
  std::string str = s.to_string();
  bool neg = !str.empty() && str[0] == '-';
  if (neg) str = str.substr(1);
  std::string out = first ? (neg ? "-" : "") : (neg ? " - " : " + ");
  if (str != "1") out += str + "*";
  return out;
}

}  // namespace

std::string GradedCoalgebra::format_tensor(const Vector& t) const {
  if (t.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [idx, s] : t.entries()) {
    out += coefficient_prefix(s, first) + label(idx / dim()) + "⊗" + label(idx % dim());
    first = false;
  }
  return out;
}

std::string GradedCoalgebra::format(const Vector& x) const {
  if (x.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [idx, s] : x.entries()) {
    out += coefficient_prefix(s, first) + label(idx);
    first = false;
  }
  return out;
}

CoalgebraReport check_coalgebra(const GradedCoalgebra& c) {
  CoalgebraReport rep;
  Field f = c.field();
  std::size_t d = c.dim();
  for (std::size_t i = 0; i < d; ++i) {
    const Vector& delta = c.comult(i);
    std::map<std::size_t, Scalar> left, right;  // index (a*d + b)*d + e
    Vector via_left_counit(f, d), via_right_counit(f, d);
    Vector twisted(f, d * d);
    for (const auto& [idx, s] : delta.entries()) {
      std::size_t a = idx / d, b = idx % d;
      if (c.degree(a) + c.degree(b) != c.degree(i)) {
        rep.degrees_ok = false;
        rep.violations.push_back("degree: " + c.label(i));
      }
      // (∇⊗1): expand a
      for (const auto& [jdx, t] : c.comult(a).entries()) {
        std::size_t key = jdx * d + b;
        auto [it, ins] = left.try_emplace(key, s * t);
        if (!ins) it->second += s * t;
      }
      // (1⊗∇): expand b
      for (const auto& [jdx, t] : c.comult(b).entries()) {
        std::size_t key = a * d * d + jdx;
        auto [it, ins] = right.try_emplace(key, s * t);
        if (!ins) it->second += s * t;
      }
      via_left_counit.add(b, s * c.counit()[a]);
      via_right_counit.add(a, s * c.counit()[b]);
      long long koszul = static_cast<long long>(c.degree(a)) * c.degree(b);
      twisted.add(c.pair_index(b, a), sign_scalar(f, koszul) * s);
    }
    std::erase_if(left, [](const auto& kv) { return kv.second.is_zero(); });
    std::erase_if(right, [](const auto& kv) { return kv.second.is_zero(); });
    if (left != right) {
      rep.coassociative = false;
      rep.violations.push_back("coassociativity: " + c.label(i));
    }
    Vector ei = Vector::unit(f, d, i);
    if (via_left_counit != ei || via_right_counit != ei) {
      rep.counital = false;
      rep.violations.push_back("counit: " + c.label(i));
    }
    if (twisted != delta) rep.cocommutative = false;
  }
  return rep;
}

std::string homology_class_label(const ChainComplex& c, const Vector& rep, int degree, bool connected) {
  if (degree == 0 && connected) return "1";
  if (rep.is_zero()) return "0";
  return c.label(degree, rep.entries().front().first);
}

GradedCoalgebra homology_coalgebra_unchecked(const SimplicialSet& x, Field f) {
  ChainComplex c = normalized_chains(x, f);
  Homology h = compute_homology(c);
  ChainMap delta = chain_comult(x, f);
  TensorLayout layout = self_tensor_layout(c);
  bool connected = x.connected();

  std::vector<std::size_t> offset;
  std::vector<CoalgebraGenerator> basis;
  for (int n = 0; n <= c.top_degree(); ++n) {
    offset.push_back(basis.size());
    for (std::size_t k = 0; k < h.dim(n); ++k)
      basis.push_back({n, homology_class_label(c, h.representative(n, k), n, connected), 0});
  }
  std::size_t d = basis.size();
  std::vector<Vector> comult;
  for (int n = 0; n <= c.top_degree(); ++n) {
    for (std::size_t k = 0; k < h.dim(n); ++k) {
      Vector img = delta[n].apply(h.representative(n, k));
      std::vector<Vector::Entry> e;
      for (const auto& [idx, s] : img.entries()) {
        auto pos = layout.locate(n, idx);
        int a = pos.left_degree, b = n - a;
        const Vector& pl = h.projection[a].column(pos.left);
        const Vector& pr = h.projection[b].column(pos.right);
        for (const auto& [u, su] : pl.entries())
          for (const auto& [v, sv] : pr.entries()) e.emplace_back((offset[a] + u) * d + offset[b] + v, s * su * sv);
      }
      comult.push_back(Vector::from_entries(f, d * d, std::move(e)));
    }
  }
  Vector counit(f, d);
  Vector aug = augmentation(x, f);
  for (std::size_t k = 0; k < h.dim(0); ++k) {
    Scalar s = Scalar::zero(f);
    for (const auto& [i, t] : h.representative(0, k).entries()) s += t * aug[i];
    counit.set(offset[0] + k, s);
  }
  return GradedCoalgebra(f, std::move(basis), std::move(comult), std::move(counit));
}

GradedCoalgebra homology_coalgebra(const SimplicialSet& x, Field f) {
  std::size_t comps = x.component_count();
  if (comps != 1)
    throw UnsupportedInput("homology coalgebra needs a connected simplicial set; '" + x.name() + "' has " +
                           std::to_string(comps) + " components");
  return homology_coalgebra_unchecked(x, f);
}

GradedCoalgebra tensor_coalgebra(const GradedCoalgebra& a, const GradedCoalgebra& b) {
  if (a.field() != b.field()) throw FieldMismatch("tensor of coalgebras over different fields");
  Field f = a.field();
  std::size_t da = a.dim(), db = b.dim();
  std::size_t d = da * db;
  std::vector<CoalgebraGenerator> basis;
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < db; ++j)
      basis.push_back({a.degree(i) + b.degree(j), a.label(i) + "□" + b.label(j), a.degree(i)});
  std::vector<Vector> comult;
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < db; ++j) {
      std::vector<Vector::Entry> e;
      for (const auto& [x, s] : a.comult(i).entries()) {
        std::size_t a1 = x / da, a2 = x % da;
        for (const auto& [y, t] : b.comult(j).entries()) {
          std::size_t b1 = y / db, b2 = y % db;
          long long k = static_cast<long long>(a.degree(a2)) * b.degree(b1);
          e.emplace_back((a1 * db + b1) * d + (a2 * db + b2), sign_scalar(f, k) * s * t);
        }
      }
      comult.push_back(Vector::from_entries(f, d * d, std::move(e)));
    }
  Vector counit(f, d);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < db; ++j) counit.set(i * db + j, a.counit()[i] * b.counit()[j]);
  return GradedCoalgebra(f, std::move(basis), std::move(comult), std::move(counit));
}

GradedCoalgebra coefficient_comult(const SimplicialSet& x, const GradedCoalgebra& gamma, Field f) {
  if (gamma.field() != f) throw FieldMismatch("coefficient coalgebra over a different field");
  CoalgebraReport rep = check_coalgebra(gamma);
  if (!rep.coassociative || !rep.counital || !rep.degrees_ok)
    throw UnsupportedInput("coefficient coalgebra is not a coassociative counital coalgebra");
  return tensor_coalgebra(homology_coalgebra_unchecked(x, f), gamma);
}

GradedCoalgebra trivial_coalgebra(Field f) {
  Vector delta(f, 1);
  delta.set(0, Scalar::one(f));
  Vector counit(f, 1);
  counit.set(0, Scalar::one(f));
  return GradedCoalgebra(f, {{0, "1", 0}}, {delta}, counit);
}

}  // namespace sseq
