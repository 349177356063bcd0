#include "sseq/delta.hpp"

#include <sstream>

#include <json.hpp>

#include "sseq/errors.hpp"

namespace sseq {

DeltaMorphism::DeltaMorphism(std::vector<int> values, int target) : values_(std::move(values)), target_(target) {
  if (values_.empty()) throw RangeError("a Delta morphism needs at least one value");
  if (target_ < 0) throw RangeError("negative target object");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] < 0 || values_[i] > target_) throw RangeError("Delta morphism value out of range: " + to_string());
    if (i > 0 && values_[i] < values_[i - 1]) throw RangeError("Delta morphism is not monotone: " + to_string());
  }
}

DeltaMorphism DeltaMorphism::identity(int n) {
  std::vector<int> v(n + 1);
  for (int i = 0; i <= n; ++i) v[i] = i;
  return DeltaMorphism(std::move(v), n);
}

DeltaMorphism DeltaMorphism::constant(int source, int value, int target) {
  return DeltaMorphism(std::vector<int>(source + 1, value), target);
}

DeltaMorphism DeltaMorphism::coface(int i, int n) {
  if (i < 0 || i > n || n < 1) throw RangeError("coface index out of range");
  std::vector<int> v;
  for (int k = 0; k <= n; ++k)
    if (k != i) v.push_back(k);
  return DeltaMorphism(std::move(v), n);
}

DeltaMorphism DeltaMorphism::codegeneracy(int i, int n) {
  if (i < 0 || i > n) throw RangeError("codegeneracy index out of range");
  std::vector<int> v;
  for (int k = 0; k <= n + 1; ++k) v.push_back(k <= i ? k : k - 1);
  return DeltaMorphism(std::move(v), n);
}

DeltaMorphism DeltaMorphism::parse(std::string_view text, std::optional<int> target) {
  std::vector<int> values;
  try {
    values = nlohmann::json::parse(text).get<std::vector<int>>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("malformed Delta morphism '" + std::string(text) + "'");
  }
  if (values.empty()) throw ParseError("empty Delta morphism");
  return DeltaMorphism(values, target.value_or(values.back()));
}

bool DeltaMorphism::injective() const {
  for (std::size_t i = 1; i < values_.size(); ++i)
    if (values_[i] == values_[i - 1]) return false;
  return true;
}

bool DeltaMorphism::surjective() const {
  if (values_.front() != 0 || values_.back() != target_) return false;
  for (std::size_t i = 1; i < values_.size(); ++i)
    if (values_[i] - values_[i - 1] > 1) return false;
  return true;
}

bool DeltaMorphism::is_identity() const { return source() == target_ && injective(); }

std::pair<DeltaMorphism, DeltaMorphism> DeltaMorphism::epi_mono() const {
  std::vector<int> image;
  std::vector<int> epi;
  for (int v : values_) {
    if (image.empty() || image.back() != v) image.push_back(v);
    epi.push_back(static_cast<int>(image.size()) - 1);
  }
  int j = static_cast<int>(image.size()) - 1;
  return {DeltaMorphism(std::move(image), target_), DeltaMorphism(std::move(epi), j)};
}

std::string DeltaMorphism::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < values_.size(); ++i) os << (i ? "," : "") << values_[i];
  os << ']';
  return os.str();
}

DeltaMorphism compose(const DeltaMorphism& f, const DeltaMorphism& g) {
  if (f.source() != g.target())
    throw RangeError("cannot compose " + f.to_string() + " after " + g.to_string() + ": objects differ");
  std::vector<int> v;
  v.reserve(g.values().size());
  for (int x : g.values()) v.push_back(f(x));
  return DeltaMorphism(std::move(v), f.target());
}

DeltaMorphism interval_map(int i, int j, int n) {
  if (!(0 <= i && i <= j && j <= n)) throw RangeError("interval_map requires 0 <= i <= j <= n");
  std::vector<int> v;
  for (int k = i; k <= j; ++k) v.push_back(k);
  return DeltaMorphism(std::move(v), n);
}

long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

DeltaMorphism complementary_mu(const DeltaMorphism& sigma, int q) {
  std::vector<int> mu{0};
  for (int i = 1; i <= sigma.source(); ++i) mu.push_back(mu.back() + (sigma(i) == sigma(i - 1) ? 1 : 0));
  return DeltaMorphism(std::move(mu), q);
}

// Interleaving word: step k is a sigma-step when sigma increases there. The
// sign counts pairs (sigma-step, later mu-step).
int shuffle_sign(const DeltaMorphism& sigma) {
  long inversions = 0;
  long sigma_steps = 0;
  for (int i = 1; i <= sigma.source(); ++i) {
    if (sigma(i) != sigma(i - 1))
      ++sigma_steps;
    else
      inversions += sigma_steps;
  }
  return inversions % 2 == 0 ? 1 : -1;
}

std::vector<Shuffle> enumerate_shuffles(int q, int p) {
  if (p < 0 || q < 0) throw RangeError("shuffle degrees must be non-negative");
  std::vector<Shuffle> out;
  out.reserve(static_cast<std::size_t>(binomial(p + q, p)));
  std::vector<int> sigma{0};
  // Depth-first, trying the "stay" step first, gives lexicographic order.
  auto rec = [&](auto&& self, int stays_left, int rises_left) -> void {
    if (stays_left == 0 && rises_left == 0) {
      DeltaMorphism s(sigma, p);
      out.push_back(Shuffle{complementary_mu(s, q), s, shuffle_sign(s)});
      return;
    }
    if (stays_left > 0) {
      sigma.push_back(sigma.back());
      self(self, stays_left - 1, rises_left);
      sigma.pop_back();
    }
    if (rises_left > 0) {
      sigma.push_back(sigma.back() + 1);
      self(self, stays_left, rises_left - 1);
      sigma.pop_back();
    }
  };
  rec(rec, q, p);
  return out;
}

bool is_valid_shuffle(const Shuffle& s) {
  const auto& mu = s.mu;
  const auto& sigma = s.sigma;
  if (mu.source() != sigma.source()) return false;
  if (mu.source() != mu.target() + sigma.target()) return false;
  if (!mu.surjective() || !sigma.surjective()) return false;
  for (int j = 0; j < mu.source(); ++j) {
    bool mu_flat = mu(j) == mu(j + 1);
    bool sigma_flat = sigma(j) == sigma(j + 1);
    if (mu_flat == sigma_flat) return false;
  }
  return s.sign == shuffle_sign(sigma);
}

bool is_exceptional(const Shuffle& s) {
  int q = s.mu.target();
  for (int i = 0; i <= s.sigma.source(); ++i)
    if (s.sigma(i) != (i <= q ? 0 : i - q)) return false;
  return true;
}

namespace {

bool strictly_increasing(const DeltaMorphism& f, int from, int to) {
  for (int i = from; i < to; ++i)
    if (f(i + 1) != f(i) + 1) return false;
  return true;
}

}  // namespace

bool witness_holds(const DeltaMorphism& sigma, const SimpleWitness& w) {
  int n = sigma.source();
  if (!(0 <= w.a && w.a <= w.b && w.b <= w.c && w.c <= n)) return false;
  if (sigma(w.a) != 0) return false;
  if (!strictly_increasing(sigma, w.a, w.b)) return false;
  for (int i = w.b; i <= w.c; ++i)
    if (sigma(i) != sigma(w.b)) return false;
  return strictly_increasing(sigma, w.c, n);
}

std::optional<SimpleWitness> is_simple(const Shuffle& s, WitnessConvention convention) {
  const auto& sigma = s.sigma;
  int n = sigma.source();
  SimpleWitness w;
  if (convention == WitnessConvention::maximal) {
    w.a = 0;
    while (w.a + 1 <= n && sigma(w.a + 1) == 0) ++w.a;
    w.b = w.a;
    while (w.b + 1 <= n && sigma(w.b + 1) == sigma(w.b) + 1) ++w.b;
    w.c = w.b;
    while (w.c + 1 <= n && sigma(w.c + 1) == sigma(w.b)) ++w.c;
  } else {
    w.c = n;
    while (w.c > 0 && sigma(w.c - 1) + 1 == sigma(w.c)) --w.c;
    w.b = w.c;
    while (w.b > 0 && sigma(w.b - 1) == sigma(w.c)) --w.b;
    w.a = w.b - sigma(w.b);
    if (w.a < 0) return std::nullopt;
  }
  if (!witness_holds(sigma, w)) return std::nullopt;
  return w;
}

int count_simple(int q, int p) {
  int n = 0;
  for (const auto& s : enumerate_shuffles(q, p))
    if (is_simple(s)) ++n;
  return n;
}

}  // namespace sseq
