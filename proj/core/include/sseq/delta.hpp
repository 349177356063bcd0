#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sseq {

// Monotone map [source] -> [target] in the simplex category.
class DeltaMorphism {
 public:
  DeltaMorphism() = default;
  DeltaMorphism(std::vector<int> values, int target);
  static DeltaMorphism identity(int n);
  static DeltaMorphism constant(int source, int value, int target);
  // The coface d^i : [n-1] -> [n] skipping i.
  static DeltaMorphism coface(int i, int n);
  // The codegeneracy s^i : [n+1] -> [n] hitting i twice.
  static DeltaMorphism codegeneracy(int i, int n);
  // "[0,0,1,2]"; the target defaults to the last value.
  static DeltaMorphism parse(std::string_view text, std::optional<int> target = std::nullopt);

  int source() const { return static_cast<int>(values_.size()) - 1; }
  int target() const { return target_; }
  const std::vector<int>& values() const { return values_; }
  int operator()(int i) const { return values_.at(i); }

  bool injective() const;
  bool surjective() const;
  bool is_identity() const;
  // *this = mono ∘ epi with epi surjective and mono injective.
  std::pair<DeltaMorphism, DeltaMorphism> epi_mono() const;
  std::string to_string() const;

  friend bool operator==(const DeltaMorphism& a, const DeltaMorphism& b) = default;
  friend auto operator<=>(const DeltaMorphism& a, const DeltaMorphism& b) = default;

 private:
  std::vector<int> values_{0};
  int target_ = 0;
};

// f ∘ g
DeltaMorphism compose(const DeltaMorphism& f, const DeltaMorphism& g);
// The inclusion [i, i+1, ..., j] -> [n].
DeltaMorphism interval_map(int i, int j, int n);

struct Shuffle {
  DeltaMorphism mu;     // target q
  DeltaMorphism sigma;  // target p
  int sign = 1;
};

struct SimpleWitness {
  int a = 0;
  int b = 0;
  int c = 0;
  friend bool operator==(const SimpleWitness&, const SimpleWitness&) = default;
};

enum class WitnessConvention { maximal, minimal };

// The (q,p) shuffles, lexicographic in sigma.
std::vector<Shuffle> enumerate_shuffles(int q, int p);
// mu is determined by sigma.
DeltaMorphism complementary_mu(const DeltaMorphism& sigma, int q);
int shuffle_sign(const DeltaMorphism& sigma);
bool is_valid_shuffle(const Shuffle& s);
bool is_exceptional(const Shuffle& s);
// Checks the four defining clauses for a given witness.
bool witness_holds(const DeltaMorphism& sigma, const SimpleWitness& w);
std::optional<SimpleWitness> is_simple(const Shuffle& s, WitnessConvention convention = WitnessConvention::maximal);
int count_simple(int q, int p);
long long binomial(int n, int k);

}  // namespace sseq
