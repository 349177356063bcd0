#include <doctest.h>

#include "frozen.hpp"
#include "sseq/delta.hpp"
#include "sseq/errors.hpp"

using namespace sseq;

TEST_CASE("delta morphisms") {
  auto s = DeltaMorphism::parse("[0,0,1]");
  CHECK(compose(s, interval_map(1, 2, 2)).to_string() == "[0,1]");
  CHECK(compose(DeltaMorphism::identity(1), s) == s);
  CHECK(compose(DeltaMorphism::parse("[0,0]", 1), DeltaMorphism::parse("[0,1]")) == DeltaMorphism::parse("[0,0]", 1));
  CHECK(interval_map(0, 3, 3).is_identity());
  CHECK(interval_map(0, 0, 4).to_string() == "[0]");
  CHECK(interval_map(1, 3, 5).values() == std::vector<int>{1, 2, 3});
  CHECK_THROWS_AS(interval_map(2, 1, 3), RangeError);
  CHECK_THROWS_AS(compose(s, s), Error);
  CHECK_THROWS_AS(DeltaMorphism::parse("[1,0]"), Error);
  CHECK_THROWS_AS(DeltaMorphism::parse("[0,1"), ParseError);
}

TEST_CASE("shuffles match the brute-force oracle") {
  auto o = frozen("shuffles.json");
  for (const auto& e : o["table"]) {
    int q = e["q"], p = e["p"];
    auto sh = enumerate_shuffles(q, p);
    CAPTURE(q);
    CAPTURE(p);
    CHECK(sh.size() == e["count"].get<std::size_t>());
    CHECK(static_cast<long long>(sh.size()) == binomial(p + q, p));
    if (p >= 1 && q >= 1) CHECK(count_simple(q, p) == e["simple"].get<int>());
    for (const auto& s : sh) {
      CHECK(is_valid_shuffle(s));
      CHECK(complementary_mu(s.sigma, q) == s.mu);
    }
    if (!e.contains("sigmas")) continue;
    for (std::size_t i = 0; i < sh.size(); ++i) {
      CHECK(sh[i].sigma.values() == e["sigmas"][i].get<std::vector<int>>());
      CHECK(sh[i].sign == e["signs"][i].get<int>());
      auto w = is_simple(sh[i]);
      auto expect = e["witnesses"][i].get<std::vector<int>>();
      REQUIRE(w.has_value() == !expect.empty());
      if (w) {
        CHECK(std::vector<int>{w->a, w->b, w->c} == expect);
        CHECK(witness_holds(sh[i].sigma, *w));
      }
    }
  }
}

TEST_CASE("worked shuffle examples") {
  auto ex = frozen("shuffles.json")["examples"];
  Shuffle s53{DeltaMorphism::parse("[0,0,1,2,3,3,3,4,5]"), DeltaMorphism::parse("[0,1,1,1,1,2,3,3,3]")};
  s53.sign = shuffle_sign(s53.sigma);
  CHECK(is_valid_shuffle(s53));
  CHECK_FALSE(is_simple(s53).has_value());
  CHECK(ex["nonsimple_5_3"]["witness"].is_null());
  Shuffle s45{DeltaMorphism::parse("[0,1,1,1,1,2,3,4,4,4]"), DeltaMorphism::parse("[0,0,1,2,3,3,3,3,4,5]")};
  s45.sign = shuffle_sign(s45.sigma);
  auto w = is_simple(s45);
  REQUIRE(w);
  CHECK(*w == SimpleWitness{1, 4, 7});
  auto wmin = is_simple(s45, WitnessConvention::minimal);
  REQUIRE(wmin);
  CHECK(witness_holds(s45.sigma, *wmin));
  CHECK(wmin->a <= w->a);
}

TEST_CASE("exceptional shuffle") {
  for (int q = 0; q <= 4; ++q)
    for (int p = 0; p <= 4; ++p) {
      int found = 0;
      for (const auto& s : enumerate_shuffles(q, p))
        if (is_exceptional(s)) {
          ++found;
          CHECK(s.sign == 1);
          if (p > 0 && q > 0) CHECK(is_simple(s).has_value());
        }
      CHECK(found == 1);
    }
  CHECK(enumerate_shuffles(0, 3).size() == 1);
  CHECK(enumerate_shuffles(0, 3)[0].sign == 1);
}
