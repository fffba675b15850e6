#include "pslab/exppair.hpp"

#include <doctest.h>

#include <random>

using namespace pslab;

TEST_CASE("A and B processes") {
  const ExponentPair t = trivial_pair();
  CHECK(t == ExponentPair{Rational(0), Rational(1)});
  CHECK(b_transform(t) == ExponentPair{Rational(1, 2), Rational(1, 2)});
  CHECK(a_transform(t) == t);  // fixed point
  CHECK(a_transform(b_transform(t)) == ExponentPair{Rational(1, 6), Rational(2, 3)});
  CHECK(b_transform(b_transform(b_transform(t))) == b_transform(t));
}

TEST_CASE("word parsing") {
  CHECK(PairWord::parse("BA5BA2BA2B").symbols() == "BAAAAABAABAAB");
  CHECK(PairWord::parse("BAAAAABAABAAB").compact() == "BA5BA2BA2B");
  CHECK(PairWord::parse("A12B").size() == 13);
  CHECK_THROWS_AS(PairWord::parse("BA0B"), std::invalid_argument);
  CHECK_THROWS_AS(PairWord::parse("BC"), std::invalid_argument);
  CHECK_THROWS_AS(PairWord::parse(""), std::invalid_argument);
  CHECK_THROWS_AS(PairWord::parse("3A"), std::invalid_argument);
}

TEST_CASE("golden words") {
  CHECK(eval_word(PairWord::parse("B")).str() == "(1/2, 1/2)");
  CHECK(eval_word(PairWord::parse("AB")).str() == "(1/6, 2/3)");
  CHECK(eval_word(PairWord::parse("A2B")).str() == "(1/14, 11/14)");
  CHECK(eval_word(PairWord::parse("BAB")).str() == "(1/6, 2/3)");
  CHECK(eval_word(PairWord::parse("BA2B")).str() == "(2/7, 4/7)");
  CHECK(eval_word(PairWord::parse("BA5BA2BA2B")).str() == "(480/1043, 528/1043)");
}

TEST_CASE("random words stay in the region") {
  std::mt19937 rng(11);
  for (int i = 0; i < 500; ++i) {
    std::string w;
    const int len = 1 + static_cast<int>(rng() % 14);
    for (int j = 0; j < len; ++j) w += (rng() & 1) ? 'A' : 'B';
    const ExponentPair p = eval_word(PairWord::parse(w));
    CAPTURE(w);
    REQUIRE(p.in_region());
  }
}

TEST_CASE("pair bound") {
  const ExponentPair half{Rational(1, 2), Rational(1, 2)};
  CHECK(pair_bound(half, 100.0, 1000.0) == doctest::Approx(10.0 * std::sqrt(1000.0) + 0.01));
  CHECK_THROWS_AS(pair_bound(half, 0.0, 10.0), std::invalid_argument);
}

TEST_CASE("search") {
  const PairSearchResult r = search_pairs(1, PairObjective::KappaPlusLambda);
  CHECK(r.word.symbols() == "B");
  const PairSearchResult r6 = search_pairs(6, PairObjective::KappaPlusLambda);
  CHECK(r6.objective <= Rational(1));
  CHECK(r6.pair.in_region());
  CHECK(r6.objective == r6.pair.kappa + r6.pair.lambda);
  CHECK(parse_objective("kappa") == PairObjective::Kappa);
  CHECK_THROWS_AS(parse_objective("mu"), std::invalid_argument);
}
