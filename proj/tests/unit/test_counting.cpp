#include "pslab/counting.hpp"

#include <doctest.h>

#include <cmath>
#include <map>
#include <tuple>

using namespace pslab;

namespace {

// Counts from an independent brute force (gmpy2 iroot + is_prime, trial-division
// square-freeness), one pass per c over n <= 10^5.
struct Golden {
  const char* c;
  std::uint64_t x;
  std::uint64_t all, sqfree, consec;
};

const Golden kGolden[] = {
    {"21/20", 1000, 159, 96, 55},       {"21/20", 10000, 1146, 679, 365},
    {"21/20", 100000, 9019, 5494, 2947}, {"21/20", 1000000, 74616, 45444, 24242},
    {"11/10", 1000, 150, 92, 50},       {"11/10", 10000, 1091, 669, 365},
    {"11/10", 100000, 8740, 5349, 2848}, {"23/20", 1000, 143, 86, 46},
    {"23/20", 10000, 1100, 654, 336},   {"23/20", 100000, 8344, 5060, 2669},
    {"3848/3334", 1000, 150, 84, 40},   // reduces to 1924/1667
};

bool squarefree_trial(std::uint64_t n) {
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % (d * d) == 0) return false;
  return true;
}

bool prime_trial(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace

TEST_CASE("golden counts, both methods") {
  for (const auto& g : kGolden) {
    const ExactC c = ExactC::parse(g.c);
    const SieveTable t = sieve_for_count(c, g.x);
    const std::uint64_t want[] = {g.all, g.sqfree, g.consec};
    int i = 0;
    for (Variant v : {Variant::All, Variant::Squarefree, Variant::Consecutive}) {
      CAPTURE(g.c);
      CAPTURE(g.x);
      CAPTURE(to_string(v));
      CHECK(count_direct(c, g.x, v, t).count == want[i]);
      CHECK(count_interval(c, g.x, v, t).count == want[i]);
      ++i;
    }
  }
}

TEST_CASE("brute-force oracle at every small x") {
  const ExactC c = ExactC::parse("11/10");
  const SieveTable t = sieve_for_count(c, 600);
  std::uint64_t all = 0, sq = 0, cons = 0;
  for (std::uint64_t x = 1; x <= 600; ++x) {
    if (prime_trial(floor_pow(x, c))) {
      ++all;
      if (squarefree_trial(x)) {
        ++sq;
        if (squarefree_trial(x + 1)) ++cons;
      }
    }
    REQUIRE(count_interval(c, x, Variant::All, t, 1).count == all);
    REQUIRE(count_interval(c, x, Variant::Squarefree, t, 1).count == sq);
    REQUIRE(count_direct(c, x, Variant::Consecutive, t, 1).count == cons);
  }
}

TEST_CASE("relaxed c = 2 counts nothing") {
  const ExactC c = ExactC::parse("2/1", RangeMode::Relaxed);
  CHECK(count_direct(c, 1000, Variant::All).count == 0);
  CHECK(count_interval(c, 1000, Variant::All).count == 0);
}

TEST_CASE("table coverage is enforced") {
  const ExactC c = ExactC::parse("21/20");
  const SieveTable small = sieve_range(1, 100);
  CHECK_THROWS_AS(count_direct(c, 1000, Variant::All, small), std::invalid_argument);
  CHECK(sieve_limit_for(c, 1000) == 1413);
}

TEST_CASE("parse helpers") {
  CHECK(parse_variant("sqfree") == Variant::Squarefree);
  CHECK(parse_variant("consec") == Variant::Consecutive);
  CHECK(parse_method("interval") == Method::Interval);
  CHECK_THROWS_AS(parse_variant("odd"), std::invalid_argument);
}

TEST_CASE("decompose_by_z") {
  const ExactC c = ExactC::parse("21/20");
  for (std::uint64_t x : {16, 1000, 10000, 100000}) {
    const ZSplit s = decompose_by_z(c, x);
    CHECK(s.s1 + s.s2 == static_cast<std::int64_t>(s.total));
    CHECK(s.z == doctest::Approx(std::pow(std::log(static_cast<double>(x)), 2)));
  }
  CHECK(decompose_by_z(c, 100000).total == 5494);
  CHECK_THROWS_AS(decompose_by_z(c, 15), std::invalid_argument);
}

TEST_CASE("worker independence") {
  const ExactC c = ExactC::parse("23/20");
  const SieveTable t = sieve_for_count(c, 200000);
  for (Variant v : {Variant::All, Variant::Squarefree, Variant::Consecutive}) {
    const auto base = count_direct(c, 200000, v, t, 1).count;
    for (unsigned w : {2u, 3u, 8u}) {
      CHECK(count_direct(c, 200000, v, t, w).count == base);
      CHECK(count_interval(c, 200000, v, t, w).count == base);
    }
  }
  const auto a = decompose_by_z(c, 200000, t, 1);
  const auto b = decompose_by_z(c, 200000, t, 5);
  CHECK(std::tie(a.s1, a.s2, a.total) == std::tie(b.s1, b.s2, b.total));
}
