#include "pslab/exactmath.hpp"

#include <doctest.h>

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <random>

using namespace pslab;
using boost::multiprecision::cpp_int;

namespace {

// Oracle: integer b-th root of n^a by bisection on cpp_int, no floating point.
std::uint64_t floor_pow_bisect(std::uint64_t n, std::uint64_t a, std::uint64_t b) {
  const cpp_int target = boost::multiprecision::pow(cpp_int(n), static_cast<unsigned>(a));
  cpp_int lo = 0, hi = 1;
  while (boost::multiprecision::pow(hi, static_cast<unsigned>(b)) <= target) hi *= 2;
  while (hi - lo > 1) {
    cpp_int mid = (lo + hi) / 2;
    if (boost::multiprecision::pow(mid, static_cast<unsigned>(b)) <= target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo.convert_to<std::uint64_t>();
}

}  // namespace

TEST_CASE("parse accepts a/b and rejects decimals") {
  CHECK(ExactC::parse("21/20").str() == "21/20");
  CHECK(ExactC::parse("42/40").str() == "21/20");
  CHECK_THROWS_AS(ExactC::parse("1.05"), std::invalid_argument);
  CHECK_THROWS_AS(ExactC::parse("1e0"), std::invalid_argument);
  CHECK_THROWS_AS(ExactC::parse("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(ExactC::parse("abc"), std::invalid_argument);
}

TEST_CASE("range checks") {
  CHECK_THROWS_AS(ExactC::parse("1/1"), std::invalid_argument);
  CHECK_THROWS_AS(ExactC::parse("3849/3334"), std::invalid_argument);  // open interval
  CHECK_THROWS_AS(ExactC::parse("2/1"), std::invalid_argument);
  CHECK(ExactC::parse("3848/3334").in_theorem_range());
  const ExactC two = ExactC::parse("2/1", RangeMode::Relaxed);
  CHECK_FALSE(two.in_theorem_range());
  CHECK_THROWS_AS(ExactC::parse("5/2", RangeMode::Relaxed), std::invalid_argument);
  CHECK(ExactC::parse("21/20").gamma_exact() == Rational(20, 21));
}

TEST_CASE("floor_pow golden values") {
  const ExactC c = ExactC::parse("21/20");
  CHECK(floor_pow(1, c) == 1);
  CHECK(floor_pow(2, c) == 2);
  CHECK(floor_pow(10, c) == 11);
  CHECK(floor_pow(1000, c) == 1412);
  CHECK(floor_pow(1000000, c) == 1995262);
  // exact power: (2^40)^(21/20) = 2^42
  CHECK(floor_pow(std::uint64_t{1} << 40, c) == (std::uint64_t{1} << 42));
  CHECK(floor_pow((std::uint64_t{1} << 40) - 1, c) == (std::uint64_t{1} << 42) - 5);
  CHECK_THROWS_AS(floor_pow(0, c), std::invalid_argument);

  const ExactC sq = ExactC::parse("2/1", RangeMode::Relaxed);
  for (std::uint64_t n = 1; n < 3000; ++n) CHECK(floor_pow(n, sq) == n * n);
}

TEST_CASE("floor_pow matches bisection oracle") {
  for (const char* text : {"21/20", "11/10", "23/20", "3848/3334"}) {
    const ExactC c = ExactC::parse(text);
    for (std::uint64_t n = 1; n <= 2000; ++n) {
      REQUIRE(floor_pow(n, c) == floor_pow_bisect(n, c.a(), c.b()));
    }
  }
  // random large n near perfect powers
  std::mt19937_64 rng(7);
  const ExactC c = ExactC::parse("21/20");
  for (int i = 0; i < 300; ++i) {
    const std::uint64_t base = 1 + rng() % 6;
    std::uint64_t n = 1;
    for (int k = 0; k < 20; ++k) n *= base;  // base^20, so n^c is an integer
    for (std::int64_t off : {-1, 0, 1}) {
      const std::uint64_t m = n + off;
      if (m == 0) continue;
      CHECK(floor_pow(m, c) == floor_pow_bisect(m, 21, 20));
    }
    const std::uint64_t r = 1 + rng() % 100000000;
    CHECK(floor_pow(r, c) == floor_pow_bisect(r, 21, 20));
  }
}

TEST_CASE("ceil_root inverts floor_pow") {
  const ExactC c = ExactC::parse("11/10");
  for (std::uint64_t q = 1; q <= 5000; ++q) {
    const std::uint64_t m = ceil_root(q, c);
    // m^c >= q  <=>  floor_pow(m) >= q ; (m-1)^c < q
    REQUIRE(floor_pow(m, c) >= q);
    if (m > 1) REQUIRE(floor_pow(m - 1, c) < q);
  }
}

TEST_CASE("count_multiples_in_gamma_interval agrees with enumeration") {
  const ExactC c = ExactC::parse("21/20");
  for (std::uint64_t p = 2; p < 3000; ++p) {
    for (std::uint64_t d : {1, 2, 3, 5, 7}) {
      std::uint64_t brute = 0;
      // n with [n^c] = p are exactly those with p <= n^c < p+1
      for (std::uint64_t n = 1; n <= p; ++n) {
        if (floor_pow(n, c) == p && n % (d * d) == 0) ++brute;
      }
      REQUIRE(count_multiples_in_gamma_interval(p, c, d) == brute);
    }
  }
  CHECK_THROWS_AS(count_multiples_in_gamma_interval(1, c, 1), std::invalid_argument);
  CHECK_THROWS_AS(count_multiples_in_gamma_interval(5, c, 0), std::invalid_argument);
}

TEST_CASE("psi") {
  CHECK(frac_part_psi(0.25) == doctest::Approx(-0.25));
  CHECK(frac_part_psi(-0.25) == doctest::Approx(0.25));
  CHECK(frac_part_psi(3.0) == doctest::Approx(-0.5));
}
