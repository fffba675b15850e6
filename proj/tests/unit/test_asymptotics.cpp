#include "pslab/asymptotics.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace pslab;

TEST_CASE("outward rounding") {
  CHECK(round_down(1.0) < 1.0);
  CHECK(round_up(1.0) > 1.0);
  const Interval p = mul({0.5, 0.5}, {7.0 / 9.0, 7.0 / 9.0});
  CHECK(p.contains(7.0 / 18.0));
  CHECK_THROWS(intersect({0, 1}, {2, 3}));
  const Interval i = intersect({0, 2}, {1, 3});
  CHECK(i.lo == 1.0);
  CHECK(i.hi == 2.0);
}

TEST_CASE("sigma partial product at 3") {
  CHECK_THROWS_AS(sigma_constant(2), std::invalid_argument);
  const SigmaInterval s = sigma_constant(3);
  CHECK(s.partial.contains(7.0 / 18.0));
  CHECK(s.partial.width() < 1e-15);
  CHECK(s.contains(kSigmaReference));
  CHECK(s.hi <= round_up(s.partial.hi));
}

TEST_CASE("tail enclosure") {
  // P(2) - sum_{p <= 1000} p^-2, with P(2) = 0.4522474200410654985 (prime zeta)
  const Interval t = prime_square_tail(1000, 168);
  CHECK(t.contains(0.00012698979176134));
  CHECK(t.lo > 0.0);
  CHECK(t.lo < t.hi);
  CHECK(t.hi < 1.0 / 1000);
  const Interval crude = prime_square_tail(100, 25);
  CHECK(crude.hi <= 1.0 / 100 + 1e-15);
}

TEST_CASE("sigma enclosures nest and contain the reference") {
  SigmaInterval prev = sigma_constant(1000);
  CHECK(prev.contains(kSigmaReference));
  for (std::uint64_t P : {10'000ULL, 54'321ULL, 100'000ULL, 1'000'000ULL}) {
    const SigmaInterval s = sigma_constant(P);
    CAPTURE(P);
    CHECK(s.contains(kSigmaReference));
    CHECK(prev.as_interval().contains(s.as_interval()));
    CHECK(s.width() <= prev.width());
    prev = s;
  }
  CHECK(prev.width() < 1e-8);
}

TEST_CASE("main terms") {
  const ExactC c = ExactC::parse("21/20");
  const double x = 1e6;
  CHECK(main_term_sqfree(c, x) ==
        doctest::Approx(6.0 / (1.05 * std::numbers::pi * std::numbers::pi) * x / std::log(x)).epsilon(1e-14));
  CHECK(main_term_sqfree(c, x) == doctest::Approx(41907.8390055).epsilon(1e-10));
  CHECK(main_term_all(c, x) == doctest::Approx(x / (1.05 * std::log(x))));
  double prev = 0.0;
  for (double t = 3.0; t < 1e9; t *= 1.37) {
    const double m = main_term_sqfree(c, t);
    REQUIRE(m > prev);
    prev = m;
  }
  CHECK_THROWS_AS(main_term_sqfree(c, 2.0), std::invalid_argument);

  const SigmaInterval s = sigma_constant(100000);
  const Interval cons = main_term_consec(c, x, s);
  CHECK(cons.width() == doctest::Approx(s.width() * x / (1.05 * std::log(x))).epsilon(1e-6));
}

TEST_CASE("asym report") {
  const ExactC c = ExactC::parse("21/20");
  CountReport r{.c = c, .x = 1000000, .variant = Variant::Squarefree, .method = Method::Direct, .count = 45444};
  const AsymReport a = asym_report(r, main_term_sqfree(c, 1e6));
  CHECK(a.ratio == doctest::Approx(45444.0 / 41907.8390055));
  CHECK(a.scaled_error == doctest::Approx((45444.0 - 41907.8390055) * std::pow(std::log(1e6), 2) / 1e6));
  CHECK(a.in_theorem_range);
}
