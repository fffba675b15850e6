#include "pslab/errors.hpp"
#include "pslab/expsum.hpp"
#include "pslab/sieve.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace pslab;

TEST_CASE("compensated sum") {
  CompensatedSum s;
  s.add(1e16);
  for (int i = 0; i < 1000; ++i) s.add(1.0);
  s.add(-1e16);
  CHECK(s.value() == 1000.0);
}

TEST_CASE("unit phase reduces mod 1") {
  CHECK(std::abs(unit_phase(0.25) - Complex(0, 1)) < 1e-15);
  CHECK(std::abs(unit_phase(1e12 + 0.5) - Complex(-1, 0)) < 1e-9);
  CHECK(std::abs(unit_phase(-0.25) - Complex(0, -1)) < 1e-15);
}

TEST_CASE("monomial sum trivia") {
  const Complex z = monomial_sum(0.0, 1000, 2000, 20.0 / 21.0);
  CHECK(z.real() == doctest::Approx(1000.0));
  CHECK(std::abs(z.imag()) < 1e-9);
  for (double Y : {0.5, 3.0, 100.0, 1e4}) {
    const Complex s = monomial_sum(Y, 1000, 1700, 20.0 / 21.0);
    CHECK(std::abs(s) <= 700.0 + 1e-9);
    const Complex conj = monomial_sum(Y, 1000, 1700, 20.0 / 21.0, -1);
    CHECK(std::abs(conj - std::conj(s)) < 1e-9);
  }
  // direct reference for a short range
  Complex ref = 0;
  for (int n = 11; n <= 20; ++n) ref += std::polar(1.0, 2 * std::numbers::pi * 7.5 * std::pow(n / 10.0, 0.5));
  CHECK(std::abs(monomial_sum(7.5, 10, 20, 0.5) - ref) < 1e-12);
  CHECK_THROWS_AS(monomial_sum(1.0, 10, 21, 0.5), std::invalid_argument);
}

TEST_CASE("triple sum") {
  TripleParams p;
  p.F = 1e7;
  p.H = 5;
  p.N = 6;
  p.M = 1;
  const BoundReport single = triple_sum(p);
  CHECK(single.measured == doctest::Approx(30.0));  // |single term| = 1
  p.F = 100;
  p.H = p.N = p.M = 8;
  const BoundReport r = triple_sum(p);
  CHECK(r.measured <= r.trivial);
  CHECK(r.trivial == 512.0);
  CHECK(r.predicted == doctest::Approx(triple_predicted(p)));
  CHECK(r.ratio == doctest::Approx(r.measured / r.predicted));
  p.alpha = Rational(1);
  CHECK_THROWS_AS(triple_sum(p), std::invalid_argument);
  p.alpha = Rational(1, 2);
  p.F = 0.5;
  CHECK_THROWS_AS(triple_sum(p), std::invalid_argument);
  p.F = 10;
  p.H = p.N = p.M = 1000;
  CHECK_THROWS_AS(triple_sum(p), ResourceError);
}

TEST_CASE("triple sum determinism across workers") {
  TripleParams p;
  p.F = 300;
  p.H = 16;
  p.N = 12;
  p.M = 24;
  CHECK(triple_sum(p, 1).measured == triple_sum(p, 3).measured);
}

TEST_CASE("bilinear sum") {
  const ExponentPair pair{Rational(480, 1043), Rational(528, 1043)};
  const auto [e1, e2] = bilinear_exponents(pair);
  CHECK(e1 == Rational(240, 1523));
  CHECK(e2 == Rational(995, 3046));

  BilinearParams p;
  p.F = 1000;
  p.M = 10;
  p.M1 = 5;
  p.M2 = 6;
  p.a_kind = CoefficientKind::Zeros;
  CHECK(bilinear_sum(p, pair).measured == 0.0);
  for (auto kind : {CoefficientKind::Ones, CoefficientKind::Mobius, CoefficientKind::RandomPhase}) {
    p.a_kind = p.b_kind = kind;
    const BoundReport r = bilinear_sum(p, pair);
    CHECK(r.measured <= 300.0 + 1e-9);
    CHECK(r.predicted > 0.0);
  }
  p.F = 10;
  CHECK_THROWS_AS(bilinear_sum(p, pair), std::invalid_argument);
  p.F = 1000;
  p.alpha = Rational(1);
  CHECK_THROWS_AS(bilinear_sum(p, pair), std::invalid_argument);
}

TEST_CASE("coefficients") {
  const CoefficientGen mob(CoefficientKind::Mobius, 1);
  CHECK(mob(6) == Complex(1, 0));
  CHECK(mob(12) == Complex(0, 0));
  CHECK(mob(7) == Complex(-1, 0));
  const CoefficientGen r1(CoefficientKind::RandomPhase, 5), r2(CoefficientKind::RandomPhase, 5);
  const CoefficientGen r3(CoefficientKind::RandomPhase, 6);
  CHECK(r1(17) == r2(17));
  CHECK(r1(17) != r3(17));
  CHECK(std::abs(r1(3, 4)) == doctest::Approx(1.0));
  CHECK(parse_coefficients("random") == CoefficientKind::RandomPhase);
  CHECK_THROWS_AS(parse_coefficients("gauss"), std::invalid_argument);
}

TEST_CASE("prime exponential sums") {
  const ExactC c = ExactC::parse("21/20");
  // h = 0 gives the Chebyshev increment
  const Complex z = prime_expsum(c, 1, 0, 1000, 2000);
  double cheb = 0;
  for (std::uint64_t n = 1001; n <= 2000; ++n) cheb += lambda(n);
  CHECK(z.real() == doctest::Approx(cheb).epsilon(1e-12));
  CHECK(std::abs(z.imag()) < 1e-9);
  const Complex s = prime_expsum(c, 3, 2, 1000, 2000);
  CHECK(std::abs(prime_expsum(c, 3, -2, 1000, 2000) - std::conj(s)) < 1e-9);
  CHECK(std::abs(s) <= cheb);
  CHECK_THROWS_AS(prime_expsum(c, 1, 1, 1000, 2001), std::invalid_argument);

  CHECK(truncation_H(1e6, 0.01, 1000, 1) == 1);
  CHECK(truncation_H(1e6, 0.01, 1000000, 2) == static_cast<std::uint64_t>(std::floor(std::pow(1e6, -0.99) * 4e6)));
  const PrimeSumReport r = prime_expsum_total(c, 1e6, 1, 100000, 200000);
  CHECK(r.H == 1);
  CHECK(r.s9 <= r.trivial);
  CHECK(r.scale == doctest::Approx(std::pow(1e6, 0.99) * std::pow(1e5, 1.0 - 20.0 / 21.0)));
}
