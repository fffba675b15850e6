#include "pslab/exactmath.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace pslab {

namespace {

BigInt big_pow(std::uint64_t base, std::uint64_t exp) {
  return boost::multiprecision::pow(BigInt(base), static_cast<unsigned>(exp));
}

// Distance of v from the nearest integer is too small to trust the
// floating estimate.
bool near_integer(long double v) {
  long double frac = v - std::floor(v);
  long double band = kGuardBand + v * 1e-15L;
  return frac <= band || 1.0L - frac <= band;
}

}  // namespace

ExactC::ExactC(const Rational& c, RangeMode mode) : c_(c), mode_(mode) {
  if (c_ <= Rational(1)) throw std::invalid_argument("exponent c must exceed 1, got " + c_.str());
  in_theorem_range_ = c_ < kTheoremUpper;
  if (mode == RangeMode::Theorem && !in_theorem_range_) {
    throw std::invalid_argument("exponent " + c_.str() +
                                " is outside the proven range 1 < c < 3849/3334; use relaxed mode");
  }
  if (mode == RangeMode::Relaxed && c_ > Rational(2)) {
    throw std::invalid_argument("relaxed mode accepts 1 < c <= 2, got " + c_.str());
  }
  constexpr auto kMax = std::numeric_limits<std::uint32_t>::max();
  if (c_.num() > kMax || c_.den() > kMax) {
    throw std::invalid_argument("exponent " + c_.str() + " has an oversized numerator or denominator");
  }
  a_ = c_.num().convert_to<std::uint64_t>();
  b_ = c_.den().convert_to<std::uint64_t>();
  c_ld_ = static_cast<long double>(a_) / static_cast<long double>(b_);
  gamma_ld_ = static_cast<long double>(b_) / static_cast<long double>(a_);
}

ExactC ExactC::parse(std::string_view text, RangeMode mode) {
  return ExactC(Rational::parse(text), mode);
}

std::uint64_t floor_pow(std::uint64_t n, const ExactC& c) {
  if (n == 0) throw std::invalid_argument("floor_pow: n must be positive");
  if (n == 1) return 1;
  long double v = std::pow(static_cast<long double>(n), c.as_long_double());
  if (v >= 1.8e19L) throw std::overflow_error("floor_pow: result exceeds 64 bits");
  auto m = static_cast<std::uint64_t>(std::floor(v));
  if (!near_integer(v)) return m;

  const BigInt target = big_pow(n, c.a());
  while (m > 0 && big_pow(m, c.b()) > target) --m;
  while (big_pow(m + 1, c.b()) <= target) ++m;
  return m;
}

std::uint64_t ceil_root(std::uint64_t q, const ExactC& c) {
  if (q <= 1) return q;
  long double v = std::pow(static_cast<long double>(q), c.gamma());
  auto m = static_cast<std::uint64_t>(std::ceil(v));
  if (!near_integer(v)) return m;

  const BigInt target = big_pow(q, c.b());
  while (m > 0 && big_pow(m - 1, c.a()) >= target) --m;
  while (big_pow(m, c.a()) < target) ++m;
  return m;
}

std::uint64_t count_multiples_in_gamma_interval(std::uint64_t p, const ExactC& c, std::uint64_t d) {
  if (p < 2) throw std::invalid_argument("count_multiples_in_gamma_interval: p must be >= 2");
  if (d == 0) throw std::invalid_argument("count_multiples_in_gamma_interval: d must be >= 1");
  const std::uint64_t dd = d * d;
  auto ceil_div = [dd](std::uint64_t v) { return (v + dd - 1) / dd; };
  return ceil_div(ceil_root(p + 1, c)) - ceil_div(ceil_root(p, c));
}

double frac_part_psi(double t) {
  double frac = t - std::floor(t);
  if (frac >= 1.0) frac = 0.0;
  return frac - 0.5;
}

}  // namespace pslab
