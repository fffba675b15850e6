#pragma once

#include "pslab/rational.hpp"

#include <cstdint>
#include <string>
#include <string_view>

namespace pslab {

/// Upper end of the exponent range covered by the square-free theorems.
inline const Rational kTheoremUpper{3849, 3334};

enum class RangeMode {
  Theorem,  ///< 1 < c < 3849/3334
  Relaxed,  ///< 1 < c <= 2, for exploration; reports carry the flag
};

/// A rational exponent c = a/b > 1 with exact floor-of-power support.
class ExactC {
public:
  ExactC(const Rational& c, RangeMode mode = RangeMode::Theorem);

  /// Parses "a/b"; decimal input is rejected.
  static ExactC parse(std::string_view text, RangeMode mode = RangeMode::Theorem);

  const Rational& value() const { return c_; }
  std::uint64_t a() const { return a_; }
  std::uint64_t b() const { return b_; }
  long double as_long_double() const { return c_ld_; }
  /// gamma = 1/c.
  long double gamma() const { return gamma_ld_; }
  Rational gamma_exact() const { return Rational(1) / c_; }
  RangeMode mode() const { return mode_; }
  bool in_theorem_range() const { return in_theorem_range_; }
  std::string str() const { return c_.str(); }

  friend bool operator==(const ExactC& x, const ExactC& y) { return x.c_ == y.c_; }

private:
  Rational c_;
  std::uint64_t a_;
  std::uint64_t b_;
  long double c_ld_;
  long double gamma_ld_;
  RangeMode mode_;
  bool in_theorem_range_;
};

/// Fractional distance below which the floating estimate is certified by
/// exact integer power comparison.
inline constexpr long double kGuardBand = 1e-6L;

/// [n^c]: the unique m with m^b <= n^a < (m+1)^b.
std::uint64_t floor_pow(std::uint64_t n, const ExactC& c);

/// Smallest integer m >= 0 with m^c >= q, i.e. ceil(q^gamma). Exact.
std::uint64_t ceil_root(std::uint64_t q, const ExactC& c);

/// #{k >= 1 : p^gamma <= k d^2 < (p+1)^gamma}.
std::uint64_t count_multiples_in_gamma_interval(std::uint64_t p, const ExactC& c, std::uint64_t d);

/// psi(t) = {t} - 1/2, in [-1/2, 1/2).
double frac_part_psi(double t);

}  // namespace pslab
