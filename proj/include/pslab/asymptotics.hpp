#pragma once

#include "pslab/counting.hpp"
#include "pslab/exactmath.hpp"
#include "pslab/sieve.hpp"

#include <cstdint>

namespace pslab {

/// Closed interval of doubles. Arithmetic helpers round outward.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double width() const { return hi - lo; }
  double mid() const { return 0.5 * (lo + hi); }
  bool contains(double v) const { return lo <= v && v <= hi; }
  bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
};

double round_down(double v);
double round_up(double v);
Interval mul(const Interval& x, const Interval& y);  // x, y >= 0
Interval intersect(const Interval& x, const Interval& y);

/// Certified enclosure of prod_p (1 - 2/p^2).
struct SigmaInterval {
  double lo = 0.0;
  double hi = 0.0;
  std::uint64_t prime_limit = 0;
  /// Partial product over p <= prime_limit (enclosure).
  Interval partial;

  double width() const { return hi - lo; }
  bool contains(double v) const { return lo <= v && v <= hi; }
  Interval as_interval() const { return {lo, hi}; }
};

/// Reference value of the Euler product: exp(-sum_k 2^k P(2k) / k) with the
/// prime zeta function P, evaluated at 30 digits (mpmath.primezeta).
inline constexpr double kSigmaReference = 0.32263409893924467;

/// Enclosure of sum_{p > P} 1/p^2, given pi(P) exactly. Uses
/// sum_{n > P} n^-2 < 1/P always, and explicit Chebyshev-type bounds on
/// pi(t) once P >= 599.
Interval prime_square_tail(std::uint64_t prime_limit, std::uint64_t prime_count);

/// prime_limit >= 3. The result is intersected with the enclosures at every
/// power of ten below prime_limit, so enclosures nest across decades.
SigmaInterval sigma_constant(std::uint64_t prime_limit, const SieveOptions& options = {});

/// (6 / (c pi^2)) x / log x, x >= 3.
double main_term_sqfree(const ExactC& c, double x);

/// x / (c log x), the pi_c main term.
double main_term_all(const ExactC& c, double x);

/// [sigma.lo, sigma.hi] x / (c log x).
Interval main_term_consec(const ExactC& c, double x, const SigmaInterval& sigma);

/// Main term matching a count variant (consecutive uses the sigma midpoint).
double main_term_for(Variant variant, const ExactC& c, double x, const SigmaInterval* sigma);

struct AsymReport {
  std::uint64_t x = 0;
  ExactC c;
  Variant variant = Variant::Squarefree;
  std::uint64_t exact_count = 0;
  double main_term = 0.0;
  double ratio = 0.0;
  /// |exact - main| log^2 x / x
  double scaled_error = 0.0;
  bool in_theorem_range = false;
};

AsymReport asym_report(const CountReport& count, double main_term);

}  // namespace pslab
