#pragma once

#include "pslab/exactmath.hpp"
#include "pslab/sieve.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace pslab {

/// Which indicator multiplies [[ [n^c] prime ]].
enum class Variant {
  All,          ///< 1: pi_c(x)
  Squarefree,   ///< mu^2(n): S_c(x)
  Consecutive,  ///< mu^2(n) mu^2(n+1): the consecutive square-free count
};

enum class Method { Direct, Interval };

std::string to_string(Variant v);
std::string to_string(Method m);
Variant parse_variant(std::string_view text);
Method parse_method(std::string_view text);

struct CountReport {
  ExactC c;
  std::uint64_t x = 0;
  Variant variant = Variant::All;
  Method method = Method::Direct;
  std::uint64_t count = 0;
  /// log^2 x (0 for x < 2).
  double z = 0.0;
  std::optional<std::int64_t> s1;
  std::optional<std::int64_t> s2;
  double wall_time = 0.0;
};

/// Largest integer the counting passes look up: max([x^c] + 1, x + 1).
std::uint64_t sieve_limit_for(const ExactC& c, std::uint64_t x);

/// Sieve table over [1, sieve_limit_for(c, x)].
SieveTable sieve_for_count(const ExactC& c, std::uint64_t x, const SieveOptions& options = {});

/// Loops over n <= x and tests [n^c] for primality.
CountReport count_direct(const ExactC& c, std::uint64_t x, Variant variant, const SieveTable& table,
                         unsigned workers = 0);
CountReport count_direct(const ExactC& c, std::uint64_t x, Variant variant, const SieveOptions& options = {});

/// Loops over primes p <= [x^c] and counts the integers of
/// [p^gamma, (p+1)^gamma), the last interval clipped to n <= x.
CountReport count_interval(const ExactC& c, std::uint64_t x, Variant variant, const SieveTable& table,
                           unsigned workers = 0);
CountReport count_interval(const ExactC& c, std::uint64_t x, Variant variant,
                           const SieveOptions& options = {});

/// Split of S_c(x) by the size of d in mu^2(n) = sum_{d^2 | n} mu(d).
struct ZSplit {
  std::int64_t s1 = 0;  ///< d <= z
  std::int64_t s2 = 0;  ///< z < d <= sqrt(x)
  double z = 0.0;       ///< log^2 x
  std::uint64_t total = 0;  ///< S_c(x), counted directly
};

/// Requires x >= 16. Throws std::logic_error if s1 + s2 != S_c(x).
ZSplit decompose_by_z(const ExactC& c, std::uint64_t x, const SieveTable& table, unsigned workers = 0);
ZSplit decompose_by_z(const ExactC& c, std::uint64_t x, const SieveOptions& options = {});

}  // namespace pslab
