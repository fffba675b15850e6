#include "pslab/asymptotics.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace pslab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Explicit prime counting bounds, valid for t >= 599:
//   t/log t (1 + 1/log t) <= pi(t) <= t/log t (1 + 1.2762/log t).
constexpr std::uint64_t kChebyshevFrom = 599;
constexpr double kUpperSecond = 1.2762;

// Relative slack absorbing rounding in the Riemann sums below.
constexpr double kSumSlack = 1e-10;

// Enclosure of (2/P) * int_0^inf e^{-u} / (L + u)^k du with L = log P.
// The integrand is decreasing, so left and right Riemann sums bracket it.
Interval log_power_integral(double P, int k) {
  const double L = std::log(P);
  const double h = 1.0 / 1024.0;
  const int steps = 40 * 1024;
  double left = 0.0;
  double right = 0.0;
  auto g = [&](double u) { return std::exp(-u) / std::pow(L + u, k); };
  double prev = g(0.0);
  for (int i = 1; i <= steps; ++i) {
    double cur = g(i * h);
    left += prev;
    right += cur;
    prev = cur;
  }
  const double U = steps * h;
  const double beyond = std::exp(-U) / std::pow(L, k);
  const double scale = 2.0 / P;
  return {round_down(right * h * scale * (1.0 - kSumSlack)),
          round_up((left * h + beyond) * scale * (1.0 + kSumSlack))};
}

Interval enclosure_at(const Interval& partial, std::uint64_t P, std::uint64_t prime_count) {
  const Interval tail_sum = prime_square_tail(P, prime_count);
  const double Pd = static_cast<double>(P);
  // sum_{p > P} p^-4 < 1 / (3 P^3); 0 < -log(1 - 2/p^2) < 2/p^2 + 8/p^4.
  const double quartic = round_up(8.0 / (3.0 * Pd * Pd * Pd));
  const double log_hi = round_up(round_up(2.0 * tail_sum.hi) + quartic);
  const double log_lo = round_down(2.0 * tail_sum.lo);
  const Interval tail{round_down(std::exp(-log_hi) * (1.0 - 1e-15)),
                      std::min(1.0, round_up(std::exp(-log_lo) * (1.0 + 1e-15)))};
  return mul(partial, tail);
}

}  // namespace

double round_down(double v) { return std::nextafter(v, -kInf); }
double round_up(double v) { return std::nextafter(v, kInf); }

Interval mul(const Interval& x, const Interval& y) {
  return {round_down(x.lo * y.lo), round_up(x.hi * y.hi)};
}

Interval intersect(const Interval& x, const Interval& y) {
  Interval r{std::max(x.lo, y.lo), std::min(x.hi, y.hi)};
  if (r.lo > r.hi) throw std::logic_error("intersect: disjoint enclosures");
  return r;
}

Interval prime_square_tail(std::uint64_t prime_limit, std::uint64_t prime_count) {
  if (prime_limit < 1) throw std::invalid_argument("prime_square_tail: prime_limit must be positive");
  const double P = static_cast<double>(prime_limit);
  Interval crude{0.0, round_up(1.0 / P)};
  if (prime_limit < kChebyshevFrom) return crude;

  // sum_{p > P} p^-2 = -pi(P)/P^2 + int_P^inf 2 pi(t) / t^3 dt
  const Interval i1 = log_power_integral(P, 1);
  const Interval i2 = log_power_integral(P, 2);
  const double boundary_hi = round_up(round_up(static_cast<double>(prime_count) / P) / P);
  const double boundary_lo = round_down(round_down(static_cast<double>(prime_count) / P) / P);
  const double lo = round_down(round_down(i1.lo + i2.lo) - boundary_hi);
  const double hi = round_up(round_up(i1.hi + round_up(kUpperSecond * i2.hi)) - boundary_lo);
  return intersect(crude, Interval{std::max(0.0, lo), hi});
}

SigmaInterval sigma_constant(std::uint64_t prime_limit, const SieveOptions& options) {
  if (prime_limit < 3) {
    throw std::invalid_argument("sigma_constant: prime_limit must be >= 3 so the factor 1 - 2/4 is included");
  }
  const auto primes = sieve_range(1, prime_limit, options).primes();

  Interval partial{1.0, 1.0};
  Interval best{0.0, 1.0};
  std::uint64_t checkpoint = 1000;
  std::uint64_t count = 0;
  for (std::uint64_t p : primes) {
    while (checkpoint < prime_limit && p > checkpoint) {
      best = intersect(best, enclosure_at(partial, checkpoint, count));
      checkpoint *= 10;
    }
    const double pd = static_cast<double>(p);
    const double sq = pd * pd;  // exact below 2^53
    const Interval factor{round_down(1.0 - round_up(2.0 / sq)), round_up(1.0 - round_down(2.0 / sq))};
    partial = mul(partial, factor);
    ++count;
  }
  while (checkpoint < prime_limit) {
    best = intersect(best, enclosure_at(partial, checkpoint, count));
    checkpoint *= 10;
  }
  best = intersect(best, enclosure_at(partial, prime_limit, count));
  return SigmaInterval{best.lo, best.hi, prime_limit, partial};
}

double main_term_sqfree(const ExactC& c, double x) {
  if (x < 3) throw std::invalid_argument("main_term_sqfree: need x >= 3");
  return 6.0 / (static_cast<double>(c.as_long_double()) * std::numbers::pi * std::numbers::pi) * x /
         std::log(x);
}

double main_term_all(const ExactC& c, double x) {
  if (x < 3) throw std::invalid_argument("main_term_all: need x >= 3");
  return x / (static_cast<double>(c.as_long_double()) * std::log(x));
}

Interval main_term_consec(const ExactC& c, double x, const SigmaInterval& sigma) {
  if (x < 3) throw std::invalid_argument("main_term_consec: need x >= 3");
  const double scale = main_term_all(c, x);
  return {round_down(sigma.lo * scale), round_up(sigma.hi * scale)};
}

double main_term_for(Variant variant, const ExactC& c, double x, const SigmaInterval* sigma) {
  switch (variant) {
    case Variant::All:
      return main_term_all(c, x);
    case Variant::Squarefree:
      return main_term_sqfree(c, x);
    case Variant::Consecutive: {
      if (sigma == nullptr) throw std::invalid_argument("main_term_for: consecutive variant needs sigma");
      return main_term_consec(c, x, *sigma).mid();
    }
  }
  return 0.0;
}

AsymReport asym_report(const CountReport& count, double main_term) {
  if (main_term <= 0.0) throw std::invalid_argument("asym_report: main term must be positive");
  const double x = static_cast<double>(count.x);
  const double logx = std::log(x);
  const double exact = static_cast<double>(count.count);
  return AsymReport{.x = count.x,
                    .c = count.c,
                    .variant = count.variant,
                    .exact_count = count.count,
                    .main_term = main_term,
                    .ratio = exact / main_term,
                    .scaled_error = std::abs(exact - main_term) * logx * logx / x,
                    .in_theorem_range = count.c.in_theorem_range()};
}

}  // namespace pslab
