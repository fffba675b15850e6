#include "pslab/counting.hpp"

#include "pslab/parallel.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace pslab {

namespace {

constexpr std::uint64_t kBlock = std::uint64_t{1} << 16;

double z_of(std::uint64_t x) {
  if (x < 2) return 0.0;
  double l = std::log(static_cast<double>(x));
  return l * l;
}

bool accept(Variant variant, std::uint64_t n, const SieveTable& table) {
  switch (variant) {
    case Variant::All:
      return true;
    case Variant::Squarefree:
      return table.mu_squared(n);
    case Variant::Consecutive:
      return table.mu_squared(n) && table.mu_squared(n + 1);
  }
  return false;
}

void require_cover(const ExactC& c, std::uint64_t x, const SieveTable& table) {
  if (x == 0) return;
  const std::uint64_t need = sieve_limit_for(c, x);
  if (table.lo() != 1 || table.hi() < need)
    throw std::invalid_argument("sieve table must cover [1, " + std::to_string(need) + "]");
}

template <class Fn>
std::uint64_t blocked_sum(std::uint64_t count, unsigned workers, Fn&& fn) {
  const std::uint64_t blocks = (count + kBlock - 1) / kBlock;
  std::vector<std::uint64_t> partial(blocks, 0);
  parallel_for(blocks, workers, [&](std::size_t k) {
    const std::uint64_t begin = k * kBlock;
    partial[k] = fn(begin, std::min(count, begin + kBlock));
  });
  return std::accumulate(partial.begin(), partial.end(), std::uint64_t{0});
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

std::string to_string(Variant v) {
  switch (v) {
    case Variant::All:
      return "all";
    case Variant::Squarefree:
      return "sqfree";
    case Variant::Consecutive:
      return "consec";
  }
  return "?";
}

std::string to_string(Method m) { return m == Method::Direct ? "direct" : "interval"; }

Variant parse_variant(std::string_view text) {
  if (text == "all") return Variant::All;
  if (text == "sqfree") return Variant::Squarefree;
  if (text == "consec") return Variant::Consecutive;
  throw std::invalid_argument("unknown variant '" + std::string(text) + "' (all|sqfree|consec)");
}

Method parse_method(std::string_view text) {
  if (text == "direct") return Method::Direct;
  if (text == "interval") return Method::Interval;
  throw std::invalid_argument("unknown method '" + std::string(text) + "' (direct|interval)");
}

std::uint64_t sieve_limit_for(const ExactC& c, std::uint64_t x) {
  if (x == 0) return 2;
  return std::max(floor_pow(x, c) + 1, x + 1);
}

SieveTable sieve_for_count(const ExactC& c, std::uint64_t x, const SieveOptions& options) {
  return sieve_range(1, sieve_limit_for(c, x), options);
}

CountReport count_direct(const ExactC& c, std::uint64_t x, Variant variant, const SieveTable& table,
                         unsigned workers) {
  const auto t0 = std::chrono::steady_clock::now();
  require_cover(c, x, table);
  CountReport report{.c = c, .x = x, .variant = variant, .method = Method::Direct, .z = z_of(x), .s1 = {}, .s2 = {}};
  report.count = blocked_sum(x, workers, [&](std::uint64_t begin, std::uint64_t end) {
    std::uint64_t hits = 0;
    for (std::uint64_t n = begin + 1; n <= end; ++n) {
      if (table.is_prime(floor_pow(n, c)) && accept(variant, n, table)) ++hits;
    }
    return hits;
  });
  report.wall_time = seconds_since(t0);
  return report;
}

CountReport count_direct(const ExactC& c, std::uint64_t x, Variant variant, const SieveOptions& options) {
  const auto t0 = std::chrono::steady_clock::now();
  auto report = count_direct(c, x, variant, sieve_for_count(c, x, options), options.workers);
  report.wall_time = seconds_since(t0);
  return report;
}

CountReport count_interval(const ExactC& c, std::uint64_t x, Variant variant, const SieveTable& table,
                           unsigned workers) {
  const auto t0 = std::chrono::steady_clock::now();
  require_cover(c, x, table);
  CountReport report{.c = c, .x = x, .variant = variant, .method = Method::Interval, .z = z_of(x), .s1 = {}, .s2 = {}};
  if (x == 0) return report;
  const std::uint64_t top = floor_pow(x, c);
  std::vector<std::uint64_t> primes = table.primes();
  primes.erase(std::upper_bound(primes.begin(), primes.end(), top), primes.end());
  report.count = blocked_sum(primes.size(), workers, [&](std::uint64_t begin, std::uint64_t end) {
    std::uint64_t hits = 0;
    for (std::uint64_t i = begin; i < end; ++i) {
      const std::uint64_t p = primes[i];
      const std::uint64_t first = ceil_root(p, c);
      const std::uint64_t last = std::min(ceil_root(p + 1, c) - 1, x);
      for (std::uint64_t n = first; n <= last; ++n) {
        if (accept(variant, n, table)) ++hits;
      }
    }
    return hits;
  });
  report.wall_time = seconds_since(t0);
  return report;
}

CountReport count_interval(const ExactC& c, std::uint64_t x, Variant variant, const SieveOptions& options) {
  const auto t0 = std::chrono::steady_clock::now();
  auto report = count_interval(c, x, variant, sieve_for_count(c, x, options), options.workers);
  report.wall_time = seconds_since(t0);
  return report;
}

ZSplit decompose_by_z(const ExactC& c, std::uint64_t x, const SieveTable& table, unsigned workers) {
  if (x < 16) throw std::invalid_argument("decompose_by_z: need x >= 16");
  require_cover(c, x, table);
  ZSplit split{.z = z_of(x)};

  // hit[n] = [[ [n^c] is prime ]]
  std::vector<std::uint8_t> hit(x + 1, 0);
  split.total = blocked_sum(x, workers, [&](std::uint64_t begin, std::uint64_t end) {
    std::uint64_t sq = 0;
    for (std::uint64_t n = begin + 1; n <= end; ++n) {
      hit[n] = table.is_prime(floor_pow(n, c));
      if (hit[n] && table.mu_squared(n)) ++sq;
    }
    return sq;
  });

  std::uint64_t root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(x)));
  while (root * root > x) --root;
  while ((root + 1) * (root + 1) <= x) ++root;
  for (std::uint64_t d = 1; d <= root; ++d) {
    const int mu = table.mobius(d);
    if (mu == 0) continue;
    const std::uint64_t step = d * d;
    std::int64_t multiples = 0;
    for (std::uint64_t n = step; n <= x; n += step) multiples += hit[n];
    (static_cast<double>(d) <= split.z ? split.s1 : split.s2) += mu * multiples;
  }
  if (split.s1 + split.s2 != static_cast<std::int64_t>(split.total))
    throw std::logic_error("decompose_by_z: s1 + s2 differs from S_c(x)");
  return split;
}

ZSplit decompose_by_z(const ExactC& c, std::uint64_t x, const SieveOptions& options) {
  return decompose_by_z(c, x, sieve_for_count(c, x, options), options.workers);
}

}  // namespace pslab
