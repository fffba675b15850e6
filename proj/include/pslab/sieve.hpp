#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace pslab {

struct SieveOptions {
  /// Entries per segment; must be a positive multiple of 64.
  std::uint64_t segment_size = std::uint64_t{1} << 22;
  /// Upper bound on the bytes held by an assembled table.
  std::uint64_t memory_budget = std::uint64_t{2} << 30;
  /// 0 = available parallelism.
  unsigned workers = 0;
};

/// Primality bits and Moebius values over the closed range [lo, hi].
class SieveTable {
public:
  SieveTable() = default;
  SieveTable(std::uint64_t lo, std::uint64_t hi, std::vector<std::uint64_t> prime_bits,
             std::vector<std::int8_t> mobius);

  std::uint64_t lo() const { return lo_; }
  std::uint64_t hi() const { return hi_; }
  std::uint64_t size() const { return mobius_.size(); }
  bool contains(std::uint64_t n) const { return n >= lo_ && n <= hi_ && !mobius_.empty(); }

  bool is_prime(std::uint64_t n) const {
    std::uint64_t i = n - lo_;
    return (prime_bits_[i >> 6] >> (i & 63)) & 1u;
  }
  int mobius(std::uint64_t n) const { return mobius_[n - lo_]; }
  /// mu^2(n), unchecked.
  int mu_squared(std::uint64_t n) const { return mobius_[n - lo_] != 0; }

  std::span<const std::uint64_t> prime_words() const { return prime_bits_; }
  std::span<const std::int8_t> mobius_values() const { return mobius_; }

  /// All primes in [lo, hi], ascending.
  std::vector<std::uint64_t> primes() const;

  /// Joins adjacent tables (each starting at the previous hi + 1).
  static SieveTable concat(std::span<const SieveTable> parts);

  /// Little-endian dump: u64 lo, u64 hi, prime bitmap (ceil(len/8) bytes,
  /// bit j of byte j/8 is n = lo + j, LSB first), then len signed mu bytes.
  void write(std::ostream& out) const;
  static SieveTable read(std::istream& in);

  friend bool operator==(const SieveTable&, const SieveTable&) = default;

private:
  std::uint64_t lo_ = 1;
  std::uint64_t hi_ = 0;
  std::vector<std::uint64_t> prime_bits_;
  std::vector<std::int8_t> mobius_;
};

/// Primes up to `limit` by a plain sieve.
std::vector<std::uint32_t> base_primes(std::uint64_t limit);

/// Sieves one segment. hi - lo + 1 must not exceed options.segment_size.
SieveTable sieve_segment(std::uint64_t lo, std::uint64_t hi, const SieveOptions& options = {});

/// Same, reusing a base-prime table that covers sqrt(hi).
SieveTable sieve_segment(std::uint64_t lo, std::uint64_t hi, std::span<const std::uint32_t> base,
                         const SieveOptions& options = {});

/// Sieves [lo, hi] as independent segments on options.workers threads.
SieveTable sieve_range(std::uint64_t lo, std::uint64_t hi, const SieveOptions& options = {});

/// mu^2(n); throws std::out_of_range outside the table.
int squarefree_indicator(std::uint64_t n, const SieveTable& table);

/// sum_{d^2 | n} mu(d) by divisor enumeration, mu read from the table.
int squarefree_by_divisor_sum(std::uint64_t n, const SieveTable& table);

/// von Mangoldt function by trial division.
double lambda(std::uint64_t n);

/// Lambda(n) for n in [lo, hi], index n - lo.
std::vector<double> von_mangoldt_range(std::uint64_t lo, std::uint64_t hi,
                                       const SieveOptions& options = {});

/// Number of ordered k-tuples (m_1, ..., m_k) with product n.
std::uint64_t tau_k(std::uint64_t n, unsigned k);

}  // namespace pslab
