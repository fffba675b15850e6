#include "pslab/sieve.hpp"

#include "pslab/errors.hpp"
#include "pslab/parallel.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace pslab {

namespace {

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

void validate(const SieveOptions& options) {
  if (options.segment_size == 0 || options.segment_size % 64 != 0)
    throw std::invalid_argument("segment size must be a positive multiple of 64");
}

void put_u64(std::ostream& out, std::uint64_t v) {
  char buf[8];
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(buf, 8);
}

std::uint64_t get_u64(std::istream& in) {
  unsigned char buf[8];
  if (!in.read(reinterpret_cast<char*>(buf), 8)) throw std::runtime_error("sieve dump: truncated header");
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | buf[i];
  return v;
}

}  // namespace

SieveTable::SieveTable(std::uint64_t lo, std::uint64_t hi, std::vector<std::uint64_t> prime_bits,
                       std::vector<std::int8_t> mobius)
    : lo_(lo), hi_(hi), prime_bits_(std::move(prime_bits)), mobius_(std::move(mobius)) {
  if (lo < 1 || hi < lo) throw std::invalid_argument("SieveTable: need 1 <= lo <= hi");
  if (mobius_.size() != hi - lo + 1 || prime_bits_.size() != (mobius_.size() + 63) / 64)
    throw std::invalid_argument("SieveTable: array sizes do not match [lo, hi]");
}

std::vector<std::uint64_t> SieveTable::primes() const {
  std::vector<std::uint64_t> out;
  for (std::size_t w = 0; w < prime_bits_.size(); ++w) {
    for (std::uint64_t bits = prime_bits_[w]; bits != 0; bits &= bits - 1) {
      out.push_back(lo_ + 64 * w + static_cast<unsigned>(std::countr_zero(bits)));
    }
  }
  return out;
}

SieveTable SieveTable::concat(std::span<const SieveTable> parts) {
  if (parts.empty()) throw std::invalid_argument("SieveTable::concat: no parts");
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0 && parts[i].lo() != parts[i - 1].hi() + 1)
      throw std::invalid_argument("SieveTable::concat: parts are not adjacent");
    total += parts[i].size();
  }
  std::vector<std::uint64_t> bits((total + 63) / 64, 0);
  std::vector<std::int8_t> mu;
  mu.reserve(total);
  std::uint64_t offset = 0;
  for (const auto& part : parts) {
    if (offset % 64 == 0) {
      std::copy(part.prime_bits_.begin(), part.prime_bits_.end(), bits.begin() + offset / 64);
    } else {
      for (std::uint64_t i = 0; i < part.size(); ++i) {
        if ((part.prime_bits_[i >> 6] >> (i & 63)) & 1u) {
          std::uint64_t j = offset + i;
          bits[j >> 6] |= std::uint64_t{1} << (j & 63);
        }
      }
    }
    mu.insert(mu.end(), part.mobius_.begin(), part.mobius_.end());
    offset += part.size();
  }
  return SieveTable(parts.front().lo(), parts.back().hi(), std::move(bits), std::move(mu));
}

void SieveTable::write(std::ostream& out) const {
  put_u64(out, lo_);
  put_u64(out, hi_);
  const std::uint64_t len = size();
  std::vector<char> bytes((len + 7) / 8);
  for (std::uint64_t j = 0; j < bytes.size(); ++j) {
    bytes[j] = static_cast<char>((prime_bits_[j / 8] >> (8 * (j % 8))) & 0xff);
  }
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.write(reinterpret_cast<const char*>(mobius_.data()), static_cast<std::streamsize>(len));
}

SieveTable SieveTable::read(std::istream& in) {
  std::uint64_t lo = get_u64(in);
  std::uint64_t hi = get_u64(in);
  if (lo < 1 || hi < lo) throw std::runtime_error("sieve dump: bad header");
  const std::uint64_t len = hi - lo + 1;
  std::vector<unsigned char> bytes((len + 7) / 8);
  std::vector<std::int8_t> mu(len);
  if (!in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(bytes.size())) ||
      !in.read(reinterpret_cast<char*>(mu.data()), static_cast<std::streamsize>(len)))
    throw std::runtime_error("sieve dump: truncated body");
  std::vector<std::uint64_t> bits((len + 63) / 64, 0);
  for (std::uint64_t j = 0; j < bytes.size(); ++j) {
    bits[j / 8] |= std::uint64_t{bytes[j]} << (8 * (j % 8));
  }
  return SieveTable(lo, hi, std::move(bits), std::move(mu));
}

std::vector<std::uint32_t> base_primes(std::uint64_t limit) {
  std::vector<std::uint32_t> out;
  if (limit < 2) return out;
  std::vector<bool> composite(limit + 1, false);
  for (std::uint64_t p = 2; p <= limit; ++p) {
    if (composite[p]) continue;
    out.push_back(static_cast<std::uint32_t>(p));
    for (std::uint64_t m = p * p; m <= limit; m += p) composite[m] = true;
  }
  return out;
}

SieveTable sieve_segment(std::uint64_t lo, std::uint64_t hi, const SieveOptions& options) {
  if (lo < 1 || hi < lo) throw std::invalid_argument("sieve_segment: need 1 <= lo <= hi");
  auto base = base_primes(isqrt(hi));
  return sieve_segment(lo, hi, base, options);
}

SieveTable sieve_segment(std::uint64_t lo, std::uint64_t hi, std::span<const std::uint32_t> base,
                         const SieveOptions& options) {
  validate(options);
  if (lo < 1 || hi < lo) throw std::invalid_argument("sieve_segment: need 1 <= lo <= hi");
  const std::uint64_t len = hi - lo + 1;
  if (len > options.segment_size) {
    throw ResourceError("segment [" + std::to_string(lo) + ", " + std::to_string(hi) +
                        "] exceeds the configured segment size " + std::to_string(options.segment_size));
  }
  const std::uint64_t root = isqrt(hi);
  // Bertrand: a covering table holds a prime above root / 2.
  if (root >= 2 && (base.empty() || 2 * std::uint64_t{base.back()} <= root))
    throw std::invalid_argument("sieve_segment: base primes do not cover sqrt(hi)");

  std::vector<std::int8_t> mu(len, 1);
  std::vector<std::uint64_t> prod(len, 1);
  std::vector<std::uint8_t> omega(len, 0);
  for (std::uint32_t p32 : base) {
    const std::uint64_t p = p32;
    if (p > root) break;
    for (std::uint64_t m = (lo + p - 1) / p * p; m <= hi; m += p) {
      const std::uint64_t i = m - lo;
      mu[i] = static_cast<std::int8_t>(-mu[i]);
      prod[i] *= p;
      ++omega[i];
    }
    const std::uint64_t pp = p * p;
    for (std::uint64_t m = (lo + pp - 1) / pp * pp; m <= hi; m += pp) mu[m - lo] = 0;
  }

  std::vector<std::uint64_t> bits((len + 63) / 64, 0);
  for (std::uint64_t i = 0; i < len; ++i) {
    const std::uint64_t n = lo + i;
    // A leftover cofactor is a single prime above sqrt(hi).
    if (mu[i] != 0 && prod[i] != n) mu[i] = static_cast<std::int8_t>(-mu[i]);
    const bool prime = n >= 2 && (omega[i] == 0 || (omega[i] == 1 && prod[i] == n));
    if (prime) bits[i >> 6] |= std::uint64_t{1} << (i & 63);
  }
  return SieveTable(lo, hi, std::move(bits), std::move(mu));
}

SieveTable sieve_range(std::uint64_t lo, std::uint64_t hi, const SieveOptions& options) {
  validate(options);
  if (lo < 1 || hi < lo) throw std::invalid_argument("sieve_range: need 1 <= lo <= hi");
  const std::uint64_t len = hi - lo + 1;
  const std::uint64_t table_bytes = len + len / 8;
  const unsigned workers = resolve_workers(options.workers);
  const std::uint64_t scratch = std::min(len, options.segment_size) * 10 * workers;
  if (table_bytes + scratch > options.memory_budget) {
    throw ResourceError("sieve of [" + std::to_string(lo) + ", " + std::to_string(hi) + "] needs about " +
                        std::to_string(table_bytes + scratch) + " bytes, over the budget of " +
                        std::to_string(options.memory_budget));
  }
  const auto base = base_primes(isqrt(hi));
  const std::uint64_t count = (len + options.segment_size - 1) / options.segment_size;
  std::vector<SieveTable> parts(count);
  parallel_for(count, workers, [&](std::size_t k) {
    const std::uint64_t seg_lo = lo + k * options.segment_size;
    const std::uint64_t seg_hi = std::min(hi, seg_lo + options.segment_size - 1);
    parts[k] = sieve_segment(seg_lo, seg_hi, base, options);
  });
  if (parts.size() == 1) return std::move(parts.front());
  return SieveTable::concat(parts);
}

int squarefree_indicator(std::uint64_t n, const SieveTable& table) {
  if (!table.contains(n)) throw std::out_of_range("squarefree_indicator: n outside the sieve table");
  return table.mu_squared(n);
}

int squarefree_by_divisor_sum(std::uint64_t n, const SieveTable& table) {
  if (!table.contains(n)) throw std::out_of_range("squarefree_by_divisor_sum: n outside the sieve table");
  int sum = 0;
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % (d * d) != 0) continue;
    if (!table.contains(d)) throw std::out_of_range("squarefree_by_divisor_sum: table does not cover d");
    sum += table.mobius(d);
  }
  return sum;
}

double lambda(std::uint64_t n) {
  if (n < 2) return 0.0;
  for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p != 0) continue;
    while (n % p == 0) n /= p;
    return n == 1 ? std::log(static_cast<double>(p)) : 0.0;
  }
  return std::log(static_cast<double>(n));
}

std::vector<double> von_mangoldt_range(std::uint64_t lo, std::uint64_t hi, const SieveOptions& options) {
  SieveTable table = sieve_range(lo, hi, options);
  std::vector<double> out(hi - lo + 1, 0.0);
  for (std::uint64_t p : table.primes()) out[p - lo] = std::log(static_cast<double>(p));
  for (std::uint32_t p : base_primes(isqrt(hi))) {
    const double logp = std::log(static_cast<double>(p));
    for (std::uint64_t q = std::uint64_t{p} * p; q <= hi; q *= p) {
      if (q >= lo) out[q - lo] = logp;
      if (q > hi / p) break;
    }
  }
  return out;
}

std::uint64_t tau_k(std::uint64_t n, unsigned k) {
  if (n == 0 || k == 0) throw std::invalid_argument("tau_k: need n >= 1 and k >= 1");
  auto binom = [](std::uint64_t top, std::uint64_t r) {
    unsigned __int128 c = 1;
    for (std::uint64_t i = 1; i <= r; ++i) c = c * (top - r + i) / i;
    if (c > ~std::uint64_t{0}) throw std::overflow_error("tau_k: result exceeds 64 bits");
    return static_cast<std::uint64_t>(c);
  };
  std::uint64_t result = 1;
  auto account = [&](std::uint64_t e) {
    const std::uint64_t top = e + k - 1;
    const std::uint64_t c = binom(top, std::min<std::uint64_t>(e, k - 1));
    if (result > ~std::uint64_t{0} / c) throw std::overflow_error("tau_k: result exceeds 64 bits");
    result *= c;
  };
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    std::uint64_t e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e > 0) account(e);
  }
  if (n > 1) account(1);
  return result;
}

}  // namespace pslab
