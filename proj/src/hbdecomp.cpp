#include "pslab/hbdecomp.hpp"

#include "pslab/parallel.hpp"
#include "pslab/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pslab {

namespace {

std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

int mobius_of(std::uint64_t n) {
  int mu = 1;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    n /= p;
    if (n % p == 0) return 0;
    mu = -mu;
  }
  return n > 1 ? -mu : mu;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> small, large;
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    small.push_back(d);
    if (d * d != n) large.push_back(n / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

// Functions on the divisor lattice of n, stored by position in `divs`.
class DivisorAlgebra {
public:
  explicit DivisorAlgebra(std::uint64_t n) : divs_(divisors(n)) {}

  std::size_t size() const { return divs_.size(); }
  std::uint64_t at(std::size_t i) const { return divs_[i]; }
  std::size_t index(std::uint64_t d) const {
    return static_cast<std::size_t>(std::lower_bound(divs_.begin(), divs_.end(), d) - divs_.begin());
  }

  // (f * g)(m) = sum_{e | m} f(e) g(m / e), for every divisor m.
  std::vector<double> convolve(const std::vector<double>& f, const std::vector<double>& g) const {
    std::vector<double> out(divs_.size(), 0.0);
    for (std::size_t i = 0; i < divs_.size(); ++i) {
      if (f[i] == 0.0) continue;
      for (std::size_t j = 0; j < divs_.size(); ++j) {
        if (g[j] == 0.0) continue;
        const std::uint64_t prod = divs_[i] * divs_[j];
        if (divs_.back() % prod != 0) continue;
        out[index(prod)] += f[i] * g[j];
      }
    }
    return out;
  }

private:
  std::vector<std::uint64_t> divs_;
};

double binomial(unsigned n, unsigned r) {
  double c = 1.0;
  for (unsigned i = 1; i <= r; ++i) c = c * (n - r + i) / i;
  return c;
}

}  // namespace

std::uint64_t minimal_z_cut(std::uint64_t n_max, unsigned k) {
  if (k == 0) throw std::invalid_argument("minimal_z_cut: k must be >= 1");
  std::uint64_t z = 1;
  auto reaches = [&](std::uint64_t zz) {
    unsigned __int128 v = 1;
    for (unsigned i = 0; i < k; ++i) {
      v *= zz;
      if (v >= n_max) return true;
    }
    return v >= n_max;
  };
  while (!reaches(z)) ++z;
  return z;
}

double hb_lambda(std::uint64_t n, const HBParams& params) {
  if (params.k < 1 || params.k > 5) throw std::invalid_argument("hb_lambda: k must lie in [1, 5]");
  if (n < 1) throw std::invalid_argument("hb_lambda: n must be >= 1");
  if (params.z_cut < 1 || minimal_z_cut(n, params.k) > params.z_cut)
    throw std::invalid_argument("hb_lambda: n exceeds z_cut^k, identity hypothesis violated");

  const DivisorAlgebra alg(n);
  const std::size_t sz = alg.size();
  std::vector<double> mu_trunc(sz), ones(sz, 1.0), logs(sz);
  for (std::size_t i = 0; i < sz; ++i) {
    const std::uint64_t d = alg.at(i);
    mu_trunc[i] = d <= params.z_cut ? mobius_of(d) : 0.0;
    logs[i] = std::log(static_cast<double>(d));
  }

  double total = 0.0;
  std::vector<double> mus = mu_trunc;  // mu_z^{*j}
  std::vector<double> logconv = logs;  // log * 1^{*(j-1)}
  for (unsigned j = 1; j <= params.k; ++j) {
    if (j > 1) {
      mus = alg.convolve(mus, mu_trunc);
      logconv = alg.convolve(logconv, ones);
    }
    const double term = alg.convolve(mus, logconv).back();
    total += ((j % 2 == 1) ? 1.0 : -1.0) * binomial(params.k, j) * term;
  }
  return total;
}

HBCheck hb_check(unsigned k, std::uint64_t n_max, double tolerance, unsigned workers) {
  if (n_max < 1) throw std::invalid_argument("hb_check: n_max must be >= 1");
  HBCheck result{.k = k, .n_max = n_max, .z_cut = minimal_z_cut(n_max, k)};
  const auto lam = von_mangoldt_range(1, n_max);
  const HBParams params{k, result.z_cut};
  std::vector<double> diff(n_max);
  parallel_for(n_max, workers, [&](std::size_t i) { diff[i] = hb_lambda(i + 1, params) - lam[i]; });
  for (std::size_t i = 0; i < n_max; ++i) {
    const double abs_err = std::abs(diff[i]);
    result.max_abs_error = std::max(result.max_abs_error, abs_err);
    if (lam[i] > 0.0) result.max_rel_error = std::max(result.max_rel_error, abs_err / lam[i]);
    if (abs_err > tolerance * std::max(1.0, lam[i])) ++result.mismatches;
  }
  return result;
}

BlockCoefficient parse_block_coefficient(std::string_view text) {
  if (text == "ones") return BlockCoefficient::Ones;
  if (text == "mobius") return BlockCoefficient::Mobius;
  if (text == "tau5log") return BlockCoefficient::Tau5Log;
  if (text == "random") return BlockCoefficient::RandomTau5Log;
  throw std::invalid_argument("unknown block coefficient '" + std::string(text) + "' (ones|mobius|tau5log|random)");
}

void TypeBlock::validate() const {
  if (M1 < M || L1 < L) throw std::invalid_argument("TypeBlock: need M <= M1 and L <= L1");
  if (M1 > 2 * M || L1 > 2 * L) throw std::invalid_argument("TypeBlock: need M1 <= 2M and L1 <= 2L");
  if (P < 3 || P1 < P) throw std::invalid_argument("TypeBlock: need 3 <= P <= P1");
}

Complex block_coefficient(BlockCoefficient source, std::uint64_t m, std::uint64_t P, std::uint64_t seed) {
  switch (source) {
    case BlockCoefficient::Ones:
      return 1.0;
    case BlockCoefficient::Mobius:
      return static_cast<double>(mobius_of(m));
    case BlockCoefficient::Tau5Log:
      return static_cast<double>(tau_k(m, 5)) * std::log(static_cast<double>(P));
    case BlockCoefficient::RandomTau5Log: {
      const double u = static_cast<double>(mix(seed ^ mix(m)) >> 11) * 0x1.0p-53;
      return static_cast<double>(tau_k(m, 5)) * std::log(static_cast<double>(P)) * unit_phase(u);
    }
  }
  return 0.0;
}

namespace {

Complex block_sum(const TypeBlock& block, const BlockFunction& G, bool with_b) {
  block.validate();
  CompensatedComplexSum outer;
  for (std::uint64_t m = block.M + 1; m <= block.M1; ++m) {
    const Complex am = block_coefficient(block.a_source, m, block.P, block.seed);
    if (am == Complex(0.0)) continue;
    // P < m l <= P1
    const std::uint64_t l_lo = std::max(block.L + 1, block.P / m + 1);
    const std::uint64_t l_hi = std::min(block.L1, block.P1 / m);
    CompensatedComplexSum inner;
    for (std::uint64_t l = l_lo; l <= l_hi; ++l) {
      Complex term = G(m * l);
      if (block.kind == BlockKind::TypeILog) term *= std::log(static_cast<double>(l));
      if (with_b) term *= block_coefficient(block.b_source, l, block.P, ~block.seed);
      inner.add(term);
    }
    outer.add(am * inner.value());
  }
  return outer.value();
}

}  // namespace

Complex type_I_sum(const TypeBlock& block, const BlockFunction& G) {
  if (block.kind == BlockKind::TypeII) throw std::invalid_argument("type_I_sum: block is of Type II");
  return block_sum(block, G, false);
}

Complex type_II_sum(const TypeBlock& block, const BlockFunction& G) {
  if (block.kind != BlockKind::TypeII) throw std::invalid_argument("type_II_sum: block is not of Type II");
  return block_sum(block, G, true);
}

WindowCheck check_decomposition_window(double P, double P1, double U, double V, double Z) {
  WindowCheck out{P, P1, U, V, Z, {}, true};
  auto add = [&](std::string name, double lhs, double rhs, bool strict) {
    const bool holds = strict ? lhs < rhs : lhs <= rhs;
    out.conditions.push_back({std::move(name), lhs, rhs, holds});
    out.all_hold = out.all_hold && holds;
  };
  add("2 < P", 2.0, P, true);
  add("P1 <= 2P", P1, 2.0 * P, false);
  add("2 <= U", 2.0, U, false);
  add("U < V", U, V, true);
  add("V <= Z", V, Z, false);
  add("Z <= P", Z, P, false);
  add("U^2 <= Z", U * U, Z, false);
  add("128 U Z^2 <= P1", 128.0 * U * Z * Z, P1, false);
  add("2^18 P1 <= V^3", 262144.0 * P1, V * V * V, false);
  return out;
}

WindowChoice window_from_choices(double x, const ExactC& c, std::uint64_t d, double N, double H1, double eps,
                                 double N1) {
  if (!(x > 1.0) || !(N >= 1.0) || !(H1 >= 1.0) || !(eps > 0.0) || d < 1)
    throw std::invalid_argument("window_from_choices: need x > 1, N >= 1, H1 >= 1, eps > 0, d >= 1");
  if (N1 == 0.0) N1 = 2.0 * N;
  const double gamma = static_cast<double>(c.gamma());
  WindowChoice w{.x = x, .c = c, .d = d, .N = N, .N1 = N1, .H1 = H1, .eps = eps};
  w.H = std::pow(x, eps - 1.0) * N * static_cast<double>(d) * static_cast<double>(d);
  w.h1_within_half_H = H1 <= w.H / 2.0;
  const double U = std::pow(N, 2.0 * gamma) * H1 * std::pow(x, 6.0 * eps - 2.0);
  const double V = std::cbrt(N);
  const double Z = std::floor(std::pow(N, 0.5 - gamma) / std::sqrt(H1) * std::pow(x, 1.0 - 3.0 * eps)) + 0.5;
  w.check = check_decomposition_window(N, N1, U, V, Z);
  return w;
}

}  // namespace pslab
