#include "pslab/expsum.hpp"

#include "pslab/errors.hpp"
#include "pslab/parallel.hpp"
#include "pslab/sieve.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace pslab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::uint64_t splitmix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

int mobius_small(std::uint64_t n) {
  int mu = 1;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    n /= p;
    if (n % p == 0) return 0;
    mu = -mu;
  }
  return n > 1 ? -mu : mu;
}

void check_budget(double summands) {
  if (summands > static_cast<double>(kMaxSummands)) {
    std::ostringstream msg;
    msg << "evaluation would visit " << summands << " summands, over the budget of " << kMaxSummands;
    throw ResourceError(msg.str());
  }
}

// (k/K)^e for k = K+1..2K.
std::vector<double> scaled_powers(std::uint64_t K, double e) {
  std::vector<double> out(K);
  for (std::uint64_t i = 0; i < K; ++i) out[i] = std::pow(static_cast<double>(K + 1 + i) / static_cast<double>(K), e);
  return out;
}

}  // namespace

void CompensatedSum::add(double v) {
  const double t = sum_ + v;
  if (std::abs(sum_) >= std::abs(v)) {
    comp_ += (sum_ - t) + v;
  } else {
    comp_ += (v - t) + sum_;
  }
  sum_ = t;
}

Complex unit_phase(double y) {
  const double frac = y - std::floor(y);
  return {std::cos(kTwoPi * frac), std::sin(kTwoPi * frac)};
}

Complex monomial_sum(double Y, std::uint64_t X, std::uint64_t X0, double gamma_exp, int sign) {
  if (X < 1 || X0 <= X || X0 > 2 * X) throw std::invalid_argument("monomial_sum: need 1 <= X < X0 <= 2X");
  check_budget(static_cast<double>(X0 - X));
  CompensatedComplexSum sum;
  const double Xd = static_cast<double>(X);
  for (std::uint64_t n = X + 1; n <= X0; ++n) {
    sum.add(unit_phase(sign * Y * std::pow(static_cast<double>(n) / Xd, gamma_exp)));
  }
  return sum.value();
}

double triple_predicted(const TripleParams& p) {
  const double hnm = static_cast<double>(p.H) * static_cast<double>(p.N) * static_cast<double>(p.M);
  const double Md = static_cast<double>(p.M);
  return std::pow(hnm, 1.0 + p.eps) * (std::pow(p.F / (hnm * Md), 0.25) + 1.0 / std::sqrt(Md) + 1.0 / p.F);
}

BoundReport triple_sum(const TripleParams& p, unsigned workers) {
  if (p.H < 1 || p.N < 1 || p.M < 1) throw std::invalid_argument("triple_sum: ranges must be >= 1");
  if (!(p.F > 1.0)) throw std::invalid_argument("triple_sum: F must exceed 1");
  if (p.alpha * (p.alpha - Rational(1)) * p.beta * p.gamma == Rational(0))
    throw std::invalid_argument("triple_sum: need alpha (alpha - 1) beta gamma != 0");
  const double summands = static_cast<double>(p.H) * static_cast<double>(p.N) * static_cast<double>(p.M);
  check_budget(summands);

  const auto hp = scaled_powers(p.H, p.beta.to_double());
  const auto np = scaled_powers(p.N, p.gamma.to_double());
  const auto mp = scaled_powers(p.M, p.alpha.to_double());
  std::vector<double> per_h(p.H, 0.0);
  parallel_for(p.H, workers, [&](std::size_t ih) {
    CompensatedSum outer;
    for (std::uint64_t in = 0; in < p.N; ++in) {
      const double scale = p.sign * p.F * hp[ih] * np[in];
      CompensatedComplexSum inner;
      for (double m : mp) inner.add(unit_phase(scale * m));
      outer.add(std::abs(inner.value()));
    }
    per_h[ih] = outer.value();
  });
  CompensatedSum total;
  for (double v : per_h) total.add(v);

  BoundReport report;
  report.measured = total.value();
  report.predicted = triple_predicted(p);
  report.ratio = report.measured / report.predicted;
  report.trivial = summands;
  report.eps = p.eps;
  std::ostringstream echo;
  echo << "F=" << p.F << ";H=" << p.H << ";N=" << p.N << ";M=" << p.M << ";alpha=" << p.alpha.str()
       << ";beta=" << p.beta.str() << ";gamma=" << p.gamma.str() << ";eps=" << p.eps;
  report.params = echo.str();
  return report;
}

CoefficientKind parse_coefficients(std::string_view text) {
  if (text == "ones") return CoefficientKind::Ones;
  if (text == "zeros") return CoefficientKind::Zeros;
  if (text == "mobius") return CoefficientKind::Mobius;
  if (text == "random") return CoefficientKind::RandomPhase;
  throw std::invalid_argument("unknown coefficients '" + std::string(text) + "' (ones|zeros|mobius|random)");
}

std::string to_string(CoefficientKind kind) {
  switch (kind) {
    case CoefficientKind::Ones:
      return "ones";
    case CoefficientKind::Zeros:
      return "zeros";
    case CoefficientKind::Mobius:
      return "mobius";
    case CoefficientKind::RandomPhase:
      return "random";
  }
  return "?";
}

Complex CoefficientGen::operator()(std::uint64_t m) const {
  switch (kind_) {
    case CoefficientKind::Ones:
      return 1.0;
    case CoefficientKind::Zeros:
      return 0.0;
    case CoefficientKind::Mobius:
      return static_cast<double>(mobius_small(m));
    case CoefficientKind::RandomPhase:
      return unit_phase(static_cast<double>(splitmix(seed_ ^ splitmix(m)) >> 11) * 0x1.0p-53);
  }
  return 0.0;
}

Complex CoefficientGen::operator()(std::uint64_t m1, std::uint64_t m2) const {
  switch (kind_) {
    case CoefficientKind::Mobius:
      return static_cast<double>(mobius_small(m1) * mobius_small(m2));
    case CoefficientKind::RandomPhase:
      return (*this)(splitmix(m1) ^ (m2 * 0x2545f4914f6cdd1dULL));
    default:
      return (*this)(m1);
  }
}

std::pair<Rational, Rational> bilinear_exponents(const ExponentPair& pair) {
  const Rational denom = Rational(2) * (Rational(1) + pair.kappa);
  return {pair.kappa / denom, (Rational(1) + pair.kappa - pair.lambda) / denom};
}

double bilinear_predicted(const BilinearParams& p, const ExponentPair& pair) {
  const auto [e1, e2] = bilinear_exponents(pair);
  const double m12 = static_cast<double>(p.M1) * static_cast<double>(p.M2);
  const double Md = static_cast<double>(p.M);
  return Md * m12 * std::log(2.0 * m12) *
         (1.0 / std::sqrt(m12) + std::pow(p.F / m12, e1.to_double()) * std::pow(1.0 / Md, e2.to_double()));
}

BoundReport bilinear_sum(const BilinearParams& p, const ExponentPair& pair, unsigned workers) {
  if (p.M < 1 || p.M1 < 1 || p.M2 < 1) throw std::invalid_argument("bilinear_sum: ranges must be >= 1");
  const double m12 = static_cast<double>(p.M1) * static_cast<double>(p.M2);
  if (p.F < m12) throw std::invalid_argument("bilinear_sum: hypothesis F >= M1 M2 violated");
  if (!(p.alpha < Rational(1)) || p.alpha * p.alpha1 * p.alpha2 == Rational(0))
    throw std::invalid_argument("bilinear_sum: need alpha < 1 and alpha alpha1 alpha2 != 0");
  const double summands = static_cast<double>(p.M) * m12;
  check_budget(summands);

  const CoefficientGen a(p.a_kind, p.seed);
  const CoefficientGen b(p.b_kind, splitmix(p.seed));
  const auto mp = scaled_powers(p.M, p.alpha.to_double());
  const auto m1p = scaled_powers(p.M1, p.alpha1.to_double());
  const auto m2p = scaled_powers(p.M2, p.alpha2.to_double());
  std::vector<Complex> per_m(p.M);
  parallel_for(p.M, workers, [&](std::size_t im) {
    const Complex am = a(p.M + 1 + im);
    if (am == Complex(0.0)) return;
    CompensatedComplexSum inner;
    for (std::uint64_t i1 = 0; i1 < p.M1; ++i1) {
      for (std::uint64_t i2 = 0; i2 < p.M2; ++i2) {
        const Complex bv = b(p.M1 + 1 + i1, p.M2 + 1 + i2);
        if (bv == Complex(0.0)) continue;
        inner.add(bv * unit_phase(p.sign * p.F * mp[im] * m1p[i1] * m2p[i2]));
      }
    }
    per_m[im] = am * inner.value();
  });
  CompensatedComplexSum total;
  for (Complex v : per_m) total.add(v);

  BoundReport report;
  report.measured = std::abs(total.value());
  report.predicted = bilinear_predicted(p, pair);
  report.ratio = report.measured / report.predicted;
  report.trivial = summands;
  std::ostringstream echo;
  echo << "F=" << p.F << ";M=" << p.M << ";M1=" << p.M1 << ";M2=" << p.M2 << ";alpha=" << p.alpha.str()
       << ";alpha1=" << p.alpha1.str() << ";alpha2=" << p.alpha2.str() << ";a=" << to_string(p.a_kind)
       << ";b=" << to_string(p.b_kind) << ";pair=" << pair.str();
  report.params = echo.str();
  return report;
}

Complex prime_expsum(const ExactC& c, std::uint64_t d, std::int64_t h, std::uint64_t N, std::uint64_t N1,
                     std::span<const double> lambda_values) {
  if (d < 1) throw std::invalid_argument("prime_expsum: d must be >= 1");
  if (N < 1 || N1 <= N || N1 > 2 * N) throw std::invalid_argument("prime_expsum: need N < N1 <= 2N");
  if (lambda_values.size() != N1 - N) throw std::invalid_argument("prime_expsum: Lambda table size mismatch");
  const double scale = static_cast<double>(h) / (static_cast<double>(d) * static_cast<double>(d));
  const double gamma = static_cast<double>(c.gamma());
  CompensatedComplexSum sum;
  for (std::uint64_t n = N + 1; n <= N1; ++n) {
    const double w = lambda_values[n - N - 1];
    if (w == 0.0) continue;
    sum.add(w * unit_phase(scale * std::pow(static_cast<double>(n), gamma)));
  }
  return sum.value();
}

Complex prime_expsum(const ExactC& c, std::uint64_t d, std::int64_t h, std::uint64_t N, std::uint64_t N1) {
  if (N < 1 || N1 <= N || N1 > 2 * N) throw std::invalid_argument("prime_expsum: need N < N1 <= 2N");
  const auto lam = von_mangoldt_range(N + 1, N1);
  return prime_expsum(c, d, h, N, N1, lam);
}

std::uint64_t truncation_H(double x, double eps, std::uint64_t N, std::uint64_t d) {
  const double H = std::pow(x, eps - 1.0) * static_cast<double>(N) * static_cast<double>(d) * static_cast<double>(d);
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::floor(H)));
}

PrimeSumReport prime_expsum_total(const ExactC& c, double x, std::uint64_t d, std::uint64_t N, std::uint64_t N1,
                                  double eps, unsigned workers) {
  if (N < 1 || N1 <= N || N1 > 2 * N) throw std::invalid_argument("prime_expsum_total: need N < N1 <= 2N");
  PrimeSumReport report;
  report.H = truncation_H(x, eps, N, d);
  check_budget(static_cast<double>(report.H) * static_cast<double>(N1 - N));
  const auto lam = von_mangoldt_range(N + 1, N1);
  CompensatedSum cheb;
  for (double v : lam) cheb.add(v);
  report.chebyshev = cheb.value();

  std::vector<double> per_h(report.H);
  parallel_for(report.H, workers, [&](std::size_t i) {
    per_h[i] = std::abs(prime_expsum(c, d, static_cast<std::int64_t>(i + 1), N, N1, lam));
  });
  CompensatedSum s9;
  for (double v : per_h) s9.add(v);
  report.s9 = s9.value();
  report.scale = std::pow(x, 1.0 - eps) * std::pow(static_cast<double>(N), 1.0 - static_cast<double>(c.gamma()));
  report.ratio = report.s9 / report.scale;
  report.trivial = static_cast<double>(report.H) * report.chebyshev;
  return report;
}

}  // namespace pslab
