#pragma once

#include "pslab/exactmath.hpp"
#include "pslab/exppair.hpp"
#include "pslab/rational.hpp"

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace pslab {

using Complex = std::complex<double>;

/// Neumaier-compensated accumulator.
class CompensatedSum {
public:
  void add(double v);
  double value() const { return sum_ + comp_; }

private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

class CompensatedComplexSum {
public:
  void add(Complex v) {
    re_.add(v.real());
    im_.add(v.imag());
  }
  Complex value() const { return {re_.value(), im_.value()}; }

private:
  CompensatedSum re_;
  CompensatedSum im_;
};

/// e(y) = exp(2 pi i y), with y reduced mod 1 first.
Complex unit_phase(double y);

/// Hard cap on the number of summands a single evaluation may visit.
inline constexpr std::uint64_t kMaxSummands = 100'000'000;

/// sum_{X < n <= X0} e(sign * Y (n/X)^gamma_exp), 1 <= X < X0 <= 2X.
Complex monomial_sum(double Y, std::uint64_t X, std::uint64_t X0, double gamma_exp, int sign = 1);

struct BoundReport {
  double measured = 0.0;
  double predicted = 0.0;
  double ratio = 0.0;
  /// Number of summands visited: the trivial bound for unit coefficients.
  double trivial = 0.0;
  double eps = 0.0;
  /// Stable "key=value;..." echo of the inputs.
  std::string params;
};

struct TripleParams {
  double F = 1.0;
  std::uint64_t H = 1, N = 1, M = 1;
  Rational alpha{1, 2};
  Rational beta{1};
  Rational gamma{1};
  double eps = 0.01;
  int sign = 1;
};

/// (HNM)^{1+eps} {(F/(HNM^2))^{1/4} + M^{-1/2} + 1/F}
double triple_predicted(const TripleParams& p);

/// sum_{h=H+1}^{2H} sum_{n=N+1}^{2N} |sum_{m=M+1}^{2M} e(F (m/M)^a (h/H)^b (n/N)^g)|
BoundReport triple_sum(const TripleParams& p, unsigned workers = 0);

enum class CoefficientKind { Ones, Zeros, Mobius, RandomPhase };
CoefficientKind parse_coefficients(std::string_view text);
std::string to_string(CoefficientKind kind);

/// Deterministic coefficient generator with |value| <= 1. RandomPhase draws
/// e(u) with u hashed from (seed, index), so values do not depend on the
/// evaluation order.
class CoefficientGen {
public:
  CoefficientGen(CoefficientKind kind, std::uint64_t seed) : kind_(kind), seed_(seed) {}
  Complex operator()(std::uint64_t m) const;
  Complex operator()(std::uint64_t m1, std::uint64_t m2) const;
  CoefficientKind kind() const { return kind_; }

private:
  CoefficientKind kind_;
  std::uint64_t seed_;
};

struct BilinearParams {
  double F = 1.0;
  std::uint64_t M = 1, M1 = 1, M2 = 1;
  Rational alpha{1, 2};
  Rational alpha1{1, 2};
  Rational alpha2{1, 2};
  CoefficientKind a_kind = CoefficientKind::Ones;
  CoefficientKind b_kind = CoefficientKind::Ones;
  std::uint64_t seed = 1;
  int sign = 1;
};

/// (kappa / (2 (1 + kappa)), (1 + kappa - lambda) / (2 (1 + kappa))).
std::pair<Rational, Rational> bilinear_exponents(const ExponentPair& pair);

/// (M M1 M2 log(2 M1 M2)) {(M1 M2)^{-1/2} + (F/(M1 M2))^{e1} M^{-e2}}
double bilinear_predicted(const BilinearParams& p, const ExponentPair& pair);

/// |sum_{m~M} sum_{m1~M1} sum_{m2~M2} a(m) b(m1,m2) e(F (m/M)^a (m1/M1)^a1 (m2/M2)^a2)|.
/// Requires F >= M1 M2.
BoundReport bilinear_sum(const BilinearParams& p, const ExponentPair& pair, unsigned workers = 0);

/// sum_{N < n <= N1} Lambda(n) e(h n^gamma / d^2); N < N1 <= 2N.
Complex prime_expsum(const ExactC& c, std::uint64_t d, std::int64_t h, std::uint64_t N, std::uint64_t N1);

/// Same with Lambda supplied for n = N+1..N1 (index n - N - 1).
Complex prime_expsum(const ExactC& c, std::uint64_t d, std::int64_t h, std::uint64_t N, std::uint64_t N1,
                     std::span<const double> lambda_values);

struct PrimeSumReport {
  std::uint64_t H = 0;  ///< max(1, [x^{eps-1} N d^2])
  double s9 = 0.0;      ///< sum_{1<=h<=H} |inner sum|
  double chebyshev = 0.0;  ///< sum_{N<n<=N1} Lambda(n)
  double scale = 0.0;      ///< x^{1-eps} N^{1-gamma}
  double ratio = 0.0;      ///< s9 / scale
  double trivial = 0.0;    ///< H * chebyshev
};

/// H taken from H = x^{eps-1} N d^2.
std::uint64_t truncation_H(double x, double eps, std::uint64_t N, std::uint64_t d);

PrimeSumReport prime_expsum_total(const ExactC& c, double x, std::uint64_t d, std::uint64_t N, std::uint64_t N1,
                                  double eps = 0.01, unsigned workers = 0);

}  // namespace pslab
