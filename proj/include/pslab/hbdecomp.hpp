#pragma once

#include "pslab/exactmath.hpp"
#include "pslab/expsum.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace pslab {

/// Order k of the identity and the Moebius truncation point z_cut.
struct HBParams {
  unsigned k = 3;
  std::uint64_t z_cut = 1;
};

/// Smallest z with z^k >= n_max.
std::uint64_t minimal_z_cut(std::uint64_t n_max, unsigned k);

/// Heath-Brown's identity evaluated at n:
///   sum_{j=1}^{k} (-1)^{j-1} C(k, j)
///     sum_{m_1..m_j <= z, m_1..m_j n_1..n_j = n} mu(m_1)..mu(m_j) log n_1.
/// Requires 1 <= k <= 5 and n <= z_cut^k; equals Lambda(n) there.
double hb_lambda(std::uint64_t n, const HBParams& params);

struct HBCheck {
  unsigned k = 0;
  std::uint64_t n_max = 0;
  std::uint64_t z_cut = 0;
  double max_abs_error = 0.0;
  double max_rel_error = 0.0;  ///< over n with Lambda(n) > 0
  std::uint64_t mismatches = 0;  ///< n failing |diff| <= tol max(1, Lambda(n))
};

/// Compares hb_lambda against the sieve's Lambda for 1 <= n <= n_max.
HBCheck hb_check(unsigned k, std::uint64_t n_max, double tolerance = 1e-9, unsigned workers = 0);

enum class BlockKind { TypeI, TypeILog, TypeII };

/// Coefficient families obeying |a(m)| <= tau_5(m) log P (for P >= 3).
enum class BlockCoefficient { Ones, Mobius, Tau5Log, RandomTau5Log };

BlockCoefficient parse_block_coefficient(std::string_view text);

/// Bilinear block sum_{M<m<=M1} a(m) sum_{L<l<=L1, P<ml<=P1} [b(l)] G(ml) [log l].
struct TypeBlock {
  BlockKind kind = BlockKind::TypeI;
  std::uint64_t M = 1, M1 = 2, L = 1, L1 = 2;
  std::uint64_t P = 3, P1 = 6;
  BlockCoefficient a_source = BlockCoefficient::Ones;
  BlockCoefficient b_source = BlockCoefficient::Ones;
  std::uint64_t seed = 1;

  /// M1 <= 2M, L1 <= 2L, M <= M1, L <= L1, P >= 3.
  void validate() const;
};

/// Value of a block coefficient source at m.
Complex block_coefficient(BlockCoefficient source, std::uint64_t m, std::uint64_t P, std::uint64_t seed);

using BlockFunction = std::function<Complex(std::uint64_t)>;

/// Type I (kind TypeI or TypeILog); b is ignored.
Complex type_I_sum(const TypeBlock& block, const BlockFunction& G);

/// Type II; both coefficient sources are used.
Complex type_II_sum(const TypeBlock& block, const BlockFunction& G);

struct WindowCondition {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

struct WindowCheck {
  double P = 0, P1 = 0, U = 0, V = 0, Z = 0;
  std::vector<WindowCondition> conditions;
  bool all_hold = false;
};

/// Evaluates every hypothesis of the Type I/II decomposition:
/// P > 2, P1 <= 2P, 2 <= U < V <= Z <= P, U^2 <= Z, 128 U Z^2 <= P1, 2^18 P1 <= V^3.
WindowCheck check_decomposition_window(double P, double P1, double U, double V, double Z);

/// The parameter choices used for the dyadic prime sum:
///   U = N^{2 gamma} H1 x^{6 eps - 2},  V = N^{1/3},
///   Z = [N^{1/2 - gamma} H1^{-1/2} x^{1 - 3 eps}] + 1/2,
/// with P = N and P1 = N1 (default 2N).
struct WindowChoice {
  double x = 0;
  ExactC c;
  std::uint64_t d = 1;
  double N = 0;
  double N1 = 0;
  double H1 = 1;
  double eps = 0.01;
  /// H = x^{eps-1} N d^2; the dyadic split assumes H1 <= H/2.
  double H = 0;
  bool h1_within_half_H = false;
  WindowCheck check;
};

WindowChoice window_from_choices(double x, const ExactC& c, std::uint64_t d, double N, double H1, double eps,
                                 double N1 = 0.0);

}  // namespace pslab
